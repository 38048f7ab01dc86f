//! Small hand-built proof graphs: cyclic and explicit-induction proofs of
//! RTC facts, plain first-order proofs, and pre-proofs that fail the trace
//! condition. The corpus files are generated from these.

use crate::kernel::{RuleId, RuleInstance, RuleParams, Theory};
use crate::proofgraph::{NodeId, ProofGraph};
use crate::syntax::{parse_formula_with, parse_sequent_with, Formula, ParseMode, Sequent, Signature, Subst, Term};

struct Builder {
    g: ProofGraph,
}

impl Builder {
    fn new(sig: Signature, theory: &str, goal: &str) -> Builder {
        let mut sig = sig;
        let goal = parse_sequent_with(goal, &mut sig, ParseMode::STRICT).expect("goal parses");
        Builder { g: ProofGraph::with_root(sig, theory, goal) }
    }

    fn f(&self, text: &str) -> Formula {
        let mut sig = self.g.signature.clone();
        parse_formula_with(text, &mut sig, ParseMode::STRICT).expect("formula parses").canon()
    }

    fn s(&self, text: &str) -> Sequent {
        let mut sig = self.g.signature.clone();
        parse_sequent_with(text, &mut sig, ParseMode::STRICT).expect("sequent parses")
    }

    fn apply(&mut self, at: NodeId, rule: RuleId, params: RuleParams) -> Vec<NodeId> {
        let r = RuleInstance::derive(rule, self.g.sequent(at).clone(), params)
            .unwrap_or_else(|e| panic!("{rule} at node {at}: {e}"));
        self.g.apply(at, r)
    }

    fn one(&mut self, at: NodeId, rule: RuleId, params: RuleParams) -> NodeId {
        self.apply(at, rule, params)[0]
    }

    fn axiom(&mut self, at: NodeId, phi: &str) {
        let phi = self.f(phi);
        self.g.close_by_axiom(at, &phi);
    }

    fn weaken(&mut self, at: NodeId, target: &str) -> NodeId {
        let t = self.s(target);
        self.g.weaken_to(at, &t)
    }

    /// Closes `at` by a Subst from `companion`'s sequent and a bud.
    fn back_to(&mut self, at: NodeId, companion: NodeId, theta: &[(&str, &str)]) {
        let theta: Subst = theta.iter().map(|(x, t)| (x.to_string(), Term::var(*t))).collect();
        let source = self.g.sequent(companion).clone();
        let leaf = self.one(at, RuleId::Subst, RuleParams::subst(source, theta));
        self.g.close_with_bud(leaf, companion);
    }

    fn done(self) -> ProofGraph {
        self.g
    }
}

fn rel_sig() -> Signature {
    Signature::new().with_pred("p", 2)
}

fn mono_sig() -> Signature {
    Signature::new().with_pred("p", 2).with_pred("q", 2)
}

const RP: &str = "(rtc x y. p(x,y))";
const RQ: &str = "(rtc x y. q(x,y))";
const INCL: &str = "forall x. forall y. (p(x,y) -> q(x,y))";

fn r(a: &str, b: &str) -> String {
    format!("{RP}({a},{b})")
}

fn rq(a: &str, b: &str) -> String {
    format!("{RQ}({a},{b})")
}

/// `R(a,b), R(b,c) |- R(a,c)` with one cycle through a case split.
pub fn transitivity() -> ProofGraph {
    let mut b = Builder::new(rel_sig(), "none", &format!("{}, {} |- {}", r("a", "b"), r("b", "c"), r("a", "c")));
    let root = b.g.root;
    let cases = b.apply(root, RuleId::RtcCase, RuleParams::principal(b.f(&r("b", "c"))).with_eigenvars(["z"]));
    let eq = b.one(cases[0], RuleId::EqL1, RuleParams::principal(b.f("b = c")).with_template(b.f(&r("a", "w")), "w"));
    b.axiom(eq, &r("a", "b"));
    let step = b.apply(cases[1], RuleId::RtcStep, RuleParams::principal(b.f(&r("a", "c"))).with_witness(Term::var("z")));
    b.axiom(step[1], "p(z,c)");
    let w = b.weaken(step[0], &format!("{}, {} |- {}", r("a", "b"), r("b", "z"), r("a", "z")));
    b.back_to(w, root, &[("c", "z")]);
    b.done()
}

/// `p(a,b) |- R(b,b)`.
pub fn reflexivity() -> ProofGraph {
    let mut b = Builder::new(rel_sig(), "none", &format!("p(a,b) |- {}", r("b", "b")));
    let root = b.g.root;
    b.apply(root, RuleId::RtcRefl, RuleParams::principal(b.f(&r("b", "b"))));
    b.done()
}

/// `p(a,b) |- R(a,b)`.
pub fn single_step() -> ProofGraph {
    let mut b = Builder::new(rel_sig(), "none", &format!("p(a,b) |- {}", r("a", "b")));
    let root = b.g.root;
    let step = b.apply(root, RuleId::RtcStep, RuleParams::principal(b.f(&r("a", "b"))).with_witness(Term::var("a")));
    b.apply(step[0], RuleId::RtcRefl, RuleParams::principal(b.f(&r("a", "a"))));
    b.axiom(step[1], "p(a,b)");
    b.done()
}

/// `p(a,b), p(b,c) |- R(a,c)` by two steps.
pub fn step_composition() -> ProofGraph {
    let mut b = Builder::new(rel_sig(), "none", &format!("p(a,b), p(b,c) |- {}", r("a", "c")));
    let root = b.g.root;
    let outer = b.apply(root, RuleId::RtcStep, RuleParams::principal(b.f(&r("a", "c"))).with_witness(Term::var("b")));
    b.axiom(outer[1], "p(b,c)");
    let inner = b.apply(outer[0], RuleId::RtcStep, RuleParams::principal(b.f(&r("a", "b"))).with_witness(Term::var("a")));
    b.apply(inner[0], RuleId::RtcRefl, RuleParams::principal(b.f(&r("a", "a"))));
    b.axiom(inner[1], "p(a,b)");
    b.done()
}

/// `p(a,b), R(b,c) |- R(a,c)`: prefixing a step, by a cycle.
pub fn left_extension() -> ProofGraph {
    let mut b = Builder::new(rel_sig(), "none", &format!("p(a,b), {} |- {}", r("b", "c"), r("a", "c")));
    let root = b.g.root;
    let cases = b.apply(root, RuleId::RtcCase, RuleParams::principal(b.f(&r("b", "c"))).with_eigenvars(["z"]));
    let eq = b.one(cases[0], RuleId::EqL1, RuleParams::principal(b.f("b = c")).with_template(b.f(&r("a", "w")), "w"));
    let step = b.apply(eq, RuleId::RtcStep, RuleParams::principal(b.f(&r("a", "b"))).with_witness(Term::var("a")));
    b.apply(step[0], RuleId::RtcRefl, RuleParams::principal(b.f(&r("a", "a"))));
    b.axiom(step[1], "p(a,b)");
    let step = b.apply(cases[1], RuleId::RtcStep, RuleParams::principal(b.f(&r("a", "c"))).with_witness(Term::var("z")));
    b.axiom(step[1], "p(z,c)");
    let w = b.weaken(step[0], &format!("p(a,b), {} |- {}", r("b", "z"), r("a", "z")));
    b.back_to(w, root, &[("c", "z")]);
    b.done()
}

/// Closes `INCL, .., p(u,v) |- q(u,v), ..` by instantiating the inclusion.
fn use_inclusion(b: &mut Builder, at: NodeId, u: &str, v: &str) {
    let pq = format!("p({u},{v})");
    let qq = format!("q({u},{v})");
    let w = b.weaken(at, &format!("{INCL}, {pq} |- {qq}"));
    let w = b.one(w, RuleId::AllL, RuleParams::principal(b.f(INCL)).with_witness(Term::var(u)));
    let inner = format!("forall y. (p({u},y) -> q({u},y))");
    let w = b.one(w, RuleId::AllL, RuleParams::principal(b.f(&inner)).with_witness(Term::var(v)));
    let imp = b.apply(w, RuleId::ImpL, RuleParams::principal(b.f(&format!("{pq} -> {qq}"))));
    b.axiom(imp[0], &pq);
    b.axiom(imp[1], &qq);
}

/// `forall x y. p(x,y) -> q(x,y), Rp(a,b) |- Rq(a,b)` by a cycle.
pub fn monotonicity() -> ProofGraph {
    let mut b = Builder::new(mono_sig(), "none", &format!("{INCL}, {} |- {}", r("a", "b"), rq("a", "b")));
    let root = b.g.root;
    let cases = b.apply(root, RuleId::RtcCase, RuleParams::principal(b.f(&r("a", "b"))).with_eigenvars(["z"]));
    let eq = b.one(cases[0], RuleId::EqL1, RuleParams::principal(b.f("a = b")).with_template(b.f(&rq("a", "w")), "w"));
    b.apply(eq, RuleId::RtcRefl, RuleParams::principal(b.f(&rq("a", "a"))));
    let step = b.apply(cases[1], RuleId::RtcStep, RuleParams::principal(b.f(&rq("a", "b"))).with_witness(Term::var("z")));
    use_inclusion(&mut b, step[1], "z", "b");
    let w = b.weaken(step[0], &format!("{INCL}, {} |- {}", r("a", "z"), rq("a", "z")));
    b.back_to(w, root, &[("b", "z")]);
    b.done()
}

/// `a = b |- b = a`.
pub fn eq_symmetry() -> ProofGraph {
    let mut b = Builder::new(Signature::new(), "none", "a = b |- b = a");
    let root = b.g.root;
    let e = b.one(root, RuleId::EqL1, RuleParams::principal(b.f("a = b")).with_template(b.f("w = a"), "w"));
    b.apply(e, RuleId::EqR, RuleParams::default());
    b.done()
}

/// `p(a) /\ q(a) |- q(a) /\ p(a)`.
pub fn and_commutation() -> ProofGraph {
    let sig = Signature::new().with_pred("p", 1).with_pred("q", 1);
    let mut b = Builder::new(sig, "none", "p(a) /\\ q(a) |- q(a) /\\ p(a)");
    let root = b.g.root;
    let l = b.one(root, RuleId::AndL, RuleParams::principal(b.f("p(a) /\\ q(a)")));
    let r = b.apply(l, RuleId::AndR, RuleParams::principal(b.f("q(a) /\\ p(a)")));
    b.axiom(r[0], "q(a)");
    b.axiom(r[1], "p(a)");
    b.done()
}

/// `|- p(a) \/ ~p(a)`.
pub fn excluded_middle() -> ProofGraph {
    let sig = Signature::new().with_pred("p", 1);
    let mut b = Builder::new(sig, "none", "|- p(a) \\/ ~p(a)");
    let root = b.g.root;
    let o = b.one(root, RuleId::OrR, RuleParams::principal(b.f("p(a) \\/ ~p(a)")));
    let n = b.one(o, RuleId::NotR, RuleParams::principal(b.f("~p(a)")));
    b.axiom(n, "p(a)");
    b.done()
}

/// `p(a) |- exists x. p(x)`.
pub fn exists_introduction() -> ProofGraph {
    let sig = Signature::new().with_pred("p", 1);
    let mut b = Builder::new(sig, "none", "p(a) |- exists x. p(x)");
    let root = b.g.root;
    let e = b.one(root, RuleId::ExR, RuleParams::principal(b.f("exists x. p(x)")).with_witness(Term::var("a")));
    b.axiom(e, "p(a)");
    b.done()
}

/// Closes `R(a,u), p(u,v) |- R(a,v)` (plus context) by one step.
fn extend_by_step(b: &mut Builder, at: NodeId, rel: fn(&str, &str) -> String, step: &str) {
    let step_r = b.apply(at, RuleId::RtcStep, RuleParams::principal(b.f(&rel("a", "v"))).with_witness(Term::var("u")));
    b.axiom(step_r[0], &rel("a", "u"));
    if step == "p" {
        b.axiom(step_r[1], "p(u,v)");
    } else {
        use_inclusion(b, step_r[1], "u", "v");
    }
}

fn induction_params(b: &Builder, principal: &str, template: &str) -> RuleParams {
    RuleParams::principal(b.f(principal)).with_eigenvars(["u", "v"]).with_template(b.f(template), "u")
}

/// Transitivity by the explicit induction rule.
pub fn induction_transitivity() -> ProofGraph {
    let mut b = Builder::new(rel_sig(), "none", &format!("{}, {} |- {}", r("a", "b"), r("b", "c"), r("a", "c")));
    let root = b.g.root;
    let p = b.one(root, RuleId::RtcInd, induction_params(&b, &r("b", "c"), &r("a", "u")));
    extend_by_step(&mut b, p, r, "p");
    b.done()
}

/// Monotonicity by a cut on `Rq(a,a)` and the explicit induction rule.
pub fn induction_monotonicity() -> ProofGraph {
    let mut b = Builder::new(mono_sig(), "none", &format!("{INCL}, {} |- {}", r("a", "b"), rq("a", "b")));
    let root = b.g.root;
    let left = b.s(&format!("{INCL} |- "));
    let right = b.g.sequent(root).clone();
    let cut = b.apply(root, RuleId::Cut, RuleParams::default().with_cut(b.f(&rq("a", "a"))).with_contexts(left, right));
    b.apply(cut[0], RuleId::RtcRefl, RuleParams::principal(b.f(&rq("a", "a"))));
    let p = b.one(cut[1], RuleId::RtcInd, induction_params(&b, &r("a", "b"), &rq("a", "u")));
    extend_by_step(&mut b, p, rq, "q");
    b.done()
}

/// The successor-step theory `p(x), s(x) = y |- p(y)`.
pub fn step_theory() -> Theory {
    let sig = Signature::new().with_const("0").with_fn("s", 1).with_pred("p", 1);
    let mut scratch = sig.clone();
    let ax = parse_sequent_with("p(x), s(x) = y |- p(y)", &mut scratch, ParseMode::STRICT).expect("axiom parses");
    Theory::new("step", sig).with_axiom("step", ax)
}

/// `p(0), (rtc x y. s(x) = y)(0, n) |- p(n)` from the step theory.
pub fn induction_step_axiom() -> ProofGraph {
    let th = step_theory();
    let mut b = Builder::new(th.signature.clone(), "step", "p(0), (rtc x y. s(x) = y)(0, n) |- p(n)");
    let root = b.g.root;
    let p = b.one(root, RuleId::RtcInd, induction_params(&b, "(rtc x y. s(x) = y)(0, n)", "p(u)"));
    b.apply(p, RuleId::TheoryAxiom, RuleParams::default().with_axiom("step"));
    b.done()
}

/// `R(a,b), R(b,c), R(c,d) |- R(a,d)` with two separate inductions.
pub fn induction_twice() -> ProofGraph {
    let goal = format!("{}, {}, {} |- {}", r("a", "b"), r("b", "c"), r("c", "d"), r("a", "d"));
    let mut b = Builder::new(rel_sig(), "none", &goal);
    let root = b.g.root;
    let left = b.s(&format!("{}, {} |- ", r("a", "b"), r("b", "c")));
    let right = b.s(&format!("{} |- {}", r("c", "d"), r("a", "d")));
    let cut = b.apply(root, RuleId::Cut, RuleParams::default().with_cut(b.f(&r("a", "c"))).with_contexts(left, right));
    let p = b.one(cut[0], RuleId::RtcInd, induction_params(&b, &r("b", "c"), &r("a", "u")));
    extend_by_step(&mut b, p, r, "p");
    let p = b.one(cut[1], RuleId::RtcInd, induction_params(&b, &r("c", "d"), &r("a", "u")));
    extend_by_step(&mut b, p, r, "p");
    b.done()
}

/// A weakening and a collapsing substitution loop back without any case
/// split, so no trace progresses.
pub fn bad_no_progress() -> ProofGraph {
    let mut b = Builder::new(rel_sig(), "none", &format!("{}, {} |- ", r("x", "y"), r("x", "w")));
    let root = b.g.root;
    let w = b.one(root, RuleId::WL, RuleParams::principal(b.f(&r("x", "w"))));
    b.back_to(w, root, &[("w", "y")]);
    b.done()
}

/// A trivial substitution straight back to the root.
pub fn bad_identity_loop() -> ProofGraph {
    let sig = rel_sig().with_pred("q", 1);
    let mut b = Builder::new(sig, "none", &format!("{} |- q(a)", r("a", "b")));
    let root = b.g.root;
    b.back_to(root, root, &[]);
    b.done()
}

/// A cut whose right premise is the conclusion again.
pub fn bad_cut_loop() -> ProofGraph {
    let sig = rel_sig().with_pred("q", 1);
    let mut b = Builder::new(sig, "none", &format!("{} |- q(a)", r("a", "b")));
    let root = b.g.root;
    let cut = b.apply(root, RuleId::Cut, RuleParams::default().with_cut(b.f(&r("a", "b"))));
    b.axiom(cut[0], &r("a", "b"));
    b.g.close_with_bud(cut[1], root);
    b.done()
}

/// Both cut premises equal the conclusion: two overlapping self-loops.
pub fn bad_double_cut() -> ProofGraph {
    let mut b = Builder::new(rel_sig(), "none", &format!("{} |- {}", r("a", "b"), r("a", "b")));
    let root = b.g.root;
    let cut = b.apply(root, RuleId::Cut, RuleParams::default().with_cut(b.f(&r("a", "b"))));
    b.g.close_with_bud(cut[0], root);
    b.g.close_with_bud(cut[1], root);
    b.done()
}

/// Every sample by file stem, with the theory it needs.
pub fn all() -> Vec<(&'static str, ProofGraph)> {
    vec![
        ("transitivity", transitivity()),
        ("reflexivity", reflexivity()),
        ("single_step", single_step()),
        ("step_composition", step_composition()),
        ("left_extension", left_extension()),
        ("monotonicity", monotonicity()),
        ("eq_symmetry", eq_symmetry()),
        ("and_commutation", and_commutation()),
        ("excluded_middle", excluded_middle()),
        ("exists_introduction", exists_introduction()),
        ("ind_transitivity", induction_transitivity()),
        ("ind_monotonicity", induction_monotonicity()),
        ("ind_step_axiom", induction_step_axiom()),
        ("ind_twice", induction_twice()),
        ("bad_no_progress", bad_no_progress()),
        ("bad_identity_loop", bad_identity_loop()),
        ("bad_cut_loop", bad_cut_loop()),
        ("bad_double_cut", bad_double_cut()),
    ]
}

/// The theory a sample refers to by name.
pub fn theory_named(name: &str) -> Option<Theory> {
    crate::translate::bundled_theory(name).ok()
}

/// The corpus: every sample, plus the cyclic translation of each
/// explicit-induction sample under the stem `cyc_<stem>`.
pub fn corpus() -> Vec<(String, ProofGraph)> {
    let mut out = Vec::new();
    for (stem, g) in all() {
        if stem.starts_with("ind_") {
            let theory = theory_named(&g.theory).expect("bundled theory");
            let cyc = crate::translate::explicit_to_cyclic(&g, &theory).expect("explicit proofs translate");
            out.push((format!("cyc_{stem}"), cyc));
        }
        out.push((stem.to_string(), g));
    }
    out.sort_by(|a, b| a.0.cmp(&b.0));
    out
}
