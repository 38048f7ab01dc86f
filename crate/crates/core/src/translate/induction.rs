use std::collections::BTreeSet;

use super::TranslateError;
use crate::kernel::{check_rule_instance, KernelError, RuleId, RuleInstance, RuleParams, Theory};
use crate::proofgraph::{NodeId, NodeKind, ProofGraph};
use crate::syntax::{FreshNames, Formula, Sequent, Signature, Subst, Term};

/// An instance of the explicit induction rule
/// `Γ, ψ, φ(x, y) ⊢ Δ, ψ[y/x]  /  Γ, ψ[s/x], (rtc x y. φ)(s, t) ⊢ Δ, ψ[t/x]`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct InductionSchema {
    pub gamma: BTreeSet<Formula>,
    pub delta: BTreeSet<Formula>,
    /// The relation body, with `x` and `y` free.
    pub body: Formula,
    /// The induction formula, in `x`.
    pub psi: Formula,
    pub x: String,
    pub y: String,
    pub s: Term,
    pub t: Term,
}

impl InductionSchema {
    pub fn relation(&self) -> Formula {
        Formula::rtc(self.x.clone(), self.y.clone(), self.body.clone(), self.s.clone(), self.t.clone()).canon()
    }

    pub fn conclusion(&self) -> Sequent {
        Sequent {
            ante: self.gamma.iter().cloned().chain([self.psi.substitute1(&self.x, &self.s), self.relation()]).collect(),
            succ: self.delta.iter().cloned().chain([self.psi.substitute1(&self.x, &self.t)]).collect(),
        }
    }

    /// The RtcInd instance this schema describes, checked by the kernel.
    pub fn rule_instance(&self) -> Result<RuleInstance, TranslateError> {
        let params = RuleParams::principal(self.relation())
            .with_eigenvars([self.x.clone(), self.y.clone()])
            .with_template(self.psi.clone(), self.x.clone());
        let fresh = |e: KernelError| match e {
            KernelError::FreshnessViolation(v) => TranslateError::FreshnessViolation(v),
            other => TranslateError::Kernel(other),
        };
        let r = RuleInstance::derive(RuleId::RtcInd, self.conclusion(), params).map_err(fresh)?;
        check_rule_instance(&r, &Theory::empty()).map_err(fresh)?;
        Ok(r)
    }
}

/// A proof fragment whose only open leaf is the step premise.
#[derive(Clone, Debug)]
pub struct InductionFragment {
    pub graph: ProofGraph,
    /// The open node holding `Γ, ψ, φ(x, y) ⊢ Δ, ψ[y/x]`.
    pub open: NodeId,
    /// The RtcCase node the bud points back to.
    pub companion: NodeId,
}

/// Derives the induction rule with a cycle, choosing fresh `v`, `w` and
/// the case-split eigenvariable `z`.
pub fn derive_induction(schema: &InductionSchema) -> Result<InductionFragment, TranslateError> {
    let rule = schema.rule_instance()?;
    let names = fresh_triple(&rule);
    fragment(&rule, names)
}

/// As [`derive_induction`] with caller-chosen `[v, w, z]`.
pub fn derive_induction_named(schema: &InductionSchema, names: [&str; 3]) -> Result<InductionFragment, TranslateError> {
    let rule = schema.rule_instance()?;
    fragment(&rule, names.map(str::to_string))
}

fn fragment(rule: &RuleInstance, names: [String; 3]) -> Result<InductionFragment, TranslateError> {
    let sig = Signature::of_formulas(rule.conclusion.formulas().chain(rule.premises[0].formulas()));
    let mut g = ProofGraph::with_root(sig, "none", rule.conclusion.clone());
    let at = g.root;
    let (companion, _, open) = build(&mut g, at, rule, names)?;
    Ok(InductionFragment { graph: g, open, companion })
}

fn fresh_triple(rule: &RuleInstance) -> [String; 3] {
    let mut avoid = rule.conclusion.all_names();
    avoid.extend(rule.premises[0].all_names());
    avoid.extend(rule.params.eigenvars.iter().cloned());
    let mut fresh = FreshNames::avoiding(avoid);
    [fresh.fresh(), fresh.fresh(), fresh.fresh()]
}

/// Replaces the open node `at`, whose sequent is the conclusion of the
/// RtcInd instance `rule`, by the cyclic derivation. Returns the companion,
/// the Subst node producing the step premise and the open step premise.
pub(crate) fn build(
    g: &mut ProofGraph,
    at: NodeId,
    rule: &RuleInstance,
    [v, w, z]: [String; 3],
) -> Result<(NodeId, NodeId, NodeId), TranslateError> {
    let c = &rule.conclusion;
    let premise = &rule.premises[0];
    let [x, y] = rule.params.eigenvars.as_slice() else { unreachable!("checked RtcInd instance") };
    let (psi, _) = rule.params.template.clone().expect("checked RtcInd instance");
    let rel = rule.params.principal.clone().expect("checked RtcInd instance");
    let Formula::Rtc { src, dst, .. } = &rel else { unreachable!("checked RtcInd instance") };

    let mut taken = c.all_names();
    taken.extend(premise.all_names());
    taken.insert(x.clone());
    taken.insert(y.clone());
    let mut seen = BTreeSet::new();
    for n in [&v, &w, &z] {
        if taken.contains(n) || !seen.insert(n.clone()) {
            return Err(TranslateError::FreshnessViolation(n.clone()));
        }
    }
    let (tv, tw, tz) = (Term::var(&v), Term::var(&w), Term::var(&z));
    let pre = psi.substitute1(x, src);
    let post = psi.substitute1(x, dst);
    let mut gamma = c.ante.clone();
    let mut delta = c.succ.clone();
    if !rule.params.retain {
        gamma.remove(&pre);
        gamma.remove(&rel);
        delta.remove(&post);
    }

    let psi_at = |t: &Term| psi.substitute1(x, t);
    let rel_vw = rel.with_endpoints(tv.clone(), tw.clone()).expect("rtc");
    let companion_seq = Sequent {
        ante: gamma.iter().cloned().chain([psi_at(&tv), rel_vw.clone()]).collect(),
        succ: delta.iter().cloned().chain([psi_at(&tw)]).collect(),
    };
    let derive = |rule: RuleId, conclusion: &Sequent, params: RuleParams| RuleInstance::derive(rule, conclusion.clone(), params);

    // Instantiate the companion at the actual endpoints.
    let theta: Subst = [(v.clone(), src.clone()), (w.clone(), dst.clone())].into();
    let root = derive(RuleId::Subst, c, RuleParams::subst(companion_seq.clone(), theta))?;
    let companion = g.apply(at, root)[0];

    let case = derive(RuleId::RtcCase, &companion_seq, RuleParams::principal(rel_vw).with_eigenvars([z.clone()]))?;
    let [base, step] = g.apply(companion, case)[..] else { unreachable!("RtcCase has two premises") };

    // v = w: rewrite the goal back to the hypothesis.
    let eq = Formula::eq(tv.clone(), tw.clone());
    let rewrite = derive(RuleId::EqL1, g.sequent(base), RuleParams::principal(eq).with_template(psi.clone(), x.clone()))?;
    let leaf = g.apply(base, rewrite)[0];
    g.close_by_axiom(leaf, &psi_at(&tv));

    // Cut on ψ[z/x]: the left branch is the companion at (v, z).
    let step_seq = g.sequent(step).clone();
    let rel_vz = rel.with_endpoints(tv.clone(), tz.clone()).expect("rtc");
    let body_zw = rel.rtc_step(&tz, &tw).expect("rtc");
    let left = Sequent { ante: gamma.iter().cloned().chain([psi_at(&tv), rel_vz]).collect(), succ: delta.clone() };
    let right = Sequent {
        ante: gamma.iter().cloned().chain([body_zw]).collect(),
        succ: delta.iter().cloned().chain([psi_at(&tw)]).collect(),
    };
    let cut = derive(RuleId::Cut, &step_seq, RuleParams::default().with_cut(psi_at(&tz)).with_contexts(left, right))?;
    let [l, r] = g.apply(step, cut)[..] else { unreachable!("Cut has two premises") };

    let back = derive(RuleId::Subst, g.sequent(l), RuleParams::subst(companion_seq, [(w.clone(), tz.clone())].into()))?;
    let bud = g.apply(l, back)[0];
    g.close_with_bud(bud, companion);

    let theta: Subst = [(x.clone(), tz), (y.clone(), tw)].into();
    let inst = derive(RuleId::Subst, g.sequent(r), RuleParams::subst(premise.clone(), theta))?;
    let open = g.apply(r, inst)[0];
    Ok((companion, r, open))
}

/// Replaces every RtcInd node of a finite proof by the cyclic derivation
/// of the rule. The end-sequent and all other nodes are kept.
pub fn explicit_to_cyclic(p: &ProofGraph, theory: &Theory) -> Result<ProofGraph, TranslateError> {
    p.validate(theory).map_err(TranslateError::Structure)?;
    if !p.buds().is_empty() {
        return Err(TranslateError::NotFinite);
    }
    let mut g = p.clone();
    let sites: Vec<(NodeId, RuleInstance, NodeId)> = g
        .nodes
        .iter()
        .filter_map(|(&id, n)| match &n.kind {
            NodeKind::Internal { rule, children } if rule.rule == RuleId::RtcInd => Some((id, rule.clone(), children[0])),
            _ => None,
        })
        .collect();
    for (id, rule, child) in sites {
        g.nodes.get_mut(&id).expect("node exists").kind = NodeKind::Open;
        let names = fresh_triple(&rule);
        let (_, inst, open) = build(&mut g, id, &rule, names)?;
        g.nodes.remove(&open);
        if let NodeKind::Internal { children, .. } = &mut g.nodes.get_mut(&inst).expect("node exists").kind {
            children[0] = child;
        }
    }
    g.validate(theory).map_err(TranslateError::Structure)?;
    Ok(g)
}
