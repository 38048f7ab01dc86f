use std::collections::BTreeSet;

use proptest::prelude::*;

use super::*;
use crate::kernel::{RuleId, RuleInstance, RuleParams, Theory};
use crate::proofgraph::NodeKind;
use crate::samples;
use crate::syntax::{parse_formula_with, parse_sequent, Formula, ParseMode, Signature, Term};
use crate::tracecheck::{check_global_trace_condition, enumerate_basic_cycles, is_non_overlapping};

fn edge_sig() -> Signature {
    Signature::new().with_pred("E", 2).with_pred("p", 1)
}

fn edge_schema() -> InductionSchema {
    let sig = edge_sig();
    InductionSchema {
        gamma: BTreeSet::new(),
        delta: BTreeSet::new(),
        body: parse_formula(&sig, "E(x, y)"),
        psi: parse_formula(&sig, "p(x)"),
        x: "x".into(),
        y: "y".into(),
        s: Term::var("a"),
        t: Term::var("b"),
    }
}

fn parse_formula(sig: &Signature, text: &str) -> Formula {
    let mut sig = sig.clone();
    parse_formula_with(text, &mut sig, ParseMode::STRICT).unwrap()
}

fn edge_theory() -> Theory {
    let sig = edge_sig();
    Theory::new("edge", sig.clone()).with_axiom("step", parse_sequent("p(x), E(x, y) |- p(y)", &sig).unwrap())
}

#[test]
fn induction_fragment_has_one_progressing_cycle() {
    let frag = derive_induction(&edge_schema()).unwrap();
    let mut g = frag.graph;
    assert_eq!(g.open_nodes(), vec![frag.open]);
    assert_eq!(g.sequent(frag.open), &parse_sequent("p(x), E(x, y) |- p(y)", &edge_sig()).unwrap());
    assert_eq!(g.root_sequent(), &edge_schema().conclusion());
    assert_eq!(g.rule_at(g.root).unwrap().rule, RuleId::Subst);
    assert_eq!(g.rule_at(frag.companion).unwrap().rule, RuleId::RtcCase);
    assert_eq!(g.buds().len(), 1);
    assert_eq!(g.buds()[0].1, frag.companion);

    let theory = edge_theory();
    let ax = RuleInstance::derive(RuleId::TheoryAxiom, g.sequent(frag.open).clone(), RuleParams::default().with_axiom("step"))
        .unwrap();
    g.close(frag.open, ax, vec![]);
    g.theory = "edge".into();
    g.validate(&theory).unwrap();
    assert!(check_global_trace_condition(&g).is_accepted());
    let cycles = enumerate_basic_cycles(&g).unwrap();
    assert_eq!(cycles.len(), 1);
    assert!(cycles[0].contains(&frag.companion));
    assert!(is_non_overlapping(&g).unwrap());
}

#[test]
fn induction_names_must_be_fresh() {
    let err = derive_induction_named(&edge_schema(), ["a", "_v1", "_v2"]).unwrap_err();
    assert_eq!(err, TranslateError::FreshnessViolation("a".into()));
    let err = derive_induction_named(&edge_schema(), ["_v0", "_v0", "_v2"]).unwrap_err();
    assert_eq!(err, TranslateError::FreshnessViolation("_v0".into()));
    assert!(derive_induction_named(&edge_schema(), ["v", "w", "z"]).is_ok());
}

#[test]
fn induction_schema_freshness_is_checked() {
    let mut schema = edge_schema();
    schema.gamma.insert(parse_formula(&edge_sig(), "p(x)"));
    assert_eq!(derive_induction(&schema).unwrap_err(), TranslateError::FreshnessViolation("x".into()));
    let mut schema = edge_schema();
    schema.psi = parse_formula(&edge_sig(), "E(x, y)");
    assert_eq!(derive_induction(&schema).unwrap_err(), TranslateError::FreshnessViolation("y".into()));
}

#[test]
fn explicit_proofs_become_normal_cyclic_proofs() {
    let cases = [
        samples::induction_transitivity(),
        samples::induction_monotonicity(),
        samples::induction_step_axiom(),
        samples::induction_twice(),
    ];
    for p in cases {
        let theory = samples::theory_named(&p.theory).unwrap();
        let inds = p.count_rule(RuleId::RtcInd);
        assert!(inds >= 1);
        let out = explicit_to_cyclic(&p, &theory).unwrap();
        out.validate(&theory).unwrap();
        assert_eq!(out.count_rule(RuleId::RtcInd), 0);
        assert_eq!(out.root_sequent(), p.root_sequent());
        assert!(check_global_trace_condition(&out).is_accepted());
        assert!(is_non_overlapping(&out).unwrap());
        assert_eq!(enumerate_basic_cycles(&out).unwrap().len(), inds);
    }
}

#[test]
fn induction_free_proofs_are_unchanged() {
    let p = samples::step_composition();
    assert_eq!(explicit_to_cyclic(&p, &Theory::empty()).unwrap(), p);
}

#[test]
fn cyclic_input_is_refused() {
    let p = samples::transitivity();
    assert_eq!(explicit_to_cyclic(&p, &Theory::empty()).unwrap_err(), TranslateError::NotFinite);
    let p = samples::bad_no_progress();
    assert!(explicit_to_cyclic(&p, &Theory::empty()).is_err());
}

fn abstract_beta() -> BetaConfig {
    let f = Formula::pred("beta", vec![Term::var("c"), Term::var("i"), Term::var("k")]);
    BetaConfig::new(f, "c", "i", "k").unwrap()
}

fn arith() -> Signature {
    arith_signature().with_pred("p", 1).with_pred("q", 2)
}

#[test]
fn beta_of_successor_closure_matches_golden_text() {
    let src = parse_formula(&arith(), "(rtc w u. s(w) = u)(a, b)");
    let out = beta_translate(&src, &abstract_beta()).unwrap();
    let golden = "a = b \\/ (exists _b0. exists _b1. beta(_b1, 0, a) /\\ beta(_b1, s(_b0), b) /\\ \
        (forall _b2. _b2 = _b0 \\/ lt(_b2, _b0) -> (exists _b3. exists _b4. \
        beta(_b1, _b2, _b3) /\\ beta(_b1, s(_b2), _b4) /\\ s(_b3) = _b4)))";
    assert_eq!(out.to_string(), golden);
    assert!(!out.contains_rtc());
}

#[test]
fn beta_keeps_rtc_free_formulas() {
    for text in ["p(a)", "forall x. exists y. q(x, y) -> p(s(x))", "~(a = 0) \\/ p(add(a, a))"] {
        let f = parse_formula(&arith(), text);
        assert_eq!(beta_translate(&f, &abstract_beta()).unwrap(), f, "{text}");
    }
}

#[test]
fn beta_translates_nested_closures() {
    let f = parse_formula(&arith(), "forall n. (rtc x y. (rtc w u. q(w, u))(x, y) /\\ p(y))(n, m)");
    let out = beta_translate(&f, &abstract_beta()).unwrap();
    assert!(!out.contains_rtc());
    assert_eq!(out.free_vars(), f.free_vars());
    let std = beta_translate(&f, &BetaConfig::standard()).unwrap();
    assert!(!std.contains_rtc());
    assert_eq!(std.free_vars(), f.free_vars());
}

#[test]
fn beta_tc_mode_uses_successor_chains() {
    let f = parse_formula(&arith(), "(rtc w u. q(w, u))(a, b)");
    let out = beta_translate(&f, &abstract_beta().with_mode(BetaMode::Tc)).unwrap();
    assert!(out.contains_rtc());
    assert!(!out.to_string().contains("lt("));
    assert!(out.to_string().contains("(rtc _b3 _b4. s(_b3) = _b4)(_b2, _b0)"));
}

#[test]
fn beta_rejects_bad_inputs() {
    let bad = Formula::pred("p", vec![Term::app("s", vec![Term::var("a"), Term::var("b")])]);
    assert!(matches!(beta_translate(&bad, &abstract_beta()), Err(TranslateError::SignatureMismatch(_))));
    let extra = Formula::pred("beta", vec![Term::var("c"), Term::var("i"), Term::var("j")]);
    assert!(matches!(BetaConfig::new(extra, "c", "i", "k"), Err(TranslateError::InvalidBetaFormula(_))));
    let f = Formula::pred("beta", vec![Term::var("c"), Term::var("c"), Term::var("k")]);
    assert!(BetaConfig::new(f, "c", "c", "k").is_err());
}

#[test]
fn pair_encoding_matches_the_displayed_formula() {
    let sig = Signature::new().with_pair(None).with_pred("R", 4);
    let phi = parse_formula(&sig, "R(x1, x2, y1, y2)");
    let v = Term::var;
    let out = encode_rtc2(&sig, ["x1", "x2", "y1", "y2"], &phi, [&v("a"), &v("b")], [&v("c"), &v("d")]).unwrap();
    let expected = parse_formula(
        &sig,
        "(rtc x y. exists x1. exists x2. exists y1. exists y2. \
         x = <x1, x2> /\\ y = <y1, y2> /\\ R(x1, x2, y1, y2))(<a, b>, <c, d>)",
    );
    assert_eq!(out, expected);

    let unused = parse_formula(&sig, "R(a, a, a, a)");
    let out = encode_rtc2(&sig, ["x1", "x2", "y1", "y2"], &unused, [&v("a"), &v("b")], [&v("c"), &v("d")]).unwrap();
    assert_eq!(out.free_vars(), ["a", "b", "c", "d"].map(String::from).into());
}

#[test]
fn pair_encoding_errors() {
    let v = Term::var;
    let phi = Formula::top();
    let no_pair = Signature::new();
    assert_eq!(
        encode_rtc2(&no_pair, ["x1", "x2", "y1", "y2"], &phi, [&v("a"), &v("b")], [&v("c"), &v("d")]),
        Err(TranslateError::MissingPairSymbol)
    );
    let sig = Signature::new().with_pair(None);
    assert_eq!(
        encode_rtc2(&sig, ["x1", "x2", "x1", "y2"], &phi, [&v("a"), &v("b")], [&v("c"), &v("d")]),
        Err(TranslateError::VariableClash("x1".into()))
    );
}

#[test]
fn bundled_theories_parse() {
    let arith = bundled_theory("arith").unwrap();
    assert_eq!(arith.axioms.len(), 5);
    assert_eq!(
        arith.axiom("nat").unwrap(),
        &parse_sequent("|- (rtc w u. s(w) = u)(0, x)", &arith.signature).unwrap()
    );
    let step = bundled_theory("step").unwrap();
    assert_eq!(step, samples::step_theory());
    assert_eq!(bundled_theory("none").unwrap(), Theory::empty());
    assert!(bundled_theory("zf").is_err());
    for t in [arith, step] {
        assert_eq!(parse_theory(&write_theory(&t)).unwrap(), t);
    }
}

#[test]
fn malformed_theory_files() {
    assert_eq!(parse_theory("# nothing\n"), Err(TheoryFileError::MissingName));
    let e = parse_theory("theory t\nsignature: pred p/1\naxiom a: p(x, y) |-\n").unwrap_err();
    assert!(matches!(e, TheoryFileError::Syntax { line: 3, .. }));
    let e = parse_theory("theory t\nsignature: pred p/1\naxiom a: p(x) |-\naxiom a: |- p(x)\n").unwrap_err();
    assert!(matches!(e, TheoryFileError::Syntax { line: 4, .. }));
    assert!(parse_theory("theory t\nlemma x: |-\n").is_err());
}

fn arb_formula() -> impl Strategy<Value = Formula> {
    let v = || prop_oneof![Just("a"), Just("b"), Just("x")].prop_map(Term::var);
    let leaf = prop_oneof![
        (v(), v()).prop_map(|(s, t)| Formula::eq(s, t)),
        v().prop_map(|t| Formula::pred("p", vec![t])),
        (v(), v()).prop_map(|(s, t)| Formula::pred("q", vec![s, t])),
    ];
    leaf.prop_recursive(3, 12, 2, |inner| {
        prop_oneof![
            inner.clone().prop_map(Formula::not),
            (inner.clone(), inner.clone()).prop_map(|(a, b)| Formula::and(a, b)),
            inner.clone().prop_map(|a| Formula::forall("x", a)),
            (inner, prop_oneof![Just("a"), Just("x")], Just("b"))
                .prop_map(|(body, s, t)| Formula::rtc("x", "b", body, Term::var(s), Term::var(t))),
        ]
    })
    .prop_map(|f| f.canon())
}

proptest! {
    #[test]
    fn beta_is_rtc_free_and_keeps_free_variables(f in arb_formula()) {
        for cfg in [abstract_beta(), BetaConfig::standard()] {
            let out = beta_translate(&f, &cfg).unwrap();
            prop_assert!(!out.contains_rtc());
            prop_assert_eq!(out.free_vars(), f.free_vars());
            prop_assert!(out.is_canonical());
        }
    }
}

#[test]
fn explicit_translation_only_touches_induction_nodes() {
    let p = samples::induction_transitivity();
    let out = explicit_to_cyclic(&p, &Theory::empty()).unwrap();
    for (id, node) in &p.nodes {
        if let NodeKind::Internal { rule, .. } = &node.kind {
            if rule.rule != RuleId::RtcInd {
                assert_eq!(out.nodes[id], *node);
            }
        }
    }
}
