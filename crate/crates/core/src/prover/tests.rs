use super::*;
use crate::proofgraph::{read_proof, write_proof};
use crate::samples;
use crate::semantics::invalidates;
use crate::syntax::{parse_sequent_with, Formula, ParseMode};
use crate::tracecheck::{enumerate_basic_cycles, is_non_overlapping};

fn seq(text: &str, sig: &Signature) -> Sequent {
    let mut sig = sig.clone();
    parse_sequent_with(text, &mut sig, ParseMode::STRICT).unwrap()
}

fn rel_sig() -> Signature {
    Signature::new().with_pred("p", 2).with_pred("E", 2)
}

fn proved(outcome: SearchOutcome) -> ProofGraph {
    match outcome {
        SearchOutcome::Proved(g) => g,
        other => panic!("expected a proof, got {other:?}"),
    }
}

fn check(g: &ProofGraph, theory: &Theory) {
    g.validate(theory).unwrap();
    assert!(check_global_trace_condition(g).is_accepted());
    let back = read_proof(&write_proof(g)).unwrap();
    back.validate(theory).unwrap();
    assert!(check_global_trace_condition(&back).is_accepted());
}

#[test]
fn reflexive_goal_is_one_node() {
    let goal = seq("|- (rtc x y. p(x, y))(t, t)", &rel_sig());
    let g = proved(prove(&goal, &SearchConfig::default()));
    assert_eq!(g.nodes.len(), 1);
    assert_eq!(g.rule_at(g.root).unwrap().rule, RuleId::RtcRefl);
}

#[test]
fn transitivity_is_proved_with_one_cycle() {
    let goal = seq("(rtc x y. p(x, y))(a, b), (rtc x y. p(x, y))(b, c) |- (rtc x y. p(x, y))(a, c)", &rel_sig());
    let g = proved(prove(&goal, &SearchConfig::default()));
    check(&g, &Theory::empty());
    assert_eq!(g.root_sequent(), &goal);
    assert_eq!(enumerate_basic_cycles(&g).unwrap().len(), 1);
    assert!(is_non_overlapping(&g).unwrap());
    let cased = g.rule_at(g.root).unwrap();
    assert_eq!(cased.rule, RuleId::RtcCase);
    assert_eq!(cased.params.principal, Some(seq("(rtc x y. p(x, y))(b, c) |-", &rel_sig()).ante.pop_first().unwrap()));
}

#[test]
fn step_axiom_induction_is_proved() {
    let theory = samples::step_theory();
    let goal = seq("p(0), (rtc x y. s(x) = y)(0, n) |- p(n)", &theory.signature);
    let cfg = SearchConfig::default().with_theory(theory.clone());
    let g = proved(prove(&goal, &cfg));
    check(&g, &theory);
    assert_eq!(g.theory, "step");
    assert!(g.count_rule(RuleId::TheoryAxiom) >= 1);
}

#[test]
fn invalid_goals_are_refuted() {
    let goal = seq("|- (rtc x y. E(x, y))(a, b)", &rel_sig());
    let SearchOutcome::Refuted(m, v) = prove(&goal, &SearchConfig::default()) else { panic!("expected a refutation") };
    assert_eq!(m.size, 2);
    assert!(invalidates(&m, &v, &goal).unwrap());

    let goal = seq("(rtc x y. p(x, y))(a, a) |-", &rel_sig());
    let SearchOutcome::Refuted(m, v) = prove(&goal, &SearchConfig::default()) else { panic!("expected a refutation") };
    assert_eq!(m.size, 1);
    assert!(invalidates(&m, &v, &goal).unwrap());
}

#[test]
fn first_order_goals() {
    let sig = Signature::new().with_pred("P", 1).with_pred("Q", 1);
    for text in [
        "forall x. P(x) |- P(a)",
        "P(a) |- exists x. P(x)",
        "P(a) /\\ Q(a) |- Q(a) /\\ P(a)",
        "|- P(a) \\/ ~P(a)",
        "a = b, P(a) |- P(b)",
        "forall x. (P(x) -> Q(x)), P(c) |- Q(c)",
    ] {
        let goal = seq(text, &sig);
        let g = proved(prove(&goal, &SearchConfig::default()));
        check(&g, &Theory::empty());
        assert!(g.buds().is_empty(), "{text}");
    }
}

#[test]
fn search_is_deterministic() {
    let goal = seq("(rtc x y. p(x, y))(a, b), (rtc x y. p(x, y))(b, c) |- (rtc x y. p(x, y))(a, c)", &rel_sig());
    let a = proved(prove(&goal, &SearchConfig::default()));
    let b = proved(prove(&goal, &SearchConfig::default()));
    assert_eq!(write_proof(&a), write_proof(&b));
}

#[test]
fn budgets_end_in_unknown() {
    // Valid, but needs a cycle through two case splits.
    let goal = seq(
        "(rtc x y. p(x, y))(a, b), (rtc x y. p(x, y))(b, c), (rtc x y. p(x, y))(c, d) |- (rtc x y. p(x, y))(a, d)",
        &rel_sig(),
    );
    let cfg = SearchConfig { max_nodes: 5, refute_size: 0, ..SearchConfig::default() };
    assert!(matches!(prove(&goal, &cfg), SearchOutcome::Unknown(UnknownReason::Budget)));
    let cfg = SearchConfig { max_depth: 1, refute_size: 0, ..SearchConfig::default() };
    assert!(matches!(prove(&goal, &cfg), SearchOutcome::Unknown(UnknownReason::Depth)));
}

#[test]
fn invertible_rules_come_before_witnesses() {
    let sig = Signature::new().with_pred("p", 0).with_pred("q", 0).with_pred("r", 1);
    let node = seq("p /\\ q, forall x. r(x) |- exists y. r(y)", &sig);
    let cands = expand_fair(&node, &SearchConfig::default());
    let and_l = cands.iter().position(|(r, _)| *r == RuleId::AndL).unwrap();
    let first_witness = cands.iter().position(|(r, _)| matches!(r, RuleId::AllL | RuleId::ExR)).unwrap();
    assert!(and_l < first_witness);
}

#[test]
fn antecedent_closure_is_case_split_with_a_fresh_variable() {
    let node = seq("(rtc x y. p(x, y))(a, b) |- p(a, b)", &rel_sig());
    let cands = expand_fair(&node, &SearchConfig::default());
    let (_, params) = cands.iter().find(|(r, _)| *r == RuleId::RtcCase).unwrap();
    let z = &params.eigenvars[0];
    assert!(!node.has_free(z));
}

#[test]
fn reflexive_succedent_is_closed_first() {
    let node = seq("(rtc x y. p(x, y))(a, b) |- (rtc x y. p(x, y))(c, c), (rtc x y. p(x, y))(a, c)", &rel_sig());
    let cands = expand_fair(&node, &SearchConfig::default());
    assert_eq!(cands[0].0, RuleId::RtcRefl);
}

#[test]
fn every_pool_witness_is_proposed() {
    let sig = Signature::new().with_pred("r", 1).with_fn("f", 1);
    let node = seq("forall x. r(x), r(f(a)) |- exists y. r(f(y)), (rtc x y. r(x))(a, b)", &sig);
    let cfg = SearchConfig { fresh_pool: 2, ..SearchConfig::default() };
    let pool = witness_pool(&node, &cfg);
    assert_eq!(pool.len(), 3 + 2);
    let cands = expand_fair(&node, &cfg);
    for rule in [RuleId::AllL, RuleId::ExR, RuleId::RtcStep] {
        for w in &pool {
            assert!(cands.iter().any(|(r, p)| *r == rule && p.witness.as_ref() == Some(w)), "{rule} {w}");
        }
    }
    let _: &Formula = cands[0].1.principal.as_ref().unwrap();
}

#[test]
fn cut_candidates_only_when_enabled() {
    let node = seq("p(a, b) /\\ p(b, c) |- (rtc x y. p(x, y))(a, c)", &rel_sig());
    let plain = expand_fair(&node, &SearchConfig::default());
    let with_cut = expand_fair(&node, &SearchConfig { allow_cut: true, ..SearchConfig::default() });
    assert!(!plain.iter().any(|(r, _)| *r == RuleId::Cut));
    assert!(with_cut.iter().any(|(r, _)| *r == RuleId::Cut));
}
