use proptest::prelude::*;

use super::*;
use crate::syntax::{parse_formula, parse_sequent, Signature};

fn nat() -> Signature {
    Signature::new().with_const("0").with_fn("s", 1).with_pred("Q", 0).with_pred("p", 1).with_pred("E", 2)
}

fn seq(text: &str) -> Sequent {
    parse_sequent(text, &nat()).unwrap()
}

fn form(text: &str) -> Formula {
    parse_formula(text, &nat()).unwrap()
}

fn inst(rule: RuleId, conclusion: &str, premises: &[&str], params: RuleParams) -> RuleInstance {
    RuleInstance { rule, conclusion: seq(conclusion), premises: premises.iter().map(|p| seq(p)).collect(), params }
}

const N: &str = "(rtc x y. s(x)=y)(0,n)";

#[test]
fn case_split_on_successor_closure() {
    let r = inst(
        RuleId::RtcCase,
        &format!("{N} |- Q"),
        &["0 = n |- Q", "(rtc x y. s(x)=y)(0,z), s(z) = n |- Q"],
        RuleParams::principal(form(N)).with_eigenvars(["z"]),
    );
    assert_eq!(check_rule_instance(&r, &Theory::empty()), Ok(()));
}

#[test]
fn case_split_eigenvariable_must_be_fresh() {
    let r = inst(
        RuleId::RtcCase,
        &format!("{N} |- p(z)"),
        &["0 = n |- p(z)", "(rtc x y. s(x)=y)(0,z), s(z) = n |- p(z)"],
        RuleParams::principal(form(N)).with_eigenvars(["z"]),
    );
    assert_eq!(check_rule_instance(&r, &Theory::empty()), Err(KernelError::FreshnessViolation("z".into())));
}

#[test]
fn reflexivity_has_no_premises() {
    let r = inst(RuleId::RtcRefl, "|- (rtc x y. E(x,y))(t,t)", &[], RuleParams::default());
    assert_eq!(check_rule_instance(&r, &Theory::empty()), Ok(()));
    let bad = inst(RuleId::RtcRefl, "|- (rtc x y. E(x,y))(t,u)", &[], RuleParams::default());
    assert!(check_rule_instance(&bad, &Theory::empty()).is_err());
}

#[test]
fn conjunction_right_splits() {
    let ps = expected_premises(RuleId::AndR, &seq("|- p(a) /\\ E(a,a)"), &RuleParams::principal(form("p(a) /\\ E(a,a)")))
        .unwrap();
    assert_eq!(ps, vec![seq("|- p(a)"), seq("|- E(a,a)")]);
}

#[test]
fn step_rule_keeps_context() {
    let c = seq("p(a) |- (rtc x y. E(x,y))(a,c), Q");
    let params = RuleParams::principal(form("(rtc x y. E(x,y))(a,c)")).with_witness(Term::var("b"));
    let ps = expected_premises(RuleId::RtcStep, &c, &params).unwrap();
    assert_eq!(ps, vec![seq("p(a) |- (rtc x y. E(x,y))(a,b), Q"), seq("p(a) |- E(b,c), Q")]);
}

#[test]
fn universal_left_needs_witness() {
    let r = expected_premises(RuleId::AllL, &seq("forall x. p(x) |- "), &RuleParams::principal(form("forall x. p(x)")));
    assert!(matches!(r, Err(KernelError::NotApplicable(_))));
}

#[test]
fn premise_count_is_checked_first() {
    let r = inst(RuleId::Cut, "|- Q", &["|- Q"], RuleParams::default().with_cut(form("Q")));
    assert_eq!(check_rule_instance(&r, &Theory::empty()), Err(KernelError::PremiseCount { rule: RuleId::Cut, expected: 2, found: 1 }));
}

#[test]
fn mixed_arities_are_rejected() {
    let mut sig = Signature::new();
    let f = crate::syntax::parse_formula_with("p(a)", &mut sig, crate::syntax::ParseMode::INFER).unwrap();
    let g = Formula::pred("p", vec![Term::constant("a"), Term::constant("a")]);
    let r = RuleInstance {
        rule: RuleId::WL,
        conclusion: Sequent::new([f.clone(), g.clone()], []),
        premises: vec![Sequent::new([g], [])],
        params: RuleParams::principal(f),
    };
    assert!(matches!(check_rule_instance(&r, &Theory::empty()), Err(KernelError::ArityMismatch { .. })));
}

#[test]
fn theory_axioms_admit_instances() {
    let theory = Theory::new("step", nat()).with_axiom("step", seq("p(x), s(x) = y |- p(y)"));
    let r = inst(RuleId::TheoryAxiom, "p(a), s(a) = b |- p(b)", &[], RuleParams::default().with_axiom("step"));
    assert_eq!(check_rule_instance(&r, &theory), Ok(()));
    let unknown = inst(RuleId::TheoryAxiom, "p(a) |- p(a)", &[], RuleParams::default().with_axiom("nope"));
    assert_eq!(check_rule_instance(&unknown, &theory), Err(KernelError::UnknownTheoryAxiom("nope".into())));
    let wrong = inst(RuleId::TheoryAxiom, "p(a), s(a) = b |- p(a)", &[], RuleParams::default());
    assert!(matches!(check_rule_instance(&wrong, &theory), Err(KernelError::SchemaMismatch(_))));
}

#[test]
fn weakening_chain_ends_at_target() {
    let from = seq("p(a), E(a,b) |- Q, p(b)");
    let to = seq("p(a) |- p(b)");
    let chain = weakening_chain(&from, &to);
    assert_eq!(chain.len(), 2);
    assert_eq!(chain[0].conclusion, from);
    assert_eq!(chain.last().unwrap().premises[0], to);
    for r in &chain {
        assert_eq!(check_rule_instance(r, &Theory::empty()), Ok(()));
    }
}

#[test]
fn rule_names_round_trip() {
    for r in RuleId::ALL {
        assert_eq!(r.name().parse::<RuleId>(), Ok(r));
    }
    assert!("Nope".parse::<RuleId>().is_err());
}

proptest! {
    /// An eigenvariable renamed to a variable of the context always breaks
    /// freshness.
    #[test]
    fn eigenvariable_clash_is_detected(ctx_var in "[a-d]", rule_pick in 0usize..4) {
        let ctx = format!("E({ctx_var}, {ctx_var})");
        let (rule, conclusion, params) = match rule_pick {
            0 => (RuleId::ExL, format!("exists u. p(u), {ctx} |- "), RuleParams::principal(form("exists u. p(u)"))),
            1 => (RuleId::AllR, format!("{ctx} |- forall u. p(u)"), RuleParams::principal(form("forall u. p(u)"))),
            2 => (RuleId::RtcCase, format!("{N}, {ctx} |- "), RuleParams::principal(form(N))),
            _ => (
                RuleId::RtcInd,
                format!("p(0), {N}, {ctx} |- p(n)"),
                RuleParams::principal(form(N)).with_template(form("p(w)"), "w"),
            ),
        };
        let c = seq(&conclusion);
        let params = if rule == RuleId::RtcInd {
            let mut p = params.with_eigenvars(["w", ctx_var.as_str()]);
            p.template = Some((form(&format!("p({})", "w")), "w".into()));
            p
        } else {
            params.with_eigenvars([ctx_var.as_str()])
        };
        let premises = expected_premises(rule, &c, &params).unwrap();
        let r = RuleInstance { rule, conclusion: c, premises, params };
        prop_assert_eq!(check_rule_instance(&r, &Theory::empty()), Err(KernelError::FreshnessViolation(ctx_var)));
    }
}
