use proptest::prelude::*;

use super::*;
use crate::kernel::{RuleId, RuleInstance, RuleParams};
use crate::syntax::{parse_formula, parse_sequent, Formula, Sequent, Signature, Term};

fn edge_sig() -> Signature {
    Signature::new().with_const("c0").with_const("c2").with_pred("E", 2)
}

fn chain_model() -> FiniteModel {
    let mut m = FiniteModel::empty(3, &edge_sig());
    m.set_const("c0", 0).set_const("c2", 2).set_pred("E", 2, &[&[0, 1], &[1, 2]]);
    m
}

fn val(pairs: &[(&str, usize)]) -> Valuation {
    pairs.iter().map(|(x, a)| (x.to_string(), *a)).collect()
}

/// Reflexive-transitive closure of a row-major boolean matrix.
fn warshall(rel: &[bool], n: usize) -> Vec<bool> {
    let mut c = rel.to_vec();
    for i in 0..n {
        c[i * n + i] = true;
    }
    for k in 0..n {
        for i in 0..n {
            for j in 0..n {
                if c[i * n + k] && c[k * n + j] {
                    c[i * n + j] = true;
                }
            }
        }
    }
    c
}

#[test]
fn reflexive_instance_is_true() {
    let f = parse_formula("(rtc x y. E(x,y))(c2, c2)", &edge_sig()).unwrap();
    assert!(evaluate(&chain_model(), &Valuation::new(), &f).unwrap());
}

#[test]
fn reachability_along_chain() {
    let m = chain_model();
    let fwd = parse_formula("(rtc x y. E(x,y))(c0, c2)", &edge_sig()).unwrap();
    let back = parse_formula("(rtc x y. E(x,y))(c2, c0)", &edge_sig()).unwrap();
    assert!(evaluate(&m, &Valuation::new(), &fwd).unwrap());
    assert!(!evaluate(&m, &Valuation::new(), &back).unwrap());
}

#[test]
fn degree_examples() {
    let m = chain_model();
    let sig = edge_sig();
    let same = parse_formula("(rtc x y. E(x,y))(c0, c0)", &sig).unwrap();
    let fwd = parse_formula("(rtc x y. E(x,y))(c0, c2)", &sig).unwrap();
    let back = parse_formula("(rtc x y. E(x,y))(c2, c0)", &sig).unwrap();
    let none = Valuation::new();
    assert_eq!(degree(&m, &none, &same).unwrap(), DegreeResult::Degree(0));
    assert_eq!(degree(&m, &none, &fwd).unwrap(), DegreeResult::Degree(2));
    assert_eq!(degree(&m, &none, &back).unwrap(), DegreeResult::Unsatisfied);
    assert_eq!(minimal_chain(&m, &none, &fwd).unwrap(), Some(vec![0, 1, 2]));
    let not_rtc = parse_formula("E(c0, c2)", &sig).unwrap();
    assert_eq!(degree(&m, &none, &not_rtc), Err(SemanticsError::NotAnRtcFormula));
}

#[test]
fn unbound_variable_is_reported() {
    let f = parse_formula("E(x, c0)", &edge_sig()).unwrap();
    assert_eq!(evaluate(&chain_model(), &Valuation::new(), &f), Err(SemanticsError::UnboundVariable("x".into())));
}

#[test]
fn uninterpreted_symbol_is_a_mismatch() {
    let f = parse_formula("F(c0)", &edge_sig().with_pred("F", 1)).unwrap();
    assert!(matches!(evaluate(&chain_model(), &Valuation::new(), &f), Err(SemanticsError::SignatureMismatch(_))));
}

#[test]
fn rtc_with_parameter_and_nesting() {
    // Parameter z of the body is read from the enclosing scope.
    let sig = Signature::new().with_pred("E", 2);
    let m = {
        let mut m = FiniteModel::empty(3, &sig);
        m.set_pred("E", 2, &[&[0, 1], &[1, 2]]);
        m
    };
    let f = parse_formula("forall z. (rtc x y. E(x,y) /\\ ~(y = z))(u, w)", &sig).unwrap();
    assert!(!evaluate(&m, &val(&[("u", 0), ("w", 2)]), &f).unwrap());
    let nested = parse_formula("(rtc x y. (rtc a b. E(a,b))(x,y) /\\ ~(x = y))(u, w)", &sig).unwrap();
    assert!(evaluate(&m, &val(&[("u", 0), ("w", 2)]), &nested).unwrap());
    assert!(!evaluate(&m, &val(&[("u", 2), ("w", 0)]), &nested).unwrap());
}

#[test]
fn model_dump_round_trips() {
    let sig = edge_sig().with_fn("s", 1);
    let mut m = chain_model();
    m.set_fn("s", 1, vec![1, 2, 0]);
    let text = m.to_string();
    assert_eq!(text, "model { size = 3; const c0 = 0; const c2 = 2; fn s = [1, 2, 0]; pred E = {(0, 1), (1, 2)}; }");
    assert_eq!(parse_model(&text, &sig).unwrap(), m);
    assert!(parse_model("model { size = 2; const a = 5; }", &sig).is_err());
    assert_eq!(format_valuation(&val(&[("x", 0), ("y", 1)])), "valuation { x = 0; y = 1; }");
}

#[test]
fn smallest_refutation_of_atom() {
    let sig = Signature::new().with_const("a").with_pred("p", 1);
    let s = parse_sequent("|- p(a)", &sig).unwrap();
    let (m, _) = find_counter_model(&s, 1, &[]).unwrap().expect("counter-model");
    assert_eq!(m.size, 1);
    assert_eq!(m.holds("p", &[0]), Some(false));
}

#[test]
fn tautology_has_no_counter_model() {
    let sig = Signature::new().with_const("a").with_pred("p", 1);
    let s = parse_sequent("p(a) |- p(a)", &sig).unwrap();
    for n in 1..=4 {
        assert_eq!(find_counter_model(&s, n, &[]).unwrap(), None);
    }
}

#[test]
fn reversed_reachability_needs_two_elements() {
    let sig = Signature::new().with_const("a").with_const("b").with_pred("E", 2);
    let s = parse_sequent("(rtc x y. E(x,y))(a,b) |- (rtc x y. E(x,y))(b,a)", &sig).unwrap();
    let (m, v) = find_counter_model(&s, 3, &[]).unwrap().expect("counter-model");
    assert_eq!(m.size, 2);
    assert!(invalidates(&m, &v, &s).unwrap());
    // Oracle: brute force every size-2 model for the same minimal hit.
    let space = ModelSpace::new(&Signature::of_formulas(s.formulas()), 2);
    let first = (0..space.count().unwrap()).map(|i| space.model(i)).find(|m| invalidates(m, &v, &s).unwrap());
    assert_eq!(first.as_ref(), Some(&m));
}

#[test]
fn search_respects_cap_and_budget() {
    let sig = Signature::new().with_pred("E", 2);
    let s = parse_sequent("|- (rtc x y. E(x,y))(u,u)", &sig).unwrap();
    assert_eq!(find_counter_model(&s, 9, &[]), Err(SemanticsError::SizeAboveCap { requested: 9, cap: 5 }));
    let tight = SearchLimits { model_budget: 100, ..SearchLimits::default() };
    assert_eq!(
        find_counter_model_with(&s, 4, &[], tight),
        Err(SemanticsError::BudgetExceeded { size: 3, budget: 100 })
    );
}

#[test]
fn parallel_and_sequential_search_agree() {
    let sig = Signature::new().with_const("a").with_const("b").with_pred("E", 2).with_pred("q", 1);
    let s = parse_sequent("(rtc x y. E(x,y) /\\ q(y))(a,b), q(a) |- (rtc x y. E(y,x))(a,b)", &sig).unwrap();
    let seq = SearchLimits { parallel: false, ..SearchLimits::default() };
    assert_eq!(find_counter_model(&s, 3, &[]).unwrap(), find_counter_model_with(&s, 3, &[], seq).unwrap());
}

#[test]
fn theory_sequents_filter_models() {
    let sig = Signature::new().with_const("a").with_pred("p", 1);
    let s = parse_sequent("|- p(a)", &sig).unwrap();
    let theory = [parse_sequent("|- p(x)", &sig).unwrap()];
    assert_eq!(find_counter_model(&s, 3, &theory).unwrap(), None);
}

#[test]
fn descent_through_case_split_picks_penultimate() {
    let sig = Signature::new().with_const("a").with_const("b").with_pred("E", 2);
    let f = parse_formula("(rtc x y. E(x,y))(a,b)", &sig).unwrap();
    let c = Sequent::new([f.clone()], []);
    let r = RuleInstance::derive(RuleId::RtcCase, c, RuleParams::principal(f.clone()).with_eigenvars(["z"])).unwrap();
    let mut m = FiniteModel::empty(3, &sig);
    m.set_const("a", 0).set_const("b", 2).set_pred("E", 2, &[&[0, 1], &[1, 2]]);
    let d = descent_witness(&r, &m, &Valuation::new()).unwrap();
    assert_eq!(d.premise, 1);
    assert_eq!(d.valuation.get("z"), Some(&1));
    let ancestor = f.with_endpoints(Term::constant("a"), Term::var("z")).unwrap();
    assert_eq!(degree(&m, &Valuation::new(), &f).unwrap(), DegreeResult::Degree(2));
    assert_eq!(degree(&m, &d.valuation, &ancestor).unwrap(), DegreeResult::Degree(1));
}

#[test]
fn descent_rejects_valid_conclusions() {
    let sig = Signature::new().with_const("a").with_const("b").with_const("c").with_pred("E", 2);
    let f = parse_formula("(rtc x y. E(x,y))(a,c)", &sig).unwrap();
    let r = RuleInstance::derive(RuleId::RtcStep, Sequent::new([], [f.clone()]), RuleParams::principal(f).with_witness(Term::constant("b")))
        .unwrap();
    let mut m = FiniteModel::empty(3, &sig);
    m.set_const("a", 0).set_const("b", 1).set_const("c", 2).set_pred("E", 2, &[&[0, 1], &[1, 2]]);
    assert_eq!(descent_witness(&r, &m, &Valuation::new()), Err(SemanticsError::NoCounterexample));
}

#[test]
fn descent_through_weakening_keeps_valuation() {
    let sig = Signature::new().with_pred("p", 1).with_pred("q", 1);
    let c = parse_sequent("p(x), q(x) |- ", &sig).unwrap();
    let q = parse_formula("q(x)", &sig).unwrap();
    let r = RuleInstance::derive(RuleId::WL, c, RuleParams::principal(q)).unwrap();
    let mut m = FiniteModel::empty(1, &sig);
    m.set_pred("p", 1, &[&[0]]).set_pred("q", 1, &[&[0]]);
    let v = val(&[("x", 0)]);
    let d = descent_witness(&r, &m, &v).unwrap();
    assert_eq!((d.premise, d.valuation), (0, v));
}

#[test]
fn descent_on_reflexivity_is_not_applicable_or_impossible() {
    let sig = Signature::new().with_const("a").with_pred("E", 2);
    let f = parse_formula("(rtc x y. E(x,y))(a,a)", &sig).unwrap();
    let r = RuleInstance::derive(RuleId::RtcRefl, Sequent::new([], [f.clone()]), RuleParams::principal(f)).unwrap();
    let m = FiniteModel::empty(1, &sig);
    assert_eq!(descent_witness(&r, &m, &Valuation::new()), Err(SemanticsError::NoCounterexample));
}

fn arb_model(size: usize) -> impl Strategy<Value = FiniteModel> {
    (proptest::collection::vec(any::<bool>(), size * size), proptest::collection::vec(any::<bool>(), size)).prop_map(
        move |(e, q)| {
            let sig = Signature::new().with_pred("E", 2).with_pred("q", 1);
            let mut m = FiniteModel::empty(size, &sig);
            m.preds.get_mut("E").unwrap().table = e;
            m.preds.get_mut("q").unwrap().table = q;
            m
        },
    )
}

proptest! {
    #[test]
    fn evaluate_agrees_with_warshall(m in (1usize..=4).prop_flat_map(arb_model)) {
        let sig = Signature::new().with_pred("E", 2).with_pred("q", 1);
        let body = parse_formula("E(x,y) /\\ ~q(y)", &sig).unwrap();
        let f = Formula::rtc("x", "y", body.clone(), Term::var("u"), Term::var("w")).canon();
        let n = m.size;
        let mut rel = vec![false; n * n];
        for a in 0..n {
            for b in 0..n {
                rel[a * n + b] = evaluate(&m, &val(&[("x", a), ("y", b)]), &body).unwrap();
            }
        }
        let closure = warshall(&rel, n);
        for a in 0..n {
            for b in 0..n {
                let v = val(&[("u", a), ("w", b)]);
                let holds = evaluate(&m, &v, &f).unwrap();
                prop_assert_eq!(holds, closure[a * n + b]);
                let d = degree(&m, &v, &f).unwrap();
                prop_assert_eq!(holds, d != DegreeResult::Unsatisfied);
                prop_assert_eq!(a == b, d == DegreeResult::Degree(0));
            }
        }
    }
}
