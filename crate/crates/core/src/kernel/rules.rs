use std::collections::BTreeSet;

use super::{check_arities, KernelError, RuleId, RuleInstance, RuleParams, Theory};
use crate::syntax::{is_bound_name, match_sequent_exact, Formula, Sequent, Term, PAIR};

fn na(msg: impl Into<String>) -> KernelError {
    KernelError::NotApplicable(msg.into())
}

fn principal(rule: RuleId, p: &RuleParams) -> Result<&Formula, KernelError> {
    p.principal.as_ref().ok_or_else(|| na(format!("{rule} needs a principal formula")))
}

fn in_ante(c: &Sequent, f: &Formula) -> Result<(), KernelError> {
    if c.ante.contains(f) {
        Ok(())
    } else {
        Err(na(format!("`{f}` is not in the antecedent")))
    }
}

fn in_succ(c: &Sequent, f: &Formula) -> Result<(), KernelError> {
    if c.succ.contains(f) {
        Ok(())
    } else {
        Err(na(format!("`{f}` is not in the succedent")))
    }
}

fn drop_ante(c: &Sequent, f: &Formula, retain: bool) -> Sequent {
    if retain {
        c.clone()
    } else {
        c.clone().without_ante(f)
    }
}

fn drop_succ(c: &Sequent, f: &Formula, retain: bool) -> Sequent {
    if retain {
        c.clone()
    } else {
        c.clone().without_succ(f)
    }
}

fn witness(rule: RuleId, p: &RuleParams) -> Result<&Term, KernelError> {
    p.witness.as_ref().ok_or_else(|| na(format!("{rule} needs a witness term")))
}

fn eigenvar(rule: RuleId, p: &RuleParams) -> Result<&str, KernelError> {
    match p.eigenvars.as_slice() {
        [z] => Ok(z),
        _ => Err(na(format!("{rule} needs exactly one eigenvariable"))),
    }
}

fn binder_body(f: &Formula) -> Option<(&str, &Formula)> {
    match f {
        Formula::Forall(x, b) | Formula::Exists(x, b) => Some((x, b)),
        _ => None,
    }
}

/// The premises that make `rule` applied to `c` with `p` a correct
/// instance, in order. Freshness is not checked here.
pub fn expected_premises(rule: RuleId, c: &Sequent, p: &RuleParams) -> Result<Vec<Sequent>, KernelError> {
    use RuleId::*;
    let retain = p.retain;
    Ok(match rule {
        Axiom => {
            let ok = c.ante.len() == 1 && c.ante == c.succ;
            if !ok {
                return Err(na("Axiom concludes exactly `φ |- φ`"));
            }
            if let Some(f) = &p.principal {
                in_ante(c, f)?;
            }
            vec![]
        }
        EqR => {
            let ok = c.ante.is_empty()
                && c.succ.len() == 1
                && matches!(c.succ.first(), Some(Formula::Eq(a, b)) if a == b);
            if !ok {
                return Err(na("EqR concludes exactly `|- t = t`"));
            }
            vec![]
        }
        WL => {
            let f = principal(rule, p)?;
            in_ante(c, f)?;
            vec![c.clone().without_ante(f)]
        }
        WR => {
            let f = principal(rule, p)?;
            in_succ(c, f)?;
            vec![c.clone().without_succ(f)]
        }
        AndL => {
            let f = principal(rule, p)?;
            in_ante(c, f)?;
            let Formula::And(a, b) = f else { return Err(na("principal is not a conjunction")) };
            vec![drop_ante(c, f, retain).with_ante((**a).clone()).with_ante((**b).clone())]
        }
        AndR => {
            let f = principal(rule, p)?;
            in_succ(c, f)?;
            let Formula::And(a, b) = f else { return Err(na("principal is not a conjunction")) };
            let ctx = drop_succ(c, f, retain);
            vec![ctx.clone().with_succ((**a).clone()), ctx.with_succ((**b).clone())]
        }
        OrL => {
            let f = principal(rule, p)?;
            in_ante(c, f)?;
            let Formula::Or(a, b) = f else { return Err(na("principal is not a disjunction")) };
            let ctx = drop_ante(c, f, retain);
            vec![ctx.clone().with_ante((**a).clone()), ctx.with_ante((**b).clone())]
        }
        OrR => {
            let f = principal(rule, p)?;
            in_succ(c, f)?;
            let Formula::Or(a, b) = f else { return Err(na("principal is not a disjunction")) };
            vec![drop_succ(c, f, retain).with_succ((**a).clone()).with_succ((**b).clone())]
        }
        ImpL => {
            let f = principal(rule, p)?;
            in_ante(c, f)?;
            let Formula::Implies(a, b) = f else { return Err(na("principal is not an implication")) };
            let ctx = drop_ante(c, f, retain);
            vec![ctx.clone().with_succ((**a).clone()), ctx.with_ante((**b).clone())]
        }
        ImpR => {
            let f = principal(rule, p)?;
            in_succ(c, f)?;
            let Formula::Implies(a, b) = f else { return Err(na("principal is not an implication")) };
            vec![drop_succ(c, f, retain).with_ante((**a).clone()).with_succ((**b).clone())]
        }
        NotL => {
            let f = principal(rule, p)?;
            in_ante(c, f)?;
            let Formula::Not(a) = f else { return Err(na("principal is not a negation")) };
            vec![drop_ante(c, f, retain).with_succ((**a).clone())]
        }
        NotR => {
            let f = principal(rule, p)?;
            in_succ(c, f)?;
            let Formula::Not(a) = f else { return Err(na("principal is not a negation")) };
            vec![drop_succ(c, f, retain).with_ante((**a).clone())]
        }
        ExL | AllL => {
            let f = principal(rule, p)?;
            in_ante(c, f)?;
            let shape_ok = matches!((rule, f), (ExL, Formula::Exists(..)) | (AllL, Formula::Forall(..)));
            let Some((x, body)) = binder_body(f).filter(|_| shape_ok) else {
                return Err(na(format!("principal has the wrong quantifier for {rule}")));
            };
            let t = if rule == ExL { Term::var(eigenvar(rule, p)?) } else { witness(rule, p)?.clone() };
            vec![drop_ante(c, f, retain).with_ante(body.substitute1(x, &t))]
        }
        ExR | AllR => {
            let f = principal(rule, p)?;
            in_succ(c, f)?;
            let shape_ok = matches!((rule, f), (ExR, Formula::Exists(..)) | (AllR, Formula::Forall(..)));
            let Some((x, body)) = binder_body(f).filter(|_| shape_ok) else {
                return Err(na(format!("principal has the wrong quantifier for {rule}")));
            };
            let t = if rule == AllR { Term::var(eigenvar(rule, p)?) } else { witness(rule, p)?.clone() };
            vec![drop_succ(c, f, retain).with_succ(body.substitute1(x, &t))]
        }
        EqL1 | EqL2 => {
            let f = principal(rule, p)?;
            in_ante(c, f)?;
            let Formula::Eq(s, t) = f else { return Err(na("principal is not an equation")) };
            let (phi, x) = p.template.as_ref().ok_or_else(|| na(format!("{rule} needs a rewrite template")))?;
            let (shown, hidden) = if rule == EqL1 { (t, s) } else { (s, t) };
            let target = phi.substitute1(x, shown);
            in_succ(c, &target)?;
            let ctx = drop_succ(&drop_ante(c, f, retain), &target, retain);
            vec![ctx.with_succ(phi.substitute1(x, hidden))]
        }
        Cut => {
            let phi = p.cut_formula.as_ref().ok_or_else(|| na("Cut needs a cut formula"))?;
            let (left, right) = match &p.contexts {
                Some((l, r)) => (l.clone(), r.clone()),
                None => (c.clone(), c.clone()),
            };
            if left.union(&right) != *c {
                return Err(na("Cut contexts do not make up the conclusion"));
            }
            vec![left.with_succ(phi.clone()), right.with_ante(phi.clone())]
        }
        Subst => {
            let theta = p.substitution.as_ref().ok_or_else(|| na("Subst needs a substitution"))?;
            let source = p.source.as_ref().ok_or_else(|| na("Subst needs its premise as source"))?;
            if source.substitute(theta) != *c {
                return Err(na("conclusion is not the source under the substitution"));
            }
            vec![source.clone()]
        }
        RtcRefl => {
            let reflexive = |f: &Formula| matches!(f, Formula::Rtc { src, dst, .. } if src == dst);
            match &p.principal {
                Some(f) => {
                    in_succ(c, f)?;
                    if !reflexive(f) {
                        return Err(na("RtcRefl principal must be `(rtc x y. φ)(s, s)`"));
                    }
                }
                None if c.succ.iter().any(reflexive) => {}
                None => return Err(na("no `(rtc x y. φ)(s, s)` in the succedent")),
            }
            vec![]
        }
        RtcStep => {
            let f = principal(rule, p)?;
            in_succ(c, f)?;
            let Formula::Rtc { src, dst, .. } = f else { return Err(na("principal is not an RTC formula")) };
            let r = witness(rule, p)?;
            let ctx = drop_succ(c, f, retain);
            let first = f.with_endpoints(src.clone(), r.clone()).expect("rtc");
            let step = f.rtc_step(r, dst).expect("rtc");
            vec![ctx.clone().with_succ(first), ctx.with_succ(step)]
        }
        RtcCase => {
            let f = principal(rule, p)?;
            in_ante(c, f)?;
            let Formula::Rtc { src, dst, .. } = f else { return Err(na("principal is not an RTC formula")) };
            let z = Term::var(eigenvar(rule, p)?);
            let ctx = drop_ante(c, f, retain);
            vec![
                ctx.clone().with_ante(Formula::eq(src.clone(), dst.clone())),
                ctx.with_ante(f.with_endpoints(src.clone(), z.clone()).expect("rtc"))
                    .with_ante(f.rtc_step(&z, dst).expect("rtc")),
            ]
        }
        RtcInd => {
            let (gamma, delta, psi, x, y, f) = induction_parts(c, p)?;
            let step = f.rtc_step(&Term::var(x), &Term::var(y)).expect("rtc");
            vec![Sequent {
                ante: gamma.into_iter().chain([psi.clone(), step]).collect(),
                succ: delta.into_iter().chain([psi.substitute1(x, &Term::var(y))]).collect(),
            }]
        }
        PairInj => {
            let f = principal(rule, p)?;
            in_succ(c, f)?;
            let Formula::And(l, r) = f else { return Err(na("PairInj principal is `s1 = t1 /\\ s2 = t2`")) };
            let (Formula::Eq(s1, t1), Formula::Eq(s2, t2)) = (&**l, &**r) else {
                return Err(na("PairInj principal is `s1 = t1 /\\ s2 = t2`"));
            };
            let eq = Formula::eq(Term::pair(s1.clone(), s2.clone()), Term::pair(t1.clone(), t2.clone()));
            vec![drop_succ(c, f, retain).with_succ(eq)]
        }
        PairConstAx => {
            let f = principal(rule, p)?;
            in_ante(c, f)?;
            let ok = matches!(f, Formula::Eq(Term::App(g, args), Term::Const(_)) if g == PAIR && args.len() == 2);
            if !ok {
                return Err(na("PairConstAx principal is `<s, t> = c`"));
            }
            vec![]
        }
        TheoryAxiom => vec![],
    })
}

type InductionParts<'a> = (BTreeSet<Formula>, BTreeSet<Formula>, &'a Formula, &'a str, &'a str, &'a Formula);

/// Contexts `Γ`, `Δ`, template `ψ`, eigenvariables and principal of an
/// RtcInd conclusion `Γ, ψ[s/x], (rtc)(s, t) |- Δ, ψ[t/x]`.
fn induction_parts<'a>(c: &Sequent, p: &'a RuleParams) -> Result<InductionParts<'a>, KernelError> {
    let f = principal(RuleId::RtcInd, p)?;
    in_ante(c, f)?;
    let Formula::Rtc { src, dst, .. } = f else { return Err(na("principal is not an RTC formula")) };
    let [x, y] = p.eigenvars.as_slice() else { return Err(na("RtcInd needs eigenvariables [x, y]")) };
    let (psi, tx) = p.template.as_ref().ok_or_else(|| na("RtcInd needs an induction formula"))?;
    if tx != x {
        return Err(na("the induction formula must be in the first eigenvariable"));
    }
    let pre = psi.substitute1(x, src);
    let post = psi.substitute1(x, dst);
    in_ante(c, &pre)?;
    in_succ(c, &post)?;
    let mut gamma = c.ante.clone();
    let mut delta = c.succ.clone();
    if !p.retain {
        gamma.remove(&pre);
        gamma.remove(f);
        delta.remove(&post);
    }
    Ok((gamma, delta, psi, x, y, f))
}

fn check_var_name(v: &str) -> Result<(), KernelError> {
    if v.is_empty() || is_bound_name(v) {
        Err(KernelError::SchemaMismatch(format!("`{v}` cannot be an eigenvariable")))
    } else {
        Ok(())
    }
}

/// Freshness side conditions of ExL, AllR, RtcCase and RtcInd.
fn check_freshness(rule: RuleId, c: &Sequent, p: &RuleParams) -> Result<(), KernelError> {
    use RuleId::*;
    match rule {
        ExL | AllR | RtcCase => {
            let z = eigenvar(rule, p)?;
            check_var_name(z)?;
            // The conclusion holds the contexts and the principal formula.
            if c.has_free(z) {
                return Err(KernelError::FreshnessViolation(z.to_string()));
            }
        }
        RtcInd => {
            let (gamma, delta, psi, x, y, f) = induction_parts(c, p)?;
            check_var_name(x)?;
            check_var_name(y)?;
            if x == y {
                return Err(KernelError::SchemaMismatch("RtcInd eigenvariables must differ".into()));
            }
            let ctx_has = |v: &str| gamma.iter().chain(delta.iter()).any(|g| g.has_free(v));
            if ctx_has(x) {
                return Err(KernelError::FreshnessViolation(x.to_string()));
            }
            if ctx_has(y) || psi.has_free(y) {
                return Err(KernelError::FreshnessViolation(y.to_string()));
            }
            // The step formula instantiates the relation's own binders; its
            // parameters must not be captured.
            if let Formula::Rtc { x: bx, y: by, body, .. } = f {
                let mut params = body.free_vars();
                params.remove(bx);
                params.remove(by);
                for v in [x, y] {
                    if params.contains(v) {
                        return Err(KernelError::FreshnessViolation(v.to_string()));
                    }
                }
            }
        }
        _ => {}
    }
    Ok(())
}

fn as_mismatch(e: KernelError) -> KernelError {
    match e {
        KernelError::NotApplicable(m) => KernelError::SchemaMismatch(m),
        other => other,
    }
}

/// Ok iff `r` instantiates its rule schema exactly and its side conditions
/// hold. Theory axioms and the pair axiom's designated constant come from
/// `theory`.
pub fn check_rule_instance(r: &RuleInstance, theory: &Theory) -> Result<(), KernelError> {
    let expected_count = r.rule.premise_count();
    if r.premises.len() != expected_count {
        return Err(KernelError::PremiseCount { rule: r.rule, expected: expected_count, found: r.premises.len() });
    }
    check_arities(std::iter::once(&r.conclusion).chain(r.premises.iter()))?;
    match r.rule {
        RuleId::TheoryAxiom => check_theory_axiom(&r.conclusion, &r.params, theory)?,
        RuleId::PairConstAx => {
            let designated = theory
                .pair_const()
                .ok_or_else(|| KernelError::SchemaMismatch("no designated pair constant".into()))?;
            if let Some(Formula::Eq(_, Term::Const(k))) = &r.params.principal {
                if k != designated {
                    return Err(KernelError::SchemaMismatch(format!(
                        "`{k}` is not the designated pair constant `{designated}`"
                    )));
                }
            }
        }
        _ => {}
    }
    let expected = expected_premises(r.rule, &r.conclusion, &r.params).map_err(as_mismatch)?;
    check_freshness(r.rule, &r.conclusion, &r.params).map_err(as_mismatch)?;
    for (i, (want, got)) in expected.iter().zip(&r.premises).enumerate() {
        if want != got {
            return Err(KernelError::SchemaMismatch(format!("premise {}: expected `{want}`, found `{got}`", i + 1)));
        }
    }
    Ok(())
}

fn check_theory_axiom(c: &Sequent, p: &RuleParams, theory: &Theory) -> Result<(), KernelError> {
    let candidates: Vec<(&String, &Sequent)> = match &p.axiom {
        Some(name) => {
            let ax = theory.axiom(name).ok_or_else(|| KernelError::UnknownTheoryAxiom(name.clone()))?;
            vec![(name, ax)]
        }
        None => theory.axioms.iter().map(|(n, s)| (n, s)).collect(),
    };
    if candidates.is_empty() {
        return Err(KernelError::UnknownTheoryAxiom("<none>".into()));
    }
    let instance_of = |ax: &Sequent| match &p.substitution {
        Some(theta) => ax.substitute(theta) == *c,
        None => match_sequent_exact(ax, c).is_some(),
    };
    if candidates.iter().any(|(_, ax)| instance_of(ax)) {
        Ok(())
    } else {
        Err(KernelError::SchemaMismatch("conclusion is not an instance of the theory axiom".into()))
    }
}

/// WL/WR instances taking `from` down to `to` (which must be included in
/// `from`), antecedent formulas first. The last instance's premise is `to`.
pub fn weakening_chain(from: &Sequent, to: &Sequent) -> Vec<RuleInstance> {
    assert!(from.includes(to), "weakening target must be included in the source");
    let mut out = Vec::new();
    let mut cur = from.clone();
    let extra_ante: Vec<Formula> = from.ante.difference(&to.ante).cloned().collect();
    let extra_succ: Vec<Formula> = from.succ.difference(&to.succ).cloned().collect();
    for f in extra_ante {
        let next = cur.clone().without_ante(&f);
        out.push(RuleInstance {
            rule: RuleId::WL,
            conclusion: cur,
            premises: vec![next.clone()],
            params: RuleParams::principal(f),
        });
        cur = next;
    }
    for f in extra_succ {
        let next = cur.clone().without_succ(&f);
        out.push(RuleInstance {
            rule: RuleId::WR,
            conclusion: cur,
            premises: vec![next.clone()],
            params: RuleParams::principal(f),
        });
        cur = next;
    }
    out
}
