use super::eval::term_value;
use super::{evaluate, invalidates, minimal_chain, FiniteModel, SemanticsError, Valuation};
use crate::kernel::{RuleId, RuleInstance};
use crate::syntax::{Formula, Sequent, Term};

/// A premise invalidated by a model/valuation pair derived from one that
/// invalidates the conclusion.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Descent {
    pub premise: usize,
    pub model: FiniteModel,
    pub valuation: Valuation,
}

/// Assigns 0 to every free variable of `s` that `v` leaves unvalued.
fn complete(v: &mut Valuation, s: &Sequent) {
    for x in s.free_vars() {
        v.entry(x).or_insert(0);
    }
}

fn with(v: &Valuation, x: &str, a: usize) -> Valuation {
    let mut w = v.clone();
    w.insert(x.to_string(), a);
    w
}

/// Given `(m, v)` invalidating the conclusion of `r`, a premise of `r` and
/// a valuation invalidating it in the same model. For RTC formulas related
/// by a trace step the degree never increases, and strictly decreases on
/// the progressing step of RtcCase.
pub fn descent_witness(r: &RuleInstance, m: &FiniteModel, v: &Valuation) -> Result<Descent, SemanticsError> {
    let mut v = v.clone();
    complete(&mut v, &r.conclusion);
    if !invalidates(m, &v, &r.conclusion)? {
        return Err(SemanticsError::NoCounterexample);
    }
    let p = &r.params;
    let done = |premise: usize, mut valuation: Valuation| -> Result<Descent, SemanticsError> {
        complete(&mut valuation, &r.premises[premise]);
        debug_assert!(invalidates(m, &valuation, &r.premises[premise]).unwrap_or(false));
        Ok(Descent { premise, model: m.clone(), valuation })
    };
    match r.rule {
        RuleId::Subst => {
            let theta = p.substitution.clone().unwrap_or_default();
            let mut w = v.clone();
            for x in r.premises[0].free_vars() {
                let a = match theta.get(&x) {
                    Some(t) => term_value(m, &v, t)?,
                    None => v.get(&x).copied().unwrap_or(0),
                };
                w.insert(x, a);
            }
            done(0, w)
        }
        RuleId::ExL | RuleId::AllR => {
            let (Some(f), [z]) = (&p.principal, p.eigenvars.as_slice()) else {
                return Err(SemanticsError::NotApplicable("missing principal or eigenvariable".into()));
            };
            let (Formula::Exists(x, body) | Formula::Forall(x, body)) = f else {
                return Err(SemanticsError::NotApplicable("principal is not quantified".into()));
            };
            let want = r.rule == RuleId::ExL;
            let inst = body.substitute1(x, &Term::var(z.clone()));
            for a in 0..m.size {
                let w = with(&v, z, a);
                if evaluate(m, &w, &inst)? == want {
                    return done(0, w);
                }
            }
            Err(SemanticsError::NoCounterexample)
        }
        RuleId::RtcCase => {
            let (Some(f @ Formula::Rtc { src, dst, .. }), [z]) = (&p.principal, p.eigenvars.as_slice()) else {
                return Err(SemanticsError::NotApplicable("RtcCase needs an RTC principal and one eigenvariable".into()));
            };
            if term_value(m, &v, src)? == term_value(m, &v, dst)? {
                return done(0, v);
            }
            let chain = minimal_chain(m, &v, f)?.ok_or(SemanticsError::NoCounterexample)?;
            let pen = chain[chain.len() - 2];
            done(1, with(&v, z, pen))
        }
        RuleId::RtcInd => {
            let (Some(f @ Formula::Rtc { src, dst, .. }), [x, y], Some((psi, _))) =
                (&p.principal, p.eigenvars.as_slice(), &p.template)
            else {
                return Err(SemanticsError::NotApplicable("RtcInd needs principal, eigenvariables and template".into()));
            };
            let (s, t) = (term_value(m, &v, src)?, term_value(m, &v, dst)?);
            let chain = if s == t { vec![s] } else { minimal_chain(m, &v, f)?.ok_or(SemanticsError::NoCounterexample)? };
            for pair in chain.windows(2) {
                let here = evaluate(m, &with(&v, x, pair[0]), psi)?;
                let next = evaluate(m, &with(&v, x, pair[1]), psi)?;
                if here && !next {
                    return done(0, with(&with(&v, x, pair[0]), y, pair[1]));
                }
            }
            Err(SemanticsError::NoCounterexample)
        }
        rule if rule.premise_count() == 0 => {
            Err(SemanticsError::NotApplicable(format!("{rule} has no premises")))
        }
        _ => {
            for (i, prem) in r.premises.iter().enumerate() {
                let mut w = v.clone();
                complete(&mut w, prem);
                if invalidates(m, &w, prem)? {
                    return done(i, w);
                }
            }
            Err(SemanticsError::NoCounterexample)
        }
    }
}
