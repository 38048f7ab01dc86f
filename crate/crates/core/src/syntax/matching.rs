//! One-way matching: find `θ` with `pattern θ = target`, where every free
//! variable of the pattern is a placeholder.

use super::{is_bound_name, Formula, Sequent, Subst, Term};

pub fn match_term(pat: &Term, target: &Term, theta: &mut Subst) -> bool {
    match (pat, target) {
        (Term::Var(v), _) if is_bound_name(v) => pat == target,
        (Term::Var(v), _) => match theta.get(v) {
            Some(t) => t == target,
            None if target.has_bound_name() => false,
            None => {
                theta.insert(v.clone(), target.clone());
                true
            }
        },
        (Term::Const(a), Term::Const(b)) => a == b,
        (Term::App(f, xs), Term::App(g, ys)) => {
            f == g && xs.len() == ys.len() && xs.iter().zip(ys).all(|(x, y)| match_term(x, y, theta))
        }
        _ => false,
    }
}

/// Matches canonical formulas. On failure `theta` may hold partial
/// bindings; callers snapshot it when backtracking.
pub fn match_formula(pat: &Formula, target: &Formula, theta: &mut Subst) -> bool {
    match (pat, target) {
        (Formula::Eq(a, b), Formula::Eq(c, d)) => match_term(a, c, theta) && match_term(b, d, theta),
        (Formula::Pred(p, xs), Formula::Pred(q, ys)) => {
            p == q && xs.len() == ys.len() && xs.iter().zip(ys).all(|(x, y)| match_term(x, y, theta))
        }
        (Formula::Not(a), Formula::Not(b)) => match_formula(a, b, theta),
        (Formula::And(a, b), Formula::And(c, d))
        | (Formula::Or(a, b), Formula::Or(c, d))
        | (Formula::Implies(a, b), Formula::Implies(c, d)) => match_formula(a, c, theta) && match_formula(b, d, theta),
        (Formula::Forall(x, a), Formula::Forall(y, b)) | (Formula::Exists(x, a), Formula::Exists(y, b)) => {
            x == y && match_formula(a, b, theta)
        }
        (
            Formula::Rtc { x, y, body, src, dst },
            Formula::Rtc { x: x2, y: y2, body: body2, src: src2, dst: dst2 },
        ) => {
            x == x2
                && y == y2
                && match_term(src, src2, theta)
                && match_term(dst, dst2, theta)
                && match_formula(body, body2, theta)
        }
        _ => false,
    }
}

/// All substitutions `θ` (extending `base`) under which every formula of
/// `pattern` lands in the corresponding side of `target`, in a
/// deterministic order. `limit` bounds the number returned.
pub fn match_sequent_into(pattern: &Sequent, target: &Sequent, base: &Subst, limit: usize) -> Vec<Subst> {
    let items: Vec<(&Formula, bool)> =
        pattern.ante.iter().map(|f| (f, true)).chain(pattern.succ.iter().map(|f| (f, false))).collect();
    let mut out = Vec::new();
    fn go(items: &[(&Formula, bool)], target: &Sequent, theta: &Subst, limit: usize, out: &mut Vec<Subst>) {
        if out.len() >= limit {
            return;
        }
        let Some(((f, left), rest)) = items.split_first() else {
            out.push(theta.clone());
            return;
        };
        let side = if *left { &target.ante } else { &target.succ };
        for g in side {
            let mut t = theta.clone();
            if match_formula(f, g, &mut t) {
                go(rest, target, &t, limit, out);
                if out.len() >= limit {
                    return;
                }
            }
        }
    }
    go(&items, target, base, limit, &mut out);
    out
}

/// A substitution with `pattern θ = target` exactly, if one exists.
pub fn match_sequent_exact(pattern: &Sequent, target: &Sequent) -> Option<Subst> {
    if pattern.ante.len() < target.ante.len() || pattern.succ.len() < target.succ.len() {
        return None;
    }
    match_sequent_into(pattern, target, &Subst::new(), 64)
        .into_iter()
        .find(|theta| pattern.substitute(theta) == *target)
}
