use std::collections::BTreeSet;

use super::SearchConfig;
use crate::kernel::{RuleId, RuleParams, Theory};
use crate::syntax::{match_formula, FreshNames, Formula, Sequent, Subst, Term};

/// Rules that close a node outright, after weakening it to the rule's
/// exact conclusion where needed.
pub(crate) fn closures(s: &Sequent, theory: &Theory) -> Vec<(RuleId, RuleParams)> {
    let mut out = Vec::new();
    for f in s.ante.intersection(&s.succ) {
        out.push((RuleId::Axiom, RuleParams::principal(f.clone())));
    }
    for f in &s.succ {
        match f {
            Formula::Eq(a, b) if a == b => out.push((RuleId::EqR, RuleParams::principal(f.clone()))),
            Formula::Rtc { src, dst, .. } if src == dst => out.push((RuleId::RtcRefl, RuleParams::principal(f.clone()))),
            _ => {}
        }
    }
    for (name, ax) in &theory.axioms {
        for theta in crate::syntax::match_sequent_into(ax, s, &Subst::new(), 4) {
            if s.includes(&ax.substitute(&theta)) {
                out.push((RuleId::TheoryAxiom, RuleParams::default().with_axiom(name.clone()).with_substitution(theta)));
                break;
            }
        }
    }
    out
}

/// The first invertible rule applicable to `s`: single-premise ones before
/// branching ones.
pub(crate) fn invertible(s: &Sequent) -> Option<(RuleId, RuleParams)> {
    let mut fresh = FreshNames::avoiding(s.all_names());
    let left = |f: &Formula| match f {
        Formula::Not(_) => Some((RuleId::NotL, 0)),
        Formula::And(..) => Some((RuleId::AndL, 0)),
        Formula::Exists(..) => Some((RuleId::ExL, 0)),
        Formula::Or(..) => Some((RuleId::OrL, 1)),
        Formula::Implies(..) => Some((RuleId::ImpL, 1)),
        _ => None,
    };
    let right = |f: &Formula| match f {
        Formula::Not(_) => Some((RuleId::NotR, 0)),
        Formula::Or(..) => Some((RuleId::OrR, 0)),
        Formula::Implies(..) => Some((RuleId::ImpR, 0)),
        Formula::Forall(..) => Some((RuleId::AllR, 0)),
        Formula::And(..) => Some((RuleId::AndR, 1)),
        _ => None,
    };
    let cands = s
        .ante
        .iter()
        .filter_map(|f| left(f).map(|r| (r, f)))
        .chain(s.succ.iter().filter_map(|f| right(f).map(|r| (r, f))));
    let ((rule, _), f) = cands.min_by_key(|((_, branching), _)| *branching)?;
    let mut p = RuleParams::principal(f.clone());
    if matches!(rule, RuleId::ExL | RuleId::AllR) {
        p = p.with_eigenvars([fresh.fresh()]);
    }
    Some((rule, p))
}

/// Replaces every occurrence of `t` in `f` by the variable `x`.
pub(crate) fn abstract_term(f: &Formula, t: &Term, x: &str) -> Formula {
    fn term(u: &Term, t: &Term, x: &str) -> Term {
        if u == t {
            return Term::var(x);
        }
        match u {
            Term::App(g, args) => Term::App(g.clone(), args.iter().map(|a| term(a, t, x)).collect()),
            _ => u.clone(),
        }
    }
    fn go(f: &Formula, t: &Term, x: &str) -> Formula {
        match f {
            Formula::Eq(a, b) => Formula::Eq(term(a, t, x), term(b, t, x)),
            Formula::Pred(p, args) => Formula::Pred(p.clone(), args.iter().map(|a| term(a, t, x)).collect()),
            Formula::Not(a) => Formula::not(go(a, t, x)),
            Formula::And(a, b) => Formula::and(go(a, t, x), go(b, t, x)),
            Formula::Or(a, b) => Formula::or(go(a, t, x), go(b, t, x)),
            Formula::Implies(a, b) => Formula::implies(go(a, t, x), go(b, t, x)),
            Formula::Forall(v, a) => Formula::Forall(v.clone(), Box::new(go(a, t, x))),
            Formula::Exists(v, a) => Formula::Exists(v.clone(), Box::new(go(a, t, x))),
            Formula::Rtc { x: bx, y: by, body, src, dst } => Formula::Rtc {
                x: bx.clone(),
                y: by.clone(),
                body: Box::new(go(body, t, x)),
                src: term(src, t, x),
                dst: term(dst, t, x),
            },
        }
    }
    go(f, t, x).canon()
}

/// Formulas `φ` such that some theory axiom instance has all its formulas in
/// `s` except the antecedent formula `φ`.
pub(crate) fn theory_cuts(s: &Sequent, theory: &Theory) -> Vec<Formula> {
    fn go(
        items: &[(&Formula, bool)],
        s: &Sequent,
        theta: &Subst,
        missing: Option<&Formula>,
        out: &mut Vec<(Subst, Formula)>,
    ) {
        if out.len() >= 16 {
            return;
        }
        let Some(((f, left), rest)) = items.split_first() else {
            if let Some(m) = missing {
                out.push((theta.clone(), m.clone()));
            }
            return;
        };
        let side = if *left { &s.ante } else { &s.succ };
        for g in side {
            let mut t = theta.clone();
            if match_formula(f, g, &mut t) {
                go(rest, s, &t, missing, out);
            }
        }
        if *left && missing.is_none() {
            go(rest, s, theta, Some(f), out);
        }
    }
    let mut found = BTreeSet::new();
    for (_, ax) in &theory.axioms {
        let items: Vec<(&Formula, bool)> =
            ax.succ.iter().map(|f| (f, false)).chain(ax.ante.iter().map(|f| (f, true))).collect();
        let mut hits = Vec::new();
        go(&items, s, &Subst::new(), None, &mut hits);
        let vars = ax.free_vars();
        for (theta, m) in hits {
            if vars.iter().all(|v| theta.contains_key(v)) && s.includes(&ax.substitute(&theta).without_ante(&m.substitute(&theta))) {
                let phi = m.substitute(&theta);
                if !s.ante.contains(&phi) {
                    found.insert(phi);
                }
            }
        }
    }
    found.into_iter().collect()
}

/// Terms that may instantiate quantifiers and RTC steps at `s`: the
/// bound-free subterms of `s` followed by `cfg.fresh_pool` fresh variables.
pub fn witness_pool(s: &Sequent, cfg: &SearchConfig) -> Vec<Term> {
    let mut terms = BTreeSet::new();
    for f in s.formulas() {
        f.closed_subterms_into(&mut terms);
    }
    let mut pool: Vec<Term> = terms.into_iter().collect();
    let mut fresh = FreshNames::avoiding(s.all_names());
    for _ in 0..cfg.fresh_pool {
        pool.push(Term::var(fresh.fresh()));
    }
    pool
}

/// Candidate rule applications at `node` in a fixed, fair order: closing
/// rules and theory axioms; invertible propositional and eigenvariable
/// rules; RTC case splits and equality rewrites; theory-directed cuts; then
/// every witness of the pool for AllL, ExR and RtcStep, round-robin over the
/// principal formulas; finally general cuts when enabled.
pub fn expand_fair(node: &Sequent, cfg: &SearchConfig) -> Vec<(RuleId, RuleParams)> {
    let mut out = closures(node, &cfg.theory);
    out.extend(invertible(node));
    let mut fresh = FreshNames::avoiding(node.all_names());
    let z = fresh.fresh();
    for f in &node.ante {
        if let Formula::Rtc { src, dst, .. } = f {
            if src != dst {
                out.push((RuleId::RtcCase, RuleParams::principal(f.clone()).with_eigenvars([z.clone()])));
            }
        }
    }
    for e in &node.ante {
        let Formula::Eq(s, t) = e else { continue };
        if s == t {
            continue;
        }
        for (rule, shown) in [(RuleId::EqL1, t), (RuleId::EqL2, s)] {
            for g in &node.succ {
                let template = abstract_term(g, shown, &z);
                if template != *g {
                    out.push((rule, RuleParams::principal(e.clone()).with_template(template, z.clone())));
                }
            }
        }
    }
    for phi in theory_cuts(node, &cfg.theory) {
        out.push((RuleId::Cut, RuleParams::default().with_cut(phi)));
    }
    let pool = witness_pool(node, cfg);
    let principals: Vec<(RuleId, &Formula)> = node
        .ante
        .iter()
        .filter(|f| matches!(f, Formula::Forall(..)))
        .map(|f| (RuleId::AllL, f))
        .chain(node.succ.iter().filter(|f| matches!(f, Formula::Exists(..))).map(|f| (RuleId::ExR, f)))
        .chain(node.succ.iter().filter(|f| f.is_rtc()).map(|f| (RuleId::RtcStep, f)))
        .collect();
    for w in &pool {
        for (rule, f) in &principals {
            let mut p = RuleParams::principal((*f).clone()).with_witness(w.clone());
            if *rule != RuleId::RtcStep {
                p = p.retaining();
            }
            out.push((*rule, p));
        }
    }
    if cfg.allow_cut {
        let mut subs = BTreeSet::new();
        for f in node.formulas() {
            subformulas(f, &mut subs);
        }
        for phi in subs {
            if !node.ante.contains(&phi) && !node.succ.contains(&phi) {
                out.push((RuleId::Cut, RuleParams::default().with_cut(phi)));
            }
        }
    }
    out
}

fn subformulas(f: &Formula, out: &mut BTreeSet<Formula>) {
    out.insert(f.clone());
    match f {
        Formula::Not(a) => subformulas(a, out),
        Formula::And(a, b) | Formula::Or(a, b) | Formula::Implies(a, b) => {
            subformulas(a, out);
            subformulas(b, out);
        }
        _ => {}
    }
}
