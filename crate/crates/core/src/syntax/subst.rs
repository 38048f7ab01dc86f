use std::collections::{BTreeMap, BTreeSet};

use super::{Formula, Term, FRESH_PREFIX};

/// A simultaneous substitution of terms for free variables.
pub type Subst = BTreeMap<String, Term>;

/// Generator of `_vN` names avoiding a given set, counting up from zero.
#[derive(Clone, Debug, Default)]
pub struct FreshNames {
    next: usize,
    avoid: BTreeSet<String>,
}

impl FreshNames {
    pub fn avoiding(avoid: BTreeSet<String>) -> FreshNames {
        FreshNames { next: 0, avoid }
    }

    pub fn avoid(&mut self, name: impl Into<String>) {
        self.avoid.insert(name.into());
    }

    pub fn avoid_all<I: IntoIterator<Item = String>>(&mut self, names: I) {
        self.avoid.extend(names);
    }

    pub fn fresh(&mut self) -> String {
        loop {
            let name = format!("{FRESH_PREFIX}{}", self.next);
            self.next += 1;
            if self.avoid.insert(name.clone()) {
                return name;
            }
        }
    }
}

impl Term {
    pub fn substitute(&self, s: &Subst) -> Term {
        match self {
            Term::Var(v) => s.get(v).cloned().unwrap_or_else(|| self.clone()),
            Term::Const(_) => self.clone(),
            Term::App(f, args) => Term::App(f.clone(), args.iter().map(|a| a.substitute(s)).collect()),
        }
    }
}

impl Formula {
    /// Simultaneous capture-avoiding substitution on free occurrences.
    /// The result is canonical.
    pub fn substitute(&self, s: &Subst) -> Formula {
        let relevant: Subst = s
            .iter()
            .filter(|(v, t)| t.as_var() != Some(v.as_str()) && self.has_free(v))
            .map(|(v, t)| (v.clone(), t.clone()))
            .collect();
        if relevant.is_empty() {
            return self.canon();
        }
        let mut avoid = BTreeSet::new();
        self.all_names_into(&mut avoid);
        for (v, t) in &relevant {
            avoid.insert(v.clone());
            t.free_vars_into(&mut avoid);
        }
        let mut fresh = FreshNames::avoiding(avoid);
        subst_rec(self, &relevant, &mut fresh).canon()
    }

    pub fn substitute1(&self, var: &str, t: &Term) -> Formula {
        let mut s = Subst::new();
        s.insert(var.to_string(), t.clone());
        self.substitute(&s)
    }
}

fn range_has(s: &Subst, name: &str) -> bool {
    s.values().any(|t| t.contains_var(name))
}

fn subst_rec(f: &Formula, s: &Subst, fresh: &mut FreshNames) -> Formula {
    if s.is_empty() {
        return f.clone();
    }
    match f {
        Formula::Eq(a, b) => Formula::Eq(a.substitute(s), b.substitute(s)),
        Formula::Pred(p, args) => Formula::Pred(p.clone(), args.iter().map(|a| a.substitute(s)).collect()),
        Formula::Not(a) => Formula::not(subst_rec(a, s, fresh)),
        Formula::And(a, b) => Formula::and(subst_rec(a, s, fresh), subst_rec(b, s, fresh)),
        Formula::Or(a, b) => Formula::or(subst_rec(a, s, fresh), subst_rec(b, s, fresh)),
        Formula::Implies(a, b) => Formula::implies(subst_rec(a, s, fresh), subst_rec(b, s, fresh)),
        Formula::Forall(x, body) | Formula::Exists(x, body) => {
            let (x2, inner) = enter_binder(x, s, fresh);
            let body = subst_rec(body, &inner, fresh);
            if matches!(f, Formula::Forall(..)) {
                Formula::Forall(x2, Box::new(body))
            } else {
                Formula::Exists(x2, Box::new(body))
            }
        }
        Formula::Rtc { x, y, body, src, dst } => {
            let src = src.substitute(s);
            let dst = dst.substitute(s);
            let (x2, inner) = enter_binder(x, s, fresh);
            let (y2, inner) = enter_binder(y, &inner, fresh);
            let body = subst_rec(body, &inner, fresh);
            Formula::Rtc {
                x: x2,
                y: y2,
                body: Box::new(body),
                src,
                dst,
            }
        }
    }
}

/// Substitution to apply under a binder for `x`, renaming `x` if a term in
/// the range mentions it.
fn enter_binder(x: &str, s: &Subst, fresh: &mut FreshNames) -> (String, Subst) {
    let mut inner = s.clone();
    inner.remove(x);
    if range_has(&inner, x) {
        let renamed = fresh.fresh();
        inner.insert(x.to_string(), Term::Var(renamed.clone()));
        (renamed, inner)
    } else {
        (x.to_string(), inner)
    }
}
