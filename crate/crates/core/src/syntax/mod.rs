//! Terms, formulas and sequents of first-order logic extended with the
//! reflexive transitive closure binder `(rtc x y. body)(src, dst)`.
//!
//! Formulas are kept in a canonical form in which every bound variable is
//! named after its binder depth (`_b0`, `_b1`, ...). Two formulas are
//! alpha-equivalent exactly when their canonical forms are structurally
//! equal, so the derived `Eq`, `Ord` and `Hash` implementations on canonical
//! formulas give alpha-aware sets and maps for free.

mod matching;
mod parse;
mod print;
mod subst;

use std::collections::{BTreeMap, BTreeSet};
use std::fmt;

pub use parse::{parse_formula, parse_formula_with, parse_sequent, parse_sequent_with, parse_term_with, ParseError, ParseMode, Parser, Tok};
pub use matching::{match_formula, match_sequent_exact, match_sequent_into, match_term};
pub use print::{print_formula, print_sequent};
pub use subst::{FreshNames, Subst};

/// Name of the distinguished binary pairing function, written `<s, t>`.
pub const PAIR: &str = "pair";

/// Prefix of machine-generated fresh variables.
pub const FRESH_PREFIX: &str = "_v";

/// Prefix of canonical bound variable names.
pub const BOUND_PREFIX: &str = "_b";

pub(crate) fn bound_name(level: usize) -> String {
    format!("{BOUND_PREFIX}{level}")
}

pub(crate) fn is_bound_name(name: &str) -> bool {
    name.strip_prefix(BOUND_PREFIX)
        .is_some_and(|rest| !rest.is_empty() && rest.bytes().all(|b| b.is_ascii_digit()))
}

pub(crate) fn is_reserved_name(name: &str) -> bool {
    name.starts_with(FRESH_PREFIX) || name.starts_with(BOUND_PREFIX)
}

#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum Term {
    Var(String),
    Const(String),
    App(String, Vec<Term>),
}

impl Term {
    pub fn var(name: impl Into<String>) -> Term {
        Term::Var(name.into())
    }

    pub fn constant(name: impl Into<String>) -> Term {
        Term::Const(name.into())
    }

    pub fn app(name: impl Into<String>, args: Vec<Term>) -> Term {
        Term::App(name.into(), args)
    }

    pub fn pair(left: Term, right: Term) -> Term {
        Term::App(PAIR.to_string(), vec![left, right])
    }

    pub fn is_var(&self) -> bool {
        matches!(self, Term::Var(_))
    }

    pub fn as_var(&self) -> Option<&str> {
        match self {
            Term::Var(v) => Some(v),
            _ => None,
        }
    }

    pub fn free_vars_into(&self, out: &mut BTreeSet<String>) {
        match self {
            Term::Var(v) => {
                out.insert(v.clone());
            }
            Term::Const(_) => {}
            Term::App(_, args) => args.iter().for_each(|a| a.free_vars_into(out)),
        }
    }

    pub fn free_vars(&self) -> BTreeSet<String> {
        let mut out = BTreeSet::new();
        self.free_vars_into(&mut out);
        out
    }

    pub fn contains_var(&self, name: &str) -> bool {
        match self {
            Term::Var(v) => v == name,
            Term::Const(_) => false,
            Term::App(_, args) => args.iter().any(|a| a.contains_var(name)),
        }
    }

    /// Every subterm, outermost first.
    pub fn subterms_into(&self, out: &mut BTreeSet<Term>) {
        out.insert(self.clone());
        if let Term::App(_, args) = self {
            args.iter().for_each(|a| a.subterms_into(out));
        }
    }

    pub fn size(&self) -> usize {
        match self {
            Term::Var(_) | Term::Const(_) => 1,
            Term::App(_, args) => 1 + args.iter().map(Term::size).sum::<usize>(),
        }
    }

    pub(crate) fn has_bound_name(&self) -> bool {
        match self {
            Term::Var(v) => is_bound_name(v),
            Term::Const(_) => false,
            Term::App(_, args) => args.iter().any(Term::has_bound_name),
        }
    }
}

impl fmt::Display for Term {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        print::fmt_term(self, f)
    }
}

#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum Formula {
    Eq(Term, Term),
    Pred(String, Vec<Term>),
    Not(Box<Formula>),
    And(Box<Formula>, Box<Formula>),
    Or(Box<Formula>, Box<Formula>),
    Implies(Box<Formula>, Box<Formula>),
    Forall(String, Box<Formula>),
    Exists(String, Box<Formula>),
    /// `(rtc x y. body)(src, dst)`: `x` and `y` are bound in `body` only.
    Rtc {
        x: String,
        y: String,
        body: Box<Formula>,
        src: Term,
        dst: Term,
    },
}

impl Formula {
    pub fn eq(lhs: Term, rhs: Term) -> Formula {
        Formula::Eq(lhs, rhs)
    }

    pub fn pred(name: impl Into<String>, args: Vec<Term>) -> Formula {
        Formula::Pred(name.into(), args)
    }

    #[allow(clippy::should_implement_trait)]
    pub fn not(f: Formula) -> Formula {
        Formula::Not(Box::new(f))
    }

    pub fn and(a: Formula, b: Formula) -> Formula {
        Formula::And(Box::new(a), Box::new(b))
    }

    pub fn or(a: Formula, b: Formula) -> Formula {
        Formula::Or(Box::new(a), Box::new(b))
    }

    pub fn implies(a: Formula, b: Formula) -> Formula {
        Formula::Implies(Box::new(a), Box::new(b))
    }

    pub fn forall(x: impl Into<String>, body: Formula) -> Formula {
        Formula::Forall(x.into(), Box::new(body))
    }

    pub fn exists(x: impl Into<String>, body: Formula) -> Formula {
        Formula::Exists(x.into(), Box::new(body))
    }

    /// Builds an RTC formula. The result is not canonicalized.
    pub fn rtc(x: impl Into<String>, y: impl Into<String>, body: Formula, src: Term, dst: Term) -> Formula {
        Formula::Rtc {
            x: x.into(),
            y: y.into(),
            body: Box::new(body),
            src,
            dst,
        }
    }

    /// `forall u. u = u`, the desugaring of `top`.
    pub fn top() -> Formula {
        Formula::forall("u", Formula::Eq(Term::var("u"), Term::var("u"))).canon()
    }

    /// `~top`, the desugaring of `bot`.
    pub fn bot() -> Formula {
        Formula::not(Formula::top())
    }

    pub fn is_rtc(&self) -> bool {
        matches!(self, Formula::Rtc { .. })
    }

    pub fn free_vars(&self) -> BTreeSet<String> {
        let mut out = BTreeSet::new();
        self.free_vars_into(&mut out);
        out
    }

    pub fn free_vars_into(&self, out: &mut BTreeSet<String>) {
        match self {
            Formula::Eq(a, b) => {
                a.free_vars_into(out);
                b.free_vars_into(out);
            }
            Formula::Pred(_, args) => args.iter().for_each(|a| a.free_vars_into(out)),
            Formula::Not(a) => a.free_vars_into(out),
            Formula::And(a, b) | Formula::Or(a, b) | Formula::Implies(a, b) => {
                a.free_vars_into(out);
                b.free_vars_into(out);
            }
            Formula::Forall(x, body) | Formula::Exists(x, body) => {
                let mut inner = body.free_vars();
                inner.remove(x);
                out.extend(inner);
            }
            Formula::Rtc { x, y, body, src, dst } => {
                let mut inner = body.free_vars();
                inner.remove(x);
                inner.remove(y);
                out.extend(inner);
                src.free_vars_into(out);
                dst.free_vars_into(out);
            }
        }
    }

    pub fn has_free(&self, name: &str) -> bool {
        match self {
            Formula::Eq(a, b) => a.contains_var(name) || b.contains_var(name),
            Formula::Pred(_, args) => args.iter().any(|a| a.contains_var(name)),
            Formula::Not(a) => a.has_free(name),
            Formula::And(a, b) | Formula::Or(a, b) | Formula::Implies(a, b) => a.has_free(name) || b.has_free(name),
            Formula::Forall(x, body) | Formula::Exists(x, body) => x != name && body.has_free(name),
            Formula::Rtc { x, y, body, src, dst } => {
                (x != name && y != name && body.has_free(name)) || src.contains_var(name) || dst.contains_var(name)
            }
        }
    }

    /// All variable names occurring anywhere, bound or free.
    pub fn all_names_into(&self, out: &mut BTreeSet<String>) {
        let mut terms = |t: &Term| t.free_vars_into(out);
        match self {
            Formula::Eq(a, b) => {
                terms(a);
                terms(b);
            }
            Formula::Pred(_, args) => args.iter().for_each(terms),
            Formula::Not(a) => a.all_names_into(out),
            Formula::And(a, b) | Formula::Or(a, b) | Formula::Implies(a, b) => {
                a.all_names_into(out);
                b.all_names_into(out);
            }
            Formula::Forall(x, body) | Formula::Exists(x, body) => {
                out.insert(x.clone());
                body.all_names_into(out);
            }
            Formula::Rtc { x, y, body, src, dst } => {
                out.insert(x.clone());
                out.insert(y.clone());
                src.free_vars_into(out);
                dst.free_vars_into(out);
                body.all_names_into(out);
            }
        }
    }

    /// Renames every bound variable after its binder depth. Idempotent.
    pub fn canon(&self) -> Formula {
        fn term(t: &Term, env: &[(String, String)]) -> Term {
            match t {
                Term::Var(v) => match env.iter().rev().find(|(old, _)| old == v) {
                    Some((_, new)) => Term::Var(new.clone()),
                    None => t.clone(),
                },
                Term::Const(_) => t.clone(),
                Term::App(f, args) => Term::App(f.clone(), args.iter().map(|a| term(a, env)).collect()),
            }
        }
        fn go(f: &Formula, env: &mut Vec<(String, String)>) -> Formula {
            match f {
                Formula::Eq(a, b) => Formula::Eq(term(a, env), term(b, env)),
                Formula::Pred(p, args) => Formula::Pred(p.clone(), args.iter().map(|a| term(a, env)).collect()),
                Formula::Not(a) => Formula::not(go(a, env)),
                Formula::And(a, b) => Formula::and(go(a, env), go(b, env)),
                Formula::Or(a, b) => Formula::or(go(a, env), go(b, env)),
                Formula::Implies(a, b) => Formula::implies(go(a, env), go(b, env)),
                Formula::Forall(x, body) | Formula::Exists(x, body) => {
                    let name = bound_name(env.len());
                    env.push((x.clone(), name.clone()));
                    let body = go(body, env);
                    env.pop();
                    if matches!(f, Formula::Forall(..)) {
                        Formula::Forall(name, Box::new(body))
                    } else {
                        Formula::Exists(name, Box::new(body))
                    }
                }
                Formula::Rtc { x, y, body, src, dst } => {
                    let src = term(src, env);
                    let dst = term(dst, env);
                    let nx = bound_name(env.len());
                    let ny = bound_name(env.len() + 1);
                    env.push((x.clone(), nx.clone()));
                    env.push((y.clone(), ny.clone()));
                    let body = go(body, env);
                    env.pop();
                    env.pop();
                    Formula::Rtc {
                        x: nx,
                        y: ny,
                        body: Box::new(body),
                        src,
                        dst,
                    }
                }
            }
        }
        go(self, &mut Vec::new())
    }

    pub fn is_canonical(&self) -> bool {
        *self == self.canon()
    }

    /// For an RTC formula, the body with its bound pair instantiated:
    /// `body[a/x, b/y]`.
    pub fn rtc_step(&self, a: &Term, b: &Term) -> Option<Formula> {
        match self {
            Formula::Rtc { x, y, body, .. } => {
                let mut s = Subst::new();
                s.insert(x.clone(), a.clone());
                s.insert(y.clone(), b.clone());
                Some(body.substitute(&s))
            }
            _ => None,
        }
    }

    /// The same RTC formula with new endpoints.
    pub fn with_endpoints(&self, new_src: Term, new_dst: Term) -> Option<Formula> {
        match self {
            Formula::Rtc { x, y, body, .. } => Some(
                Formula::Rtc {
                    x: x.clone(),
                    y: y.clone(),
                    body: body.clone(),
                    src: new_src,
                    dst: new_dst,
                }
                .canon(),
            ),
            _ => None,
        }
    }

    pub fn contains_rtc(&self) -> bool {
        match self {
            Formula::Rtc { .. } => true,
            Formula::Eq(..) | Formula::Pred(..) => false,
            Formula::Not(a) | Formula::Forall(_, a) | Formula::Exists(_, a) => a.contains_rtc(),
            Formula::And(a, b) | Formula::Or(a, b) | Formula::Implies(a, b) => a.contains_rtc() || b.contains_rtc(),
        }
    }

    /// Terms without bound variables occurring in the formula.
    pub fn closed_subterms_into(&self, out: &mut BTreeSet<Term>) {
        let mut add = |t: &Term| {
            let mut all = BTreeSet::new();
            t.subterms_into(&mut all);
            out.extend(all.into_iter().filter(|s| !s.has_bound_name()));
        };
        match self {
            Formula::Eq(a, b) => {
                add(a);
                add(b);
            }
            Formula::Pred(_, args) => args.iter().for_each(add),
            Formula::Not(a) | Formula::Forall(_, a) | Formula::Exists(_, a) => a.closed_subterms_into(out),
            Formula::And(a, b) | Formula::Or(a, b) | Formula::Implies(a, b) => {
                a.closed_subterms_into(out);
                b.closed_subterms_into(out);
            }
            Formula::Rtc { body, src, dst, .. } => {
                add(src);
                add(dst);
                body.closed_subterms_into(out);
            }
        }
    }

    /// Visits every term and symbol, for signature checks.
    pub(crate) fn visit_symbols(&self, f: &mut dyn FnMut(Symbol<'_>)) {
        fn term(t: &Term, f: &mut dyn FnMut(Symbol<'_>)) {
            match t {
                Term::Var(_) => {}
                Term::Const(c) => f(Symbol::Const(c)),
                Term::App(g, args) => {
                    f(Symbol::Func(g, args.len()));
                    args.iter().for_each(|a| term(a, f));
                }
            }
        }
        match self {
            Formula::Eq(a, b) => {
                term(a, f);
                term(b, f);
            }
            Formula::Pred(p, args) => {
                f(Symbol::Pred(p, args.len()));
                args.iter().for_each(|a| term(a, f));
            }
            Formula::Not(a) | Formula::Forall(_, a) | Formula::Exists(_, a) => a.visit_symbols(f),
            Formula::And(a, b) | Formula::Or(a, b) | Formula::Implies(a, b) => {
                a.visit_symbols(f);
                b.visit_symbols(f);
            }
            Formula::Rtc { body, src, dst, .. } => {
                term(src, f);
                term(dst, f);
                body.visit_symbols(f);
            }
        }
    }
}

impl fmt::Display for Formula {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        print::fmt_formula(self, f)
    }
}

pub(crate) enum Symbol<'a> {
    Const(&'a str),
    Func(&'a str, usize),
    Pred(&'a str, usize),
}

/// True iff the canonical forms of `f` and `g` coincide.
pub fn alpha_eq(f: &Formula, g: &Formula) -> bool {
    f.canon() == g.canon()
}

/// Free variables of a formula.
pub fn free_vars(f: &Formula) -> BTreeSet<String> {
    f.free_vars()
}

/// Declared symbols. Identifiers that are not declared constants are
/// variables.
#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct Signature {
    pub constants: BTreeSet<String>,
    pub functions: BTreeMap<String, usize>,
    pub predicates: BTreeMap<String, usize>,
    /// Whether `<s, t>` (the `pair` function) is available.
    pub pair: bool,
    /// Designated constant of the pair axiom.
    pub pair_const: Option<String>,
}

#[derive(Clone, Debug, PartialEq, Eq, thiserror::Error)]
pub enum SignatureError {
    #[error("symbol `{0}` declared twice with different roles")]
    Conflict(String),
    #[error("symbol `{name}` used with arity {found}, declared with arity {expected}")]
    ArityMismatch { name: String, expected: usize, found: usize },
    #[error("unknown symbol `{0}`")]
    UnknownSymbol(String),
}

impl Signature {
    pub fn new() -> Signature {
        Signature::default()
    }

    pub fn with_const(mut self, c: &str) -> Self {
        self.constants.insert(c.to_string());
        self
    }

    pub fn with_fn(mut self, f: &str, arity: usize) -> Self {
        self.functions.insert(f.to_string(), arity);
        self
    }

    pub fn with_pred(mut self, p: &str, arity: usize) -> Self {
        self.predicates.insert(p.to_string(), arity);
        self
    }

    pub fn with_pair(mut self, designated: Option<&str>) -> Self {
        self.pair = true;
        self.functions.insert(PAIR.to_string(), 2);
        if let Some(c) = designated {
            self.constants.insert(c.to_string());
            self.pair_const = Some(c.to_string());
        }
        self
    }

    pub fn function_arity(&self, name: &str) -> Option<usize> {
        self.functions.get(name).copied()
    }

    pub fn predicate_arity(&self, name: &str) -> Option<usize> {
        self.predicates.get(name).copied()
    }

    pub fn is_const(&self, name: &str) -> bool {
        self.constants.contains(name)
    }

    /// Adds every symbol of `other`; conflicting arities are reported.
    pub fn merge(&mut self, other: &Signature) -> Result<(), SignatureError> {
        for c in &other.constants {
            if self.functions.contains_key(c) || self.predicates.contains_key(c) {
                return Err(SignatureError::Conflict(c.clone()));
            }
            self.constants.insert(c.clone());
        }
        for (f, &n) in &other.functions {
            match self.functions.get(f) {
                Some(&m) if m != n => {
                    return Err(SignatureError::ArityMismatch { name: f.clone(), expected: m, found: n })
                }
                _ => {}
            }
            if self.predicates.contains_key(f) || self.constants.contains(f) {
                return Err(SignatureError::Conflict(f.clone()));
            }
            self.functions.insert(f.clone(), n);
        }
        for (p, &n) in &other.predicates {
            match self.predicates.get(p) {
                Some(&m) if m != n => {
                    return Err(SignatureError::ArityMismatch { name: p.clone(), expected: m, found: n })
                }
                _ => {}
            }
            if self.functions.contains_key(p) || self.constants.contains(p) {
                return Err(SignatureError::Conflict(p.clone()));
            }
            self.predicates.insert(p.clone(), n);
        }
        self.pair |= other.pair;
        if self.pair_const.is_none() {
            self.pair_const = other.pair_const.clone();
        }
        Ok(())
    }

    /// Checks that every symbol of `f` is declared with the right arity.
    pub fn check_formula(&self, f: &Formula) -> Result<(), SignatureError> {
        let mut err = None;
        f.visit_symbols(&mut |s| {
            if err.is_some() {
                return;
            }
            err = match s {
                Symbol::Const(c) if !self.constants.contains(c) => Some(SignatureError::UnknownSymbol(c.to_string())),
                Symbol::Func(g, n) => match self.functions.get(g) {
                    None => Some(SignatureError::UnknownSymbol(g.to_string())),
                    Some(&m) if m != n => Some(SignatureError::ArityMismatch { name: g.to_string(), expected: m, found: n }),
                    _ => None,
                },
                Symbol::Pred(p, n) => match self.predicates.get(p) {
                    None => Some(SignatureError::UnknownSymbol(p.to_string())),
                    Some(&m) if m != n => Some(SignatureError::ArityMismatch { name: p.to_string(), expected: m, found: n }),
                    _ => None,
                },
                _ => None,
            };
        });
        err.map_or(Ok(()), Err)
    }

    /// Smallest signature covering the symbols of the given formulas.
    pub fn of_formulas<'a>(formulas: impl IntoIterator<Item = &'a Formula>) -> Signature {
        let mut sig = Signature::new();
        for f in formulas {
            f.visit_symbols(&mut |s| match s {
                Symbol::Const(c) => {
                    sig.constants.insert(c.to_string());
                }
                Symbol::Func(g, n) => {
                    sig.functions.insert(g.to_string(), n);
                    if g == PAIR {
                        sig.pair = true;
                    }
                }
                Symbol::Pred(p, n) => {
                    sig.predicates.insert(p.to_string(), n);
                }
            });
        }
        sig
    }
}

impl fmt::Display for Signature {
    /// `const a, b; fn s/1; pred p/2; pair c` (empty groups omitted).
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let mut parts = Vec::new();
        if !self.constants.is_empty() {
            let cs: Vec<_> = self.constants.iter().filter(|c| Some(*c) != self.pair_const.as_ref()).cloned().collect();
            if !cs.is_empty() {
                parts.push(format!("const {}", cs.join(", ")));
            }
        }
        let fs: Vec<_> = self.functions.iter().filter(|(g, _)| *g != PAIR).map(|(g, n)| format!("{g}/{n}")).collect();
        if !fs.is_empty() {
            parts.push(format!("fn {}", fs.join(", ")));
        }
        if !self.predicates.is_empty() {
            let ps: Vec<_> = self.predicates.iter().map(|(p, n)| format!("{p}/{n}")).collect();
            parts.push(format!("pred {}", ps.join(", ")));
        }
        if self.pair {
            match &self.pair_const {
                Some(c) => parts.push(format!("pair {c}")),
                None => parts.push("pair".to_string()),
            }
        }
        write!(f, "{}", parts.join("; "))
    }
}

/// `antecedent |- succedent`, both sides finite sets of canonical formulas.
#[derive(Clone, Debug, Default, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct Sequent {
    pub ante: BTreeSet<Formula>,
    pub succ: BTreeSet<Formula>,
}

impl Sequent {
    pub fn new<A, S>(ante: A, succ: S) -> Sequent
    where
        A: IntoIterator<Item = Formula>,
        S: IntoIterator<Item = Formula>,
    {
        Sequent {
            ante: ante.into_iter().map(|f| f.canon()).collect(),
            succ: succ.into_iter().map(|f| f.canon()).collect(),
        }
    }

    pub fn insert_ante(&mut self, f: Formula) {
        self.ante.insert(f.canon());
    }

    pub fn insert_succ(&mut self, f: Formula) {
        self.succ.insert(f.canon());
    }

    pub fn with_ante(mut self, f: Formula) -> Sequent {
        self.insert_ante(f);
        self
    }

    pub fn with_succ(mut self, f: Formula) -> Sequent {
        self.insert_succ(f);
        self
    }

    pub fn without_ante(mut self, f: &Formula) -> Sequent {
        self.ante.remove(f);
        self
    }

    pub fn without_succ(mut self, f: &Formula) -> Sequent {
        self.succ.remove(f);
        self
    }

    pub fn formulas(&self) -> impl Iterator<Item = &Formula> {
        self.ante.iter().chain(self.succ.iter())
    }

    pub fn free_vars(&self) -> BTreeSet<String> {
        let mut out = BTreeSet::new();
        self.formulas().for_each(|f| f.free_vars_into(&mut out));
        out
    }

    pub fn has_free(&self, name: &str) -> bool {
        self.formulas().any(|f| f.has_free(name))
    }

    pub fn substitute(&self, s: &Subst) -> Sequent {
        Sequent {
            ante: self.ante.iter().map(|f| f.substitute(s)).collect(),
            succ: self.succ.iter().map(|f| f.substitute(s)).collect(),
        }
    }

    /// `self` is a weakening of `other`: both sides include `other`'s.
    pub fn includes(&self, other: &Sequent) -> bool {
        other.ante.is_subset(&self.ante) && other.succ.is_subset(&self.succ)
    }

    pub fn union(&self, other: &Sequent) -> Sequent {
        Sequent {
            ante: self.ante.union(&other.ante).cloned().collect(),
            succ: self.succ.union(&other.succ).cloned().collect(),
        }
    }

    /// RTC formulas of the antecedent, in canonical order.
    pub fn ante_rtcs(&self) -> Vec<&Formula> {
        self.ante.iter().filter(|f| f.is_rtc()).collect()
    }

    pub fn all_names(&self) -> BTreeSet<String> {
        let mut out = BTreeSet::new();
        self.formulas().for_each(|f| f.all_names_into(&mut out));
        out
    }
}

impl fmt::Display for Sequent {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        print::fmt_sequent(self, f)
    }
}
