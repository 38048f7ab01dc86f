use std::collections::{HashMap, VecDeque};

use super::{FiniteModel, SemanticsError, Valuation};
use crate::syntax::{Formula, Sequent, Term};

/// Minimal-chain measure of an RTC formula in a model.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum DegreeResult {
    Degree(usize),
    Unsatisfied,
}

/// Evaluation context: a base valuation plus a stack of bound variables.
/// RTC relations are cached per formula node and the values of the
/// variables they capture from the enclosing scope.
struct Ctx<'a> {
    m: &'a FiniteModel,
    base: &'a Valuation,
    stack: Vec<(&'a str, usize)>,
    relations: HashMap<(*const Formula, Vec<usize>), Vec<bool>>,
    captured: HashMap<*const Formula, Vec<String>>,
}

impl<'a> Ctx<'a> {
    fn new(m: &'a FiniteModel, base: &'a Valuation) -> Self {
        Ctx { m, base, stack: Vec::new(), relations: HashMap::new(), captured: HashMap::new() }
    }

    fn lookup(&self, name: &str) -> Result<usize, SemanticsError> {
        if let Some(&(_, a)) = self.stack.iter().rev().find(|(n, _)| *n == name) {
            return Ok(a);
        }
        match self.base.get(name) {
            Some(&a) if a < self.m.size => Ok(a),
            Some(&a) => Err(SemanticsError::SignatureMismatch(format!("`{name}` valued {a} outside the domain"))),
            None => Err(SemanticsError::UnboundVariable(name.to_string())),
        }
    }

    fn term(&self, t: &Term) -> Result<usize, SemanticsError> {
        match t {
            Term::Var(v) => self.lookup(v),
            Term::Const(c) => self
                .m
                .consts
                .get(c)
                .copied()
                .ok_or_else(|| SemanticsError::SignatureMismatch(format!("constant `{c}` not interpreted"))),
            Term::App(f, args) => {
                let vals = args.iter().map(|a| self.term(a)).collect::<Result<Vec<_>, _>>()?;
                self.m
                    .apply(f, &vals)
                    .ok_or_else(|| SemanticsError::SignatureMismatch(format!("function `{f}/{}` not interpreted", args.len())))
            }
        }
    }

    fn formula(&mut self, f: &'a Formula) -> Result<bool, SemanticsError> {
        Ok(match f {
            Formula::Eq(a, b) => self.term(a)? == self.term(b)?,
            Formula::Pred(p, args) => {
                let table = self
                    .m
                    .preds
                    .get(p)
                    .filter(|t| t.arity == args.len())
                    .ok_or_else(|| SemanticsError::SignatureMismatch(format!("predicate `{p}/{}` not interpreted", args.len())))?;
                let mut index = 0;
                for a in args {
                    index = index * self.m.size + self.term(a)?;
                }
                table.table[index]
            }
            Formula::Not(a) => !self.formula(a)?,
            Formula::And(a, b) => self.formula(a)? && self.formula(b)?,
            Formula::Or(a, b) => self.formula(a)? || self.formula(b)?,
            Formula::Implies(a, b) => !self.formula(a)? || self.formula(b)?,
            Formula::Forall(x, body) | Formula::Exists(x, body) => {
                let universal = matches!(f, Formula::Forall(..));
                for a in 0..self.m.size {
                    self.stack.push((x, a));
                    let r = self.formula(body);
                    self.stack.pop();
                    if r? != universal {
                        return Ok(!universal);
                    }
                }
                universal
            }
            Formula::Rtc { src, dst, .. } => {
                let (s, t) = (self.term(src)?, self.term(dst)?);
                s == t || bfs(&self.relation(f)?, self.m.size, s, t).is_some()
            }
        })
    }

    /// The step relation `{(a, b) | body[a/x, b/y]}` of an RTC node, as a
    /// row-major `size * size` matrix.
    fn relation(&mut self, f: &'a Formula) -> Result<Vec<bool>, SemanticsError> {
        let Formula::Rtc { x, y, body, .. } = f else {
            return Err(SemanticsError::NotAnRtcFormula);
        };
        // Outside binders the relation is needed once per evaluation.
        if self.stack.is_empty() {
            return self.compute_relation(x, y, body);
        }
        let key_ptr = f as *const Formula;
        let captured = self
            .captured
            .entry(key_ptr)
            .or_insert_with(|| {
                let mut fv = body.free_vars();
                fv.remove(x);
                fv.remove(y);
                fv.into_iter().collect()
            })
            .clone();
        let key_vals = captured.iter().map(|v| self.lookup(v)).collect::<Result<Vec<_>, _>>()?;
        let key = (key_ptr, key_vals);
        if let Some(r) = self.relations.get(&key) {
            return Ok(r.clone());
        }
        let rel = self.compute_relation(x, y, body)?;
        self.relations.insert(key, rel.clone());
        Ok(rel)
    }

    fn compute_relation(&mut self, x: &'a str, y: &'a str, body: &'a Formula) -> Result<Vec<bool>, SemanticsError> {
        let n = self.m.size;
        let mut rel = vec![false; n * n];
        for a in 0..n {
            for b in 0..n {
                self.stack.push((x, a));
                self.stack.push((y, b));
                let r = self.formula(body);
                self.stack.truncate(self.stack.len() - 2);
                rel[a * n + b] = r?;
            }
        }
        Ok(rel)
    }
}

/// Shortest chain `s = a0, .., ak = t` with `k > 0` in `rel`, exploring
/// successors in ascending order so ties go to the smallest index.
fn bfs(rel: &[bool], n: usize, s: usize, t: usize) -> Option<Vec<usize>> {
    let mut parent: Vec<Option<usize>> = vec![None; n];
    let mut seen = vec![false; n];
    let mut queue = VecDeque::new();
    // Seed with the one-step successors of s so that s itself can be a
    // target reached by a non-empty chain.
    for b in 0..n {
        if rel[s * n + b] && !seen[b] {
            seen[b] = true;
            parent[b] = Some(s);
            queue.push_back(b);
        }
    }
    while let Some(a) = queue.pop_front() {
        if a == t {
            let mut chain = vec![t];
            let mut cur = t;
            while let Some(p) = parent[cur] {
                chain.push(p);
                if p == s {
                    break;
                }
                cur = p;
            }
            chain.reverse();
            return Some(chain);
        }
        for b in 0..n {
            if rel[a * n + b] && !seen[b] {
                seen[b] = true;
                parent[b] = Some(a);
                queue.push_back(b);
            }
        }
    }
    None
}

/// `M, v |= f`.
pub fn evaluate(m: &FiniteModel, v: &Valuation, f: &Formula) -> Result<bool, SemanticsError> {
    Ctx::new(m, v).formula(f)
}

/// For an RTC formula that holds with distinct endpoint values, the
/// minimal witnessing chain `v(src) = a0, .., an = v(dst)`. `Ok(None)` when
/// the endpoints coincide or the formula is false.
pub fn minimal_chain(m: &FiniteModel, v: &Valuation, f: &Formula) -> Result<Option<Vec<usize>>, SemanticsError> {
    let Formula::Rtc { src, dst, .. } = f else {
        return Err(SemanticsError::NotAnRtcFormula);
    };
    let mut cx = Ctx::new(m, v);
    let (s, t) = (cx.term(src)?, cx.term(dst)?);
    if s == t {
        return Ok(None);
    }
    let rel = cx.relation(f)?;
    Ok(bfs(&rel, m.size, s, t))
}

/// Degree of an RTC formula: 0 if the endpoints are equal, otherwise the
/// length of a shortest witnessing chain.
pub fn degree(m: &FiniteModel, v: &Valuation, f: &Formula) -> Result<DegreeResult, SemanticsError> {
    let Formula::Rtc { src, dst, .. } = f else {
        return Err(SemanticsError::NotAnRtcFormula);
    };
    let cx = Ctx::new(m, v);
    if cx.term(src)? == cx.term(dst)? {
        return Ok(DegreeResult::Degree(0));
    }
    Ok(match minimal_chain(m, v, f)? {
        Some(chain) => DegreeResult::Degree(chain.len() - 1),
        None => DegreeResult::Unsatisfied,
    })
}

/// True iff `(m, v)` satisfies some succedent formula or falsifies some
/// antecedent formula.
pub fn satisfies_sequent(m: &FiniteModel, v: &Valuation, s: &Sequent) -> Result<bool, SemanticsError> {
    let mut cx = Ctx::new(m, v);
    for f in &s.ante {
        if !cx.formula(f)? {
            return Ok(true);
        }
    }
    for f in &s.succ {
        if cx.formula(f)? {
            return Ok(true);
        }
    }
    Ok(false)
}

/// True iff `(m, v)` makes every antecedent formula true and every
/// succedent formula false.
pub fn invalidates(m: &FiniteModel, v: &Valuation, s: &Sequent) -> Result<bool, SemanticsError> {
    satisfies_sequent(m, v, s).map(|ok| !ok)
}

/// True iff every valuation of the sequent's free variables satisfies it.
pub fn sequent_valid_in(m: &FiniteModel, s: &Sequent) -> Result<bool, SemanticsError> {
    let vars: Vec<String> = s.free_vars().into_iter().collect();
    let total = super::search::pow_saturating(m.size, vars.len());
    for i in 0..total {
        let v = super::search::valuation_at(&vars, m.size, i);
        if !satisfies_sequent(m, &v, s)? {
            return Ok(false);
        }
    }
    Ok(true)
}

/// Value of a term under `v`.
pub(crate) fn term_value(m: &FiniteModel, v: &Valuation, t: &Term) -> Result<usize, SemanticsError> {
    Ctx::new(m, v).term(t)
}
