use std::collections::BTreeMap;

use super::eval::{invalidates, sequent_valid_in};
use super::model::{FnTable, PredTable};
use super::{FiniteModel, SemanticsError, Valuation};
use crate::par;
use crate::syntax::{Sequent, Signature};

/// Largest domain size the counter-model search accepts by default.
pub const DEFAULT_SIZE_CAP: usize = 5;

/// Default number of models examined per domain size before giving up.
pub const DEFAULT_MODEL_BUDGET: u64 = 1 << 24;

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct SearchLimits {
    pub size_cap: usize,
    pub model_budget: u64,
    /// Use the data-parallel enumeration when the `parallel` feature is on.
    pub parallel: bool,
}

impl Default for SearchLimits {
    fn default() -> Self {
        SearchLimits { size_cap: DEFAULT_SIZE_CAP, model_budget: DEFAULT_MODEL_BUDGET, parallel: true }
    }
}

pub(crate) fn pow_saturating(base: usize, exp: usize) -> u64 {
    (0..exp).fold(1u64, |acc, _| acc.saturating_mul(base as u64))
}

/// The `index`-th valuation of `vars` over `{0..size-1}` in lexicographic
/// order, first variable most significant.
pub fn valuation_at(vars: &[String], size: usize, mut index: u64) -> Valuation {
    let mut out = Valuation::new();
    for x in vars.iter().rev() {
        out.insert(x.clone(), (index % size as u64) as usize);
        index /= size as u64;
    }
    out
}

/// All models of one size over a signature, indexed in lexicographic order
/// of their table encodings: constants, then function tables, then
/// predicate tables, each in name order, each table in argument order.
#[derive(Clone, Debug)]
pub struct ModelSpace {
    size: usize,
    consts: Vec<String>,
    funcs: Vec<(String, usize)>,
    preds: Vec<(String, usize)>,
    count: Option<u64>,
}

impl ModelSpace {
    pub fn new(sig: &Signature, size: usize) -> ModelSpace {
        assert!(size > 0, "domains are non-empty");
        let consts: Vec<String> = sig.constants.iter().cloned().collect();
        let funcs: Vec<(String, usize)> = sig.functions.iter().map(|(f, &n)| (f.clone(), n)).collect();
        let preds: Vec<(String, usize)> = sig.predicates.iter().map(|(p, &n)| (p.clone(), n)).collect();
        let mut count: Option<u64> = Some(1);
        let mut mul = |radix: u64, times: u64| {
            for _ in 0..times {
                count = count.and_then(|c| c.checked_mul(radix));
            }
        };
        mul(size as u64, consts.len() as u64);
        for (_, n) in &funcs {
            mul(size as u64, pow_saturating(size, *n).min(64));
        }
        for (_, n) in &preds {
            mul(2, pow_saturating(size, *n).min(64));
        }
        ModelSpace { size, consts, funcs, preds, count }
    }

    pub fn size(&self) -> usize {
        self.size
    }

    /// Number of models, or `None` if it does not fit in a `u64`.
    pub fn count(&self) -> Option<u64> {
        self.count
    }

    pub fn model(&self, mut index: u64) -> FiniteModel {
        let n = self.size;
        let mut digit = |radix: usize| {
            let d = (index % radix as u64) as usize;
            index /= radix as u64;
            d
        };
        // Least significant digits are the last predicate table entries.
        let mut preds = BTreeMap::new();
        for (p, arity) in self.preds.iter().rev() {
            let len = n.pow(*arity as u32);
            let mut table = vec![false; len];
            for e in table.iter_mut().rev() {
                *e = digit(2) == 1;
            }
            preds.insert(p.clone(), PredTable { arity: *arity, table });
        }
        let mut funcs = BTreeMap::new();
        for (f, arity) in self.funcs.iter().rev() {
            let len = n.pow(*arity as u32);
            let mut table = vec![0; len];
            for e in table.iter_mut().rev() {
                *e = digit(n);
            }
            funcs.insert(f.clone(), FnTable { arity: *arity, table });
        }
        let mut consts = BTreeMap::new();
        for c in self.consts.iter().rev() {
            consts.insert(c.clone(), digit(n));
        }
        FiniteModel { size: n, consts, funcs, preds }
    }
}

/// First model (by size, then table encoding) and valuation (lexicographic
/// in the sorted free variables) that satisfies every theory sequent under
/// all valuations and invalidates `s`. `Ok(None)` only means no counter-model
/// exists up to `max_size`.
pub fn find_counter_model(
    s: &Sequent,
    max_size: usize,
    theory: &[Sequent],
) -> Result<Option<(FiniteModel, Valuation)>, SemanticsError> {
    find_counter_model_with(s, max_size, theory, SearchLimits::default())
}

pub fn find_counter_model_with(
    s: &Sequent,
    max_size: usize,
    theory: &[Sequent],
    limits: SearchLimits,
) -> Result<Option<(FiniteModel, Valuation)>, SemanticsError> {
    if max_size == 0 || max_size > limits.size_cap {
        return Err(SemanticsError::SizeAboveCap { requested: max_size, cap: limits.size_cap });
    }
    let sig = Signature::of_formulas(s.formulas().chain(theory.iter().flat_map(Sequent::formulas)));
    let vars: Vec<String> = s.free_vars().into_iter().collect();
    for size in 1..=max_size {
        let space = ModelSpace::new(&sig, size);
        let count = match space.count() {
            Some(c) if c <= limits.model_budget => c,
            _ => return Err(SemanticsError::BudgetExceeded { size, budget: limits.model_budget }),
        };
        let valuations = pow_saturating(size, vars.len());
        let probe = |i: u64| {
            let m = space.model(i);
            let check = || -> Result<Option<Valuation>, SemanticsError> {
                let mut found = None;
                for j in 0..valuations {
                    let v = valuation_at(&vars, size, j);
                    if invalidates(&m, &v, s)? {
                        found = Some(v);
                        break;
                    }
                }
                if found.is_some() {
                    for ax in theory {
                        if !sequent_valid_in(&m, ax)? {
                            return Ok(None);
                        }
                    }
                }
                Ok(found)
            };
            match check() {
                Ok(None) => None,
                Ok(Some(v)) => Some(Ok((m, v))),
                Err(e) => Some(Err(e)),
            }
        };
        let hit = if limits.parallel { par::find_map_first(count, probe) } else { par::find_map_first_seq(count, probe) };
        if let Some(r) = hit {
            return r.map(Some);
        }
    }
    Ok(None)
}
