//! Finite-model semantics: evaluation of formulas in explicit finite
//! structures, the degree of RTC formulas, exhaustive counter-model search
//! and the descending counter-model construction for rule instances.

mod descent;
mod eval;
mod model;
mod search;

pub use descent::{descent_witness, Descent};
pub use eval::{degree, evaluate, invalidates, minimal_chain, satisfies_sequent, sequent_valid_in, DegreeResult};
pub use model::{format_valuation, parse_model, FiniteModel, FnTable, ModelParseError, PredTable, Valuation};
pub use search::{
    find_counter_model, find_counter_model_with, valuation_at, ModelSpace, SearchLimits, DEFAULT_MODEL_BUDGET,
    DEFAULT_SIZE_CAP,
};

#[derive(Clone, Debug, PartialEq, Eq, thiserror::Error)]
pub enum SemanticsError {
    #[error("variable `{0}` has no value")]
    UnboundVariable(String),
    #[error("signature mismatch: {0}")]
    SignatureMismatch(String),
    #[error("not an RTC formula")]
    NotAnRtcFormula,
    #[error("model enumeration at size {size} exceeds the budget of {budget} models")]
    BudgetExceeded { size: usize, budget: u64 },
    #[error("model size {requested} is above the cap {cap}")]
    SizeAboveCap { requested: usize, cap: usize },
    #[error("the model does not invalidate the conclusion")]
    NoCounterexample,
    #[error("no descending counter-model for this rule: {0}")]
    NotApplicable(String),
}

#[cfg(test)]
mod tests;
