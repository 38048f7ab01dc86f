//! Syntactic translations: the explicit induction rule as a cycle, whole
//! explicit proofs to cyclic ones, the arithmetic β-encoding of RTC, the
//! pair encoding of binary-tuple closures, and theory files.

mod beta;
mod induction;
mod theory_file;

pub use beta::{arith_signature, beta_translate, encode_rtc2, BetaConfig, BetaMode, LT, STANDARD_BETA};
pub use induction::{derive_induction, derive_induction_named, explicit_to_cyclic, InductionFragment, InductionSchema};
pub use theory_file::{bundled_theory, parse_theory, write_theory, TheoryFileError};

use crate::kernel::KernelError;
use crate::proofgraph::StructureError;

#[derive(Clone, Debug, PartialEq, Eq, thiserror::Error)]
pub enum TranslateError {
    #[error("variable `{0}` is not fresh")]
    FreshnessViolation(String),
    #[error(transparent)]
    Kernel(#[from] KernelError),
    #[error("invalid proof: {}", .0.iter().map(ToString::to_string).collect::<Vec<_>>().join("; "))]
    Structure(Vec<StructureError>),
    #[error("the proof has buds; expected a finite derivation")]
    NotFinite,
    #[error("signature mismatch: {0}")]
    SignatureMismatch(String),
    #[error("invalid β formula: {0}")]
    InvalidBetaFormula(String),
    #[error("the signature has no pairing function")]
    MissingPairSymbol,
    #[error("variable `{0}` occurs twice among the tuple variables")]
    VariableClash(String),
}

#[cfg(test)]
mod tests;
