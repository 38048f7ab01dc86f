//! Proof kernel, cyclic proof checker and bounded prover for first-order
//! logic with a reflexive transitive closure operator.

pub mod kernel;
pub mod par;
pub mod proofgraph;
pub mod prover;
pub mod samples;
pub mod semantics;
pub mod syntax;
pub mod tracecheck;
pub mod translate;
