//! Cyclic proof graphs: construction, structural validation, the trace
//! relation between antecedent RTC formulas along edges, a line-oriented
//! file format and renderers.

mod file;
mod graph;
mod render;
mod trace;

pub use file::{parse_signature_decl, read_proof, write_proof, ProofFileError, FORMAT_VERSION};
pub use graph::{validate_structure, Node, NodeId, NodeKind, ProofGraph, StructureError};
pub use render::{to_dot, to_latex, to_text};
pub use trace::{rule_trace_steps, trace_relation, TraceRelation, TraceStep};
