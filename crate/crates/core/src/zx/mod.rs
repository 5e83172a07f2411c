//! ZX-calculus backend.
//!
//! Circuits become diagrams of Z- and X-spiders carrying phases that are
//! exact rationals of π, joined by plain or Hadamard edges. Diagrams are
//! unnormalized: every semantic comparison is up to a nonzero scalar. The
//! rule set (fusion, color change, identity removal, Hadamard cancellation,
//! self-loop removal) is sound but not complete, so equivalence checking can
//! only answer `Equivalent` or `Inconclusive`.

mod convert;
mod diagram;
mod equivalence;
mod rewrite;
mod semantics;

pub use convert::{circuit_to_zx, plug_basis_states};
pub use diagram::{Color, Edge, EdgeId, EdgeKind, Spider, VertexId, VertexKind, ZxDiagram};
pub use equivalence::{equivalent_zx, reduce_circuit, Reduction, ZxEquivalence};
pub use rewrite::{apply_rewrites, rewrite_once, simplify, to_graph_like, RewriteStep, Rule, PRIORITY};
pub use semantics::{scalar_multiple, zx_to_matrix, zx_to_tensor, MAX_BOUNDARIES};
