//! Circuit intermediate representation consumed by every backend.

mod angle;
mod circuit;
mod gate;
mod parse;
pub mod random;

pub use angle::Angle;
pub use circuit::{adjoint_circuit, BasisState, Circuit};
pub use gate::{Gate, GateKind};
pub use parse::parse_circuit;

use crate::matrix::SquareMatrix;
use crate::scalar::Scalar;

/// Unitary of `g` over its own qubits; see [`Gate::matrix`].
pub fn gate_matrix<T: Scalar>(g: &Gate) -> SquareMatrix<T> {
    g.matrix()
}
