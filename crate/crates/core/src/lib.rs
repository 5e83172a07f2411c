//! Quantum circuit simulation and equivalence checking over four
//! representations: dense state vectors, decision diagrams, tensor networks
//! and ZX-diagrams.
//!
//! Numeric backends are generic over [`Scalar`] (`f32` or `f64`); the aliases
//! at the crate root fix the scalar to `f64`, which is what the command line
//! and the cross-backend checks use. Gate and spider phases are exact
//! rationals of π ([`ir::Angle`]).

pub mod dd;
pub mod dense;
mod error;
pub mod format;
pub mod ir;
pub mod matrix;
pub mod scalar;
pub mod tn;
pub mod verify;
pub mod zx;

pub use error::{Error, ParseError, Result};
pub use num_complex::Complex;
pub use scalar::Scalar;

pub type Complex64 = Complex<f64>;
pub type StateVector = dense::StateVector<f64>;
pub type UnitaryMatrix = dense::UnitaryMatrix<f64>;
pub type DdPackage = dd::DdPackage<f64>;
pub type Tensor = tn::Tensor<f64>;
pub type TensorNetwork = tn::TensorNetwork<f64>;
