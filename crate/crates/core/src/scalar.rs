//! Floating-point scalar abstraction shared by every numeric backend.
//!
//! All array, decision-diagram and tensor code is written against [`Scalar`]
//! so the same kernels run in `f32` or `f64`. Phases on gates and spiders are
//! exact rationals of π (see [`crate::ir::Angle`]) and never pass through this
//! trait until a matrix entry is materialized.

use std::fmt::{Debug, Display};

use num_complex::Complex;
use num_traits::{Float, FloatConst, FromPrimitive, NumAssign, ToPrimitive};

/// Real scalar type used for amplitudes, matrix entries and tensor data.
pub trait Scalar:
    Float + FloatConst + FromPrimitive + ToPrimitive + NumAssign + Debug + Display + Default + Send + Sync + 'static
{
    /// Grid used to identify numerically equal decision-diagram weights.
    fn dd_tolerance() -> Self;

    /// Loose comparison threshold for this precision.
    fn approx_tolerance() -> Self;

    /// Lossy conversion from `f64`, used for literal constants.
    fn lit(v: f64) -> Self {
        Self::from_f64(v).expect("finite literal")
    }
}

impl Scalar for f64 {
    fn dd_tolerance() -> Self {
        1e-10
    }

    fn approx_tolerance() -> Self {
        1e-10
    }
}

impl Scalar for f32 {
    fn dd_tolerance() -> Self {
        1e-5
    }

    fn approx_tolerance() -> Self {
        1e-5
    }
}

/// `e^{iθ}` for a real angle in radians.
pub fn cis<T: Scalar>(theta: T) -> Complex<T> {
    Complex::new(theta.cos(), theta.sin())
}

/// Largest component-wise absolute difference between two complex numbers.
pub fn cdist<T: Scalar>(a: Complex<T>, b: Complex<T>) -> T {
    (a - b).norm()
}
