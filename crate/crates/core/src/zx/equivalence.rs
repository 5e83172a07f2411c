use crate::error::{Error, Result};
use crate::ir::Circuit;
use crate::zx::convert::circuit_to_zx;
use crate::zx::rewrite::simplify;

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum ZxEquivalence {
    Equivalent,
    /// The rules ran out before reaching bare wires. The circuits may or may
    /// not be equivalent.
    Inconclusive,
}

/// Rewrites the diagram of `c1` followed by `c2⁻¹` in graph-like form and
/// reports `Equivalent` only if it reduces to `n` plain wires, input `q` to
/// output `q`.
pub fn equivalent_zx(c1: &Circuit, c2: &Circuit) -> Result<ZxEquivalence> {
    if c1.num_qubits() != c2.num_qubits() {
        return Err(Error::WidthMismatch { left: c1.num_qubits(), right: c2.num_qubits() });
    }
    let miter = circuit_to_zx(&c1.compose(&c2.adjoint())?);
    let (reduced, _) = simplify(&miter);
    Ok(if reduced.is_identity() { ZxEquivalence::Equivalent } else { ZxEquivalence::Inconclusive })
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct Reduction {
    pub spiders_before: usize,
    pub spiders_after: usize,
    pub steps: usize,
}

impl Reduction {
    /// `spiders_before=<a> spiders_after=<b> steps=<k>`.
    pub fn stats_line(&self) -> String {
        format!("spiders_before={} spiders_after={} steps={}", self.spiders_before, self.spiders_after, self.steps)
    }
}

/// Simplifies the circuit's diagram and counts what happened.
pub fn reduce_circuit(c: &Circuit) -> Reduction {
    let d = circuit_to_zx(c);
    let (out, steps) = simplify(&d);
    Reduction { spiders_before: d.num_spiders(), spiders_after: out.num_spiders(), steps: steps.len() }
}
