use num_complex::Complex;
use num_traits::{One, Zero};

use crate::dd::package::{DdPackage, Edge, MatrixDd};
use crate::error::{capacity, Error, Result};
use crate::ir::{BasisState, Circuit};
use crate::scalar::Scalar;

pub const MAX_EQUIVALENCE_QUBITS: usize = 12;
pub const PHASE_TOLERANCE: f64 = 1e-9;

#[derive(Debug, Clone, PartialEq)]
pub enum DdEquivalence<T> {
    /// `U1 = phase · U2`.
    Equivalent { phase: Complex<T> },
    /// `witness` is an input basis state on which the two circuits' outputs differ.
    NotEquivalent { witness: BasisState },
}

/// Builds the diagram of `c1` followed by `c2⁻¹` and tests it against the
/// identity up to a global phase.
pub fn equivalent_dd<T: Scalar>(c1: &Circuit, c2: &Circuit) -> Result<DdEquivalence<T>> {
    let n = c1.num_qubits();
    if n != c2.num_qubits() {
        return Err(Error::WidthMismatch { left: n, right: c2.num_qubits() });
    }
    capacity("decision-diagram equivalence", n, MAX_EQUIVALENCE_QUBITS)?;

    let mut pkg = DdPackage::<T>::new();
    let miter = c1.compose(&c2.adjoint())?;
    let m = pkg.circuit_mdd(&miter);
    let identities: Vec<Edge<T>> = (0..=n).map(|k| pkg.identity(k).root).collect();
    let tol = T::lit(PHASE_TOLERANCE).max(T::approx_tolerance());

    let phase = m.root.weight;
    if m.root.target == identities[n].target && (phase.norm() - T::one()).abs() <= tol {
        return Ok(DdEquivalence::Equivalent { phase });
    }

    // structure can differ from the identity through rounding alone
    let phase = pkg.matrix_entry(&m, 0, 0);
    if (phase.norm() - T::one()).abs() <= tol {
        let (dev, _) = deviation_from_identity(&pkg, &m, phase, &identities);
        if dev <= tol {
            return Ok(DdEquivalence::Equivalent { phase });
        }
    }

    let (_, column) = deviation_from_identity(&pkg, &m, Complex::one(), &identities);
    Ok(DdEquivalence::NotEquivalent { witness: BasisState::from_index(column, n) })
}

/// Largest `|M_ij − phase·δ_ij|` and the column where it occurs, skipping
/// sub-blocks that already match.
fn deviation_from_identity<T: Scalar>(
    pkg: &DdPackage<T>,
    m: &MatrixDd<T>,
    phase: Complex<T>,
    identities: &[Edge<T>],
) -> (T, usize) {
    let mut best = (T::zero(), 0usize);
    scan(pkg, m.root, Complex::one(), m.num_qubits, 0, 0, phase, identities, &mut best);
    best
}

#[allow(clippy::too_many_arguments)]
fn scan<T: Scalar>(
    pkg: &DdPackage<T>,
    e: Edge<T>,
    acc: Complex<T>,
    level: usize,
    row: usize,
    col: usize,
    phase: Complex<T>,
    identities: &[Edge<T>],
    best: &mut (T, usize),
) {
    let on_diagonal = row == col;
    let w = acc * e.weight;
    if e.is_zero() && !on_diagonal {
        return;
    }
    if on_diagonal && e.target == identities[level].target && pkg.is_zero_weight(w - phase) {
        return;
    }
    if level == 0 || e.is_zero() {
        // a zero edge on the diagonal stands for a whole zero block; its first entry deviates by |phase|
        let expected = if on_diagonal { phase } else { Complex::zero() };
        let value = if e.is_zero() { Complex::zero() } else { w };
        let dev = (value - expected).norm();
        if dev > best.0 {
            *best = (dev, col);
        }
        return;
    }
    let node = pkg.matrix_node(e.target);
    let half = 1 << (level - 1);
    for (idx, s) in node.succ.iter().enumerate() {
        let (r, c) = (idx >> 1, idx & 1);
        scan(pkg, *s, w, level - 1, row + r * half, col + c * half, phase, identities, best);
    }
}
