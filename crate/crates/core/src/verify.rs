//! Cross-backend differential checks and equivalence checking behind one
//! interface.

use std::fmt;
use std::str::FromStr;

use num_complex::Complex;

use crate::dd::{equivalent_dd, DdEquivalence, DdPackage, PHASE_TOLERANCE};
use crate::dense::{self, StateVector};
use crate::error::{capacity, Error, Result};
use crate::ir::{BasisState, Circuit};
use crate::scalar::Scalar;
use crate::tn::full_state_tn;
use crate::zx::{equivalent_zx, ZxEquivalence};

/// Widest circuit [`cross_check`] accepts.
pub const MAX_CROSS_CHECK_QUBITS: usize = 12;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum BackendId {
    Dense,
    Dd,
    Tn,
    Zx,
}

impl BackendId {
    pub const ALL: [BackendId; 4] = [BackendId::Dense, BackendId::Dd, BackendId::Tn, BackendId::Zx];

    pub fn name(self) -> &'static str {
        match self {
            BackendId::Dense => "dense",
            BackendId::Dd => "dd",
            BackendId::Tn => "tn",
            BackendId::Zx => "zx",
        }
    }
}

impl fmt::Display for BackendId {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

impl FromStr for BackendId {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        BackendId::ALL
            .into_iter()
            .find(|b| b.name() == s)
            .ok_or_else(|| Error::UnsupportedMethod(format!("unknown backend `{s}`")))
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Status {
    Equivalent,
    NotEquivalent,
    Inconclusive,
}

impl Status {
    pub fn name(self) -> &'static str {
        match self {
            Status::Equivalent => "equivalent",
            Status::NotEquivalent => "not_equivalent",
            Status::Inconclusive => "inconclusive",
        }
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct EquivalenceVerdict<T = f64> {
    pub status: Status,
    /// An input basis state on which the circuits' outputs differ; present
    /// exactly when `status` is `NotEquivalent`.
    pub witness: Option<BasisState>,
    /// The unit `φ` with `U1 = φ·U2`, when the method determines it. The ZX
    /// backend does not track scalars and leaves this empty.
    pub phase: Option<Complex<T>>,
    /// The method that was asked for.
    pub method: BackendId,
    /// Set when an inconclusive ZX result was settled by the dense backend.
    pub fallback: bool,
}

impl<T> EquivalenceVerdict<T> {
    /// `verdict=<status> method=<m> [witness=<bits>] [fallback=dense]`.
    pub fn report(&self) -> String {
        let mut s = format!("verdict={} method={}", self.status.name(), self.method);
        if let Some(w) = &self.witness {
            s.push_str(&format!(" witness={w}"));
        }
        if self.fallback {
            s.push_str(" fallback=dense");
        }
        s
    }
}

/// Checks `c1` and `c2` for equality of their unitaries up to a global phase.
///
/// `Dense` compares full unitaries, `Dd` compares decision diagrams and `Zx`
/// rewrites the composed diagram. A ZX result of `Inconclusive` on at most
/// [`dense::MAX_UNITARY_QUBITS`] qubits is settled with the dense method and
/// flagged as a fallback.
pub fn check_equivalence<T: Scalar>(c1: &Circuit, c2: &Circuit, method: BackendId) -> Result<EquivalenceVerdict<T>> {
    if c1.num_qubits() != c2.num_qubits() {
        return Err(Error::WidthMismatch { left: c1.num_qubits(), right: c2.num_qubits() });
    }
    let verdict = |status, witness, phase| EquivalenceVerdict { status, witness, phase, method, fallback: false };
    match method {
        BackendId::Dense => dense_equivalence(c1, c2),
        BackendId::Dd => Ok(match equivalent_dd::<T>(c1, c2)? {
            DdEquivalence::Equivalent { phase } => verdict(Status::Equivalent, None, Some(phase)),
            DdEquivalence::NotEquivalent { witness } => verdict(Status::NotEquivalent, Some(witness), None),
        }),
        BackendId::Zx => match equivalent_zx(c1, c2)? {
            ZxEquivalence::Equivalent => Ok(verdict(Status::Equivalent, None, None)),
            ZxEquivalence::Inconclusive if c1.num_qubits() <= dense::MAX_UNITARY_QUBITS => {
                let settled = dense_equivalence::<T>(c1, c2)?;
                Ok(EquivalenceVerdict { method, fallback: true, ..settled })
            }
            ZxEquivalence::Inconclusive => Ok(verdict(Status::Inconclusive, None, None)),
        },
        BackendId::Tn => Err(Error::UnsupportedMethod("equivalence checking has no tensor-network method".into())),
    }
}

/// The witness is the column with the largest entrywise deviation between
/// the two unitaries; ties go to the highest index.
fn dense_equivalence<T: Scalar>(c1: &Circuit, c2: &Circuit) -> Result<EquivalenceVerdict<T>> {
    let u1 = dense::circuit_unitary::<T>(c1)?;
    let u2 = dense::circuit_unitary::<T>(c2)?;
    let tol = T::lit(PHASE_TOLERANCE).max(T::approx_tolerance());
    let base = EquivalenceVerdict {
        status: Status::Equivalent,
        witness: None,
        phase: None,
        method: BackendId::Dense,
        fallback: false,
    };
    if let Some(phase) = u1.global_phase_to(&u2, tol) {
        return Ok(EquivalenceVerdict { phase: Some(phase), ..base });
    }
    let dim = u1.dim();
    let deviation =
        |col: usize| (0..dim).map(|row| (u1.get(row, col) - u2.get(row, col)).norm()).fold(T::zero(), T::max);
    let devs: Vec<T> = (0..dim).map(deviation).collect();
    let peak = devs.iter().copied().fold(T::zero(), T::max);
    let column = (0..dim).rev().find(|&j| peak - devs[j] <= T::epsilon() * T::lit(16.0)).expect("nonempty");
    Ok(EquivalenceVerdict {
        status: Status::NotEquivalent,
        witness: Some(BasisState::from_index(column, c1.num_qubits())),
        ..base
    })
}

#[derive(Debug, Clone)]
pub struct CrossCheckReport<T = f64> {
    /// Final state from each simulating backend, in dense, dd, tn order.
    pub states: Vec<(BackendId, StateVector<T>)>,
    /// Largest amplitude difference over all backend pairs.
    pub max_deviation: T,
    pub tolerance: T,
}

impl<T: Scalar> CrossCheckReport<T> {
    pub fn passed(&self) -> bool {
        self.max_deviation <= self.tolerance
    }

    /// `cross_check backends=dense,dd,tn max_deviation=<x> result=<pass|fail>`.
    pub fn summary_line(&self) -> String {
        let names: Vec<&str> = self.states.iter().map(|(b, _)| b.name()).collect();
        format!(
            "cross_check backends={} max_deviation={} result={}",
            names.join(","),
            crate::format::format_g17(self.max_deviation.to_f64().expect("finite")),
            if self.passed() { "pass" } else { "fail" }
        )
    }
}

/// Simulates `c` from `|0…0⟩` with the dense, decision-diagram and
/// tensor-network backends and compares every pair of final states.
pub fn cross_check<T: Scalar>(c: &Circuit, tolerance: T) -> Result<CrossCheckReport<T>> {
    capacity("cross-check", c.num_qubits(), MAX_CROSS_CHECK_QUBITS)?;
    let dense_state = dense::simulate::<T>(c)?;
    let mut pkg = DdPackage::<T>::new();
    let dd = pkg.simulate(c);
    let dd_state = pkg.dd_to_vector(&dd)?;
    let tn_state = full_state_tn::<T>(c)?;
    let states = vec![(BackendId::Dense, dense_state), (BackendId::Dd, dd_state), (BackendId::Tn, tn_state)];
    let mut max_deviation = T::zero();
    for (i, (_, a)) in states.iter().enumerate() {
        for (_, b) in &states[i + 1..] {
            max_deviation = max_deviation.max(a.max_deviation(b));
        }
    }
    Ok(CrossCheckReport { states, max_deviation, tolerance })
}
