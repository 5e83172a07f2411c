//! Array backend: full state vectors updated gate by gate.
//!
//! The state of `n` qubits is a vector of `2^n` amplitudes indexed by the
//! binary value of the basis state, qubit `n-1` most significant. Gates are
//! applied with strided in-place kernels that touch each amplitude once per
//! gate; explicit `2^n × 2^n` unitaries are only formed by
//! [`circuit_unitary`], which exists for verification of small circuits.

use std::collections::BTreeMap;

use num_complex::Complex;
use num_traits::{One, Zero};
use rand::distributions::{Distribution, WeightedIndex};
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

use crate::error::{capacity, Result};
use crate::ir::{BasisState, Circuit, Gate};
use crate::matrix::SquareMatrix;
use crate::scalar::Scalar;

pub const MAX_STATE_QUBITS: usize = 24;
pub const MAX_UNITARY_QUBITS: usize = 10;

#[derive(Debug, Clone, PartialEq)]
pub struct StateVector<T> {
    num_qubits: usize,
    amps: Vec<Complex<T>>,
}

pub type UnitaryMatrix<T> = SquareMatrix<T>;

impl<T: Scalar> StateVector<T> {
    /// `|0…0⟩` on `num_qubits` qubits.
    pub fn zero_state(num_qubits: usize) -> Result<Self> {
        capacity("state vector", num_qubits, MAX_STATE_QUBITS)?;
        let mut amps = vec![Complex::zero(); 1 << num_qubits];
        amps[0] = Complex::one();
        Ok(Self { num_qubits, amps })
    }

    /// Wraps raw amplitudes; the length must be a power of two.
    pub fn from_amplitudes(amps: Vec<Complex<T>>) -> Result<Self> {
        assert!(amps.len().is_power_of_two(), "amplitude count must be a power of two");
        let num_qubits = amps.len().trailing_zeros() as usize;
        capacity("state vector", num_qubits, MAX_STATE_QUBITS)?;
        Ok(Self { num_qubits, amps })
    }

    pub fn num_qubits(&self) -> usize {
        self.num_qubits
    }

    pub fn amplitudes(&self) -> &[Complex<T>] {
        &self.amps
    }

    pub fn into_amplitudes(self) -> Vec<Complex<T>> {
        self.amps
    }

    pub fn amplitude(&self, basis: &BasisState) -> Complex<T> {
        self.amps[basis.index()]
    }

    pub fn norm(&self) -> T {
        self.amps.iter().fold(T::zero(), |acc, a| acc + a.norm_sqr()).sqrt()
    }

    /// Largest per-amplitude distance to `other`.
    pub fn max_deviation(&self, other: &Self) -> T {
        assert_eq!(self.num_qubits, other.num_qubits);
        self.amps.iter().zip(&other.amps).map(|(&a, &b)| (a - b).norm()).fold(T::zero(), T::max)
    }

    pub fn apply(&mut self, gate: &Gate) {
        self.apply_matrix(&gate.matrix(), gate.qubits());
    }

    /// Applies a `2^k × 2^k` matrix to the listed qubits, `qubits[0]` being
    /// the most significant bit of the matrix's local index.
    pub fn apply_matrix(&mut self, m: &SquareMatrix<T>, qubits: &[usize]) {
        let k = qubits.len();
        let local = 1usize << k;
        assert_eq!(m.dim(), local, "matrix does not match qubit count");
        assert!(qubits.iter().all(|&q| q < self.num_qubits));

        let offsets: Vec<usize> = (0..local)
            .map(|l| qubits.iter().enumerate().fold(0, |acc, (j, &q)| acc | ((l >> (k - 1 - j)) & 1) << q))
            .collect();
        let mut sorted = qubits.to_vec();
        sorted.sort_unstable();

        let mut gathered = vec![Complex::zero(); local];
        for rest in 0..(1usize << (self.num_qubits - k)) {
            let base = sorted.iter().fold(rest, |i, &q| insert_zero_bit(i, q));
            for (slot, &off) in gathered.iter_mut().zip(&offsets) {
                *slot = self.amps[base + off];
            }
            for (r, &off) in offsets.iter().enumerate() {
                let row = &m.as_slice()[r * local..(r + 1) * local];
                self.amps[base + off] = row.iter().zip(&gathered).fold(Complex::zero(), |acc, (&g, &a)| acc + g * a);
            }
        }
    }
}

fn insert_zero_bit(i: usize, pos: usize) -> usize {
    let low = i & ((1 << pos) - 1);
    ((i >> pos) << (pos + 1)) | low
}

pub fn initial_state<T: Scalar>(num_qubits: usize) -> Result<StateVector<T>> {
    StateVector::zero_state(num_qubits)
}

pub fn apply_gate<T: Scalar>(mut state: StateVector<T>, gate: &Gate) -> StateVector<T> {
    state.apply(gate);
    state
}

pub fn simulate<T: Scalar>(circuit: &Circuit) -> Result<StateVector<T>> {
    let state = initial_state(circuit.num_qubits())?;
    Ok(circuit.gates().iter().fold(state, apply_gate))
}

/// Simulates `circuit` starting from the basis state `input`.
pub fn simulate_from<T: Scalar>(circuit: &Circuit, input: &BasisState) -> Result<StateVector<T>> {
    input.check_width(circuit.num_qubits())?;
    let mut state = initial_state::<T>(circuit.num_qubits())?;
    state.amps.swap(0, input.index());
    Ok(circuit.gates().iter().fold(state, apply_gate))
}

pub fn measure_probabilities<T: Scalar>(state: &StateVector<T>) -> Vec<T> {
    state.amps.iter().map(|a| a.norm_sqr()).collect()
}

/// Draws `shots` i.i.d. measurement outcomes with a seeded generator.
pub fn sample<T: Scalar>(state: &StateVector<T>, shots: usize, seed: u64) -> BTreeMap<BasisState, usize> {
    let probs: Vec<f64> = measure_probabilities(state).into_iter().map(|p| p.to_f64().unwrap_or(0.0)).collect();
    let dist = WeightedIndex::new(&probs).expect("a normalized state has positive total weight");
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut counts: BTreeMap<usize, usize> = BTreeMap::new();
    for _ in 0..shots {
        *counts.entry(dist.sample(&mut rng)).or_default() += 1;
    }
    counts.into_iter().map(|(i, c)| (BasisState::from_index(i, state.num_qubits), c)).collect()
}

/// The `2^n × 2^n` matrix of `gate` acting on an `n`-qubit register, built
/// entry by entry: rows and columns must agree off the gate's qubits.
pub fn embed_gate<T: Scalar>(gate: &Gate, num_qubits: usize) -> SquareMatrix<T> {
    let m = gate.matrix::<T>();
    let qubits = gate.qubits();
    let k = qubits.len();
    let mask = qubits.iter().fold(0usize, |acc, &q| acc | 1 << q);
    let local = |i: usize| qubits.iter().enumerate().fold(0, |acc, (j, &q)| acc | ((i >> q) & 1) << (k - 1 - j));
    SquareMatrix::from_fn(1 << num_qubits, |r, c| {
        if r & !mask == c & !mask {
            m.get(local(r), local(c))
        } else {
            Complex::zero()
        }
    })
}

/// Product of embedded gate matrices, later gates on the left.
pub fn circuit_unitary<T: Scalar>(circuit: &Circuit) -> Result<UnitaryMatrix<T>> {
    let n = circuit.num_qubits();
    capacity("circuit unitary", n, MAX_UNITARY_QUBITS)?;
    Ok(circuit.gates().iter().fold(SquareMatrix::identity(1 << n), |acc, g| &embed_gate::<T>(g, n) * &acc))
}
