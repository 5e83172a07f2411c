use std::collections::HashMap;

use num_complex::Complex;
use num_traits::{One, Zero};

use crate::dense::StateVector;
use crate::error::{capacity, Error, Result};
use crate::ir::{BasisState, Circuit};
use crate::scalar::Scalar;
use crate::tn::plan::{execute_plan, greedy_plan};
use crate::tn::tensor::{Index, Tensor};

pub const MAX_FULL_STATE_QUBITS: usize = 20;

#[derive(Debug, Clone, PartialEq)]
pub struct TensorNetwork<T> {
    tensors: Vec<Tensor<T>>,
    open_indices: Vec<Index>,
}

impl<T: Scalar> TensorNetwork<T> {
    /// Checks that each label occurs in one tensor (and is listed as open)
    /// or in exactly two tensors with equal dimensions.
    pub fn new(tensors: Vec<Tensor<T>>, open_indices: Vec<Index>) -> Result<Self> {
        let mut seen: HashMap<usize, (Index, usize)> = HashMap::new();
        for t in &tensors {
            for i in t.indices() {
                let entry = seen.entry(i.label).or_insert((*i, 0));
                if entry.0.dim != i.dim {
                    return Err(Error::DimensionMismatch { label: i.label, left: entry.0.dim, right: i.dim });
                }
                entry.1 += 1;
            }
        }
        for open in &open_indices {
            match seen.get(&open.label) {
                Some((i, 1)) if i.dim == open.dim => {}
                _ => return Err(Error::Plan(format!("open index {open} must occur in exactly one tensor"))),
            }
        }
        for (label, (_, count)) in &seen {
            let is_open = open_indices.iter().any(|o| o.label == *label);
            if !is_open && *count != 2 {
                return Err(Error::Plan(format!("index {label} occurs {count} times")));
            }
        }
        Ok(Self { tensors, open_indices })
    }

    pub fn tensors(&self) -> &[Tensor<T>] {
        &self.tensors
    }

    pub fn open_indices(&self) -> &[Index] {
        &self.open_indices
    }

    pub fn len(&self) -> usize {
        self.tensors.len()
    }

    pub fn is_empty(&self) -> bool {
        self.tensors.is_empty()
    }

    /// Caps every open index with a rank-1 tensor, `⟨0|` or `⟨1|` per `bits`.
    pub fn with_effects(&self, bits: &[bool]) -> Self {
        assert_eq!(bits.len(), self.open_indices.len());
        let mut tensors = self.tensors.clone();
        for (idx, &b) in self.open_indices.iter().zip(bits) {
            let mut data = vec![Complex::zero(); idx.dim];
            data[b as usize] = Complex::one();
            tensors.push(Tensor::new(vec![*idx], data).expect("effect shape"));
        }
        Self { tensors, open_indices: Vec::new() }
    }
}

/// One `|0⟩` tensor per qubit, then one tensor per gate whose legs are the
/// gate's output wires followed by its input wires. The open indices are the
/// final wire of each qubit, `q_{n-1}` first.
pub fn circuit_to_network<T: Scalar>(c: &Circuit) -> TensorNetwork<T> {
    let n = c.num_qubits();
    let mut tensors = Vec::with_capacity(n + c.len());
    let mut wire: Vec<usize> = (0..n).collect();
    let mut next_label = n;
    for &label in &wire {
        tensors.push(Tensor::new(vec![Index::qubit(label)], vec![Complex::one(), Complex::zero()]).expect("ket"));
    }
    for g in c.gates() {
        let inputs: Vec<Index> = g.qubits().iter().map(|&q| Index::qubit(wire[q])).collect();
        let mut indices = Vec::with_capacity(2 * inputs.len());
        for &q in g.qubits() {
            wire[q] = next_label;
            indices.push(Index::qubit(next_label));
            next_label += 1;
        }
        indices.extend(inputs);
        tensors.push(Tensor::new(indices, g.matrix::<T>().into_vec()).expect("gate tensor shape"));
    }
    let open = (0..n).rev().map(|q| Index::qubit(wire[q])).collect();
    TensorNetwork { tensors, open_indices: open }
}

/// `⟨b|C|0…0⟩` by contracting the network closed with basis effects.
pub fn amplitude_tn<T: Scalar>(c: &Circuit, b: &BasisState) -> Result<Complex<T>> {
    b.check_width(c.num_qubits())?;
    let net = circuit_to_network::<T>(c);
    let bits: Vec<bool> = (0..c.num_qubits()).rev().map(|q| b.bit(q)).collect();
    let closed = net.with_effects(&bits);
    let plan = greedy_plan(&closed);
    let t = execute_plan(&closed, &plan)?;
    Ok(t.as_scalar().expect("closed network contracts to a scalar"))
}

pub fn full_state_tn<T: Scalar>(c: &Circuit) -> Result<StateVector<T>> {
    capacity("tensor-network full state", c.num_qubits(), MAX_FULL_STATE_QUBITS)?;
    let net = circuit_to_network::<T>(c);
    let plan = greedy_plan(&net);
    let t = execute_plan(&net, &plan)?;
    StateVector::from_amplitudes(t.into_data())
}
