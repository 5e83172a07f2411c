use std::fmt;
use std::str::FromStr;

use crate::error::Error;
use crate::ir::Gate;

/// An ordered gate list over `num_qubits` qubits.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct Circuit {
    num_qubits: usize,
    gates: Vec<Gate>,
}

impl Circuit {
    pub fn new(num_qubits: usize) -> Result<Self, Error> {
        if num_qubits == 0 {
            return Err(Error::InvalidGate("a circuit needs at least one qubit".into()));
        }
        Ok(Self { num_qubits, gates: Vec::new() })
    }

    pub fn with_gates(num_qubits: usize, gates: impl IntoIterator<Item = Gate>) -> Result<Self, Error> {
        let mut c = Self::new(num_qubits)?;
        for g in gates {
            c.push(g)?;
        }
        Ok(c)
    }

    pub fn push(&mut self, gate: Gate) -> Result<(), Error> {
        if let Some(&q) = gate.qubits().iter().find(|&&q| q >= self.num_qubits) {
            return Err(Error::InvalidGate(format!("qubit {q} out of range for a {}-qubit circuit", self.num_qubits)));
        }
        self.gates.push(gate);
        Ok(())
    }

    pub fn num_qubits(&self) -> usize {
        self.num_qubits
    }

    pub fn gates(&self) -> &[Gate] {
        &self.gates
    }

    pub fn len(&self) -> usize {
        self.gates.len()
    }

    pub fn is_empty(&self) -> bool {
        self.gates.is_empty()
    }

    /// Gates reversed and individually inverted.
    pub fn adjoint(&self) -> Circuit {
        Circuit { num_qubits: self.num_qubits, gates: self.gates.iter().rev().map(Gate::inverse).collect() }
    }

    /// `self` followed by `other`.
    pub fn compose(&self, other: &Circuit) -> Result<Circuit, Error> {
        if self.num_qubits != other.num_qubits {
            return Err(Error::WidthMismatch { left: self.num_qubits, right: other.num_qubits });
        }
        let mut gates = self.gates.clone();
        gates.extend(other.gates.iter().cloned());
        Ok(Circuit { num_qubits: self.num_qubits, gates })
    }
}

pub fn adjoint_circuit(c: &Circuit) -> Circuit {
    c.adjoint()
}

/// Canonical QCF rendering; `parse_circuit` reads it back unchanged.
impl fmt::Display for Circuit {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        writeln!(f, "qubits {}", self.num_qubits)?;
        for g in &self.gates {
            writeln!(f, "{g}")?;
        }
        Ok(())
    }
}

/// A computational basis state written most-significant qubit first.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct BasisState {
    // bits[i] is the value of qubit i
    bits: Vec<bool>,
}

impl BasisState {
    pub fn from_index(index: usize, num_qubits: usize) -> Self {
        Self { bits: (0..num_qubits).map(|q| index >> q & 1 == 1).collect() }
    }

    pub fn zeros(num_qubits: usize) -> Self {
        Self::from_index(0, num_qubits)
    }

    pub fn num_qubits(&self) -> usize {
        self.bits.len()
    }

    /// Value of qubit `q` (qubit 0 is least significant).
    pub fn bit(&self, q: usize) -> bool {
        self.bits[q]
    }

    /// Binary value with qubit `n-1` as the most significant bit.
    pub fn index(&self) -> usize {
        self.bits.iter().enumerate().fold(0, |acc, (q, &b)| acc | (b as usize) << q)
    }

    pub fn check_width(&self, num_qubits: usize) -> Result<(), Error> {
        if self.bits.len() != num_qubits {
            return Err(Error::InvalidBasis(format!(
                "basis state `{self}` has {} bits, expected {num_qubits}",
                self.bits.len()
            )));
        }
        Ok(())
    }
}

/// Orders like the printed bit strings.
impl Ord for BasisState {
    fn cmp(&self, other: &Self) -> std::cmp::Ordering {
        self.bits.len().cmp(&other.bits.len()).then_with(|| self.bits.iter().rev().cmp(other.bits.iter().rev()))
    }
}

impl PartialOrd for BasisState {
    fn partial_cmp(&self, other: &Self) -> Option<std::cmp::Ordering> {
        Some(self.cmp(other))
    }
}

impl fmt::Display for BasisState {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for &b in self.bits.iter().rev() {
            f.write_str(if b { "1" } else { "0" })?;
        }
        Ok(())
    }
}

impl FromStr for BasisState {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self, Error> {
        if s.is_empty() {
            return Err(Error::InvalidBasis("empty basis state".into()));
        }
        let bits = s
            .chars()
            .rev()
            .map(|ch| match ch {
                '0' => Ok(false),
                '1' => Ok(true),
                _ => Err(Error::InvalidBasis(format!("`{s}` is not a bit string"))),
            })
            .collect::<Result<_, _>>()?;
        Ok(Self { bits })
    }
}
