//! Seeded random circuits over the full gate set, for differential testing.

use rand::Rng;

use crate::ir::{Angle, Circuit, Gate, GateKind};

const DENOMINATORS: [i64; 5] = [1, 2, 3, 4, 8];

pub fn random_angle<R: Rng + ?Sized>(rng: &mut R) -> Angle {
    let q = DENOMINATORS[rng.gen_range(0..DENOMINATORS.len())];
    Angle::new(rng.gen_range(-2 * q..2 * q), q).expect("positive denominator")
}

/// A uniformly chosen gate. Two-qubit kinds are skipped when `num_qubits == 1`.
pub fn random_gate<R: Rng + ?Sized>(num_qubits: usize, rng: &mut R) -> Gate {
    loop {
        let kind = GateKind::ALL[rng.gen_range(0..GateKind::ALL.len())];
        if kind.arity() > num_qubits {
            continue;
        }
        let a = rng.gen_range(0..num_qubits);
        let qubits = if kind.arity() == 2 {
            let mut b = rng.gen_range(0..num_qubits - 1);
            if b >= a {
                b += 1;
            }
            vec![a, b]
        } else {
            vec![a]
        };
        let angle = kind.is_parametric().then(|| random_angle(rng));
        return Gate::new(kind, angle, qubits).expect("random gate is well-formed");
    }
}

pub fn random_circuit<R: Rng + ?Sized>(num_qubits: usize, depth: usize, rng: &mut R) -> Circuit {
    Circuit::with_gates(num_qubits, (0..depth).map(|_| random_gate(num_qubits, rng))).expect("gates fit the circuit")
}

/// Inserts `pairs` adjacent `g, g⁻¹` pairs of random gates at random
/// positions. The result has the same unitary as `c`.
pub fn insert_inverse_pairs<R: Rng + ?Sized>(c: &Circuit, pairs: usize, rng: &mut R) -> Circuit {
    let mut gates = c.gates().to_vec();
    for _ in 0..pairs {
        let g = random_gate(c.num_qubits(), rng);
        let at = rng.gen_range(0..=gates.len());
        gates.insert(at, g.inverse());
        gates.insert(at, g);
    }
    Circuit::with_gates(c.num_qubits(), gates).expect("gates fit the circuit")
}

/// Replaces one gate by a different gate on the same qubits whose unitary is
/// not a phase multiple of the original, so the circuit's unitary changes.
/// Returns `None` for an empty circuit.
pub fn mutate_gate<R: Rng + ?Sized>(c: &Circuit, rng: &mut R) -> Option<Circuit> {
    if c.is_empty() {
        return None;
    }
    let mut gates = c.gates().to_vec();
    let i = rng.gen_range(0..gates.len());
    let old = &gates[i];
    let old_matrix = old.matrix::<f64>();
    let replacement = loop {
        let kind = GateKind::ALL[rng.gen_range(0..GateKind::ALL.len())];
        if kind.arity() != old.arity() {
            continue;
        }
        let angle = kind.is_parametric().then(|| random_angle(rng));
        let g = Gate::new(kind, angle, old.qubits().to_vec()).expect("same qubits");
        if old_matrix.global_phase_to(&g.matrix(), 1e-9).is_none() {
            break g;
        }
    };
    gates[i] = replacement;
    Some(Circuit::with_gates(c.num_qubits(), gates).expect("gates fit the circuit"))
}
