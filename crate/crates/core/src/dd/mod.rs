//! Decision-diagram backend.
//!
//! A state vector over qubits `q_{n-1} … q_0` is split recursively: a node
//! labelled `q_k` points to the diagrams of the halves where `q_k = 0` and
//! `q_k = 1`. Matrices are split the same way into four quadrants. Common
//! factors are pulled onto edge weights (each node's successor weights are
//! divided by the first nonzero one), numerically equal weights are interned
//! in a tolerance table, and nodes are hash-consed through a unique table, so
//! equal sub-vectors are represented by the same node. An amplitude is the
//! product of the weights along its path; a zero-weight edge to the terminal
//! marks an all-zero block.
//!
//! Levels are never skipped: a node for `q_k` always has successors for
//! `q_{k-1}` (or the terminal, at `q_0` or on a zero edge).

mod equivalence;
mod package;
mod table;

pub use equivalence::{equivalent_dd, DdEquivalence, MAX_EQUIVALENCE_QUBITS, PHASE_TOLERANCE};
pub use package::{simulate_dd, vector_to_dd, DdPackage, Edge, MatrixDd, Node, NodeId, VectorDd};

#[cfg(test)]
mod tests {
    use std::collections::HashSet;
    use std::f64::consts::FRAC_1_SQRT_2;

    use num_complex::Complex;
    use proptest::prelude::*;
    use rand::{Rng, SeedableRng};
    use rand_chacha::ChaCha8Rng;

    use super::*;
    use crate::dense::{self, StateVector};
    use crate::ir::random::{random_circuit, random_gate};
    use crate::ir::{BasisState, Circuit, Gate};
    use crate::matrix::SquareMatrix;

    type C = Complex<f64>;

    fn c(re: f64) -> C {
        Complex::new(re, 0.0)
    }

    fn state(amps: &[f64]) -> StateVector<f64> {
        StateVector::from_amplitudes(amps.iter().map(|&a| c(a)).collect()).unwrap()
    }

    fn random_state(n: usize, rng: &mut impl Rng) -> StateVector<f64> {
        let mut amps: Vec<C> =
            (0..1 << n).map(|_| Complex::new(rng.gen_range(-1.0..1.0), rng.gen_range(-1.0..1.0))).collect();
        let norm = amps.iter().map(|a| a.norm_sqr()).sum::<f64>().sqrt();
        amps.iter_mut().for_each(|a| *a /= norm);
        StateVector::from_amplitudes(amps).unwrap()
    }

    fn bell_circuit() -> Circuit {
        Circuit::with_gates(2, [Gate::h(1), Gate::cx(1, 0)]).unwrap()
    }

    fn ghz(n: usize) -> Circuit {
        let mut c = Circuit::new(n).unwrap();
        c.push(Gate::h(n - 1)).unwrap();
        for q in (1..n).rev() {
            c.push(Gate::cx(q, q - 1)).unwrap();
        }
        c
    }

    /// Independent count of distinct normalized sub-vectors per level.
    fn brute_force_node_count(amps: &[C]) -> usize {
        fn key(v: &[C]) -> Option<Vec<(i64, i64)>> {
            let first = v.iter().find(|a| a.norm() > 1e-12)?;
            Some(
                v.iter()
                    .map(|a| a / first)
                    .map(|a| ((a.re * 1e8).round() as i64, (a.im * 1e8).round() as i64))
                    .collect(),
            )
        }
        let mut total = 0;
        let mut len = amps.len();
        while len > 1 {
            let distinct: HashSet<_> = amps.chunks(len).filter_map(key).collect();
            total += distinct.len();
            len /= 2;
        }
        total
    }

    #[test]
    fn bell_state_structure() {
        let s = FRAC_1_SQRT_2;
        let mut pkg = DdPackage::<f64>::new();
        let bell = pkg.vector_to_dd(&state(&[s, 0., 0., s]));
        assert!((bell.root.weight - c(s)).norm() < 1e-15);
        assert_eq!(pkg.vector_node_count(&bell), 3);

        let top = pkg.vector_node(bell.root.target);
        assert_eq!(top.var, 1);
        assert_ne!(top.succ[0].target, top.succ[1].target);
        for (i, e) in top.succ.iter().enumerate() {
            assert_eq!(e.weight, c(1.));
            let q0 = pkg.vector_node(e.target);
            assert_eq!(q0.var, 0);
            // |00> continues on the 0-branch, |11> on the 1-branch; the other is a 0-stub
            assert!(q0.succ[1 - i].is_zero());
            assert_eq!(q0.succ[i], Edge::terminal(c(1.)));
        }
    }

    #[test]
    fn zero_state_has_one_node_per_level() {
        let mut pkg = DdPackage::<f64>::new();
        for n in 1..=8 {
            let dd = pkg.vector_to_dd(&dense::initial_state(n).unwrap());
            assert_eq!(pkg.vector_node_count(&dd), n);
            let mut e = dd.root;
            for _ in 0..n {
                let node = pkg.vector_node(e.target);
                assert!(node.succ[1].is_zero());
                e = node.succ[0];
            }
            assert_eq!(pkg.zero_state_dd(n), dd);
        }
    }

    #[test]
    fn ghz_node_counts_match_construction_oracle() {
        let mut pkg = DdPackage::<f64>::new();
        for n in 2..=8 {
            let amps = dense::simulate::<f64>(&ghz(n)).unwrap();
            let dd = pkg.vector_to_dd(&amps);
            let oracle = brute_force_node_count(amps.amplitudes());
            assert_eq!(oracle, 2 * n - 1);
            assert_eq!(pkg.vector_node_count(&dd), oracle, "n={n}");
        }
        let dd = pkg.vector_to_dd(&dense::simulate::<f64>(&ghz(3)).unwrap());
        assert_eq!(pkg.vector_node_count(&dd), 5);
    }

    #[test]
    fn reconstruction() {
        let s = FRAC_1_SQRT_2;
        let mut pkg = DdPackage::<f64>::new();
        let bell = state(&[s, 0., 0., s]);
        let dd = pkg.vector_to_dd(&bell);
        assert!(pkg.dd_to_vector(&dd).unwrap().max_deviation(&bell) < 1e-15);

        let one = pkg.vector_to_dd(&state(&[1., 0.]));
        assert_eq!(pkg.dd_to_vector(&one).unwrap(), state(&[1., 0.]));

        let mut rng = ChaCha8Rng::seed_from_u64(3);
        for _ in 0..20 {
            let st = random_state(4, &mut rng);
            let dd = pkg.vector_to_dd(&st);
            assert!(pkg.dd_to_vector(&dd).unwrap().max_deviation(&st) < 1e-12);
        }
    }

    #[test]
    fn amplitudes_are_path_products() {
        let s = FRAC_1_SQRT_2;
        let mut pkg = DdPackage::<f64>::new();
        let dd = pkg.vector_to_dd(&state(&[s, 0., 0., s]));
        let amp = |b: &str| pkg.get_amplitude(&dd, &b.parse().unwrap()).unwrap();
        assert!((amp("00") - c(s * 1.0 * 1.0)).norm() < 1e-15);
        assert_eq!(amp("01"), c(0.));
        assert_eq!(amp("10"), c(0.));
        assert!((amp("11") - c(s)).norm() < 1e-15);
        assert!(pkg.get_amplitude(&dd, &"0".parse().unwrap()).is_err());
    }

    #[test]
    fn gate_diagrams() {
        let mut pkg = DdPackage::<f64>::new();
        let x = pkg.gate_to_mdd(&Gate::x(0), 1);
        assert_eq!(pkg.matrix_node_count(&x), 1);
        let node = pkg.matrix_node(x.root.target);
        let weights: Vec<C> = node.succ.iter().map(|e| e.weight).collect();
        assert_eq!(weights, vec![c(0.), c(1.), c(1.), c(0.)]);
        assert!(node.succ.iter().all(|e| e.target == NodeId::TERMINAL));

        let cx = pkg.gate_to_mdd(&Gate::cx(1, 0), 2);
        assert_eq!(pkg.mdd_to_matrix(&cx).unwrap(), Gate::cx(1, 0).matrix());

        let h = pkg.gate_to_mdd(&Gate::h(1), 3);
        let i2 = SquareMatrix::<f64>::identity(2);
        let want = i2.kron(&Gate::h(0).matrix()).kron(&i2);
        assert!(pkg.mdd_to_matrix(&h).unwrap().approx_eq(&want, 1e-12));
    }

    #[test]
    fn gate_diagrams_match_embedding_for_all_kinds() {
        let mut rng = ChaCha8Rng::seed_from_u64(8);
        let mut pkg = DdPackage::<f64>::new();
        for _ in 0..200 {
            let n = rng.gen_range(1..=4);
            let g = random_gate(n, &mut rng);
            let dd = pkg.gate_to_mdd(&g, n);
            let got = pkg.mdd_to_matrix(&dd).unwrap();
            assert!(got.approx_eq(&dense::embed_gate(&g, n), 1e-12), "{g}");
        }
    }

    #[test]
    fn matrix_vector_products() {
        let s = FRAC_1_SQRT_2;
        let mut pkg = DdPackage::<f64>::new();
        let cx = pkg.gate_to_mdd(&Gate::cx(1, 0), 2);
        let v = pkg.vector_to_dd(&state(&[s, 0., s, 0.]));
        let out = pkg.mult_mv(&cx, &v);
        let bell = pkg.vector_to_dd(&state(&[s, 0., 0., s]));
        assert_eq!(out.root.target, bell.root.target);
        assert!((out.root.weight - bell.root.weight).norm() < 1e-12);

        let mut rng = ChaCha8Rng::seed_from_u64(4);
        let id = pkg.identity(3);
        let v = pkg.vector_to_dd(&random_state(3, &mut rng));
        let out = pkg.mult_mv(&id, &v);
        assert_eq!(out.root.target, v.root.target);
        assert!((out.root.weight - v.root.weight).norm() < 1e-12);

        for _ in 0..20 {
            let g = random_gate(5, &mut rng);
            let st = random_state(5, &mut rng);
            let want = dense::apply_gate(st.clone(), &g);
            let m = pkg.gate_to_mdd(&g, 5);
            let v = pkg.vector_to_dd(&st);
            let dd = pkg.mult_mv(&m, &v);
            let got = pkg.dd_to_vector(&dd).unwrap();
            assert!(got.max_deviation(&want) < 1e-10, "{g}");
        }
    }

    #[test]
    fn matrix_matrix_products() {
        let mut pkg = DdPackage::<f64>::new();
        let id1 = pkg.identity(1);
        let x = pkg.gate_to_mdd(&Gate::x(0), 1);
        assert_eq!(pkg.mult_mm(&x, &x), id1);
        let h = pkg.gate_to_mdd(&Gate::h(0), 1);
        let hh = pkg.mult_mm(&h, &h);
        assert_eq!(hh.root.target, id1.root.target);
        assert!((hh.root.weight - c(1.)).norm() < 1e-12);

        let mut rng = ChaCha8Rng::seed_from_u64(5);
        for _ in 0..10 {
            let a = dense::circuit_unitary::<f64>(&random_circuit(4, 8, &mut rng)).unwrap();
            let b = dense::circuit_unitary::<f64>(&random_circuit(4, 8, &mut rng)).unwrap();
            let (da, db) = (pkg.matrix_from_dense(&a), pkg.matrix_from_dense(&b));
            let dd = pkg.mult_mm(&da, &db);
            let got = pkg.mdd_to_matrix(&dd).unwrap();
            assert!(got.approx_eq(&(&a * &b), 1e-10));
        }
    }

    #[test]
    fn additions() {
        let s = FRAC_1_SQRT_2;
        let mut pkg = DdPackage::<f64>::new();
        let mut rng = ChaCha8Rng::seed_from_u64(6);
        let v = pkg.vector_to_dd(&random_state(3, &mut rng));
        let zero = VectorDd { num_qubits: 3, root: Edge::zero() };
        assert_eq!(pkg.add(&v, &zero), v);

        let b00 = pkg.basis_state_dd(&"00".parse().unwrap());
        let b11 = pkg.basis_state_dd(&"11".parse().unwrap());
        let (a, b) = (pkg.scale_vector(&b00, c(s)), pkg.scale_vector(&b11, c(s)));
        let sum = pkg.add(&a, &b);
        let bell = pkg.vector_to_dd(&state(&[s, 0., 0., s]));
        assert_eq!(sum.root.target, bell.root.target);
        assert!((sum.root.weight - bell.root.weight).norm() < 1e-12);

        for _ in 0..10 {
            let (x, y) = (random_state(4, &mut rng), random_state(4, &mut rng));
            let (dx, dy) = (pkg.vector_to_dd(&x), pkg.vector_to_dd(&y));
            let dd = pkg.add(&dx, &dy);
            let got = pkg.dd_to_vector(&dd).unwrap();
            for ((g, a), b) in got.amplitudes().iter().zip(x.amplitudes()).zip(y.amplitudes()) {
                assert!((g - (a + b)).norm() < 1e-10);
            }
        }
    }

    #[test]
    fn circuit_simulation() {
        let mut pkg = DdPackage::<f64>::new();
        let s = FRAC_1_SQRT_2;
        let out = pkg.simulate(&bell_circuit());
        let fig = pkg.vector_to_dd(&state(&[s, 0., 0., s]));
        assert_eq!(out.root.target, fig.root.target);
        assert!((out.root.weight - fig.root.weight).norm() < 1e-12);

        let empty = pkg.simulate(&Circuit::new(4).unwrap());
        assert_eq!(pkg.dd_to_vector(&empty).unwrap(), dense::initial_state(4).unwrap());

        let mut rng = ChaCha8Rng::seed_from_u64(7);
        for _ in 0..10 {
            let circ = random_circuit(6, 20, &mut rng);
            let dd = pkg.simulate(&circ);
            let got = pkg.dd_to_vector(&dd).unwrap();
            assert!(got.max_deviation(&dense::simulate(&circ).unwrap()) < 1e-9);
        }
    }

    #[test]
    fn node_counts() {
        let mut pkg = DdPackage::<f64>::new();
        let bell = pkg.simulate(&bell_circuit());
        assert_eq!(pkg.vector_node_count(&bell), 3);
        let z = pkg.zero_state_dd(8);
        assert_eq!(pkg.vector_node_count(&z), 8);
        for n in 2..=8 {
            let g = pkg.simulate(&ghz(n));
            assert_eq!(pkg.vector_node_count(&g), 2 * n - 1);
        }
        assert_eq!(pkg.stats_line(&bell), "nodes=3 root_weight=0.70710678118654757,0");
    }

    #[test]
    fn equivalence() {
        let bell = bell_circuit();
        let DdEquivalence::Equivalent { phase } = equivalent_dd::<f64>(&bell, &bell).unwrap() else {
            panic!("self-equivalence failed");
        };
        assert!((phase - c(1.)).norm() < 1e-9);

        let hh = Circuit::with_gates(1, [Gate::h(0), Gate::h(0)]).unwrap();
        let DdEquivalence::Equivalent { phase } = equivalent_dd::<f64>(&hh, &Circuit::new(1).unwrap()).unwrap() else {
            panic!("HH is not the identity");
        };
        assert!((phase - c(1.)).norm() < 1e-9);

        let swapped = Circuit::with_gates(2, [Gate::h(1), Gate::cx(0, 1)]).unwrap();
        let verdict = equivalent_dd::<f64>(&bell, &swapped).unwrap();
        assert!(matches!(verdict, DdEquivalence::NotEquivalent { .. }));
        // dense oracle agrees that the unitaries differ beyond phase
        let (u1, u2) =
            (dense::circuit_unitary::<f64>(&bell).unwrap(), dense::circuit_unitary::<f64>(&swapped).unwrap());
        assert!(u1.global_phase_to(&u2, 1e-9).is_none());

        // a pure global phase is still equivalent: Z·X·Z·X = −I
        let zxzx = Circuit::with_gates(1, [Gate::x(0), Gate::z(0), Gate::x(0), Gate::z(0)]).unwrap();
        let DdEquivalence::Equivalent { phase } = equivalent_dd::<f64>(&zxzx, &Circuit::new(1).unwrap()).unwrap()
        else {
            panic!("global phase not tolerated");
        };
        assert!((phase - c(-1.)).norm() < 1e-9);

        assert!(matches!(
            equivalent_dd::<f64>(&bell, &Circuit::new(3).unwrap()),
            Err(crate::Error::WidthMismatch { .. })
        ));
        assert!(matches!(
            equivalent_dd::<f64>(&Circuit::new(13).unwrap(), &Circuit::new(13).unwrap()),
            Err(crate::Error::Capacity { .. })
        ));
    }

    #[test]
    fn witness_separates_outputs() {
        let mut rng = ChaCha8Rng::seed_from_u64(9);
        for _ in 0..20 {
            let c1 = random_circuit(3, 10, &mut rng);
            let mut c2 = c1.clone();
            c2.push(Gate::t(rng.gen_range(0..3))).unwrap();
            let DdEquivalence::NotEquivalent { witness } = equivalent_dd::<f64>(&c1, &c2).unwrap() else {
                panic!("appended T went unnoticed");
            };
            let a = dense::simulate_from::<f64>(&c1, &witness).unwrap();
            let b = dense::simulate_from::<f64>(&c2, &witness).unwrap();
            assert!(a.max_deviation(&b) > 1e-9);
        }
    }

    #[test]
    fn single_precision_bell() {
        let mut pkg = DdPackage::<f32>::new();
        let dd = pkg.simulate(&bell_circuit());
        assert_eq!(pkg.vector_node_count(&dd), 3);
        let amp = pkg.get_amplitude(&dd, &BasisState::from_index(3, 2)).unwrap();
        assert!((amp.re - std::f32::consts::FRAC_1_SQRT_2).abs() < 1e-6);
    }

    fn assert_no_duplicate_nodes(pkg: &DdPackage<f64>, root: NodeId) {
        let mut seen = HashSet::new();
        let mut keys = HashSet::new();
        let mut stack = vec![root];
        while let Some(id) = stack.pop() {
            if id.is_terminal() || !seen.insert(id) {
                continue;
            }
            let node = pkg.vector_node(id);
            let key: Vec<_> =
                node.succ.iter().map(|e| (e.target, e.weight.re.to_bits(), e.weight.im.to_bits())).collect();
            assert!(keys.insert((node.var, key)), "two nodes share a signature");
            stack.extend(node.succ.iter().map(|e| e.target));
        }
    }

    proptest! {
        #![proptest_config(ProptestConfig::with_cases(48))]

        #[test]
        fn canonical_and_shared(seed in any::<u64>(), n in 1usize..=6, depth in 0usize..=20) {
            let mut rng = ChaCha8Rng::seed_from_u64(seed);
            let circ = random_circuit(n, depth, &mut rng);
            let mut pkg = DdPackage::<f64>::new();
            let via_dense = pkg.vector_to_dd(&dense::simulate(&circ).unwrap());
            let via_dd = pkg.simulate(&circ);
            prop_assert_eq!(via_dense.root.target, via_dd.root.target);
            assert_no_duplicate_nodes(&pkg, via_dd.root.target);
            let norm = pkg.dd_to_vector(&via_dd).unwrap().norm();
            prop_assert!((norm - 1.0).abs() < 1e-9);
        }

        #[test]
        fn multiplication_is_a_homomorphism(seed in any::<u64>(), n in 1usize..=6) {
            let mut rng = ChaCha8Rng::seed_from_u64(seed);
            let mut pkg = DdPackage::<f64>::new();
            let u = dense::circuit_unitary::<f64>(&random_circuit(n, 6, &mut rng)).unwrap();
            let st = random_state(n, &mut rng);
            let (m, v) = (pkg.matrix_from_dense(&u), pkg.vector_to_dd(&st));
            let dd = pkg.mult_mv(&m, &v);
            let got = pkg.dd_to_vector(&dd).unwrap();
            let want = u.mul_vec(st.amplitudes());
            let dev = got.amplitudes().iter().zip(&want).map(|(a, b)| (a - b).norm()).fold(0.0, f64::max);
            prop_assert!(dev < 1e-10);
        }

        #[test]
        fn zero_stubs_give_exact_zero(seed in any::<u64>(), n in 1usize..=5) {
            let mut rng = ChaCha8Rng::seed_from_u64(seed);
            let mut amps = random_state(n, &mut rng).into_amplitudes();
            for (i, a) in amps.iter_mut().enumerate() {
                if i % 3 == 1 {
                    *a = c(0.);
                }
            }
            let mut pkg = DdPackage::<f64>::new();
            let dd = pkg.vector_to_dd(&StateVector::from_amplitudes(amps).unwrap());
            for i in (1..1 << n).step_by(3) {
                prop_assert_eq!(pkg.get_amplitude(&dd, &BasisState::from_index(i, n)).unwrap(), c(0.));
            }
        }
    }
}
