use std::collections::{HashMap, HashSet};

use num_complex::Complex;
use num_traits::{One, Zero};

use crate::dd::table::{weight_key, ComplexTable};
use crate::dense::{StateVector, MAX_STATE_QUBITS, MAX_UNITARY_QUBITS};
use crate::error::{capacity, Result};
use crate::format::format_g17;
use crate::ir::{BasisState, Circuit, Gate};
use crate::matrix::SquareMatrix;
use crate::scalar::Scalar;

/// Handle to a node inside a [`DdPackage`]. Id 0 is the terminal.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct NodeId(u32);

impl NodeId {
    pub const TERMINAL: NodeId = NodeId(0);

    pub fn is_terminal(self) -> bool {
        self == Self::TERMINAL
    }
}

/// A weighted edge. Zero-weight edges always point at the terminal.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Edge<T> {
    pub weight: Complex<T>,
    pub target: NodeId,
}

impl<T: Scalar> Edge<T> {
    pub fn zero() -> Self {
        Self { weight: Complex::zero(), target: NodeId::TERMINAL }
    }

    pub fn terminal(weight: Complex<T>) -> Self {
        Self { weight, target: NodeId::TERMINAL }
    }

    pub fn is_zero(&self) -> bool {
        self.target.is_terminal() && self.weight.is_zero()
    }
}

/// Decision node over qubit `var`. Vector nodes have two successors
/// (`|0⟩`, `|1⟩` halves); matrix nodes have four, row-major `00, 01, 10, 11`.
#[derive(Debug, Clone, Copy)]
pub struct Node<T, const A: usize> {
    pub var: usize,
    pub succ: [Edge<T>; A],
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct VectorDd<T> {
    pub num_qubits: usize,
    pub root: Edge<T>,
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct MatrixDd<T> {
    pub num_qubits: usize,
    pub root: Edge<T>,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
struct NodeKey<const A: usize> {
    var: usize,
    succ: [(NodeId, (u64, u64)); A],
}

type AddKey = (NodeId, (u64, u64), NodeId, (u64, u64));

/// Node storage plus the unique table for one arity.
#[derive(Debug)]
struct Store<T, const A: usize> {
    nodes: Vec<Node<T, A>>,
    unique: HashMap<NodeKey<A>, NodeId>,
    add_cache: HashMap<AddKey, Edge<T>>,
}

impl<T: Scalar, const A: usize> Store<T, A> {
    fn new() -> Self {
        // slot 0 stands in for the terminal and is never dereferenced
        let placeholder = Node { var: usize::MAX, succ: [Edge::zero(); A] };
        Self { nodes: vec![placeholder], unique: HashMap::new(), add_cache: HashMap::new() }
    }

    fn node(&self, id: NodeId) -> Node<T, A> {
        debug_assert!(!id.is_terminal());
        self.nodes[id.0 as usize]
    }

    /// Normalizes `succ` by its first nonzero weight and returns the
    /// hash-consed node behind an edge carrying that factor.
    fn make_node(&mut self, ct: &mut ComplexTable<T>, var: usize, succ: [Edge<T>; A]) -> Edge<T> {
        let mut succ = succ.map(|e| snap(ct, e));
        let Some(first) = succ.iter().position(|e| !e.is_zero()) else {
            return Edge::zero();
        };
        let factor = succ[first].weight;
        for e in succ.iter_mut().filter(|e| !e.is_zero()) {
            e.weight = ct.lookup(e.weight / factor);
        }
        succ[first].weight = Complex::one();

        let key = NodeKey { var, succ: succ.map(|e| (e.target, weight_key(e.weight))) };
        let id = match self.unique.get(&key) {
            Some(&id) => id,
            None => {
                let id = NodeId(self.nodes.len() as u32);
                self.nodes.push(Node { var, succ });
                self.unique.insert(key, id);
                id
            }
        };
        Edge { weight: ct.lookup(factor), target: id }
    }

    fn add(&mut self, ct: &mut ComplexTable<T>, a: Edge<T>, b: Edge<T>) -> Edge<T> {
        if a.is_zero() {
            return b;
        }
        if b.is_zero() {
            return a;
        }
        if a.target == b.target {
            return snap(ct, Edge { weight: a.weight + b.weight, target: a.target });
        }
        let (a, b) = if a.target <= b.target { (a, b) } else { (b, a) };
        let key = (a.target, weight_key(a.weight), b.target, weight_key(b.weight));
        if let Some(&hit) = self.add_cache.get(&key) {
            return hit;
        }
        let (na, nb) = (self.node(a.target), self.node(b.target));
        debug_assert_eq!(na.var, nb.var);
        let mut succ = [Edge::zero(); A];
        for (i, s) in succ.iter_mut().enumerate() {
            let x = scale(ct, na.succ[i], a.weight);
            let y = scale(ct, nb.succ[i], b.weight);
            *s = self.add(ct, x, y);
        }
        let out = self.make_node(ct, na.var, succ);
        self.add_cache.insert(key, out);
        out
    }

    fn count_reachable(&self, root: NodeId) -> usize {
        let mut seen = HashSet::new();
        let mut stack = vec![root];
        while let Some(id) = stack.pop() {
            if id.is_terminal() || !seen.insert(id) {
                continue;
            }
            stack.extend(self.node(id).succ.iter().map(|e| e.target));
        }
        seen.len()
    }
}

fn snap<T: Scalar>(ct: &mut ComplexTable<T>, e: Edge<T>) -> Edge<T> {
    if ct.is_zero(e.weight) {
        Edge::zero()
    } else {
        Edge { weight: ct.lookup(e.weight), target: e.target }
    }
}

fn scale<T: Scalar>(ct: &mut ComplexTable<T>, e: Edge<T>, w: Complex<T>) -> Edge<T> {
    if e.is_zero() {
        return e;
    }
    snap(ct, Edge { weight: e.weight * w, target: e.target })
}

/// Owns the unique tables, weight table and compute tables for a family of
/// decision diagrams. Diagrams from one package must not be mixed with
/// another's.
#[derive(Debug)]
pub struct DdPackage<T: Scalar> {
    ct: ComplexTable<T>,
    vectors: Store<T, 2>,
    matrices: Store<T, 4>,
    mv_cache: HashMap<(NodeId, NodeId), Edge<T>>,
    mm_cache: HashMap<(NodeId, NodeId), Edge<T>>,
}

impl<T: Scalar> Default for DdPackage<T> {
    fn default() -> Self {
        Self::new()
    }
}

impl<T: Scalar> DdPackage<T> {
    pub fn new() -> Self {
        Self {
            ct: ComplexTable::new(),
            vectors: Store::new(),
            matrices: Store::new(),
            mv_cache: HashMap::new(),
            mm_cache: HashMap::new(),
        }
    }

    pub fn tolerance(&self) -> T {
        self.ct.tolerance()
    }

    pub fn vector_node(&self, id: NodeId) -> Node<T, 2> {
        self.vectors.node(id)
    }

    pub fn matrix_node(&self, id: NodeId) -> Node<T, 4> {
        self.matrices.node(id)
    }

    /// Total nodes ever created, both arities.
    pub fn allocated_nodes(&self) -> usize {
        self.vectors.nodes.len() + self.matrices.nodes.len() - 2
    }

    fn clear_compute_tables(&mut self) {
        self.mv_cache.clear();
        self.mm_cache.clear();
        self.vectors.add_cache.clear();
        self.matrices.add_cache.clear();
    }

    // ---- vectors ----

    pub fn vector_to_dd(&mut self, state: &StateVector<T>) -> VectorDd<T> {
        let n = state.num_qubits();
        let root = self.build_vector(state.amplitudes(), n);
        VectorDd { num_qubits: n, root }
    }

    fn build_vector(&mut self, amps: &[Complex<T>], level: usize) -> Edge<T> {
        if level == 0 {
            return snap(&mut self.ct, Edge::terminal(amps[0]));
        }
        let (lo, hi) = amps.split_at(amps.len() / 2);
        let succ = [self.build_vector(lo, level - 1), self.build_vector(hi, level - 1)];
        self.vectors.make_node(&mut self.ct, level - 1, succ)
    }

    pub fn basis_state_dd(&mut self, basis: &BasisState) -> VectorDd<T> {
        let mut e = Edge::terminal(Complex::one());
        for q in 0..basis.num_qubits() {
            let succ = if basis.bit(q) { [Edge::zero(), e] } else { [e, Edge::zero()] };
            e = self.vectors.make_node(&mut self.ct, q, succ);
        }
        VectorDd { num_qubits: basis.num_qubits(), root: e }
    }

    pub fn zero_state_dd(&mut self, num_qubits: usize) -> VectorDd<T> {
        self.basis_state_dd(&BasisState::zeros(num_qubits))
    }

    pub fn dd_to_vector(&self, dd: &VectorDd<T>) -> Result<StateVector<T>> {
        capacity("state vector", dd.num_qubits, MAX_STATE_QUBITS)?;
        let mut amps = vec![Complex::zero(); 1 << dd.num_qubits];
        self.fill_vector(dd.root, Complex::one(), dd.num_qubits, 0, &mut amps);
        StateVector::from_amplitudes(amps)
    }

    fn fill_vector(&self, e: Edge<T>, acc: Complex<T>, level: usize, offset: usize, out: &mut [Complex<T>]) {
        if e.is_zero() {
            return;
        }
        let w = acc * e.weight;
        if level == 0 {
            out[offset] = w;
            return;
        }
        let node = self.vectors.node(e.target);
        let half = 1 << (level - 1);
        self.fill_vector(node.succ[0], w, level - 1, offset, out);
        self.fill_vector(node.succ[1], w, level - 1, offset + half, out);
    }

    /// Product of edge weights along the path selected by `basis`.
    pub fn get_amplitude(&self, dd: &VectorDd<T>, basis: &BasisState) -> Result<Complex<T>> {
        basis.check_width(dd.num_qubits)?;
        let mut e = dd.root;
        let mut w = Complex::<T>::one();
        for q in (0..dd.num_qubits).rev() {
            if e.is_zero() {
                return Ok(Complex::zero());
            }
            w *= e.weight;
            e = self.vectors.node(e.target).succ[basis.bit(q) as usize];
        }
        if e.is_zero() {
            return Ok(Complex::zero());
        }
        Ok(w * e.weight)
    }

    pub fn add(&mut self, a: &VectorDd<T>, b: &VectorDd<T>) -> VectorDd<T> {
        assert_eq!(a.num_qubits, b.num_qubits, "adding diagrams of different width");
        self.clear_compute_tables();
        let root = self.vectors.add(&mut self.ct, a.root, b.root);
        VectorDd { num_qubits: a.num_qubits, root }
    }

    pub fn scale_vector(&mut self, v: &VectorDd<T>, w: Complex<T>) -> VectorDd<T> {
        VectorDd { num_qubits: v.num_qubits, root: scale(&mut self.ct, v.root, w) }
    }

    pub fn vector_node_count(&self, dd: &VectorDd<T>) -> usize {
        self.vectors.count_reachable(dd.root.target)
    }

    // ---- matrices ----

    /// The gate embedded in the `num_qubits` identity, built level by level.
    pub fn gate_to_mdd(&mut self, gate: &Gate, num_qubits: usize) -> MatrixDd<T> {
        assert!(gate.qubits().iter().all(|&q| q < num_qubits), "gate does not fit the register");
        let m = gate.matrix::<T>();
        let mut memo = HashMap::new();
        let root = self.build_gate(&m, gate.qubits(), num_qubits, 0, 0, &mut memo);
        MatrixDd { num_qubits, root }
    }

    fn build_gate(
        &mut self,
        m: &SquareMatrix<T>,
        qubits: &[usize],
        level: usize,
        row: usize,
        col: usize,
        memo: &mut HashMap<(usize, usize, usize), Edge<T>>,
    ) -> Edge<T> {
        if level == 0 {
            return snap(&mut self.ct, Edge::terminal(m.get(row, col)));
        }
        if let Some(&e) = memo.get(&(level, row, col)) {
            return e;
        }
        let var = level - 1;
        let succ = match qubits.iter().position(|&q| q == var) {
            Some(j) => {
                let bit = qubits.len() - 1 - j;
                let mut succ = [Edge::zero(); 4];
                for (idx, s) in succ.iter_mut().enumerate() {
                    let (r, c) = (idx >> 1, idx & 1);
                    *s = self.build_gate(m, qubits, var, row | r << bit, col | c << bit, memo);
                }
                succ
            }
            None => {
                let d = self.build_gate(m, qubits, var, row, col, memo);
                [d, Edge::zero(), Edge::zero(), d]
            }
        };
        let e = self.matrices.make_node(&mut self.ct, var, succ);
        memo.insert((level, row, col), e);
        e
    }

    pub fn identity(&mut self, num_qubits: usize) -> MatrixDd<T> {
        let mut e = Edge::terminal(Complex::one());
        for q in 0..num_qubits {
            e = self.matrices.make_node(&mut self.ct, q, [e, Edge::zero(), Edge::zero(), e]);
        }
        MatrixDd { num_qubits, root: e }
    }

    pub fn matrix_from_dense(&mut self, m: &SquareMatrix<T>) -> MatrixDd<T> {
        assert!(m.dim().is_power_of_two());
        let n = m.dim().trailing_zeros() as usize;
        let root = self.build_matrix(m, n, 0, 0);
        MatrixDd { num_qubits: n, root }
    }

    fn build_matrix(&mut self, m: &SquareMatrix<T>, level: usize, row: usize, col: usize) -> Edge<T> {
        if level == 0 {
            return snap(&mut self.ct, Edge::terminal(m.get(row, col)));
        }
        let half = 1 << (level - 1);
        let mut succ = [Edge::zero(); 4];
        for (idx, s) in succ.iter_mut().enumerate() {
            *s = self.build_matrix(m, level - 1, row + (idx >> 1) * half, col + (idx & 1) * half);
        }
        self.matrices.make_node(&mut self.ct, level - 1, succ)
    }

    pub fn mdd_to_matrix(&self, dd: &MatrixDd<T>) -> Result<SquareMatrix<T>> {
        capacity("matrix expansion", dd.num_qubits, MAX_UNITARY_QUBITS)?;
        let mut out = SquareMatrix::zeros(1 << dd.num_qubits);
        self.fill_matrix(dd.root, Complex::one(), dd.num_qubits, 0, 0, &mut out);
        Ok(out)
    }

    fn fill_matrix(
        &self,
        e: Edge<T>,
        acc: Complex<T>,
        level: usize,
        row: usize,
        col: usize,
        out: &mut SquareMatrix<T>,
    ) {
        if e.is_zero() {
            return;
        }
        let w = acc * e.weight;
        if level == 0 {
            out.set(row, col, w);
            return;
        }
        let node = self.matrices.node(e.target);
        let half = 1 << (level - 1);
        for (idx, s) in node.succ.iter().enumerate() {
            self.fill_matrix(*s, w, level - 1, row + (idx >> 1) * half, col + (idx & 1) * half, out);
        }
    }

    /// Entry `(row, col)` as a path-weight product.
    pub fn matrix_entry(&self, dd: &MatrixDd<T>, row: usize, col: usize) -> Complex<T> {
        let mut e = dd.root;
        let mut w = Complex::<T>::one();
        for q in (0..dd.num_qubits).rev() {
            if e.is_zero() {
                return Complex::zero();
            }
            w *= e.weight;
            let idx = ((row >> q) & 1) << 1 | ((col >> q) & 1);
            e = self.matrices.node(e.target).succ[idx];
        }
        w * e.weight
    }

    pub fn add_matrices(&mut self, a: &MatrixDd<T>, b: &MatrixDd<T>) -> MatrixDd<T> {
        assert_eq!(a.num_qubits, b.num_qubits, "adding diagrams of different width");
        self.clear_compute_tables();
        let root = self.matrices.add(&mut self.ct, a.root, b.root);
        MatrixDd { num_qubits: a.num_qubits, root }
    }

    pub fn matrix_node_count(&self, dd: &MatrixDd<T>) -> usize {
        self.matrices.count_reachable(dd.root.target)
    }

    // ---- multiplication ----

    pub fn mult_mv(&mut self, m: &MatrixDd<T>, v: &VectorDd<T>) -> VectorDd<T> {
        assert_eq!(m.num_qubits, v.num_qubits, "multiplying diagrams of different width");
        self.clear_compute_tables();
        let root = self.mv(m.root, v.root);
        VectorDd { num_qubits: v.num_qubits, root }
    }

    fn mv(&mut self, m: Edge<T>, v: Edge<T>) -> Edge<T> {
        if m.is_zero() || v.is_zero() {
            return Edge::zero();
        }
        let w = m.weight * v.weight;
        if m.target.is_terminal() {
            return snap(&mut self.ct, Edge::terminal(w));
        }
        let key = (m.target, v.target);
        let unit = match self.mv_cache.get(&key) {
            Some(&hit) => hit,
            None => {
                let mn = self.matrices.node(m.target);
                let vn = self.vectors.node(v.target);
                debug_assert_eq!(mn.var, vn.var);
                let mut succ = [Edge::zero(); 2];
                for (i, s) in succ.iter_mut().enumerate() {
                    let left = self.mv(mn.succ[2 * i], vn.succ[0]);
                    let right = self.mv(mn.succ[2 * i + 1], vn.succ[1]);
                    *s = self.vectors.add(&mut self.ct, left, right);
                }
                let out = self.vectors.make_node(&mut self.ct, mn.var, succ);
                self.mv_cache.insert(key, out);
                out
            }
        };
        scale(&mut self.ct, unit, w)
    }

    pub fn mult_mm(&mut self, a: &MatrixDd<T>, b: &MatrixDd<T>) -> MatrixDd<T> {
        assert_eq!(a.num_qubits, b.num_qubits, "multiplying diagrams of different width");
        self.clear_compute_tables();
        let root = self.mm(a.root, b.root);
        MatrixDd { num_qubits: a.num_qubits, root }
    }

    fn mm(&mut self, a: Edge<T>, b: Edge<T>) -> Edge<T> {
        if a.is_zero() || b.is_zero() {
            return Edge::zero();
        }
        let w = a.weight * b.weight;
        if a.target.is_terminal() {
            return snap(&mut self.ct, Edge::terminal(w));
        }
        let key = (a.target, b.target);
        let unit = match self.mm_cache.get(&key) {
            Some(&hit) => hit,
            None => {
                let an = self.matrices.node(a.target);
                let bn = self.matrices.node(b.target);
                debug_assert_eq!(an.var, bn.var);
                let mut succ = [Edge::zero(); 4];
                for (idx, s) in succ.iter_mut().enumerate() {
                    let (i, j) = (idx >> 1, idx & 1);
                    let mut acc = Edge::zero();
                    for k in 0..2 {
                        let p = self.mm(an.succ[2 * i + k], bn.succ[2 * k + j]);
                        acc = self.matrices.add(&mut self.ct, acc, p);
                    }
                    *s = acc;
                }
                let out = self.matrices.make_node(&mut self.ct, an.var, succ);
                self.mm_cache.insert(key, out);
                out
            }
        };
        scale(&mut self.ct, unit, w)
    }

    // ---- circuits ----

    pub fn simulate(&mut self, circuit: &Circuit) -> VectorDd<T> {
        let n = circuit.num_qubits();
        let mut v = self.zero_state_dd(n);
        for g in circuit.gates() {
            let m = self.gate_to_mdd(g, n);
            v = self.mult_mv(&m, &v);
        }
        v
    }

    /// Circuit functionality as a matrix diagram, later gates on the left.
    pub fn circuit_mdd(&mut self, circuit: &Circuit) -> MatrixDd<T> {
        let n = circuit.num_qubits();
        let mut acc = self.identity(n);
        for g in circuit.gates() {
            let m = self.gate_to_mdd(g, n);
            acc = self.mult_mm(&m, &acc);
        }
        acc
    }

    /// `nodes=<k> root_weight=<re>,<im>`
    pub fn stats_line(&self, dd: &VectorDd<T>) -> String {
        let w = dd.root.weight;
        format!(
            "nodes={} root_weight={},{}",
            self.vector_node_count(dd),
            format_g17(w.re.to_f64().unwrap_or(f64::NAN)),
            format_g17(w.im.to_f64().unwrap_or(f64::NAN))
        )
    }

    pub(crate) fn is_zero_weight(&self, w: Complex<T>) -> bool {
        self.ct.is_zero(w)
    }
}

pub fn vector_to_dd<T: Scalar>(pkg: &mut DdPackage<T>, state: &StateVector<T>) -> VectorDd<T> {
    pkg.vector_to_dd(state)
}

pub fn simulate_dd<T: Scalar>(pkg: &mut DdPackage<T>, circuit: &Circuit) -> VectorDd<T> {
    pkg.simulate(circuit)
}
