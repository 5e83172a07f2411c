use crate::error::{Error, Result};
use crate::ir::{Angle, BasisState, Circuit, GateKind};
use crate::zx::diagram::{Color, EdgeKind, VertexId, ZxDiagram};

struct Wire {
    end: VertexId,
    pending: EdgeKind,
}

struct Builder {
    d: ZxDiagram,
    wires: Vec<Wire>,
}

impl Builder {
    fn spider(&mut self, q: usize, color: Color, phase: Angle) -> VertexId {
        let s = self.d.add_spider(color, phase);
        let w = &mut self.wires[q];
        self.d.insert_edge(w.end, s, w.pending);
        *w = Wire { end: s, pending: EdgeKind::Plain };
        s
    }

    fn hadamard(&mut self, q: usize) {
        if self.wires[q].pending == EdgeKind::Hadamard {
            // keep one spider between consecutive boxes so each edge carries one H
            self.spider(q, Color::Z, Angle::ZERO);
        }
        self.wires[q].pending = EdgeKind::Hadamard;
    }
}

fn angle(num: i64, den: i64) -> Angle {
    Angle::new(num, den).expect("constant angle")
}

/// Translates gate by gate: Z-phase gates become Z-spiders, X and RX become
/// X-spiders, H marks the next edge on its wire as Hadamard, CX is a Z-spider
/// on the control joined to an X-spider on the target, CZ is two Z-spiders
/// joined by a Hadamard edge, and SWAP exchanges the two wires. Y is built as
/// `S·X·S†`.
pub fn circuit_to_zx(c: &Circuit) -> ZxDiagram {
    let n = c.num_qubits();
    let mut d = ZxDiagram::new();
    let wires = (0..n).map(|_| Wire { end: d.add_input(), pending: EdgeKind::Plain }).collect();
    let mut b = Builder { d, wires };

    for g in c.gates() {
        let q = g.qubits();
        match g.kind() {
            GateKind::X => {
                b.spider(q[0], Color::X, Angle::PI);
            }
            GateKind::Y => {
                b.spider(q[0], Color::Z, angle(3, 2));
                b.spider(q[0], Color::X, Angle::PI);
                b.spider(q[0], Color::Z, Angle::HALF_PI);
            }
            GateKind::Z => {
                b.spider(q[0], Color::Z, Angle::PI);
            }
            GateKind::H => b.hadamard(q[0]),
            GateKind::S => {
                b.spider(q[0], Color::Z, Angle::HALF_PI);
            }
            GateKind::Sdg => {
                b.spider(q[0], Color::Z, angle(3, 2));
            }
            GateKind::T => {
                b.spider(q[0], Color::Z, Angle::QUARTER_PI);
            }
            GateKind::Tdg => {
                b.spider(q[0], Color::Z, angle(7, 4));
            }
            GateKind::Rz => {
                b.spider(q[0], Color::Z, g.angle().expect("rz angle"));
            }
            GateKind::Rx => {
                b.spider(q[0], Color::X, g.angle().expect("rx angle"));
            }
            GateKind::Cx => {
                let ctrl = b.spider(q[0], Color::Z, Angle::ZERO);
                let targ = b.spider(q[1], Color::X, Angle::ZERO);
                b.d.insert_edge(ctrl, targ, EdgeKind::Plain);
            }
            GateKind::Cz => {
                let a = b.spider(q[0], Color::Z, Angle::ZERO);
                let c = b.spider(q[1], Color::Z, Angle::ZERO);
                b.d.insert_edge(a, c, EdgeKind::Hadamard);
            }
            GateKind::Swap => b.wires.swap(q[0], q[1]),
        }
    }

    for q in 0..n {
        let out = b.d.add_output();
        let w = &b.wires[q];
        b.d.insert_edge(w.end, out, w.pending);
    }
    b.d
}

/// Closes every input with an X-spider state: phase 0 for `|0⟩`, π for `|1⟩`.
pub fn plug_basis_states(d: &ZxDiagram, b: &BasisState) -> Result<ZxDiagram> {
    if b.num_qubits() != d.inputs().len() {
        return Err(Error::InvalidBasis(format!(
            "diagram has {} inputs, basis state has {} bits",
            d.inputs().len(),
            b.num_qubits()
        )));
    }
    let mut out = d.clone();
    for q in 0..b.num_qubits() {
        let phase = if b.bit(q) { Angle::PI } else { Angle::ZERO };
        out.replace_input_by_spider(q, Color::X, phase);
    }
    out.set_inputs(Vec::new());
    Ok(out)
}
