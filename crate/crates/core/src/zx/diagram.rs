use std::collections::{BTreeMap, BTreeSet};
use std::fmt;

use crate::error::{Error, Result};
use crate::ir::Angle;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct VertexId(pub(crate) usize);

impl VertexId {
    pub fn index(self) -> usize {
        self.0
    }
}

impl fmt::Display for VertexId {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "v{}", self.0)
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct EdgeId(pub(crate) usize);

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Color {
    Z,
    X,
}

impl Color {
    pub fn flipped(self) -> Self {
        match self {
            Color::Z => Color::X,
            Color::X => Color::Z,
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum EdgeKind {
    Plain,
    Hadamard,
}

impl EdgeKind {
    pub fn toggled(self) -> Self {
        match self {
            EdgeKind::Plain => EdgeKind::Hadamard,
            EdgeKind::Hadamard => EdgeKind::Plain,
        }
    }

    /// Kind of the wire left after removing an identity between two edges.
    pub fn compose(self, other: Self) -> Self {
        if self == other {
            EdgeKind::Plain
        } else {
            EdgeKind::Hadamard
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum VertexKind {
    Boundary,
    Spider { color: Color, phase: Angle },
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct Spider {
    pub id: VertexId,
    pub color: Color,
    pub phase: Angle,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct Edge {
    pub a: VertexId,
    pub b: VertexId,
    pub kind: EdgeKind,
}

impl Edge {
    pub fn is_loop(&self) -> bool {
        self.a == self.b
    }

    /// The endpoint that is not `v`; `v` itself for a self-loop.
    pub fn other(&self, v: VertexId) -> VertexId {
        if self.a == v {
            self.b
        } else {
            self.a
        }
    }
}

/// Spiders and boundary points joined by plain or Hadamard edges. Edges form
/// a multiset; a self-loop is stored once. Inputs and outputs are listed by
/// qubit.
#[derive(Debug, Clone, Default)]
pub struct ZxDiagram {
    vertices: BTreeMap<VertexId, VertexKind>,
    edges: BTreeMap<EdgeId, Edge>,
    incident: BTreeMap<VertexId, BTreeSet<EdgeId>>,
    inputs: Vec<VertexId>,
    outputs: Vec<VertexId>,
    next_vertex: usize,
    next_edge: usize,
}

impl ZxDiagram {
    pub fn new() -> Self {
        Self::default()
    }

    fn add_vertex(&mut self, kind: VertexKind) -> VertexId {
        let id = VertexId(self.next_vertex);
        self.next_vertex += 1;
        self.vertices.insert(id, kind);
        self.incident.insert(id, BTreeSet::new());
        id
    }

    pub fn add_input(&mut self) -> VertexId {
        let v = self.add_vertex(VertexKind::Boundary);
        self.inputs.push(v);
        v
    }

    pub fn add_output(&mut self) -> VertexId {
        let v = self.add_vertex(VertexKind::Boundary);
        self.outputs.push(v);
        v
    }

    pub fn add_spider(&mut self, color: Color, phase: Angle) -> VertexId {
        self.add_vertex(VertexKind::Spider { color, phase })
    }

    /// Boundary points take exactly one edge and no self-loop.
    pub fn add_edge(&mut self, a: VertexId, b: VertexId, kind: EdgeKind) -> Result<EdgeId> {
        for v in [a, b] {
            match self.vertices.get(&v) {
                None => return Err(Error::InvalidDiagram(format!("no vertex {v}"))),
                Some(VertexKind::Boundary) if a == b || self.degree(v) > 0 => {
                    return Err(Error::InvalidDiagram(format!("boundary {v} already has its edge")))
                }
                _ => {}
            }
        }
        Ok(self.insert_edge(a, b, kind))
    }

    pub(crate) fn insert_edge(&mut self, a: VertexId, b: VertexId, kind: EdgeKind) -> EdgeId {
        let id = EdgeId(self.next_edge);
        self.next_edge += 1;
        self.edges.insert(id, Edge { a, b, kind });
        self.incident.get_mut(&a).expect("vertex").insert(id);
        self.incident.get_mut(&b).expect("vertex").insert(id);
        id
    }

    pub(crate) fn remove_edge(&mut self, e: EdgeId) -> Edge {
        let edge = self.edges.remove(&e).expect("edge");
        for v in [edge.a, edge.b] {
            if let Some(set) = self.incident.get_mut(&v) {
                set.remove(&e);
            }
        }
        edge
    }

    /// Removes a spider and all of its edges.
    pub(crate) fn remove_spider(&mut self, v: VertexId) {
        debug_assert!(self.spider(v).is_some());
        for e in self.incident_edges(v) {
            self.remove_edge(e);
        }
        self.incident.remove(&v);
        self.vertices.remove(&v);
    }

    pub(crate) fn set_edge_kind(&mut self, e: EdgeId, kind: EdgeKind) {
        self.edges.get_mut(&e).expect("edge").kind = kind;
    }

    pub(crate) fn set_spider(&mut self, v: VertexId, color: Color, phase: Angle) {
        let kind = self.vertices.get_mut(&v).expect("vertex");
        assert!(matches!(kind, VertexKind::Spider { .. }));
        *kind = VertexKind::Spider { color, phase };
    }

    /// Turns input `q` into a one-legged spider.
    pub(crate) fn replace_input_by_spider(&mut self, q: usize, color: Color, phase: Angle) {
        let v = self.inputs[q];
        self.vertices.insert(v, VertexKind::Spider { color, phase });
    }

    pub(crate) fn set_inputs(&mut self, inputs: Vec<VertexId>) {
        self.inputs = inputs;
    }

    pub fn inputs(&self) -> &[VertexId] {
        &self.inputs
    }

    pub fn outputs(&self) -> &[VertexId] {
        &self.outputs
    }

    pub fn vertex(&self, v: VertexId) -> Option<VertexKind> {
        self.vertices.get(&v).copied()
    }

    pub fn is_boundary(&self, v: VertexId) -> bool {
        matches!(self.vertices.get(&v), Some(VertexKind::Boundary))
    }

    pub fn spider(&self, v: VertexId) -> Option<Spider> {
        match self.vertices.get(&v)? {
            VertexKind::Spider { color, phase } => Some(Spider { id: v, color: *color, phase: *phase }),
            VertexKind::Boundary => None,
        }
    }

    /// Spiders in creation order.
    pub fn spiders(&self) -> impl Iterator<Item = Spider> + '_ {
        self.vertices.keys().filter_map(|&v| self.spider(v))
    }

    pub fn num_spiders(&self) -> usize {
        self.spiders().count()
    }

    pub fn edges(&self) -> impl Iterator<Item = (EdgeId, Edge)> + '_ {
        self.edges.iter().map(|(id, e)| (*id, *e))
    }

    pub fn edge(&self, e: EdgeId) -> Option<Edge> {
        self.edges.get(&e).copied()
    }

    pub fn num_edges(&self) -> usize {
        self.edges.len()
    }

    pub fn hadamard_edge_count(&self) -> usize {
        self.edges.values().filter(|e| e.kind == EdgeKind::Hadamard).count()
    }

    pub fn incident_edges(&self, v: VertexId) -> Vec<EdgeId> {
        self.incident.get(&v).map(|s| s.iter().copied().collect()).unwrap_or_default()
    }

    /// Number of edge ends at `v`; a self-loop counts twice.
    pub fn degree(&self, v: VertexId) -> usize {
        self.incident.get(&v).map(|s| s.iter().map(|e| if self.edges[e].is_loop() { 2 } else { 1 }).sum()).unwrap_or(0)
    }

    /// Edges joining `u` and `v` (self-loops when `u == v`).
    pub fn edges_between(&self, u: VertexId, v: VertexId) -> Vec<EdgeId> {
        self.incident_edges(u).into_iter().filter(|e| self.edges[e].other(u) == v).collect()
    }

    /// Distinct vertices joined to `v` by a non-loop edge.
    pub fn neighbours(&self, v: VertexId) -> BTreeSet<VertexId> {
        self.incident_edges(v).iter().map(|e| self.edges[e].other(v)).filter(|&u| u != v).collect()
    }

    /// Every boundary has exactly one edge and is listed once as input or
    /// output.
    pub fn check(&self) -> Result<()> {
        let listed: Vec<VertexId> = self.inputs.iter().chain(&self.outputs).copied().collect();
        let unique: BTreeSet<VertexId> = listed.iter().copied().collect();
        if unique.len() != listed.len() {
            return Err(Error::InvalidDiagram("boundary listed twice".into()));
        }
        for (&v, kind) in &self.vertices {
            if *kind == VertexKind::Boundary {
                if !unique.contains(&v) {
                    return Err(Error::InvalidDiagram(format!("boundary {v} is neither input nor output")));
                }
                if self.degree(v) != 1 {
                    return Err(Error::InvalidDiagram(format!("boundary {v} has degree {}", self.degree(v))));
                }
            }
        }
        for v in &listed {
            if !self.is_boundary(*v) {
                return Err(Error::InvalidDiagram(format!("{v} is listed as a boundary but is a spider")));
            }
        }
        Ok(())
    }

    /// Whether input `q` is wired straight to output `q` by a plain edge for
    /// every `q`, with nothing else in the diagram.
    pub fn is_identity(&self) -> bool {
        self.inputs.len() == self.outputs.len()
            && self.num_spiders() == 0
            && self.edges.len() == self.inputs.len()
            && self.inputs.iter().zip(&self.outputs).all(|(&i, &o)| {
                let es = self.edges_between(i, o);
                es.len() == 1 && self.edges[&es[0]].kind == EdgeKind::Plain
            })
    }
}
