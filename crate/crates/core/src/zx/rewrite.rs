use std::fmt;

use crate::ir::Angle;
use crate::zx::diagram::{Color, EdgeId, EdgeKind, VertexId, ZxDiagram};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Rule {
    Fusion,
    ColorChange,
    IdentityRemoval,
    HadamardCancel,
    SelfLoopRemoval,
}

impl fmt::Display for Rule {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let name = match self {
            Rule::Fusion => "fusion",
            Rule::ColorChange => "color-change",
            Rule::IdentityRemoval => "identity-removal",
            Rule::HadamardCancel => "hadamard-cancel",
            Rule::SelfLoopRemoval => "self-loop-removal",
        };
        f.write_str(name)
    }
}

/// Order in which [`rewrite_once`] tries the rules.
pub const PRIORITY: [Rule; 5] =
    [Rule::HadamardCancel, Rule::SelfLoopRemoval, Rule::ColorChange, Rule::Fusion, Rule::IdentityRemoval];

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct RewriteStep {
    pub rule: Rule,
    /// Spiders the step read or changed; the first one survives a fusion.
    pub spiders: Vec<VertexId>,
}

impl RewriteStep {
    fn new(rule: Rule, spiders: Vec<VertexId>) -> Self {
        Self { rule, spiders }
    }
}

fn spider_ids(d: &ZxDiagram) -> Vec<VertexId> {
    d.spiders().map(|s| s.id).collect()
}

/// Incident edges of `v` split into self-loops and the rest.
fn split_loops(d: &ZxDiagram, v: VertexId) -> (Vec<EdgeId>, Vec<EdgeId>) {
    d.incident_edges(v).into_iter().partition(|e| d.edge(*e).expect("edge").is_loop())
}

/// Joins `a` and `b` with an edge of `kind`, dropping plain self-loops,
/// which are the identity on a spider.
fn join(d: &mut ZxDiagram, a: VertexId, b: VertexId, kind: EdgeKind) {
    if a != b || kind == EdgeKind::Hadamard {
        d.insert_edge(a, b, kind);
    }
}

/// A phase-0 spider with exactly two Hadamard legs is removed and its
/// neighbours joined plainly; otherwise two parallel Hadamard edges between
/// same-colored spiders are deleted.
fn hadamard_cancel(d: &mut ZxDiagram, parallel_only: bool) -> Option<RewriteStep> {
    for v in spider_ids(d) {
        let s = d.spider(v).expect("spider");
        let edges = d.incident_edges(v);
        if !parallel_only && s.phase.is_zero() && edges.len() == 2 {
            let (e1, e2) = (d.edge(edges[0]).expect("edge"), d.edge(edges[1]).expect("edge"));
            if !e1.is_loop() && !e2.is_loop() && e1.kind == EdgeKind::Hadamard && e2.kind == EdgeKind::Hadamard {
                let (a, b) = (e1.other(v), e2.other(v));
                d.remove_spider(v);
                join(d, a, b, EdgeKind::Plain);
                return Some(RewriteStep::new(Rule::HadamardCancel, vec![v]));
            }
        }
        for u in d.neighbours(v) {
            if u < v || d.spider(u).map(|t| t.color) != Some(s.color) {
                continue;
            }
            let hs: Vec<EdgeId> = d
                .edges_between(v, u)
                .into_iter()
                .filter(|e| d.edge(*e).expect("edge").kind == EdgeKind::Hadamard)
                .collect();
            if hs.len() >= 2 {
                d.remove_edge(hs[0]);
                d.remove_edge(hs[1]);
                return Some(RewriteStep::new(Rule::HadamardCancel, vec![v, u]));
            }
        }
    }
    None
}

/// Drops a plain self-loop, or a Hadamard self-loop while adding π.
fn self_loop_removal(d: &mut ZxDiagram) -> Option<RewriteStep> {
    for v in spider_ids(d) {
        let (loops, _) = split_loops(d, v);
        if let Some(&e) = loops.first() {
            let edge = d.remove_edge(e);
            if edge.kind == EdgeKind::Hadamard {
                let s = d.spider(v).expect("spider");
                d.set_spider(v, s.color, s.phase + Angle::PI);
            }
            return Some(RewriteStep::new(Rule::SelfLoopRemoval, vec![v]));
        }
    }
    None
}

fn recolor(d: &mut ZxDiagram, v: VertexId) {
    let s = d.spider(v).expect("spider");
    d.set_spider(v, s.color.flipped(), s.phase);
    for e in split_loops(d, v).1 {
        let kind = d.edge(e).expect("edge").kind;
        d.set_edge_kind(e, kind.toggled());
    }
}

/// Recolors an X-spider into a Z-spider, toggling its legs, when that turns a
/// Hadamard edge to a Z-spider into a fusable plain edge and leaves fewer
/// Hadamard legs than before.
fn color_change(d: &mut ZxDiagram) -> Option<RewriteStep> {
    for v in spider_ids(d) {
        if d.spider(v).expect("spider").color != Color::X {
            continue;
        }
        let legs: Vec<_> = split_loops(d, v).1.into_iter().map(|e| d.edge(e).expect("edge")).collect();
        let h = legs.iter().filter(|e| e.kind == EdgeKind::Hadamard).count();
        let enables = legs
            .iter()
            .any(|e| e.kind == EdgeKind::Hadamard && d.spider(e.other(v)).map(|s| s.color) == Some(Color::Z));
        if enables && 2 * h > legs.len() {
            recolor(d, v);
            return Some(RewriteStep::new(Rule::ColorChange, vec![v]));
        }
    }
    None
}

/// Merges two same-colored spiders joined by a plain edge. The phases add,
/// every plain edge between them disappears and Hadamard edges between them
/// become Hadamard self-loops.
fn fusion(d: &mut ZxDiagram, only: Option<Color>) -> Option<RewriteStep> {
    for v in spider_ids(d) {
        let s = d.spider(v).expect("spider");
        if only.is_some_and(|c| c != s.color) {
            continue;
        }
        let partner = d.incident_edges(v).into_iter().find_map(|e| {
            let edge = d.edge(e).expect("edge");
            let u = edge.other(v);
            (u != v && edge.kind == EdgeKind::Plain && d.spider(u).map(|t| t.color) == Some(s.color)).then_some(u)
        });
        let Some(u) = partner else { continue };
        let t = d.spider(u).expect("spider");
        for e in d.incident_edges(u) {
            let edge = d.remove_edge(e);
            let other = edge.other(u);
            let target = if other == u || other == v { v } else { other };
            join(d, v, target, edge.kind);
        }
        d.remove_spider(u);
        d.set_spider(v, s.color, s.phase + t.phase);
        return Some(RewriteStep::new(Rule::Fusion, vec![v, u]));
    }
    None
}

/// Removes a phase-0 spider with two legs, joining its neighbours with the
/// composed edge.
fn identity_removal(d: &mut ZxDiagram) -> Option<RewriteStep> {
    for v in spider_ids(d) {
        let edges = d.incident_edges(v);
        if !d.spider(v).expect("spider").phase.is_zero() || edges.len() != 2 {
            continue;
        }
        let (e1, e2) = (d.edge(edges[0]).expect("edge"), d.edge(edges[1]).expect("edge"));
        if e1.is_loop() || e2.is_loop() {
            continue;
        }
        let (a, b) = (e1.other(v), e2.other(v));
        d.remove_spider(v);
        join(d, a, b, e1.kind.compose(e2.kind));
        return Some(RewriteStep::new(Rule::IdentityRemoval, vec![v]));
    }
    None
}

fn apply_rule(d: &mut ZxDiagram, rule: Rule) -> Option<RewriteStep> {
    match rule {
        Rule::HadamardCancel => hadamard_cancel(d, false),
        Rule::SelfLoopRemoval => self_loop_removal(d),
        Rule::ColorChange => color_change(d),
        Rule::Fusion => fusion(d, None),
        Rule::IdentityRemoval => identity_removal(d),
    }
}

/// Applies the first rule in [`PRIORITY`] that matches, at the lowest-id
/// spider where it matches.
pub fn rewrite_once(d: &mut ZxDiagram) -> Option<RewriteStep> {
    PRIORITY.iter().find_map(|&rule| apply_rule(d, rule))
}

/// Rewrites until no rule matches. Every step lowers the number of spiders
/// plus Hadamard edges, or removes a plain self-loop, so the step count is
/// bounded by their initial total.
pub fn apply_rewrites(d: &ZxDiagram) -> (ZxDiagram, Vec<RewriteStep>) {
    let mut out = d.clone();
    let mut steps = Vec::new();
    while let Some(step) = rewrite_once(&mut out) {
        steps.push(step);
    }
    (out, steps)
}

pub(crate) fn to_graph_like_traced(d: &ZxDiagram) -> (ZxDiagram, Vec<RewriteStep>) {
    let mut out = d.clone();
    let mut steps = Vec::new();
    for v in spider_ids(&out) {
        if out.spider(v).expect("spider").color == Color::X {
            recolor(&mut out, v);
            steps.push(RewriteStep::new(Rule::ColorChange, vec![v]));
        }
    }
    loop {
        let step = self_loop_removal(&mut out)
            .or_else(|| hadamard_cancel(&mut out, true))
            .or_else(|| fusion(&mut out, Some(Color::Z)));
        match step {
            Some(s) => steps.push(s),
            None => break,
        }
    }
    (out, steps)
}

/// Recolors every X-spider, then fuses plain-joined Z-spiders and removes
/// self-loops and pairs of parallel Hadamard edges until none remain. The
/// result has only Z-spiders, joined to each other by single Hadamard edges.
pub fn to_graph_like(d: &ZxDiagram) -> ZxDiagram {
    to_graph_like_traced(d).0
}

/// Graph-like conversion followed by [`apply_rewrites`]; the steps of both
/// phases are returned.
pub fn simplify(d: &ZxDiagram) -> (ZxDiagram, Vec<RewriteStep>) {
    let (g, mut steps) = to_graph_like_traced(d);
    let (out, more) = apply_rewrites(&g);
    steps.extend(more);
    (out, steps)
}
