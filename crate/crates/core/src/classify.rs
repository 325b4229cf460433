//! Building-block classification of graph algebras: AF, matrix algebras over
//! `C(T)` up to stabilization, and Kirchberg algebras.

use std::fmt;

use serde::Serialize;

use crate::closure::{is_hereditary, sat_her_closure, saturation};
use crate::cycles::{condition_l, cycles_without_exit_family, has_cycle, is_simple_cycle_graph};
use crate::error::{Error, Result};
use crate::graph::{Graph, VertexSet};

#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize)]
#[serde(tag = "kind")]
pub enum AlgebraKind {
    /// Acyclic graph.
    #[serde(rename = "AF")]
    Af,
    /// The graph is one simple cycle of this length: `M_n(C(T))`.
    SimpleCycle { length: usize },
    /// Strongly connected, no sinks, at least one edge, not a simple cycle.
    Kirchberg,
    /// `E⁰` is the saturation of disjoint exitless cycles with these lengths:
    /// stably `⊕ M_n(C(T))`.
    StablyCircles { lengths: Vec<usize> },
    /// None of the above criteria decide the graph.
    Mixed,
}

impl AlgebraKind {
    pub fn name(&self) -> &'static str {
        match self {
            AlgebraKind::Af => "AF",
            AlgebraKind::SimpleCycle { .. } => "SimpleCycle",
            AlgebraKind::Kirchberg => "Kirchberg",
            AlgebraKind::StablyCircles { .. } => "StablyCircles",
            AlgebraKind::Mixed => "Mixed",
        }
    }

    /// Circle lengths for the two circle classes; a simple cycle is the
    /// one-circle case.
    pub fn circle_lengths(&self) -> Option<Vec<usize>> {
        match self {
            AlgebraKind::SimpleCycle { length } => Some(vec![*length]),
            AlgebraKind::StablyCircles { lengths } => Some(lengths.clone()),
            _ => None,
        }
    }

    /// Human-readable form, e.g. `M_3(C(T))` or `M_1(C(T)) ⊕ M_2(C(T))`.
    pub fn rendered(&self) -> String {
        match self.circle_lengths() {
            Some(lengths) => lengths
                .iter()
                .map(|n| format!("M_{n}(C(T))"))
                .collect::<Vec<_>>()
                .join(" ⊕ "),
            None => self.name().to_string(),
        }
    }
}

impl fmt::Display for AlgebraKind {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.rendered())
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Hash, Serialize)]
pub struct AlgebraClass {
    #[serde(flatten)]
    pub kind: AlgebraKind,
    pub simple: bool,
}

pub fn classify_graph_algebra(g: &Graph) -> AlgebraClass {
    AlgebraClass {
        kind: algebra_kind(g),
        simple: simplicity(g),
    }
}

pub fn algebra_kind(g: &Graph) -> AlgebraKind {
    if has_cycle(g).is_none() {
        return AlgebraKind::Af;
    }
    if let Some(cycle) = is_simple_cycle_graph(g) {
        return AlgebraKind::SimpleCycle {
            length: cycle.len(),
        };
    }
    if g.edge_count() > 0 && g.has_no_sinks() && g.is_strongly_connected() {
        return AlgebraKind::Kirchberg;
    }
    let family = cycles_without_exit_family(g);
    if !family.is_empty() && saturation(g, family.union()) == g.all_vertices() {
        // The saturation cannot add a vertex lying on a new cycle, so the
        // family accounts for every cycle of the graph.
        return AlgebraKind::StablyCircles {
            lengths: family.lengths(),
        };
    }
    AlgebraKind::Mixed
}

/// Sorted lengths `|C|` when the hereditary set `v` is a disjoint union of
/// vertex sets `C` with `E_C` an exitless simple cycle.
///
/// Only the subgraph over `v` matters: for hereditary `v` the ideal `I_V` is
/// Morita equivalent to the algebra of `E_V`, so sinks elsewhere in `g` are
/// irrelevant and a sink inside `v` just means the answer is `None`.
pub fn stably_circles_data(g: &Graph, v: VertexSet) -> Result<Option<Vec<usize>>> {
    g.check_vertex_set(v)?;
    if !is_hereditary(g, v) {
        return Err(Error::NotHereditary(v.to_string()));
    }
    let family = cycles_without_exit_family(g);
    let inside: Vec<usize> = family
        .circles
        .iter()
        .filter(|c| c.vertices.is_subset(v))
        .map(|c| c.length)
        .collect();
    let covered = family
        .circles
        .iter()
        .filter(|c| c.vertices.is_subset(v))
        .fold(VertexSet::EMPTY, |acc, c| acc.union(c.vertices));
    if v.is_empty() || covered != v {
        return Ok(None);
    }
    let mut lengths = inside;
    lengths.sort_unstable();
    Ok(Some(lengths))
}

/// The only saturated hereditary sets are `∅` and `E⁰`.
///
/// Any nonempty saturated hereditary set contains the closure of each of its
/// vertices, so it suffices that every single vertex generates `E⁰`.
pub fn has_trivial_ideal_lattice(g: &Graph) -> bool {
    let all = g.all_vertices();
    g.vertices()
        .all(|v| sat_her_closure(g, VertexSet::singleton(v)) == all)
}

/// Trivial saturated hereditary lattice together with condition (L).
pub fn simplicity(g: &Graph) -> bool {
    has_trivial_ideal_lattice(g) && condition_l(g)
}
