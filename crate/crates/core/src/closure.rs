//! Hereditary and saturated vertex sets.
//!
//! The saturated hereditary subsets of `E⁰` index the gauge-invariant ideals
//! of the graph algebra; [`enumerate_sat_her`] lists them as a lattice.

use std::collections::{HashMap, HashSet};

use serde::Serialize;

use crate::error::{Error, Result};
use crate::graph::{Graph, VertexSet};

/// Default bound on `|E⁰|` for the powerset enumeration.
pub const DEFAULT_MAX_VERTICES: usize = 20;

/// `s(e) ∈ v ⇒ r(e) ∈ v` for every edge.
pub fn is_hereditary(g: &Graph, v: VertexSet) -> bool {
    v.iter().all(|w| g.successors(w).is_subset(v))
}

/// No vertex outside `v` emits edges that all range into `v`.
pub fn is_saturated(g: &Graph, v: VertexSet) -> bool {
    g.all_vertices()
        .difference(v)
        .iter()
        .all(|w| g.out_edges(w).is_empty() || !g.successors(w).is_subset(v))
}

/// Smallest hereditary superset: everything reachable from `v`.
pub fn hereditary_closure(g: &Graph, v: VertexSet) -> VertexSet {
    g.forward_closure(v)
}

/// Smallest saturated superset, as a least fixpoint.
pub fn saturation(g: &Graph, v: VertexSet) -> VertexSet {
    let mut current = v;
    loop {
        let added: VertexSet = g
            .all_vertices()
            .difference(current)
            .iter()
            .filter(|&w| !g.out_edges(w).is_empty() && g.successors(w).is_subset(current))
            .collect();
        if added.is_empty() {
            return current;
        }
        current = current.union(added);
    }
}

/// `{w : ∃n ≥ 0 ∀μ ∈ Eⁿ (s(μ) = w ⇒ r(μ) ∈ v)}` on a graph without sinks.
///
/// For each `w` the sets `Rₙ = {r(μ) : μ ∈ Eⁿ, s(μ) = w}` satisfy
/// `Rₙ₊₁ = image(Rₙ)`, so the sequence is eventually periodic and the
/// existential over `n` is decided exactly once a set repeats.
pub fn saturation_formula(g: &Graph, v: VertexSet) -> Result<VertexSet> {
    if !g.has_no_sinks() {
        return Err(Error::HasSinks("the path formula for the saturation"));
    }
    g.check_vertex_set(v)?;
    let mut out = VertexSet::EMPTY;
    for w in g.vertices() {
        let mut ranges = VertexSet::singleton(w);
        let mut seen = HashSet::new();
        while seen.insert(ranges) {
            if ranges.is_subset(v) {
                out.insert(w);
                break;
            }
            ranges = g.image(ranges);
        }
    }
    Ok(out)
}

/// Smallest saturated hereditary superset.
pub fn sat_her_closure(g: &Graph, v: VertexSet) -> VertexSet {
    saturation(g, hereditary_closure(g, v))
}

/// The saturated hereditary subsets of `E⁰` ordered by cardinality and then
/// bitmask, with their covering relation.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct SatHerLattice {
    pub elements: Vec<VertexSet>,
    /// Pairs `(i, j)` where `elements[j]` covers `elements[i]`.
    pub covers: Vec<(usize, usize)>,
}

impl SatHerLattice {
    pub fn len(&self) -> usize {
        self.elements.len()
    }

    pub fn is_empty(&self) -> bool {
        self.elements.is_empty()
    }

    /// Only `∅` and `E⁰`.
    pub fn is_trivial(&self) -> bool {
        self.elements.len() == 2
    }

    pub fn bottom(&self) -> VertexSet {
        self.elements[0]
    }

    pub fn top(&self) -> VertexSet {
        *self.elements.last().expect("lattice contains E⁰")
    }

    /// Elements other than `∅` and `E⁰`.
    pub fn nontrivial(&self) -> impl Iterator<Item = VertexSet> + '_ {
        let (bottom, top) = (self.bottom(), self.top());
        self.elements
            .iter()
            .copied()
            .filter(move |&w| w != bottom && w != top)
    }

    pub fn index_of(&self, v: VertexSet) -> Option<usize> {
        self.elements
            .binary_search_by_key(&v.lattice_key(), |w| w.lattice_key())
            .ok()
    }

    /// Indices of the elements covering `elements[i]`, in lattice order.
    pub fn covers_of(&self, i: usize) -> impl Iterator<Item = usize> + '_ {
        self.covers
            .iter()
            .filter(move |&&(a, _)| a == i)
            .map(|&(_, b)| b)
    }

    /// A maximal chain `∅ = W₀ ⊂ ... ⊂ Wₖ = E⁰`, always stepping to the
    /// first covering element.
    pub fn first_maximal_chain(&self) -> Vec<VertexSet> {
        let mut chain = vec![self.bottom()];
        let mut i = 0;
        while let Some(next) = self.covers_of(i).next() {
            chain.push(self.elements[next]);
            i = next;
        }
        chain
    }
}

/// Brute-force enumeration over all `2^|E⁰|` subsets.
pub fn enumerate_sat_her(g: &Graph, max_vertices: usize) -> Result<SatHerLattice> {
    let n = g.vertex_count();
    if n > max_vertices {
        return Err(Error::CapExceeded {
            what: "saturated hereditary lattice enumeration",
            vertices: n,
            cap: max_vertices,
        });
    }
    if n >= 63 {
        return Err(Error::CapExceeded {
            what: "saturated hereditary lattice enumeration",
            vertices: n,
            cap: 62,
        });
    }
    let mut elements: Vec<VertexSet> = (0..1u64 << n)
        .map(VertexSet::from_bits)
        .filter(|&v| is_hereditary(g, v) && is_saturated(g, v))
        .collect();
    elements.sort_by_key(|v| v.lattice_key());

    // Every cover of `a` is the closure of `a ∪ {x}` for some `x ∉ a`, so the
    // covers are the minimal sets among those closures.
    let index: HashMap<VertexSet, usize> =
        elements.iter().enumerate().map(|(i, &v)| (v, i)).collect();
    let mut covers = Vec::new();
    for (i, &a) in elements.iter().enumerate() {
        let mut candidates: Vec<VertexSet> = g
            .all_vertices()
            .difference(a)
            .iter()
            .map(|x| sat_her_closure(g, a.union(VertexSet::singleton(x))))
            .collect();
        candidates.sort_by_key(|v| v.lattice_key());
        candidates.dedup();
        for &b in &candidates {
            let minimal = candidates
                .iter()
                .all(|&c| c == b || !(c.is_subset(b)));
            if minimal {
                covers.push((i, index[&b]));
            }
        }
    }
    covers.sort_unstable();
    Ok(SatHerLattice { elements, covers })
}
