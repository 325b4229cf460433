//! Finite directed multigraphs.
//!
//! Every edge carries a source `s(e)` and a range `r(e)`; a path
//! `e_1 ... e_n` composes when `r(e_i) = s(e_{i+1})`. Vertices are dense
//! indices `0..n` and vertex sets are 64-bit masks, so a [`Graph`] holds at
//! most [`MAX_VERTICES`] vertices. Iteration is always in vertex-id or
//! edge-id order so that everything downstream is reproducible.

use std::collections::VecDeque;
use std::fmt;

use serde::ser::SerializeSeq;
use serde::{Serialize, Serializer};

use crate::error::{Error, Result};

pub const MAX_VERTICES: usize = 64;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize)]
#[serde(transparent)]
pub struct VertexId(pub usize);

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize)]
#[serde(transparent)]
pub struct EdgeId(pub usize);

impl VertexId {
    pub fn index(self) -> usize {
        self.0
    }
}

impl EdgeId {
    pub fn index(self) -> usize {
        self.0
    }
}

impl fmt::Display for VertexId {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.0)
    }
}

impl fmt::Display for EdgeId {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "e{}", self.0)
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize)]
pub struct Edge {
    pub id: EdgeId,
    pub source: VertexId,
    pub range: VertexId,
}

impl Edge {
    pub fn is_loop(&self) -> bool {
        self.source == self.range
    }
}

/// A set of vertices of one graph, stored as a bitmask.
#[derive(Clone, Copy, Default, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct VertexSet(u64);

impl VertexSet {
    pub const EMPTY: VertexSet = VertexSet(0);

    pub const fn from_bits(bits: u64) -> Self {
        VertexSet(bits)
    }

    pub const fn bits(self) -> u64 {
        self.0
    }

    /// `{0, ..., n-1}`.
    pub fn full(n: usize) -> Self {
        assert!(n <= MAX_VERTICES);
        if n == MAX_VERTICES {
            VertexSet(u64::MAX)
        } else {
            VertexSet((1u64 << n) - 1)
        }
    }

    pub fn singleton(v: VertexId) -> Self {
        VertexSet(1u64 << v.0)
    }

    pub fn from_indices<I: IntoIterator<Item = usize>>(indices: I) -> Self {
        indices.into_iter().fold(Self::EMPTY, |acc, i| {
            assert!(i < MAX_VERTICES, "vertex index {i} out of range");
            VertexSet(acc.0 | (1u64 << i))
        })
    }

    pub fn contains(self, v: VertexId) -> bool {
        v.0 < MAX_VERTICES && self.0 & (1u64 << v.0) != 0
    }

    pub fn insert(&mut self, v: VertexId) {
        self.0 |= 1u64 << v.0;
    }

    pub fn remove(&mut self, v: VertexId) {
        self.0 &= !(1u64 << v.0);
    }

    pub fn union(self, other: Self) -> Self {
        VertexSet(self.0 | other.0)
    }

    pub fn intersection(self, other: Self) -> Self {
        VertexSet(self.0 & other.0)
    }

    pub fn difference(self, other: Self) -> Self {
        VertexSet(self.0 & !other.0)
    }

    pub fn is_subset(self, other: Self) -> bool {
        self.0 & !other.0 == 0
    }

    pub fn is_disjoint(self, other: Self) -> bool {
        self.0 & other.0 == 0
    }

    pub fn len(self) -> usize {
        self.0.count_ones() as usize
    }

    pub fn is_empty(self) -> bool {
        self.0 == 0
    }

    pub fn first(self) -> Option<VertexId> {
        (self.0 != 0).then(|| VertexId(self.0.trailing_zeros() as usize))
    }

    /// Vertices in increasing id order.
    pub fn iter(self) -> VertexSetIter {
        VertexSetIter(self.0)
    }

    pub fn to_vec(self) -> Vec<usize> {
        self.iter().map(VertexId::index).collect()
    }

    /// Order used for lattice listings: cardinality first, then bitmask.
    pub fn lattice_key(self) -> (u32, u64) {
        (self.0.count_ones(), self.0)
    }
}

impl fmt::Debug for VertexSet {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt::Display::fmt(self, f)
    }
}

impl fmt::Display for VertexSet {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str("{")?;
        for (i, v) in self.iter().enumerate() {
            if i > 0 {
                f.write_str(",")?;
            }
            write!(f, "{v}")?;
        }
        f.write_str("}")
    }
}

impl Serialize for VertexSet {
    fn serialize<S: Serializer>(&self, serializer: S) -> Result<S::Ok, S::Error> {
        let mut seq = serializer.serialize_seq(Some(self.len()))?;
        for v in self.iter() {
            seq.serialize_element(&v.0)?;
        }
        seq.end()
    }
}

impl FromIterator<VertexId> for VertexSet {
    fn from_iter<I: IntoIterator<Item = VertexId>>(iter: I) -> Self {
        iter.into_iter().fold(Self::EMPTY, |mut acc, v| {
            acc.insert(v);
            acc
        })
    }
}

impl IntoIterator for VertexSet {
    type Item = VertexId;
    type IntoIter = VertexSetIter;

    fn into_iter(self) -> VertexSetIter {
        self.iter()
    }
}

pub struct VertexSetIter(u64);

impl Iterator for VertexSetIter {
    type Item = VertexId;

    fn next(&mut self) -> Option<VertexId> {
        if self.0 == 0 {
            return None;
        }
        let i = self.0.trailing_zeros();
        self.0 &= self.0 - 1;
        Some(VertexId(i as usize))
    }

    fn size_hint(&self) -> (usize, Option<usize>) {
        let n = self.0.count_ones() as usize;
        (n, Some(n))
    }
}

impl ExactSizeIterator for VertexSetIter {}

/// An element of `E*`: either a length-0 path sitting at a vertex, or a
/// nonempty composable edge sequence.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Path {
    source: VertexId,
    range: VertexId,
    edges: Vec<EdgeId>,
}

impl Path {
    pub fn vertex(v: VertexId) -> Self {
        Path {
            source: v,
            range: v,
            edges: Vec::new(),
        }
    }

    pub fn from_edges(g: &Graph, edges: Vec<EdgeId>) -> Result<Self> {
        let (first, last) = match (edges.first(), edges.last()) {
            (Some(&f), Some(&l)) => (f, l),
            _ => return Err(Error::InvalidPath("empty edge sequence".into())),
        };
        for &e in &edges {
            g.check_edge(e)?;
        }
        for pair in edges.windows(2) {
            let (a, b) = (g.edge(pair[0]), g.edge(pair[1]));
            if a.range != b.source {
                return Err(Error::InvalidPath(format!(
                    "r({}) = {} but s({}) = {}",
                    a.id, a.range, b.id, b.source
                )));
            }
        }
        Ok(Path {
            source: g.edge(first).source,
            range: g.edge(last).range,
            edges,
        })
    }

    pub fn source(&self) -> VertexId {
        self.source
    }

    pub fn range(&self) -> VertexId {
        self.range
    }

    pub fn edges(&self) -> &[EdgeId] {
        &self.edges
    }

    pub fn len(&self) -> usize {
        self.edges.len()
    }

    /// Same as [`Path::is_vertex`]: no edges.
    pub fn is_empty(&self) -> bool {
        self.edges.is_empty()
    }

    pub fn is_vertex(&self) -> bool {
        self.edges.is_empty()
    }

    pub fn is_cycle(&self) -> bool {
        !self.edges.is_empty() && self.source == self.range
    }

    /// Re-checks the composition law against `g`.
    pub fn is_valid_in(&self, g: &Graph) -> bool {
        if self.edges.is_empty() {
            return self.source.0 < g.vertex_count() && self.source == self.range;
        }
        match Path::from_edges(g, self.edges.clone()) {
            Ok(p) => p.source == self.source && p.range == self.range,
            Err(_) => false,
        }
    }

    /// Vertices visited in order, `s(e_1), r(e_1), ..., r(e_n)`.
    pub fn vertices(&self, g: &Graph) -> Vec<VertexId> {
        let mut out = vec![self.source];
        out.extend(self.edges.iter().map(|&e| g.edge(e).range));
        out
    }

    /// `self` followed by `other`.
    pub fn concat(&self, other: &Path) -> Result<Path> {
        if self.range != other.source {
            return Err(Error::InvalidPath(format!(
                "cannot append a path starting at {} to one ending at {}",
                other.source, self.range
            )));
        }
        let mut edges = self.edges.clone();
        edges.extend_from_slice(&other.edges);
        Ok(Path {
            source: self.source,
            range: other.range,
            edges,
        })
    }

    pub(crate) fn from_parts(source: VertexId, range: VertexId, edges: Vec<EdgeId>) -> Self {
        Path {
            source,
            range,
            edges,
        }
    }
}

impl fmt::Display for Path {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.edges.is_empty() {
            return write!(f, "v{}", self.source);
        }
        for (i, e) in self.edges.iter().enumerate() {
            if i > 0 {
                f.write_str("·")?;
            }
            write!(f, "{e}")?;
        }
        Ok(())
    }
}

impl Serialize for Path {
    fn serialize<S: Serializer>(&self, serializer: S) -> Result<S::Ok, S::Error> {
        use serde::ser::SerializeStruct;
        let mut st = serializer.serialize_struct("Path", 3)?;
        st.serialize_field("source", &self.source)?;
        st.serialize_field("range", &self.range)?;
        st.serialize_field("edges", &self.edges)?;
        st.end()
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Graph {
    vertex_count: usize,
    edges: Vec<Edge>,
    out_edges: Vec<Vec<EdgeId>>,
    in_edges: Vec<Vec<EdgeId>>,
    successors: Vec<VertexSet>,
    predecessors: Vec<VertexSet>,
}

impl Graph {
    /// Builds a graph from `(source, range)` pairs; edge ids follow the
    /// order of the pairs.
    pub fn new<I>(vertex_count: usize, edges: I) -> Result<Self>
    where
        I: IntoIterator<Item = (usize, usize)>,
    {
        if vertex_count == 0 {
            return Err(Error::NoVertices);
        }
        if vertex_count > MAX_VERTICES {
            return Err(Error::TooManyVertices(vertex_count));
        }
        let mut g = Graph {
            vertex_count,
            edges: Vec::new(),
            out_edges: vec![Vec::new(); vertex_count],
            in_edges: vec![Vec::new(); vertex_count],
            successors: vec![VertexSet::EMPTY; vertex_count],
            predecessors: vec![VertexSet::EMPTY; vertex_count],
        };
        for (s, r) in edges {
            for v in [s, r] {
                if v >= vertex_count {
                    return Err(Error::VertexOutOfRange {
                        vertex: v,
                        vertex_count,
                    });
                }
            }
            let id = EdgeId(g.edges.len());
            let (source, range) = (VertexId(s), VertexId(r));
            g.edges.push(Edge { id, source, range });
            g.out_edges[s].push(id);
            g.in_edges[r].push(id);
            g.successors[s].insert(range);
            g.predecessors[r].insert(source);
        }
        Ok(g)
    }

    pub fn vertex_count(&self) -> usize {
        self.vertex_count
    }

    pub fn edge_count(&self) -> usize {
        self.edges.len()
    }

    pub fn edges(&self) -> &[Edge] {
        &self.edges
    }

    pub fn edge(&self, id: EdgeId) -> &Edge {
        &self.edges[id.0]
    }

    pub fn vertices(&self) -> impl Iterator<Item = VertexId> {
        (0..self.vertex_count).map(VertexId)
    }

    pub fn all_vertices(&self) -> VertexSet {
        VertexSet::full(self.vertex_count)
    }

    /// `s^{-1}(v)` in edge-id order.
    pub fn out_edges(&self, v: VertexId) -> &[EdgeId] {
        &self.out_edges[v.0]
    }

    /// `r^{-1}(v)` in edge-id order.
    pub fn in_edges(&self, v: VertexId) -> &[EdgeId] {
        &self.in_edges[v.0]
    }

    pub fn successors(&self, v: VertexId) -> VertexSet {
        self.successors[v.0]
    }

    pub fn predecessors(&self, v: VertexId) -> VertexSet {
        self.predecessors[v.0]
    }

    /// Union of the successors of every vertex in `set`.
    pub fn image(&self, set: VertexSet) -> VertexSet {
        set.iter()
            .fold(VertexSet::EMPTY, |acc, v| acc.union(self.successors[v.0]))
    }

    pub fn contains_vertex_set(&self, set: VertexSet) -> bool {
        set.is_subset(self.all_vertices())
    }

    pub(crate) fn check_vertex_set(&self, set: VertexSet) -> Result<()> {
        match set.difference(self.all_vertices()).first() {
            Some(v) => Err(Error::VertexOutOfRange {
                vertex: v.0,
                vertex_count: self.vertex_count,
            }),
            None => Ok(()),
        }
    }

    pub(crate) fn check_edge(&self, e: EdgeId) -> Result<()> {
        if e.0 < self.edges.len() {
            Ok(())
        } else {
            Err(Error::EdgeOutOfRange {
                edge: e.0,
                edge_count: self.edges.len(),
            })
        }
    }

    /// Vertices emitting no edge.
    pub fn sinks(&self) -> VertexSet {
        self.vertices()
            .filter(|&v| self.out_edges[v.0].is_empty())
            .collect()
    }

    pub fn has_no_sinks(&self) -> bool {
        self.sinks().is_empty()
    }

    /// `{r(μ) : μ ∈ E*, s(μ) ∈ set}`, length-0 paths included.
    pub fn forward_closure(&self, set: VertexSet) -> VertexSet {
        let mut seen = set;
        let mut frontier = set;
        while !frontier.is_empty() {
            let next = self.image(frontier);
            frontier = next.difference(seen);
            seen = seen.union(next);
        }
        seen
    }

    /// `{s(μ) : μ ∈ E*, r(μ) ∈ set}`, length-0 paths included.
    pub fn backward_closure(&self, set: VertexSet) -> VertexSet {
        let mut seen = set;
        let mut frontier = set;
        while !frontier.is_empty() {
            let next = frontier
                .iter()
                .fold(VertexSet::EMPTY, |acc, v| acc.union(self.predecessors[v.0]));
            frontier = next.difference(seen);
            seen = seen.union(next);
        }
        seen
    }

    /// Whether some path (possibly of length 0) runs from `from` into `to`.
    pub fn reaches(&self, from: VertexSet, to: VertexSet) -> bool {
        !self.forward_closure(from).is_disjoint(to)
    }

    /// A shortest path from `from` into `to`, staying inside `within`.
    ///
    /// Ties are broken by vertex id of the start and then edge id, so the
    /// result is deterministic.
    pub fn find_path_within(
        &self,
        from: VertexSet,
        to: VertexSet,
        within: VertexSet,
    ) -> Option<Path> {
        let from = from.intersection(within);
        if let Some(v) = from.intersection(to).first() {
            return Some(Path::vertex(v));
        }
        let mut parent: Vec<Option<EdgeId>> = vec![None; self.vertex_count];
        let mut seen = from;
        let mut queue: VecDeque<VertexId> = from.iter().collect();
        while let Some(v) = queue.pop_front() {
            for &e in &self.out_edges[v.0] {
                let w = self.edges[e.0].range;
                if seen.contains(w) || !within.contains(w) {
                    continue;
                }
                seen.insert(w);
                parent[w.0] = Some(e);
                if to.contains(w) {
                    return Some(self.trace_back(&parent, w));
                }
                queue.push_back(w);
            }
        }
        None
    }

    pub fn find_path(&self, from: VertexSet, to: VertexSet) -> Option<Path> {
        self.find_path_within(from, to, self.all_vertices())
    }

    fn trace_back(&self, parent: &[Option<EdgeId>], end: VertexId) -> Path {
        let mut edges = Vec::new();
        let mut cur = end;
        while let Some(e) = parent[cur.0] {
            edges.push(e);
            cur = self.edges[e.0].source;
        }
        edges.reverse();
        Path::from_parts(cur, end, edges)
    }

    /// A shortest cycle through `v` using only vertices of `within`.
    pub fn shortest_cycle_through(&self, v: VertexId, within: VertexSet) -> Option<Path> {
        if !within.contains(v) {
            return None;
        }
        // A loop is always the shortest; otherwise search from each out-edge.
        if let Some(&e) = self.out_edges[v.0]
            .iter()
            .find(|&&e| self.edges[e.0].range == v)
        {
            return Some(Path::from_parts(v, v, vec![e]));
        }
        let mut parent: Vec<Option<EdgeId>> = vec![None; self.vertex_count];
        let mut seen = VertexSet::EMPTY;
        let mut queue = VecDeque::new();
        for &e in &self.out_edges[v.0] {
            let w = self.edges[e.0].range;
            if within.contains(w) && !seen.contains(w) {
                seen.insert(w);
                parent[w.0] = Some(e);
                queue.push_back(w);
            }
        }
        while let Some(u) = queue.pop_front() {
            for &e in &self.out_edges[u.0] {
                let w = self.edges[e.0].range;
                if w == v {
                    let mut edges = vec![e];
                    let mut cur = u;
                    while cur != v {
                        let pe = parent[cur.0].expect("visited vertex has a parent edge");
                        edges.push(pe);
                        cur = self.edges[pe.0].source;
                    }
                    edges.reverse();
                    return Some(Path::from_parts(v, v, edges));
                }
                if within.contains(w) && !seen.contains(w) {
                    seen.insert(w);
                    parent[w.0] = Some(e);
                    queue.push_back(w);
                }
            }
        }
        None
    }

    /// Edges with both endpoints in `set`.
    pub fn edges_within(&self, set: VertexSet) -> impl Iterator<Item = &Edge> + '_ {
        self.edges
            .iter()
            .filter(move |e| set.contains(e.source) && set.contains(e.range))
    }

    /// Strongly connected components (iterative Tarjan), numbered by their
    /// smallest vertex.
    pub fn strongly_connected_components(&self) -> Components {
        const UNVISITED: usize = usize::MAX;
        let n = self.vertex_count;
        let mut index = vec![UNVISITED; n];
        let mut lowlink = vec![0usize; n];
        let mut on_stack = vec![false; n];
        let mut stack: Vec<usize> = Vec::new();
        let mut found: Vec<VertexSet> = Vec::new();
        let mut next_index = 0;

        for root in 0..n {
            if index[root] != UNVISITED {
                continue;
            }
            // (vertex, position in its out-edge list)
            let mut call: Vec<(usize, usize)> = vec![(root, 0)];
            index[root] = next_index;
            lowlink[root] = next_index;
            next_index += 1;
            stack.push(root);
            on_stack[root] = true;

            while let Some(&(v, pos)) = call.last() {
                if let Some(&e) = self.out_edges[v].get(pos) {
                    if let Some(top) = call.last_mut() {
                        top.1 += 1;
                    }
                    let w = self.edges[e.0].range.0;
                    if index[w] == UNVISITED {
                        index[w] = next_index;
                        lowlink[w] = next_index;
                        next_index += 1;
                        stack.push(w);
                        on_stack[w] = true;
                        call.push((w, 0));
                    } else if on_stack[w] {
                        lowlink[v] = lowlink[v].min(index[w]);
                    }
                    continue;
                }
                call.pop();
                if let Some(&(parent, _)) = call.last() {
                    lowlink[parent] = lowlink[parent].min(lowlink[v]);
                }
                if lowlink[v] == index[v] {
                    let mut comp = VertexSet::EMPTY;
                    loop {
                        let w = stack.pop().expect("tarjan stack underflow");
                        on_stack[w] = false;
                        comp.insert(VertexId(w));
                        if w == v {
                            break;
                        }
                    }
                    found.push(comp);
                }
            }
        }

        found.sort_by_key(|c| c.first());
        let mut component_of = vec![0; n];
        for (i, c) in found.iter().enumerate() {
            for v in c.iter() {
                component_of[v.0] = i;
            }
        }
        let mut condensation: Vec<(usize, usize)> = self
            .edges
            .iter()
            .map(|e| (component_of[e.source.0], component_of[e.range.0]))
            .filter(|(a, b)| a != b)
            .collect();
        condensation.sort_unstable();
        condensation.dedup();
        Components {
            members: found,
            component_of,
            condensation,
        }
    }

    pub fn is_strongly_connected(&self) -> bool {
        self.strongly_connected_components().members.len() == 1
    }

    /// The subgraph `E_V`: vertices `v`, edges with both endpoints in `v`.
    pub fn subgraph_over(&self, v: VertexSet) -> Result<Subgraph> {
        self.check_vertex_set(v)?;
        if v.is_empty() {
            return Err(Error::EmptySubgraph);
        }
        let vertex_map: Vec<VertexId> = v.iter().collect();
        let mut position = vec![usize::MAX; self.vertex_count];
        for (i, w) in vertex_map.iter().enumerate() {
            position[w.0] = i;
        }
        let kept: Vec<&Edge> = self.edges_within(v).collect();
        let graph = Graph::new(
            vertex_map.len(),
            kept.iter()
                .map(|e| (position[e.source.0], position[e.range.0])),
        )?;
        Ok(Subgraph {
            graph,
            vertex_map,
            edge_map: kept.iter().map(|e| e.id).collect(),
            position,
        })
    }

    /// All paths of length at most `max_len`, ordered by length and then
    /// lexicographically by edge ids. Length-0 paths come first, by vertex.
    pub fn enumerate_paths(&self, max_len: usize) -> Paths<'_> {
        Paths {
            graph: self,
            max_len,
            len: 0,
            level: self.vertices().map(Path::vertex).collect(),
            pos: 0,
        }
    }

    /// Canonical text rendering in the graph file format.
    pub fn to_text(&self) -> String {
        let mut out = format!("vertices {}\n", self.vertex_count);
        for e in &self.edges {
            out.push_str(&format!("edge {} {}\n", e.source, e.range));
        }
        out
    }
}

/// Parses the graph file format: a `vertices N` line followed by `edge S R`
/// lines, one per edge. `#` starts a comment.
pub fn parse_graph(text: &str) -> Result<Graph> {
    let mut vertex_count: Option<usize> = None;
    let mut edges = Vec::new();

    for (i, raw) in text.lines().enumerate() {
        let line_no = i + 1;
        let line = raw.split('#').next().unwrap_or("").trim();
        if line.is_empty() {
            continue;
        }
        let parse_err = |message: String| Error::Parse {
            line: line_no,
            message,
        };
        let fields: Vec<&str> = line.split_whitespace().collect();
        let number = |s: &str| {
            s.parse::<usize>()
                .map_err(|_| parse_err(format!("expected a natural number, found `{s}`")))
        };
        match (vertex_count, fields.as_slice()) {
            (None, ["vertices", n]) => {
                let n = number(n)?;
                if n == 0 {
                    return Err(parse_err("a graph needs at least one vertex".into()));
                }
                if n > MAX_VERTICES {
                    return Err(parse_err(format!(
                        "{n} vertices declared; at most {MAX_VERTICES} are supported"
                    )));
                }
                vertex_count = Some(n);
            }
            (None, _) => {
                return Err(parse_err(format!(
                    "expected `vertices N` before anything else, found `{line}`"
                )))
            }
            (Some(_), ["vertices", ..]) => {
                return Err(parse_err("duplicate `vertices` line".into()))
            }
            (Some(n), ["edge", s, r]) => {
                let (s, r) = (number(s)?, number(r)?);
                for v in [s, r] {
                    if v >= n {
                        return Err(parse_err(format!(
                            "vertex {v} out of range (graph has {n} vertices)"
                        )));
                    }
                }
                edges.push((s, r));
            }
            (Some(_), _) => {
                return Err(parse_err(format!(
                    "expected `edge S R`, found `{line}`"
                )))
            }
        }
    }

    match vertex_count {
        Some(n) => Graph::new(n, edges),
        None => Err(Error::Parse {
            line: text.lines().count(),
            message: "missing `vertices N` line (a graph needs at least one vertex)".into(),
        }),
    }
}

/// Partition of `E⁰` into strongly connected components plus the
/// condensation DAG.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Components {
    pub members: Vec<VertexSet>,
    pub component_of: Vec<usize>,
    /// Arcs `(a, b)` between distinct components, sorted.
    pub condensation: Vec<(usize, usize)>,
}

impl Components {
    pub fn len(&self) -> usize {
        self.members.len()
    }

    pub fn is_empty(&self) -> bool {
        self.members.is_empty()
    }
}

/// `E_V` together with the maps back into the ambient graph.
#[derive(Clone, Debug)]
pub struct Subgraph {
    pub graph: Graph,
    /// Subgraph vertex `i` is ambient vertex `vertex_map[i]`.
    pub vertex_map: Vec<VertexId>,
    /// Subgraph edge `i` is ambient edge `edge_map[i]`.
    pub edge_map: Vec<EdgeId>,
    position: Vec<usize>,
}

impl Subgraph {
    pub fn lift_vertex(&self, v: VertexId) -> VertexId {
        self.vertex_map[v.0]
    }

    pub fn lift_set(&self, set: VertexSet) -> VertexSet {
        set.iter().map(|v| self.vertex_map[v.0]).collect()
    }

    pub fn lift_path(&self, p: &Path) -> Path {
        Path::from_parts(
            self.lift_vertex(p.source()),
            self.lift_vertex(p.range()),
            p.edges().iter().map(|e| self.edge_map[e.0]).collect(),
        )
    }

    /// Ambient vertex to subgraph vertex, if it is kept.
    pub fn local_vertex(&self, v: VertexId) -> Option<VertexId> {
        match self.position.get(v.0) {
            Some(&i) if i != usize::MAX => Some(VertexId(i)),
            _ => None,
        }
    }

    /// Ambient set restricted to the kept vertices, in subgraph ids.
    pub fn local_set(&self, set: VertexSet) -> VertexSet {
        set.iter().filter_map(|v| self.local_vertex(v)).collect()
    }
}

/// Stream of paths produced by [`Graph::enumerate_paths`].
pub struct Paths<'g> {
    graph: &'g Graph,
    max_len: usize,
    len: usize,
    level: Vec<Path>,
    pos: usize,
}

impl Iterator for Paths<'_> {
    type Item = Path;

    fn next(&mut self) -> Option<Path> {
        loop {
            if let Some(p) = self.level.get(self.pos) {
                self.pos += 1;
                return Some(p.clone());
            }
            if self.len >= self.max_len || self.level.is_empty() {
                return None;
            }
            let g = self.graph;
            let next: Vec<Path> = if self.len == 0 {
                g.edges
                    .iter()
                    .map(|e| Path::from_parts(e.source, e.range, vec![e.id]))
                    .collect()
            } else {
                self.level
                    .iter()
                    .flat_map(|p| {
                        g.out_edges(p.range()).iter().map(move |&e| {
                            let mut edges = p.edges().to_vec();
                            edges.push(e);
                            Path::from_parts(p.source(), g.edge(e).range, edges)
                        })
                    })
                    .collect()
            };
            self.len += 1;
            self.level = next;
            self.pos = 0;
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn toeplitz() -> Graph {
        parse_graph("vertices 2\nedge 0 0\nedge 0 1\n").unwrap()
    }

    fn set(v: &[usize]) -> VertexSet {
        VertexSet::from_indices(v.iter().copied())
    }

    #[test]
    fn parses_smallest_loop() {
        let g = parse_graph("vertices 1\nedge 0 0").unwrap();
        assert_eq!(g.vertex_count(), 1);
        assert_eq!(g.edge_count(), 1);
        assert!(g.edges()[0].is_loop());
    }

    #[test]
    fn parses_toeplitz_in_declaration_order() {
        let g = toeplitz();
        assert_eq!(g.vertex_count(), 2);
        let pairs: Vec<_> = g.edges().iter().map(|e| (e.source.0, e.range.0)).collect();
        assert_eq!(pairs, vec![(0, 0), (0, 1)]);
    }

    #[test]
    fn parse_rejects_out_of_range_vertex() {
        let err = parse_graph("vertices 2\nedge 0 2").unwrap_err();
        match err {
            Error::Parse { line, message } => {
                assert_eq!(line, 2);
                assert!(message.contains("vertex 2 out of range"), "{message}");
            }
            other => panic!("unexpected error {other:?}"),
        }
    }

    #[test]
    fn parse_rejects_zero_vertices_and_garbage() {
        assert!(matches!(
            parse_graph("vertices 0"),
            Err(Error::Parse { line: 1, .. })
        ));
        assert!(matches!(parse_graph(""), Err(Error::Parse { .. })));
        assert!(matches!(
            parse_graph("# only a comment\n"),
            Err(Error::Parse { .. })
        ));
        assert!(matches!(
            parse_graph("vertices 2\nedge 0\n"),
            Err(Error::Parse { line: 2, .. })
        ));
        assert!(matches!(
            parse_graph("edge 0 0\nvertices 1\n"),
            Err(Error::Parse { line: 1, .. })
        ));
        assert!(matches!(
            parse_graph("vertices 1\nvertices 1\n"),
            Err(Error::Parse { line: 2, .. })
        ));
        assert!(matches!(
            parse_graph("vertices 1\nedge 0 x\n"),
            Err(Error::Parse { line: 2, .. })
        ));
    }

    #[test]
    fn parse_handles_comments_and_parallel_edges() {
        let g = parse_graph("# O_2\nvertices 1   # one vertex\nedge 0 0\nedge 0 0 # again\n\n")
            .unwrap();
        assert_eq!(g.edge_count(), 2);
        assert_ne!(g.edges()[0].id, g.edges()[1].id);
    }

    #[test]
    fn text_round_trip() {
        let g = parse_graph("vertices 3\nedge 2 0\nedge 0 0\nedge 2 0\n").unwrap();
        assert_eq!(parse_graph(&g.to_text()).unwrap(), g);
    }

    #[test]
    fn sinks_examples() {
        assert!(parse_graph("vertices 1\nedge 0 0").unwrap().sinks().is_empty());
        assert_eq!(toeplitz().sinks(), set(&[1]));
        assert_eq!(parse_graph("vertices 1").unwrap().sinks(), set(&[0]));
    }

    #[test]
    fn scc_examples() {
        let c3 = parse_graph("vertices 3\nedge 0 1\nedge 1 2\nedge 2 0").unwrap();
        let comps = c3.strongly_connected_components();
        assert_eq!(comps.members, vec![set(&[0, 1, 2])]);
        assert!(comps.condensation.is_empty());

        let comps = toeplitz().strongly_connected_components();
        assert_eq!(comps.members, vec![set(&[0]), set(&[1])]);
        assert_eq!(comps.condensation, vec![(0, 1)]);

        let comps = parse_graph("vertices 2").unwrap().strongly_connected_components();
        assert_eq!(comps.members, vec![set(&[0]), set(&[1])]);
        assert!(comps.condensation.is_empty());
    }

    #[test]
    fn subgraph_examples() {
        let sub = toeplitz().subgraph_over(set(&[0])).unwrap();
        assert_eq!(sub.graph.vertex_count(), 1);
        assert_eq!(sub.graph.edge_count(), 1);
        assert!(sub.graph.edges()[0].is_loop());

        let g = toeplitz();
        let whole = g.subgraph_over(g.all_vertices()).unwrap();
        assert_eq!(whole.graph, g);

        let two = parse_graph("vertices 2\nedge 0 0\nedge 1 1").unwrap();
        let sub = two.subgraph_over(set(&[1])).unwrap();
        assert_eq!(sub.graph.vertex_count(), 1);
        assert_eq!(sub.graph.edge_count(), 1);
        assert_eq!(sub.lift_vertex(VertexId(0)), VertexId(1));
        assert_eq!(sub.edge_map, vec![EdgeId(1)]);

        assert_eq!(g.subgraph_over(VertexSet::EMPTY).unwrap_err(), Error::EmptySubgraph);
    }

    #[test]
    fn reaches_examples() {
        let g = toeplitz();
        assert!(g.reaches(set(&[0]), set(&[1])));
        assert!(!g.reaches(set(&[1]), set(&[0])));
        assert!(g.reaches(set(&[1]), set(&[1])));
        assert!(!g.reaches(VertexSet::EMPTY, g.all_vertices()));
    }

    #[test]
    fn find_path_returns_valid_shortest_path() {
        let g = parse_graph("vertices 4\nedge 0 1\nedge 1 2\nedge 2 3\nedge 0 2").unwrap();
        let p = g.find_path(set(&[0]), set(&[3])).unwrap();
        assert!(p.is_valid_in(&g));
        assert_eq!(p.edges(), &[EdgeId(3), EdgeId(2)]);
        assert!(g.find_path(set(&[3]), set(&[0])).is_none());
        assert!(g.find_path(set(&[2]), set(&[2])).unwrap().is_vertex());
    }

    #[test]
    fn enumerate_paths_examples() {
        let loop1 = parse_graph("vertices 1\nedge 0 0").unwrap();
        let paths: Vec<_> = loop1.enumerate_paths(2).collect();
        assert_eq!(paths.len(), 3);
        assert_eq!(paths[2].edges(), &[EdgeId(0), EdgeId(0)]);

        assert_eq!(toeplitz().enumerate_paths(1).count(), 4);

        let edgeless = parse_graph("vertices 3").unwrap();
        let paths: Vec<_> = edgeless.enumerate_paths(5).collect();
        assert_eq!(paths.len(), 3);
        assert!(paths.iter().all(Path::is_vertex));
    }

    #[test]
    fn enumerate_paths_is_ordered_by_length_then_edges() {
        let g = parse_graph("vertices 2\nedge 1 0\nedge 0 1\nedge 0 0").unwrap();
        let paths: Vec<_> = g.enumerate_paths(3).collect();
        for w in paths.windows(2) {
            let key = |p: &Path| (p.len(), p.edges().to_vec());
            if !w[0].is_empty() {
                assert!(key(&w[0]) < key(&w[1]));
            }
        }
        assert!(paths.iter().all(|p| p.is_valid_in(&g)));
    }

    #[test]
    fn path_validation() {
        let g = toeplitz();
        assert!(Path::from_edges(&g, vec![EdgeId(1), EdgeId(0)]).is_err());
        assert!(Path::from_edges(&g, vec![]).is_err());
        assert!(Path::from_edges(&g, vec![EdgeId(7)]).is_err());
        let p = Path::from_edges(&g, vec![EdgeId(0), EdgeId(1)]).unwrap();
        assert_eq!((p.source(), p.range()), (VertexId(0), VertexId(1)));
        assert_eq!(p.vertices(&g), vec![VertexId(0), VertexId(0), VertexId(1)]);
        assert_eq!(p.to_string(), "e0·e1");
    }

    #[test]
    fn shortest_cycle_prefers_loops() {
        let g = parse_graph("vertices 2\nedge 0 1\nedge 1 0\nedge 0 0").unwrap();
        let c = g.shortest_cycle_through(VertexId(0), g.all_vertices()).unwrap();
        assert_eq!(c.edges(), &[EdgeId(2)]);
        let c = g.shortest_cycle_through(VertexId(1), g.all_vertices()).unwrap();
        assert_eq!(c.edges(), &[EdgeId(1), EdgeId(0)]);
        assert!(g.shortest_cycle_through(VertexId(1), set(&[1])).is_none());
    }
}
