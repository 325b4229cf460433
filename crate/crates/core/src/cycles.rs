//! Cycles, exits, simple-cycle recognition and conditions (K) and (L).
//!
//! Everything is decided per strongly connected component. A cyclic
//! component whose internal edges form one simple cycle carries exactly one
//! cycle up to rotation and powers; any other cyclic component gives every
//! vertex two distinct return paths, so each of its cycles has an exit.

use serde::Serialize;

use crate::error::{Error, Result};
use crate::graph::{Components, EdgeId, Graph, Path, VertexId, VertexSet};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize)]
pub enum CycleKind {
    NoCycle,
    CycleWithoutExit,
    CycleWithExit,
}

impl CycleKind {
    pub fn label(self) -> &'static str {
        match self {
            CycleKind::CycleWithExit => "cycle with exit",
            CycleKind::CycleWithoutExit => "cycle without exit",
            CycleKind::NoCycle => "no cycle",
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct CycleClass {
    pub kind: CycleKind,
    pub witness: Option<Path>,
}

/// One exitless simple cycle: its vertex set and length.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
pub struct Circle {
    pub vertices: VertexSet,
    pub length: usize,
}

#[derive(Clone, Debug, Default, PartialEq, Eq, Serialize)]
pub struct CycleFamily {
    pub circles: Vec<Circle>,
}

impl CycleFamily {
    pub fn is_empty(&self) -> bool {
        self.circles.is_empty()
    }

    pub fn len(&self) -> usize {
        self.circles.len()
    }

    pub fn union(&self) -> VertexSet {
        self.circles
            .iter()
            .fold(VertexSet::EMPTY, |acc, c| acc.union(c.vertices))
    }

    /// Circle lengths, sorted.
    pub fn lengths(&self) -> Vec<usize> {
        let mut out: Vec<usize> = self.circles.iter().map(|c| c.length).collect();
        out.sort_unstable();
        out
    }
}

/// Per-component facts shared by the predicates below.
#[derive(Clone, Copy, Debug)]
struct ComponentShape {
    vertices: VertexSet,
    cyclic: bool,
    /// The internal edges form a single cycle through every vertex once.
    simple_cycle: bool,
    /// Simple cycle and every vertex emits exactly one edge in the graph.
    exitless: bool,
}

fn component_shapes(g: &Graph, comps: &Components) -> Vec<ComponentShape> {
    comps
        .members
        .iter()
        .map(|&c| {
            let internal = g.edges_within(c).count();
            let cyclic = c.len() > 1 || internal > 0;
            // Strongly connected and every vertex emits exactly one internal
            // edge: a functional graph on one cycle.
            let simple_cycle = cyclic
                && internal == c.len()
                && c.iter().all(|v| {
                    g.out_edges(v)
                        .iter()
                        .filter(|&&e| c.contains(g.edge(e).range))
                        .count()
                        == 1
                });
            let exitless = simple_cycle && c.iter().all(|v| g.out_edges(v).len() == 1);
            ComponentShape {
                vertices: c,
                cyclic,
                simple_cycle,
                exitless,
            }
        })
        .collect()
}

fn shapes(g: &Graph) -> Vec<ComponentShape> {
    component_shapes(g, &g.strongly_connected_components())
}

fn cycle_in(g: &Graph, shape: &ComponentShape) -> Path {
    let v = shape.vertices.first().expect("components are nonempty");
    g.shortest_cycle_through(v, shape.vertices)
        .expect("a cyclic component has a cycle through each vertex")
}

/// Some cycle of `g`, if any: the shortest one through the smallest vertex
/// of the first cyclic component.
pub fn has_cycle(g: &Graph) -> Option<Path> {
    shapes(g).iter().find(|s| s.cyclic).map(|s| cycle_in(g, s))
}

/// An edge `e` with `s(e) = s(e_i)` and `e ≠ e_i` for some position `i`.
pub fn cycle_has_exit(g: &Graph, cycle: &Path) -> Result<Option<EdgeId>> {
    if !cycle.is_cycle() || !cycle.is_valid_in(g) {
        return Err(Error::NotACycle(cycle.to_string()));
    }
    for &ei in cycle.edges() {
        let s = g.edge(ei).source;
        if let Some(&e) = g.out_edges(s).iter().find(|&&e| e != ei) {
            return Ok(Some(e));
        }
    }
    Ok(None)
}

/// Whether the edge set of `g` is exactly one cycle visiting every vertex
/// once. Returns that cycle, starting at vertex 0.
pub fn is_simple_cycle_graph(g: &Graph) -> Option<Path> {
    let n = g.vertex_count();
    if g.edge_count() != n || g.vertices().any(|v| g.out_edges(v).len() != 1) {
        return None;
    }
    let mut edges = Vec::with_capacity(n);
    let mut seen = VertexSet::EMPTY;
    let mut v = VertexId(0);
    for _ in 0..n {
        if seen.contains(v) {
            return None;
        }
        seen.insert(v);
        let e = g.out_edges(v)[0];
        edges.push(e);
        v = g.edge(e).range;
    }
    (v == VertexId(0)).then(|| Path::from_parts(VertexId(0), VertexId(0), edges))
}

/// NoCycle, CycleWithExit when some cycle has an exit, else CycleWithoutExit.
pub fn classify_cycles(g: &Graph) -> CycleClass {
    let shapes = shapes(g);
    if let Some(s) = shapes.iter().find(|s| s.cyclic && !s.exitless) {
        return CycleClass {
            kind: CycleKind::CycleWithExit,
            witness: Some(cycle_in(g, s)),
        };
    }
    match shapes.iter().find(|s| s.cyclic) {
        Some(s) => CycleClass {
            kind: CycleKind::CycleWithoutExit,
            witness: Some(cycle_in(g, s)),
        },
        None => CycleClass {
            kind: CycleKind::NoCycle,
            witness: None,
        },
    }
}

/// Every cycle has an exit.
pub fn condition_l(g: &Graph) -> bool {
    shapes(g).iter().all(|s| !s.cyclic || !s.exitless)
}

/// Every vertex on a cycle has at least two distinct first-return paths.
///
/// This fails exactly at the vertices of a cyclic component whose internal
/// edges form a single simple cycle, whether or not that cycle has an exit.
pub fn condition_k(g: &Graph) -> bool {
    shapes(g).iter().all(|s| !s.cyclic || !s.simple_cycle)
}

/// Vertices lying on some cycle of `g`.
pub fn cyclic_vertices(g: &Graph) -> VertexSet {
    shapes(g)
        .iter()
        .filter(|s| s.cyclic)
        .fold(VertexSet::EMPTY, |acc, s| acc.union(s.vertices))
}

/// The exitless cycles of `g`. They are pairwise disjoint, each is hereditary,
/// and the subgraph over each is a simple cycle.
pub fn cycles_without_exit_family(g: &Graph) -> CycleFamily {
    CycleFamily {
        circles: shapes(g)
            .iter()
            .filter(|s| s.exitless)
            .map(|s| Circle {
                vertices: s.vertices,
                length: s.vertices.len(),
            })
            .collect(),
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::graph::parse_graph;

    fn g(text: &str) -> Graph {
        parse_graph(text).unwrap()
    }

    fn set(v: &[usize]) -> VertexSet {
        VertexSet::from_indices(v.iter().copied())
    }

    const EDGELESS: &str = "vertices 2";
    const LOOP1: &str = "vertices 1\nedge 0 0";
    const LOOP2: &str = "vertices 1\nedge 0 0\nedge 0 0";
    const TOEPLITZ: &str = "vertices 2\nedge 0 0\nedge 0 1";
    const CYCLE3: &str = "vertices 3\nedge 0 1\nedge 1 2\nedge 2 0";
    const CHAIN2: &str = "vertices 2\nedge 0 1";
    const TWO_LOOPS: &str = "vertices 2\nedge 0 0\nedge 1 1";

    #[test]
    fn has_cycle_examples() {
        assert!(has_cycle(&g(EDGELESS)).is_none());
        assert_eq!(has_cycle(&g(LOOP1)).unwrap().edges(), &[EdgeId(0)]);
        let t = g(TOEPLITZ);
        let c = has_cycle(&t).unwrap();
        assert_eq!(c.edges(), &[EdgeId(0)]);
        assert!(c.is_cycle() && c.is_valid_in(&t));
    }

    #[test]
    fn exit_examples() {
        let o2 = g(LOOP2);
        let loop1 = Path::from_edges(&o2, vec![EdgeId(0)]).unwrap();
        assert_eq!(cycle_has_exit(&o2, &loop1).unwrap(), Some(EdgeId(1)));

        let c3 = g(CYCLE3);
        let cycle = is_simple_cycle_graph(&c3).unwrap();
        assert_eq!(cycle_has_exit(&c3, &cycle).unwrap(), None);

        let t = g(TOEPLITZ);
        let lp = Path::from_edges(&t, vec![EdgeId(0)]).unwrap();
        assert_eq!(cycle_has_exit(&t, &lp).unwrap(), Some(EdgeId(1)));

        let not_cycle = Path::from_edges(&t, vec![EdgeId(1)]).unwrap();
        assert!(matches!(
            cycle_has_exit(&t, &not_cycle),
            Err(Error::NotACycle(_))
        ));
        assert!(cycle_has_exit(&t, &Path::vertex(VertexId(0))).is_err());
    }

    #[test]
    fn simple_cycle_graph_examples() {
        assert_eq!(is_simple_cycle_graph(&g(LOOP1)).unwrap().len(), 1);
        assert!(is_simple_cycle_graph(&g(LOOP2)).is_none());
        assert!(is_simple_cycle_graph(&g("vertices 1")).is_none());
        assert_eq!(is_simple_cycle_graph(&g(CYCLE3)).unwrap().len(), 3);
        assert!(is_simple_cycle_graph(&g(TWO_LOOPS)).is_none());
        // out-degree one everywhere but two cycles of a permutation
        assert!(is_simple_cycle_graph(&g("vertices 4\nedge 0 1\nedge 1 0\nedge 2 3\nedge 3 2"))
            .is_none());
    }

    #[test]
    fn classify_examples() {
        assert_eq!(classify_cycles(&g(LOOP2)).kind, CycleKind::CycleWithExit);
        assert_eq!(classify_cycles(&g(CYCLE3)).kind, CycleKind::CycleWithoutExit);
        let chain = classify_cycles(&g(CHAIN2));
        assert_eq!(chain.kind, CycleKind::NoCycle);
        assert!(chain.witness.is_none());
        assert_eq!(classify_cycles(&g(TOEPLITZ)).kind, CycleKind::CycleWithExit);
    }

    #[test]
    fn classify_prefers_cycles_with_exits() {
        // exitless loop at 1, double loop at 2
        let h = g("vertices 3\nedge 1 1\nedge 2 2\nedge 2 2");
        let class = classify_cycles(&h);
        assert_eq!(class.kind, CycleKind::CycleWithExit);
        let w = class.witness.unwrap();
        assert!(cycle_has_exit(&h, &w).unwrap().is_some());
    }

    #[test]
    fn condition_l_examples() {
        assert!(condition_l(&g(TOEPLITZ)));
        assert!(!condition_l(&g(LOOP1)));
        assert!(condition_l(&g(LOOP2)));
        assert!(condition_l(&g(CHAIN2)));
    }

    #[test]
    fn condition_k_examples() {
        assert!(condition_k(&g(LOOP2)));
        assert!(!condition_k(&g(LOOP1)));
        assert!(!condition_k(&g(TOEPLITZ)));
        // v→a→v and a→b→a: v has only one simple cycle but two return paths
        assert!(condition_k(&g("vertices 3\nedge 0 1\nedge 1 0\nedge 1 2\nedge 2 1")));
    }

    #[test]
    fn exitless_family_examples() {
        let fam = cycles_without_exit_family(&g(TWO_LOOPS));
        assert_eq!(
            fam.circles,
            vec![
                Circle { vertices: set(&[0]), length: 1 },
                Circle { vertices: set(&[1]), length: 1 },
            ]
        );
        assert!(cycles_without_exit_family(&g(LOOP2)).is_empty());
        let fam = cycles_without_exit_family(&g(CYCLE3));
        assert_eq!(fam.circles, vec![Circle { vertices: set(&[0, 1, 2]), length: 3 }]);
        assert_eq!(fam.lengths(), vec![3]);
    }
}
