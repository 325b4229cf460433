//! Deciding whether a graph algebra is an essential extension of a stably
//! commutative algebra by a stable Kirchberg ideal.
//!
//! A graph qualifies exactly when `E⁰ = V₀ ⊔ V₁ ⊔ V₂` with
//!
//! 1. `E_{V₀}` the saturation (inside `E_{V₀}`) of a nonempty disjoint
//!    family of exitless simple cycles,
//! 2. `E_{V₁}` acyclic,
//! 3. `E_{V₂}` strongly connected with an edge and not a simple cycle,
//! 4. no path from `Vᵢ` into `Vⱼ` for `i > j`,
//! 5. a path from every vertex of `V₀ ∪ V₁` into `V₂`.
//!
//! The quotient is then stably `C(⊔_{C} T)` and the ideal is
//! `C*(E_{V₂}) ⊗ K`. [`decompose`] searches the saturated hereditary sets
//! `W = V₁ ∪ V₂`; [`brute_decompose`] tries every ordered tripartition and
//! exists to cross-check it.

use serde::Serialize;

use crate::citations;
use crate::closure::{enumerate_sat_her, saturation, SatHerLattice};
use crate::cycles::{cyclic_vertices, cycles_without_exit_family, has_cycle, is_simple_cycle_graph, Circle, CycleFamily};
use crate::error::{Error, Result};
use crate::graph::{EdgeId, Graph, Path, VertexId, VertexSet};

/// Largest graph [`brute_decompose`] accepts (`3^6` tripartitions).
pub const BRUTE_FORCE_MAX_VERTICES: usize = 6;

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "camelCase")]
pub struct Decomposition {
    pub v0: VertexSet,
    pub v1: VertexSet,
    pub v2: VertexSet,
    pub circles: CycleFamily,
    pub conditions_checked: [bool; 5],
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
#[serde(tag = "type", rename_all = "camelCase")]
pub enum FailureWitness {
    /// `E_{V₀}` has no exitless simple cycle (in particular when `V₀ = ∅`).
    NoCircles,
    /// The saturation of the circles inside `E_{V₀}` falls short of `V₀`.
    SaturationMismatch {
        circles: VertexSet,
        saturation: VertexSet,
    },
    /// A cycle inside `E_{V₁}`.
    Cycle { cycle: Path },
    EmptyPart,
    NoEdges,
    NotStronglyConnected { from: VertexId, to: VertexId },
    SimpleCycle { cycle: Path },
    /// A path from part `from_part` into the earlier part `to_part`.
    BackwardPath {
        from_part: u8,
        to_part: u8,
        path: Path,
    },
    /// A vertex of `V₀ ∪ V₁` that cannot reach `V₂`.
    Unreachable { vertex: VertexId },
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct ConditionFailure {
    /// 1-based index of the first violated condition.
    pub condition: u8,
    pub witness: FailureWitness,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum CheckOutcome {
    Passed(Decomposition),
    Failed(ConditionFailure),
}

impl CheckOutcome {
    pub fn passed(&self) -> bool {
        matches!(self, CheckOutcome::Passed(_))
    }

    pub fn decomposition(self) -> Option<Decomposition> {
        match self {
            CheckOutcome::Passed(d) => Some(d),
            CheckOutcome::Failed(_) => None,
        }
    }

    pub fn failure(self) -> Option<ConditionFailure> {
        match self {
            CheckOutcome::Passed(_) => None,
            CheckOutcome::Failed(f) => Some(f),
        }
    }
}

fn fail(condition: u8, witness: FailureWitness) -> Result<CheckOutcome> {
    Ok(CheckOutcome::Failed(ConditionFailure { condition, witness }))
}

/// Checks the five conditions in order and reports the first failure.
pub fn check_conditions(
    g: &Graph,
    v0: VertexSet,
    v1: VertexSet,
    v2: VertexSet,
) -> Result<CheckOutcome> {
    let all = g.all_vertices();
    if !v0.is_disjoint(v1)
        || !v0.is_disjoint(v2)
        || !v1.is_disjoint(v2)
        || v0.union(v1).union(v2) != all
    {
        return Err(Error::NotAPartition(g.vertex_count()));
    }

    // (1) saturation is taken inside E_{V₀}
    if v0.is_empty() {
        return fail(1, FailureWitness::NoCircles);
    }
    let e0 = g.subgraph_over(v0)?;
    let local = cycles_without_exit_family(&e0.graph);
    if local.is_empty() {
        return fail(1, FailureWitness::NoCircles);
    }
    let circles = CycleFamily {
        circles: local
            .circles
            .iter()
            .map(|c| Circle {
                vertices: e0.lift_set(c.vertices),
                length: c.length,
            })
            .collect(),
    };
    let sat = e0.lift_set(saturation(&e0.graph, local.union()));
    if sat != v0 {
        return fail(
            1,
            FailureWitness::SaturationMismatch {
                circles: circles.union(),
                saturation: sat,
            },
        );
    }

    // (2)
    if !v1.is_empty() {
        let e1 = g.subgraph_over(v1)?;
        if let Some(cycle) = has_cycle(&e1.graph) {
            return fail(
                2,
                FailureWitness::Cycle {
                    cycle: e1.lift_path(&cycle),
                },
            );
        }
    }

    // (3)
    if v2.is_empty() {
        return fail(3, FailureWitness::EmptyPart);
    }
    let e2 = g.subgraph_over(v2)?;
    if e2.graph.edge_count() == 0 {
        return fail(3, FailureWitness::NoEdges);
    }
    if let Some((from, to)) = unreachable_pair(&e2.graph) {
        return fail(
            3,
            FailureWitness::NotStronglyConnected {
                from: e2.lift_vertex(from),
                to: e2.lift_vertex(to),
            },
        );
    }
    if let Some(cycle) = is_simple_cycle_graph(&e2.graph) {
        return fail(
            3,
            FailureWitness::SimpleCycle {
                cycle: e2.lift_path(&cycle),
            },
        );
    }

    // (4)
    let parts = [v0, v1, v2];
    for (i, j) in [(1u8, 0u8), (2, 0), (2, 1)] {
        if let Some(path) = g.find_path(parts[i as usize], parts[j as usize]) {
            return fail(
                4,
                FailureWitness::BackwardPath {
                    from_part: i,
                    to_part: j,
                    path,
                },
            );
        }
    }

    // (5)
    if let Some(vertex) = v0
        .union(v1)
        .iter()
        .find(|&v| !g.reaches(VertexSet::singleton(v), v2))
    {
        return fail(5, FailureWitness::Unreachable { vertex });
    }

    Ok(CheckOutcome::Passed(Decomposition {
        v0,
        v1,
        v2,
        circles,
        conditions_checked: [true; 5],
    }))
}

/// A pair `(v, w)` with no path from `v` to `w`, if any.
fn unreachable_pair(g: &Graph) -> Option<(VertexId, VertexId)> {
    let all = g.all_vertices();
    let root = VertexId(0);
    let forward = g.forward_closure(VertexSet::singleton(root));
    if let Some(w) = all.difference(forward).first() {
        return Some((root, w));
    }
    let backward = g.backward_closure(VertexSet::singleton(root));
    all.difference(backward).first().map(|w| (w, root))
}

/// A rejected candidate and why.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct CandidateFailure {
    pub v0: VertexSet,
    pub v1: VertexSet,
    pub v2: VertexSet,
    #[serde(flatten)]
    pub failure: ConditionFailure,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "camelCase")]
pub struct GateVerdict {
    pub covered: bool,
    pub decomposition: Option<Decomposition>,
    /// Number of circles in the quotient's spectrum `X = ⊔ T`; 0 when not
    /// covered.
    pub quotient_circles: usize,
    /// The candidate that got furthest through the conditions, when none
    /// passed.
    pub best_failure: Option<CandidateFailure>,
    pub candidates_examined: usize,
}

/// What a successful decomposition implies about the algebra.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "camelCase")]
pub struct GateConclusion {
    pub dim_nuc: u32,
    pub ideal: String,
    pub quotient: String,
    pub citations: Vec<&'static str>,
}

impl GateVerdict {
    fn search<I>(g: &Graph, candidates: I) -> Result<GateVerdict>
    where
        I: IntoIterator<Item = (VertexSet, VertexSet, VertexSet)>,
    {
        let mut best: Option<CandidateFailure> = None;
        let mut examined = 0;
        for (v0, v1, v2) in candidates {
            examined += 1;
            match check_conditions(g, v0, v1, v2)? {
                CheckOutcome::Passed(d) => {
                    return Ok(GateVerdict {
                        covered: true,
                        quotient_circles: d.circles.len(),
                        decomposition: Some(d),
                        best_failure: None,
                        candidates_examined: examined,
                    })
                }
                CheckOutcome::Failed(failure) => {
                    let better = best
                        .as_ref()
                        .is_none_or(|b| failure.condition > b.failure.condition);
                    if better {
                        best = Some(CandidateFailure {
                            v0,
                            v1,
                            v2,
                            failure,
                        });
                    }
                }
            }
        }
        Ok(GateVerdict {
            covered: false,
            decomposition: None,
            quotient_circles: 0,
            best_failure: best,
            candidates_examined: examined,
        })
    }

    pub fn conclusion(&self) -> Option<GateConclusion> {
        self.decomposition.as_ref().map(|d| GateConclusion {
            dim_nuc: 1,
            ideal: "C*(E_2) (x) K".to_string(),
            quotient: format!("C(T^(+{}))", d.circles.len()),
            citations: vec![
                citations::PROP_WHICH_GRAPH_ALGEBRAS,
                citations::COR_STABLE_QUOTIENT,
                citations::THM_MAIN,
            ],
        })
    }
}

/// Searches `W = V₁ ∪ V₂` over the nonempty saturated hereditary sets in
/// lattice order, with `V₂` the vertices of `W` on cycles of `E_W`.
pub fn decompose(g: &Graph, max_vertices: usize) -> Result<GateVerdict> {
    let lattice = enumerate_sat_her(g, max_vertices)?;
    decompose_with_lattice(g, &lattice)
}

/// [`decompose`] with a precomputed lattice.
///
/// `W = E⁰` is included so that a graph without proper candidates still
/// reports a failure; it always fails condition 1.
pub fn decompose_with_lattice(g: &Graph, lattice: &SatHerLattice) -> Result<GateVerdict> {
    let all = g.all_vertices();
    let mut candidates = Vec::new();
    for &w in lattice.elements.iter().filter(|w| !w.is_empty()) {
        let ew = g.subgraph_over(w)?;
        let v2 = ew.lift_set(cyclic_vertices(&ew.graph));
        candidates.push((all.difference(w), w.difference(v2), v2));
    }
    GateVerdict::search(g, candidates)
}

/// Exhaustive search over all ordered tripartitions, vertex `i` assigned to
/// part `(index / 3^i) % 3`.
pub fn brute_decompose(g: &Graph) -> Result<GateVerdict> {
    let n = g.vertex_count();
    if n > BRUTE_FORCE_MAX_VERTICES {
        return Err(Error::CapExceeded {
            what: "tripartition search",
            vertices: n,
            cap: BRUTE_FORCE_MAX_VERTICES,
        });
    }
    let total = 3usize.pow(n as u32);
    let candidates = (0..total).map(move |mut index| {
        let mut parts = [VertexSet::EMPTY; 3];
        for v in 0..n {
            parts[index % 3].insert(VertexId(v));
            index /= 3;
        }
        (parts[0], parts[1], parts[2])
    });
    GateVerdict::search(g, candidates)
}

/// Elements of the stability family that end at one vertex of `V₂`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "camelCase")]
pub struct StabilityWitness {
    pub vertex: VertexId,
    pub requested_count: usize,
    pub paths: Vec<Path>,
}

/// The first `count` paths `μ` with `r(μ) = vertex` that are either the
/// vertex itself or enter `V₂` only on their last edge, ordered by length
/// and then edge ids.
///
/// Pumping a circle of `V₀` in front of a path into `V₂` makes this family
/// infinite at vertices fed directly from outside `V₂`. A vertex of `V₂`
/// with no edge arriving from outside `V₂` only has the length-0 path, which
/// is reported as [`Error::FiniteWitnessFamily`].
pub fn stability_witness(
    g: &Graph,
    d: &Decomposition,
    vertex: VertexId,
    count: usize,
) -> Result<StabilityWitness> {
    if !d.v2.contains(vertex) {
        return Err(Error::NotInIdealPart(vertex));
    }
    let outside = g.all_vertices().difference(d.v2);
    let mut paths = vec![Path::vertex(vertex)];
    let mut level: Vec<Vec<EdgeId>> = g
        .in_edges(vertex)
        .iter()
        .filter(|&&e| outside.contains(g.edge(e).source))
        .map(|&e| vec![e])
        .collect();
    while paths.len() < count && !level.is_empty() {
        level.sort();
        for edges in &level {
            if paths.len() == count {
                break;
            }
            paths.push(Path::from_edges(g, edges.clone())?);
        }
        level = level
            .iter()
            .flat_map(|edges| {
                let head = g.edge(edges[0]).source;
                g.in_edges(head)
                    .iter()
                    .filter(|&&f| outside.contains(g.edge(f).source))
                    .map(move |&f| {
                        let mut longer = Vec::with_capacity(edges.len() + 1);
                        longer.push(f);
                        longer.extend_from_slice(edges);
                        longer
                    })
            })
            .collect();
    }
    paths.truncate(count);
    if paths.len() < count {
        return Err(Error::FiniteWitnessFamily {
            vertex,
            available: paths.len(),
            requested: count,
        });
    }
    Ok(StabilityWitness {
        vertex,
        requested_count: count,
        paths,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::closure::DEFAULT_MAX_VERTICES;
    use crate::graph::parse_graph;

    fn g(text: &str) -> Graph {
        parse_graph(text).unwrap()
    }

    fn set(v: &[usize]) -> VertexSet {
        VertexSet::from_indices(v.iter().copied())
    }

    /// Loop at 0, two loops at 1, edge 0→1.
    const K1: &str = "vertices 2\nedge 0 0\nedge 1 1\nedge 1 1\nedge 0 1";
    /// Loops at 0 and 1, edge 0→1.
    const U1: &str = "vertices 2\nedge 0 0\nedge 1 1\nedge 0 1";
    const TOEPLITZ: &str = "vertices 2\nedge 0 0\nedge 0 1";
    const O2: &str = "vertices 1\nedge 0 0\nedge 0 0";
    const LOOP1: &str = "vertices 1\nedge 0 0";

    #[test]
    fn k1_passes_all_conditions() {
        let k1 = g(K1);
        let outcome = check_conditions(&k1, set(&[0]), VertexSet::EMPTY, set(&[1])).unwrap();
        let d = outcome.decomposition().expect("K1 decomposes");
        assert_eq!(d.conditions_checked, [true; 5]);
        assert_eq!(d.circles.lengths(), vec![1]);
        assert_eq!(d.circles.union(), set(&[0]));
    }

    #[test]
    fn k1_swapped_reports_first_failure() {
        // E_{0} is a simple cycle, so (3) is violated, but E_{1} (two loops)
        // carries no exitless circle and (1) is reported first.
        let k1 = g(K1);
        let f = check_conditions(&k1, set(&[1]), VertexSet::EMPTY, set(&[0]))
            .unwrap()
            .failure()
            .unwrap();
        assert_eq!(f.condition, 1);
        assert_eq!(f.witness, FailureWitness::NoCircles);
        let e2 = k1.subgraph_over(set(&[0])).unwrap();
        assert!(is_simple_cycle_graph(&e2.graph).is_some());
    }

    #[test]
    fn circle_as_ideal_fails_condition_3() {
        let f = check_conditions(&g(U1), set(&[0]), VertexSet::EMPTY, set(&[1]))
            .unwrap()
            .failure()
            .unwrap();
        assert_eq!(f.condition, 3);
        match f.witness {
            FailureWitness::SimpleCycle { cycle } => assert_eq!(cycle.edges(), &[EdgeId(1)]),
            other => panic!("unexpected witness {other:?}"),
        }
    }

    #[test]
    fn toeplitz_never_passes() {
        let t = g(TOEPLITZ);
        let f = check_conditions(&t, set(&[0]), VertexSet::EMPTY, set(&[1]))
            .unwrap()
            .failure()
            .unwrap();
        assert_eq!(f.condition, 3);
        assert_eq!(f.witness, FailureWitness::NoEdges);

        for index in 0..9usize {
            let mut parts = [VertexSet::EMPTY; 3];
            parts[index % 3].insert(VertexId(0));
            parts[(index / 3) % 3].insert(VertexId(1));
            if parts[2].is_empty() {
                continue;
            }
            let f = check_conditions(&t, parts[0], parts[1], parts[2])
                .unwrap()
                .failure()
                .expect("no partition of the Toeplitz graph passes");
            assert!(f.condition == 1 || f.condition == 3, "{parts:?} {f:?}");
        }
    }

    #[test]
    fn rejects_non_partitions() {
        let k1 = g(K1);
        assert_eq!(
            check_conditions(&k1, set(&[0]), set(&[0]), set(&[1])).unwrap_err(),
            Error::NotAPartition(2)
        );
        assert!(check_conditions(&k1, set(&[0]), VertexSet::EMPTY, VertexSet::EMPTY).is_err());
    }

    #[test]
    fn condition_4_and_5_witnesses() {
        // K1 plus an edge back from V₂ into V₀
        let back = g("vertices 2\nedge 0 0\nedge 1 1\nedge 1 1\nedge 0 1\nedge 1 0");
        let f = check_conditions(&back, set(&[0]), VertexSet::EMPTY, set(&[1]))
            .unwrap()
            .failure()
            .unwrap();
        assert_eq!(f.condition, 4);
        match f.witness {
            FailureWitness::BackwardPath { from_part, to_part, path } => {
                assert_eq!((from_part, to_part), (2, 0));
                assert!(path.is_valid_in(&back));
            }
            other => panic!("unexpected witness {other:?}"),
        }

        // circle at 0 that never reaches the Kirchberg block at 1
        let apart = g("vertices 2\nedge 0 0\nedge 1 1\nedge 1 1");
        let f = check_conditions(&apart, set(&[0]), VertexSet::EMPTY, set(&[1]))
            .unwrap()
            .failure()
            .unwrap();
        assert_eq!(f.condition, 5);
        assert_eq!(f.witness, FailureWitness::Unreachable { vertex: VertexId(0) });
    }

    #[test]
    fn decompose_examples() {
        let v = decompose(&g(K1), DEFAULT_MAX_VERTICES).unwrap();
        assert!(v.covered);
        let d = v.decomposition.as_ref().unwrap();
        assert_eq!((d.v0, d.v1, d.v2), (set(&[0]), VertexSet::EMPTY, set(&[1])));
        assert_eq!(v.quotient_circles, 1);
        let c = v.conclusion().unwrap();
        assert_eq!(c.dim_nuc, 1);
        assert_eq!(c.quotient, "C(T^(+1))");

        let o2 = decompose(&g(O2), DEFAULT_MAX_VERTICES).unwrap();
        assert!(!o2.covered);
        assert_eq!(o2.best_failure.unwrap().failure.condition, 1);

        let u1 = decompose(&g(U1), DEFAULT_MAX_VERTICES).unwrap();
        assert!(!u1.covered);
        let best = u1.best_failure.unwrap();
        assert_eq!(best.failure.condition, 3);
        assert_eq!(best.v2, set(&[1]));
    }

    #[test]
    fn brute_examples() {
        let k1 = brute_decompose(&g(K1)).unwrap();
        assert!(k1.covered);
        let d = k1.decomposition.unwrap();
        assert_eq!((d.v0, d.v1, d.v2), (set(&[0]), VertexSet::EMPTY, set(&[1])));
        assert!(!brute_decompose(&g(U1)).unwrap().covered);
        assert!(!brute_decompose(&g(LOOP1)).unwrap().covered);
        let seven = Graph::new(7, []).unwrap();
        assert!(brute_decompose(&seven).unwrap_err().is_cap_error());
    }

    #[test]
    fn witness_examples() {
        let k1 = g(K1);
        let d = decompose(&k1, DEFAULT_MAX_VERTICES).unwrap().decomposition.unwrap();
        let w = stability_witness(&k1, &d, VertexId(1), 3).unwrap();
        assert_eq!(w.paths[0], Path::vertex(VertexId(1)));
        assert_eq!(w.paths[1].edges(), &[EdgeId(3)]);
        assert_eq!(w.paths[2].edges(), &[EdgeId(0), EdgeId(3)]);

        let one = stability_witness(&k1, &d, VertexId(1), 1).unwrap();
        assert_eq!(one.paths, vec![Path::vertex(VertexId(1))]);

        assert_eq!(
            stability_witness(&k1, &d, VertexId(0), 2).unwrap_err(),
            Error::NotInIdealPart(VertexId(0))
        );
    }

    #[test]
    fn witness_family_can_be_finite() {
        // circle 0 feeds 1; {1,2} is the Kirchberg block and 2 is only entered
        // from inside it.
        let h = g("vertices 3\nedge 0 0\nedge 0 1\nedge 1 2\nedge 2 1\nedge 1 1");
        let d = decompose(&h, DEFAULT_MAX_VERTICES).unwrap().decomposition.unwrap();
        assert_eq!(d.v2, set(&[1, 2]));
        assert!(stability_witness(&h, &d, VertexId(1), 50).is_ok());
        assert_eq!(
            stability_witness(&h, &d, VertexId(2), 2).unwrap_err(),
            Error::FiniteWitnessFamily {
                vertex: VertexId(2),
                available: 1,
                requested: 2
            }
        );
    }
}
