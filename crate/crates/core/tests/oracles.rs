//! Cross-checks of the library against independent brute-force oracles over
//! the census space (at most 3 vertices, multiplicity at most 2).

use graphalg_core::census::{enumerate, EnumSpec};
use graphalg_core::classify::{algebra_kind, simplicity, AlgebraKind};
use graphalg_core::closure::{enumerate_sat_her, hereditary_closure, saturation, saturation_formula};
use graphalg_core::cycles::{classify_cycles, condition_k, condition_l, CycleKind};
use graphalg_core::dimnuc::{single_ideal_table, verdict_with, Route, Status, TableCell};
use graphalg_core::gate::{brute_decompose, check_conditions, decompose_with_lattice, stability_witness};
use graphalg_core::{EdgeId, Error, Graph, VertexId, VertexSet};

fn census_graphs() -> Vec<Graph> {
    enumerate(&EnumSpec::new(3, 2)).unwrap().collect()
}

/// Every simple cycle as an edge list, each found once (rooted at its
/// smallest vertex).
fn simple_cycles(g: &Graph) -> Vec<Vec<EdgeId>> {
    fn extend(g: &Graph, root: usize, at: usize, seen: &mut Vec<bool>, path: &mut Vec<EdgeId>, out: &mut Vec<Vec<EdgeId>>) {
        for &e in g.out_edges(VertexId(at)) {
            let r = g.edge(e).range.index();
            if r == root {
                path.push(e);
                out.push(path.clone());
                path.pop();
            } else if r > root && !seen[r] {
                seen[r] = true;
                path.push(e);
                extend(g, root, r, seen, path, out);
                path.pop();
                seen[r] = false;
            }
        }
    }
    let mut out = Vec::new();
    for root in 0..g.vertex_count() {
        let mut seen = vec![false; g.vertex_count()];
        seen[root] = true;
        extend(g, root, root, &mut seen, &mut Vec::new(), &mut out);
    }
    out
}

/// Some vertex on the cycle emits an edge other than the cycle's own.
fn cycle_has_exit(g: &Graph, cycle: &[EdgeId]) -> bool {
    cycle.iter().any(|&e| {
        let s = g.edge(e).source;
        g.out_edges(s).iter().any(|&f| f != e)
    })
}

/// Walks `v → … → v` of length at most `max_len` that do not pass through
/// `v` in between.
fn first_returns(g: &Graph, v: VertexId, max_len: usize) -> usize {
    fn go(g: &Graph, v: VertexId, at: VertexId, left: usize) -> usize {
        if left == 0 {
            return 0;
        }
        g.out_edges(at)
            .iter()
            .map(|&e| {
                let r = g.edge(e).range;
                if r == v {
                    1
                } else {
                    go(g, v, r, left - 1)
                }
            })
            .sum()
    }
    go(g, v, v, max_len)
}

fn hereditary_by_edges(g: &Graph, v: VertexSet) -> bool {
    g.edges().iter().all(|e| !v.contains(e.source) || v.contains(e.range))
}

fn saturated_by_edges(g: &Graph, v: VertexSet) -> bool {
    g.vertices().all(|w| {
        let out: Vec<_> = g.edges().iter().filter(|e| e.source == w).collect();
        v.contains(w) || out.is_empty() || out.iter().any(|e| !v.contains(e.range))
    })
}

#[test]
fn cycle_classes_match_cycle_enumeration() {
    for g in census_graphs() {
        let cycles = simple_cycles(&g);
        let expected = if cycles.is_empty() {
            CycleKind::NoCycle
        } else if cycles.iter().any(|c| cycle_has_exit(&g, c)) {
            CycleKind::CycleWithExit
        } else {
            CycleKind::CycleWithoutExit
        };
        assert_eq!(classify_cycles(&g).kind, expected, "{}", g.to_text());
        let l = cycles.iter().all(|c| cycle_has_exit(&g, c));
        assert_eq!(condition_l(&g), l, "{}", g.to_text());
    }
}

#[test]
fn condition_k_matches_return_path_count() {
    for g in census_graphs() {
        let n = g.vertex_count();
        let on_cycle: VertexSet = simple_cycles(&g)
            .iter()
            .flatten()
            .map(|&e| g.edge(e).source)
            .collect();
        let k = on_cycle.iter().all(|v| first_returns(&g, v, 2 * n) >= 2);
        assert_eq!(condition_k(&g), k, "{}", g.to_text());
        assert!(!k || condition_l(&g));
    }
}

#[test]
fn simple_cycle_counting_is_not_condition_k() {
    // v=0 lies on one simple cycle but has two first-return paths
    let g = Graph::new(3, [(0, 1), (1, 0), (1, 2), (2, 1)]).unwrap();
    let through_0 = simple_cycles(&g)
        .iter()
        .filter(|c| c.iter().any(|&e| g.edge(e).source == VertexId(0)))
        .count();
    assert_eq!(through_0, 1);
    assert!(first_returns(&g, VertexId(0), 6) >= 2);
    assert!(condition_k(&g));
}

#[test]
fn lattice_matches_definitions() {
    for g in census_graphs() {
        let n = g.vertex_count();
        let lattice = enumerate_sat_her(&g, n).unwrap();
        let mut expected: Vec<VertexSet> = (0..1u64 << n)
            .map(VertexSet::from_bits)
            .filter(|&v| hereditary_by_edges(&g, v) && saturated_by_edges(&g, v))
            .collect();
        expected.sort_by_key(|v| v.lattice_key());
        assert_eq!(lattice.elements, expected, "{}", g.to_text());

        let mut covers = Vec::new();
        for (i, &a) in expected.iter().enumerate() {
            for (j, &b) in expected.iter().enumerate() {
                let strictly = |x: VertexSet, y: VertexSet| x != y && x.is_subset(y);
                if strictly(a, b) && !expected.iter().any(|&c| strictly(a, c) && strictly(c, b)) {
                    covers.push((i, j));
                }
            }
        }
        assert_eq!(lattice.covers, covers, "{}", g.to_text());
    }
}

#[test]
fn path_formula_matches_fixpoint() {
    let mut checked = 0;
    for g in census_graphs().into_iter().filter(|g| g.has_no_sinks()) {
        let n = g.vertex_count();
        for bits in 0..1u64 << n {
            let v = VertexSet::from_bits(bits);
            let formula = saturation_formula(&g, v).unwrap();
            assert!(formula.is_subset(saturation(&g, v)));
            if hereditary_closure(&g, v) == v {
                assert_eq!(formula, saturation(&g, v), "{} {v}", g.to_text());
                checked += 1;
            }
        }
    }
    assert!(checked > 1000);
}

#[test]
fn decomposition_search_matches_exhaustive_search() {
    for g in census_graphs() {
        let n = g.vertex_count();
        let lattice = enumerate_sat_her(&g, n).unwrap();
        let fast = decompose_with_lattice(&g, &lattice).unwrap();
        let slow = brute_decompose(&g).unwrap();
        assert_eq!(fast.covered, slow.covered, "{}", g.to_text());
        assert_eq!(fast.covered, fast.decomposition.is_some());
        for d in fast.decomposition.iter().chain(slow.decomposition.iter()) {
            assert!(check_conditions(&g, d.v0, d.v1, d.v2).unwrap().passed());
        }
        if let Some(d) = fast.decomposition {
            let w = d.v1.union(d.v2);
            assert!(lattice.index_of(w).is_some(), "V1 ∪ V2 is saturated hereditary");
            let e2 = g.subgraph_over(d.v2).unwrap();
            for v in e2.graph.vertices() {
                assert!(e2.graph.shortest_cycle_through(v, e2.graph.all_vertices()).is_some());
            }
            let mut seen = VertexSet::EMPTY;
            for c in &d.circles.circles {
                assert!(seen.is_disjoint(c.vertices));
                seen = seen.union(c.vertices);
                assert_eq!(c.vertices.len(), c.length);
            }
            assert_eq!(fast.quotient_circles, d.circles.len());
        }
    }
}

/// Some path outside V₂ into `vertex` can be pumped around a cycle.
fn family_is_infinite(g: &Graph, v2: VertexSet, vertex: VertexId) -> bool {
    let outside = g.all_vertices().difference(v2);
    let sources: VertexSet = g
        .in_edges(vertex)
        .iter()
        .map(|&e| g.edge(e).source)
        .filter(|&s| outside.contains(s))
        .collect();
    let sub = g.subgraph_over(outside).unwrap();
    let upstream = sub.graph.backward_closure(sub.local_set(sources));
    upstream
        .iter()
        .any(|u| sub.graph.shortest_cycle_through(u, upstream).is_some())
}

#[test]
fn stability_witnesses() {
    for g in census_graphs() {
        let Some(d) = brute_decompose(&g).unwrap().decomposition else {
            continue;
        };
        for vertex in d.v2.iter() {
            match stability_witness(&g, &d, vertex, 64) {
                Ok(w) => {
                    assert!(family_is_infinite(&g, d.v2, vertex), "{}", g.to_text());
                    assert_eq!(w.paths.len(), 64);
                    assert!(w.paths[0].is_vertex());
                    for (i, p) in w.paths.iter().enumerate() {
                        assert!(p.is_valid_in(&g) && p.range() == vertex);
                        if let Some(&last) = p.edges().last() {
                            assert!(!d.v2.contains(g.edge(last).source));
                        }
                        assert!(w.paths[..i].iter().all(|q| q != p));
                    }
                }
                Err(Error::FiniteWitnessFamily { .. }) => {
                    assert!(!family_is_infinite(&g, d.v2, vertex), "{}", g.to_text());
                }
                Err(e) => panic!("{e}"),
            }
        }
        for vertex in d.v0.union(d.v1).iter() {
            assert!(stability_witness(&g, &d, vertex, 1).is_err());
        }
    }
}

#[test]
fn gate_and_table_agree() {
    let mut both = 0;
    for g in census_graphs() {
        let n = g.vertex_count();
        let lattice = enumerate_sat_her(&g, n).unwrap();
        let gate = decompose_with_lattice(&g, &lattice).unwrap();
        if !gate.covered || lattice.len() != 3 {
            continue;
        }
        both += 1;
        let w = lattice.elements[1];
        let e1 = g.subgraph_over(w).unwrap();
        let e0 = g.subgraph_over(g.all_vertices().difference(w)).unwrap();
        let t = single_ideal_table(&classify_cycles(&e0.graph), &classify_cycles(&e1.graph));
        assert_eq!(
            t.cell,
            TableCell {
                quotient: CycleKind::CycleWithoutExit,
                ideal: CycleKind::CycleWithExit
            },
            "{}",
            g.to_text()
        );
        assert_eq!(t.estimate.and_then(|e| e.value()), Some(1));
    }
    assert!(both > 0);
}

#[test]
fn verdicts_are_consistent() {
    for g in census_graphs() {
        let n = g.vertex_count();
        let lattice = enumerate_sat_her(&g, n).unwrap();
        let gate = decompose_with_lattice(&g, &lattice).unwrap();
        let v = verdict_with(&g, &lattice, &gate).unwrap();
        let est = v.estimate;
        assert!(graphalg_core::dimnuc::Bound::Finite(est.lower) <= est.upper);
        assert!(!v.citations.is_empty());
        match est.status {
            Status::Exact => {
                assert!(est.exact && est.lower <= 1, "{}", g.to_text());
            }
            Status::Open => {
                assert_eq!(v.route, Route::SingleIdealTable);
                let upper = est.upper.finite().expect("open cells have finite bounds");
                let line = format!("dim(J)+dim(B)+1 = {upper}");
                assert!(v.trace.iter().any(|l| l.contains(&line)));
            }
            Status::BoundOnly => assert_eq!(v.route, Route::CompositionBound),
        }
    }
}

#[test]
fn class_simplicity_relations() {
    for g in census_graphs() {
        match algebra_kind(&g) {
            AlgebraKind::Kirchberg => assert!(simplicity(&g), "{}", g.to_text()),
            AlgebraKind::SimpleCycle { .. } | AlgebraKind::StablyCircles { .. } => {
                assert!(!simplicity(&g))
            }
            AlgebraKind::Af => assert!(condition_l(&g)),
            AlgebraKind::Mixed => {}
        }
    }
}
