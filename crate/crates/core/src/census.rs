//! Exhaustive enumeration of small multigraphs and the census run.
//!
//! Stratum `n` holds `(m+1)^(n²)` graphs. Index `i` in a stratum is read as
//! `n²` base-`(m+1)` digits, most significant first, giving the row-major
//! multiplicity matrix; edges are added in row-major order. The encoding
//! `"n:digits"` names a graph uniquely.

use std::collections::BTreeMap;
use std::ops::Range;

use rayon::prelude::*;
use serde::Serialize;

use crate::classify::algebra_kind;
use crate::closure::enumerate_sat_her;
use crate::dimnuc::{verdict_with, QuestionSummary, Status};
use crate::error::{Error, Result};
use crate::gate::{brute_decompose, check_conditions, decompose_with_lattice, BRUTE_FORCE_MAX_VERTICES};
use crate::graph::Graph;

/// Largest search space [`enumerate`] and [`run_census`] accept.
pub const SEARCH_SPACE_LIMIT: u128 = 100_000_000;

/// Multiplicities are encoded as single decimal digits.
pub const MAX_MULTIPLICITY: usize = 9;

const CHUNK: u64 = 2048;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "camelCase")]
pub struct EnumSpec {
    pub max_vertices: usize,
    pub max_multiplicity: usize,
    pub dedup_isomorphic: bool,
    /// Smallest stratum enumerated; 1 for the full census.
    pub min_vertices: usize,
}

impl EnumSpec {
    pub fn new(max_vertices: usize, max_multiplicity: usize) -> Self {
        EnumSpec {
            max_vertices,
            max_multiplicity,
            dedup_isomorphic: false,
            min_vertices: 1,
        }
    }

    pub fn dedup(mut self, on: bool) -> Self {
        self.dedup_isomorphic = on;
        self
    }

    pub fn min_vertices(mut self, n: usize) -> Self {
        self.min_vertices = n;
        self
    }

    fn validate(&self) -> Result<()> {
        if self.max_vertices == 0 {
            return Err(Error::InvalidEnumSpec("maxVertices must be at least 1".into()));
        }
        if self.max_multiplicity == 0 || self.max_multiplicity > MAX_MULTIPLICITY {
            return Err(Error::InvalidEnumSpec(format!(
                "maxMultiplicity must be between 1 and {MAX_MULTIPLICITY}"
            )));
        }
        if self.min_vertices == 0 || self.min_vertices > self.max_vertices {
            return Err(Error::InvalidEnumSpec(
                "minVertices must be between 1 and maxVertices".into(),
            ));
        }
        let size = self.search_space();
        if size > SEARCH_SPACE_LIMIT {
            return Err(Error::SearchSpaceTooLarge {
                size,
                limit: SEARCH_SPACE_LIMIT,
            });
        }
        Ok(())
    }

    /// Raw (undeduplicated) number of graphs, saturating at `u128::MAX`.
    pub fn search_space(&self) -> u128 {
        (self.min_vertices..=self.max_vertices)
            .map(|n| stratum_size(n, self.max_multiplicity))
            .fold(0u128, |a, b| a.saturating_add(b))
    }

    fn strata(&self) -> impl Iterator<Item = usize> + use<> {
        self.min_vertices..=self.max_vertices
    }
}

fn stratum_size(n: usize, m: usize) -> u128 {
    let exp = (n * n) as u32;
    (m as u128 + 1).checked_pow(exp).unwrap_or(u128::MAX)
}

/// Row-major multiplicity matrix of stratum `n`, index `i`.
fn matrix(n: usize, m: usize, mut index: u64) -> Vec<u8> {
    let base = m as u64 + 1;
    let mut digits = vec![0u8; n * n];
    for d in digits.iter_mut().rev() {
        *d = (index % base) as u8;
        index /= base;
    }
    digits
}

fn graph_of(n: usize, digits: &[u8]) -> Graph {
    let pairs = digits.iter().enumerate().flat_map(|(k, &mult)| {
        std::iter::repeat_n((k / n, k % n), mult as usize)
    });
    Graph::new(n, pairs).expect("census graphs are in range")
}

/// Row-major multiplicity matrix of any graph.
pub fn multiplicity_matrix(g: &Graph) -> Vec<u8> {
    let n = g.vertex_count();
    let mut digits = vec![0u8; n * n];
    for e in g.edges() {
        let k = e.source.index() * n + e.range.index();
        digits[k] = digits[k].saturating_add(1);
    }
    digits
}

/// `"n:digits"`; multiplicities above 9 are written as `9`.
pub fn encoding(g: &Graph) -> String {
    encode(g.vertex_count(), &multiplicity_matrix(g))
}

fn encode(n: usize, digits: &[u8]) -> String {
    let body: String = digits
        .iter()
        .map(|&d| char::from(b'0' + d.min(9)))
        .collect();
    format!("{n}:{body}")
}

/// Parses an encoding back into a graph.
pub fn decode(text: &str) -> Result<Graph> {
    let bad = |message: &str| Error::Parse {
        line: 1,
        message: format!("bad graph encoding {text:?}: {message}"),
    };
    let (n, body) = text.split_once(':').ok_or_else(|| bad("missing ':'"))?;
    let n: usize = n.parse().map_err(|_| bad("vertex count"))?;
    if n == 0 || body.len() != n * n {
        return Err(bad("length does not match vertex count"));
    }
    let digits: Vec<u8> = body
        .bytes()
        .map(|b| if b.is_ascii_digit() { Ok(b - b'0') } else { Err(bad("non-digit")) })
        .collect::<Result<_>>()?;
    Ok(graph_of(n, &digits))
}

/// All permutations of `0..n` in lexicographic order.
fn permutations(n: usize) -> Vec<Vec<usize>> {
    let mut out = Vec::new();
    let mut p: Vec<usize> = (0..n).collect();
    loop {
        out.push(p.clone());
        let Some(i) = (1..n).rev().find(|&i| p[i - 1] < p[i]) else {
            return out;
        };
        let j = (i..n).rev().find(|&j| p[j] > p[i - 1]).expect("pivot has a successor");
        p.swap(i - 1, j);
        p[i..].reverse();
    }
}

fn permuted(n: usize, digits: &[u8], perm: &[usize]) -> Vec<u8> {
    let mut out = vec![0u8; n * n];
    for i in 0..n {
        for j in 0..n {
            out[perm[i] * n + perm[j]] = digits[i * n + j];
        }
    }
    out
}

/// Lexicographically least multiplicity matrix over all relabelings.
pub fn canonical_matrix(g: &Graph) -> Vec<u8> {
    let n = g.vertex_count();
    let digits = multiplicity_matrix(g);
    permutations(n)
        .iter()
        .map(|p| permuted(n, &digits, p))
        .min()
        .expect("at least the identity permutation")
}

fn is_canonical(n: usize, digits: &[u8], perms: &[Vec<usize>]) -> bool {
    perms.iter().all(|p| permuted(n, digits, p).as_slice() >= digits)
}

/// Graphs of one stratum over an index range, filtered for canonicity when
/// deduplicating.
fn stratum_range(
    spec: EnumSpec,
    n: usize,
    range: Range<u64>,
    perms: &[Vec<usize>],
) -> impl Iterator<Item = (String, Graph)> + use<> {
    let m = spec.max_multiplicity;
    let perms = perms.to_vec();
    range.filter_map(move |i| {
        let digits = matrix(n, m, i);
        if spec.dedup_isomorphic && !is_canonical(n, &digits, &perms) {
            return None;
        }
        Some((encode(n, &digits), graph_of(n, &digits)))
    })
}

/// Every graph of the spec in stratum order, then index order.
pub fn enumerate(spec: &EnumSpec) -> Result<impl Iterator<Item = Graph> + use<>> {
    spec.validate()?;
    let spec = *spec;
    Ok(spec.strata().flat_map(move |n| {
        let size = stratum_size(n, spec.max_multiplicity) as u64;
        let perms = if spec.dedup_isomorphic { permutations(n) } else { Vec::new() };
        stratum_range(spec, n, 0..size, &perms).map(|(_, g)| g)
    }))
}

#[derive(Clone, Debug, Default, PartialEq, Serialize)]
#[serde(rename_all = "camelCase")]
pub struct StratumStats {
    pub total: u64,
    pub gate_covered: u64,
    pub open: u64,
}

#[derive(Clone, Debug, Default, PartialEq, Serialize)]
#[serde(rename_all = "camelCase")]
pub struct CensusStats {
    pub total: u64,
    pub by_class: BTreeMap<String, u64>,
    pub gate_covered: u64,
    pub open: u64,
    pub bound_only: u64,
    pub exact0: u64,
    pub exact1: u64,
    /// Encodings of graphs with an exact value of 2 or more.
    pub exact_ge2: Vec<String>,
    /// Encodings where the lattice search and the exhaustive search disagree,
    /// or a returned decomposition fails the condition check.
    pub oracle_disagreements: Vec<String>,
    pub per_stratum: BTreeMap<usize, StratumStats>,
    pub question: QuestionSummary,
}

impl CensusStats {
    /// Commutative merge; list fields are kept sorted.
    pub fn merge(&mut self, other: CensusStats) {
        self.total += other.total;
        for (k, v) in other.by_class {
            *self.by_class.entry(k).or_default() += v;
        }
        self.gate_covered += other.gate_covered;
        self.open += other.open;
        self.bound_only += other.bound_only;
        self.exact0 += other.exact0;
        self.exact1 += other.exact1;
        self.exact_ge2.extend(other.exact_ge2);
        self.exact_ge2.sort();
        self.oracle_disagreements.extend(other.oracle_disagreements);
        self.oracle_disagreements.sort();
        for (n, s) in other.per_stratum {
            let e = self.per_stratum.entry(n).or_default();
            e.total += s.total;
            e.gate_covered += s.gate_covered;
            e.open += s.open;
        }
        self.question.merge(&other.question);
    }

    pub fn passed(&self) -> bool {
        self.oracle_disagreements.is_empty() && self.exact_ge2.is_empty()
    }

    fn record(&mut self, code: String, g: &Graph) -> Result<()> {
        let n = g.vertex_count();
        let lattice = enumerate_sat_her(g, n)?;
        let gate = decompose_with_lattice(g, &lattice)?;

        if let Some(d) = &gate.decomposition {
            if !check_conditions(g, d.v0, d.v1, d.v2)?.passed() {
                self.oracle_disagreements.push(format!("{code} unsound"));
            }
        }
        if n <= BRUTE_FORCE_MAX_VERTICES && brute_decompose(g)?.covered != gate.covered {
            self.oracle_disagreements.push(code.clone());
        }

        let kind = algebra_kind(g);
        *self.by_class.entry(kind.name().to_string()).or_default() += 1;

        let verdict = verdict_with(g, &lattice, &gate)?;
        self.question.record(&verdict);
        let stratum = self.per_stratum.entry(n).or_default();
        stratum.total += 1;
        self.total += 1;
        if gate.covered {
            self.gate_covered += 1;
            stratum.gate_covered += 1;
        }
        match (verdict.estimate.status, verdict.estimate.value()) {
            (Status::Exact, Some(0)) => self.exact0 += 1,
            (Status::Exact, Some(1)) => self.exact1 += 1,
            (Status::Exact, _) => self.exact_ge2.push(code),
            (Status::Open, _) => {
                self.open += 1;
                stratum.open += 1;
            }
            (Status::BoundOnly, _) => self.bound_only += 1,
        }
        Ok(())
    }
}

/// Runs the pipeline on every graph of the spec using `workers` threads.
/// The result does not depend on `workers`.
pub fn run_census(spec: &EnumSpec, workers: usize) -> Result<CensusStats> {
    spec.validate()?;
    let mut chunks = Vec::new();
    for n in spec.strata() {
        let size = stratum_size(n, spec.max_multiplicity) as u64;
        let mut start = 0;
        while start < size {
            let end = (start + CHUNK).min(size);
            chunks.push((n, start..end));
            start = end;
        }
    }
    let perms: BTreeMap<usize, Vec<Vec<usize>>> = spec
        .strata()
        .map(|n| (n, if spec.dedup_isomorphic { permutations(n) } else { Vec::new() }))
        .collect();

    let pool = rayon::ThreadPoolBuilder::new()
        .num_threads(workers.max(1))
        .build()
        .map_err(|e| Error::InvalidEnumSpec(format!("thread pool: {e}")))?;
    pool.install(|| {
        chunks
            .into_par_iter()
            .map(|(n, range)| {
                let mut stats = CensusStats::default();
                for (code, g) in stratum_range(*spec, n, range, &perms[&n]) {
                    stats.record(code, &g)?;
                }
                Ok(stats)
            })
            .try_reduce(CensusStats::default, |mut a, b| {
                a.merge(b);
                Ok(a)
            })
    })
}

/// Relabels `g` by `perm` (vertex `v` becomes `perm[v]`), keeping edge order.
pub fn relabel(g: &Graph, perm: &[usize]) -> Result<Graph> {
    Graph::new(
        g.vertex_count(),
        g.edges()
            .iter()
            .map(|e| (perm[e.source.index()], perm[e.range.index()])),
    )
}

/// Whether `v` is a valid vertex permutation of `0..n`.
pub fn is_permutation(perm: &[usize]) -> bool {
    let mut seen = vec![false; perm.len()];
    perm.iter().all(|&p| p < perm.len() && !std::mem::replace(&mut seen[p], true))
}
