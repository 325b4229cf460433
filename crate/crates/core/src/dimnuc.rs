//! Nuclear-dimension verdicts assembled from cited building-block values.
//!
//! Nothing is computed analytically: every exact value is a constant with a
//! citation key, and the only arithmetic is the extension inequality
//! `dim(A) ≤ dim(J) + dim(A/J) + 1` together with `dim(A) ≥ max(dim(J), dim(A/J))`.

use std::fmt;

use serde::{Serialize, Serializer};

use crate::citations;
use crate::classify::{algebra_kind, simplicity, AlgebraKind};
use crate::closure::{enumerate_sat_her, SatHerLattice};
use crate::cycles::{classify_cycles, cycles_without_exit_family, has_cycle, CycleClass, CycleKind};
use crate::error::Result;
use crate::gate::{decompose_with_lattice, GateVerdict};
use crate::graph::{Graph, VertexSet};

/// An upper bound that may be infinite.
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum Bound {
    Finite(u32),
    Infinite,
}

impl Bound {
    pub fn finite(self) -> Option<u32> {
        match self {
            Bound::Finite(n) => Some(n),
            Bound::Infinite => None,
        }
    }
}

impl fmt::Display for Bound {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Bound::Finite(n) => write!(f, "{n}"),
            Bound::Infinite => f.write_str("inf"),
        }
    }
}

impl Serialize for Bound {
    fn serialize<S: Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        match self {
            Bound::Finite(n) => s.serialize_u32(*n),
            Bound::Infinite => s.serialize_str("inf"),
        }
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize)]
pub enum Status {
    Exact,
    Open,
    BoundOnly,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize)]
pub struct DimEstimate {
    pub lower: u32,
    pub upper: Bound,
    pub exact: bool,
    pub status: Status,
}

impl DimEstimate {
    pub fn exact(value: u32) -> Self {
        DimEstimate {
            lower: value,
            upper: Bound::Finite(value),
            exact: true,
            status: Status::Exact,
        }
    }

    fn range(lower: u32, upper: Bound, status: Status) -> Self {
        debug_assert!(Bound::Finite(lower) <= upper);
        DimEstimate {
            lower,
            upper,
            exact: false,
            status,
        }
    }

    /// The exact value, if known.
    pub fn value(&self) -> Option<u32> {
        self.exact.then_some(self.lower)
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize)]
pub enum Route {
    Gate,
    PureClass,
    SingleIdealTable,
    CompositionBound,
}

/// Position in the table: the quotient graph `E₀` picks the row, the ideal
/// graph `E₁` the column.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize)]
pub struct TableCell {
    pub quotient: CycleKind,
    pub ideal: CycleKind,
}

/// One table entry: a value with its citation, or an open question.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "camelCase")]
pub struct TableEntry {
    pub value: Option<u32>,
    pub citation: Option<&'static str>,
    pub supporting: Option<&'static str>,
}

impl TableEntry {
    const fn known(value: u32, citation: &'static str) -> Self {
        TableEntry {
            value: Some(value),
            citation: Some(citation),
            supporting: None,
        }
    }

    const OPEN: TableEntry = TableEntry {
        value: None,
        citation: None,
        supporting: None,
    };

    /// `1 [FS23]`, `?`, `1 [GT22; BW19]`.
    pub fn rendered(&self) -> String {
        match (self.value, self.citation, self.supporting) {
            (Some(v), Some(c), Some(s)) => format!("{v} [{c}; {s}]"),
            (Some(v), Some(c), None) => format!("{v} [{c}]"),
            (Some(v), None, _) => v.to_string(),
            (None, ..) => "?".to_string(),
        }
    }
}

/// Row and column order of the table.
pub const TABLE_ORDER: [CycleKind; 3] = [
    CycleKind::CycleWithExit,
    CycleKind::CycleWithoutExit,
    CycleKind::NoCycle,
];

/// `TABLE[row][column]` with rows and columns in [`TABLE_ORDER`].
pub const TABLE: [[TableEntry; 3]; 3] = [
    [
        TableEntry::known(1, citations::FS23),
        TableEntry::OPEN,
        TableEntry::known(1, citations::FS23),
    ],
    [
        TableEntry::known(1, citations::COR_STABLE_QUOTIENT),
        TableEntry::OPEN,
        TableEntry {
            value: Some(1),
            citation: Some(citations::GT22),
            supporting: Some(citations::BW19),
        },
    ],
    [
        TableEntry::known(1, citations::RSS15),
        TableEntry::known(1, citations::WZ10),
        TableEntry::known(0, citations::WZ10),
    ],
];

fn table_index(kind: CycleKind) -> usize {
    TABLE_ORDER
        .iter()
        .position(|&k| k == kind)
        .expect("every cycle kind has a row")
}

pub fn table_entry(cell: TableCell) -> TableEntry {
    TABLE[table_index(cell.quotient)][table_index(cell.ideal)]
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct TableOutcome {
    pub cell: TableCell,
    pub estimate: Option<DimEstimate>,
    pub citations: Vec<&'static str>,
}

/// Looks up the cell for the cycle classes of `E₀` (quotient) and `E₁`
/// (ideal). Open cells return no estimate and no citation.
pub fn single_ideal_table(e0: &CycleClass, e1: &CycleClass) -> TableOutcome {
    let cell = TableCell {
        quotient: e0.kind,
        ideal: e1.kind,
    };
    let entry = table_entry(cell);
    TableOutcome {
        cell,
        estimate: entry.value.map(DimEstimate::exact),
        citations: entry.citation.into_iter().chain(entry.supporting).collect(),
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "camelCase")]
pub struct DimNucVerdict {
    #[serde(flatten)]
    pub estimate: DimEstimate,
    pub route: Route,
    pub citations: Vec<&'static str>,
    pub trace: Vec<String>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub table_cell: Option<TableCell>,
}

/// Cited value for a pure building block, `None` for Mixed.
fn pure_value(kind: &AlgebraKind) -> Option<(u32, Vec<&'static str>)> {
    match kind {
        AlgebraKind::Af => Some((0, vec![citations::WZ10])),
        AlgebraKind::Kirchberg => Some((1, vec![citations::BBSTWW])),
        AlgebraKind::SimpleCycle { .. } | AlgebraKind::StablyCircles { .. } => {
            Some((1, vec![citations::LEMMA_52, citations::WZ10]))
        }
        AlgebraKind::Mixed => None,
    }
}

/// A building block with a cited value: a pure class, or a simple algebra
/// with a cycle, which is purely infinite and hence Kirchberg even when the
/// graph is not strongly connected.
fn block_value(g: &Graph) -> Option<(u32, Vec<&'static str>, String)> {
    let kind = algebra_kind(g);
    if let Some((value, cites)) = pure_value(&kind) {
        return Some((value, cites, kind.rendered()));
    }
    (simplicity(g) && has_cycle(g).is_some()).then(|| {
        (1, vec![citations::BBSTWW], "simple purely infinite".to_string())
    })
}

/// Verdict for a graph, building the lattice under the `max_vertices` cap.
pub fn verdict(g: &Graph, max_vertices: usize) -> Result<DimNucVerdict> {
    let lattice = enumerate_sat_her(g, max_vertices)?;
    let gate = decompose_with_lattice(g, &lattice)?;
    verdict_with(g, &lattice, &gate)
}

/// [`verdict`] from an already computed lattice and gate run.
pub fn verdict_with(g: &Graph, lattice: &SatHerLattice, gate: &GateVerdict) -> Result<DimNucVerdict> {
    if let (Some(d), Some(conclusion)) = (&gate.decomposition, gate.conclusion()) {
        return Ok(DimNucVerdict {
            estimate: DimEstimate::exact(conclusion.dim_nuc),
            route: Route::Gate,
            citations: conclusion.citations,
            trace: vec![
                format!("decomposition V0={}, V1={}, V2={}", d.v0, d.v1, d.v2),
                format!("quotient stably C(X), X = {} circle(s), dim X = 1", d.circles.len()),
                "dim_nuc = max(1, dim X) = 1".to_string(),
            ],
            table_cell: None,
        });
    }

    if let Some((value, cites, name)) = block_value(g) {
        return Ok(DimNucVerdict {
            estimate: DimEstimate::exact(value),
            route: Route::PureClass,
            citations: cites,
            trace: vec![format!("pure class {name} has dim_nuc {value}")],
            table_cell: None,
        });
    }

    if lattice.len() == 3 {
        if let Some(v) = single_ideal_verdict(g, lattice.elements[1])? {
            return Ok(v);
        }
    }
    composition_bound(g, lattice)
}

/// Both an exitless cycle and a cycle with an exit.
fn is_heterogeneous(g: &Graph, class: &CycleClass) -> bool {
    class.kind == CycleKind::CycleWithExit && !cycles_without_exit_family(g).is_empty()
}

/// Lower and upper bound for the subgraph's algebra, with citations.
fn component_estimate(g: &Graph) -> Result<(DimEstimate, Vec<&'static str>)> {
    match block_value(g) {
        Some((value, cites, _)) => Ok((DimEstimate::exact(value), cites)),
        None => {
            let v = verdict(g, g.vertex_count())?;
            Ok((v.estimate, v.citations))
        }
    }
}

fn single_ideal_verdict(g: &Graph, w: VertexSet) -> Result<Option<DimNucVerdict>> {
    let ideal = g.subgraph_over(w)?;
    let quotient = g.subgraph_over(g.all_vertices().difference(w))?;
    let (c0, c1) = (classify_cycles(&quotient.graph), classify_cycles(&ideal.graph));
    if is_heterogeneous(&quotient.graph, &c0) || is_heterogeneous(&ideal.graph, &c1) {
        return Ok(None);
    }
    let outcome = single_ideal_table(&c0, &c1);
    let (est_b, cites_b) = component_estimate(&quotient.graph)?;
    let (est_j, cites_j) = component_estimate(&ideal.graph)?;
    let lower = est_j.lower.max(est_b.lower);
    let upper = match (est_j.upper, est_b.upper) {
        (Bound::Finite(j), Bound::Finite(b)) => Bound::Finite(j + b + 1),
        _ => Bound::Infinite,
    };
    let mut trace = vec![
        format!("ideal W={w}, E_1 {}, E_0 {}", c1.kind.label(), c0.kind.label()),
        format!(
            "table cell ({}, {}) = {}",
            c0.kind.label(),
            c1.kind.label(),
            table_entry(outcome.cell).rendered()
        ),
        format!("lower bound max(dim(J), dim(B)) = {lower}"),
        format!("upper bound dim(J)+dim(B)+1 = {upper}"),
    ];
    let verdict = match outcome.estimate {
        Some(estimate) => DimNucVerdict {
            estimate,
            route: Route::SingleIdealTable,
            citations: outcome.citations,
            trace,
            table_cell: Some(outcome.cell),
        },
        None => {
            trace.push("open case".to_string());
            let mut cites = vec![citations::WZ10];
            for c in cites_j.into_iter().chain(cites_b) {
                if !cites.contains(&c) {
                    cites.push(c);
                }
            }
            DimNucVerdict {
                estimate: DimEstimate::range(lower, upper, Status::Open),
                route: Route::SingleIdealTable,
                citations: cites,
                trace,
                table_cell: Some(outcome.cell),
            }
        }
    };
    Ok(Some(verdict))
}

/// Folds the extension inequality along the first maximal chain.
fn composition_bound(g: &Graph, lattice: &SatHerLattice) -> Result<DimNucVerdict> {
    let chain = lattice.first_maximal_chain();
    let mut lower = 0;
    let mut upper: Option<u32> = Some(0);
    let mut cites = vec![citations::WZ10];
    let mut trace = Vec::new();
    for step in chain.windows(2) {
        let added = step[1].difference(step[0]);
        let sub = g.subgraph_over(added)?;
        match block_value(&sub.graph) {
            Some((value, step_cites, name)) => {
                lower = lower.max(value);
                upper = upper.map(|u| u + value + 1);
                for c in step_cites {
                    if !cites.contains(&c) {
                        cites.push(c);
                    }
                }
                trace.push(format!("step {added}: {name} has dim_nuc {value}"));
            }
            None => {
                upper = None;
                trace.push(format!("step {added}: unclassified, no upper bound"));
            }
        }
    }
    // Σ(dᵢ + 1) − 1
    let upper = match upper {
        Some(u) => Bound::Finite(u.saturating_sub(1).max(lower)),
        None => Bound::Infinite,
    };
    trace.push(format!("bounds {lower} <= dim_nuc <= {upper}"));
    Ok(DimNucVerdict {
        estimate: DimEstimate::range(lower, upper, Status::BoundOnly),
        route: Route::CompositionBound,
        citations: cites,
        trace,
        table_cell: None,
    })
}

/// Tallies against the question whether every graph algebra has nuclear
/// dimension at most 1.
#[derive(Clone, Debug, Default, PartialEq, Serialize)]
#[serde(rename_all = "camelCase")]
pub struct QuestionSummary {
    pub total: u64,
    pub exact0: u64,
    pub exact1: u64,
    pub exact_ge2: u64,
    pub open: u64,
    pub bound_only: u64,
    /// Verdicts whose lower bound is at most 1.
    pub consistent: u64,
    pub consistent_fraction: f64,
}

impl QuestionSummary {
    pub fn record(&mut self, v: &DimNucVerdict) {
        self.total += 1;
        match (v.estimate.status, v.estimate.value()) {
            (Status::Exact, Some(0)) => self.exact0 += 1,
            (Status::Exact, Some(1)) => self.exact1 += 1,
            (Status::Exact, _) => self.exact_ge2 += 1,
            (Status::Open, _) => self.open += 1,
            (Status::BoundOnly, _) => self.bound_only += 1,
        }
        if v.estimate.lower <= 1 {
            self.consistent += 1;
        }
        self.refresh();
    }

    pub fn merge(&mut self, other: &QuestionSummary) {
        self.total += other.total;
        self.exact0 += other.exact0;
        self.exact1 += other.exact1;
        self.exact_ge2 += other.exact_ge2;
        self.open += other.open;
        self.bound_only += other.bound_only;
        self.consistent += other.consistent;
        self.refresh();
    }

    fn refresh(&mut self) {
        self.consistent_fraction = if self.total == 0 {
            0.0
        } else {
            self.consistent as f64 / self.total as f64
        };
    }
}

pub fn census_question<'a, I>(verdicts: I) -> QuestionSummary
where
    I: IntoIterator<Item = &'a DimNucVerdict>,
{
    let mut summary = QuestionSummary::default();
    for v in verdicts {
        summary.record(v);
    }
    summary
}
