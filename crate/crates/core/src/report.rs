//! The full analysis of one graph as a serializable report.
//!
//! JSON keys are fixed and emitted in declaration order; the text form is
//! rendered from the same structure.

use std::fmt::Write as _;

use serde::Serialize;

use crate::classify::{classify_graph_algebra, AlgebraClass};
use crate::closure::{enumerate_sat_her, SatHerLattice};
use crate::cycles::{classify_cycles, condition_k, condition_l, cycles_without_exit_family, CycleClass, CycleKind};
use crate::dimnuc::{verdict_with, DimNucVerdict};
use crate::error::Result;
use crate::gate::{decompose_with_lattice, CandidateFailure, GateConclusion, GateVerdict};
use crate::graph::{Graph, Path, VertexSet};

#[derive(Clone, Debug, PartialEq, Serialize)]
#[serde(rename_all = "camelCase")]
pub struct LatticeSection {
    pub elements: Vec<VertexSet>,
    pub covers: Vec<(usize, usize)>,
    pub nontrivial_count: usize,
}

#[derive(Clone, Debug, PartialEq, Serialize)]
#[serde(rename_all = "camelCase")]
pub struct CircleEntry {
    pub vertices: VertexSet,
    pub length: usize,
}

#[derive(Clone, Debug, PartialEq, Serialize)]
#[serde(rename_all = "camelCase")]
pub struct CyclesSection {
    pub cycle_class: CycleKind,
    pub witness: Option<Path>,
    #[serde(rename = "conditionK")]
    pub condition_k: bool,
    #[serde(rename = "conditionL")]
    pub condition_l: bool,
    pub exitless_cycle_family: Vec<CircleEntry>,
}

#[derive(Clone, Debug, PartialEq, Serialize)]
#[serde(rename_all = "camelCase")]
pub struct ClassSection {
    pub kind: &'static str,
    pub simple: bool,
    pub rendered: String,
    /// `|C|` for each circle when the algebra is stably a sum of `M_n(C(T))`,
    /// a simple cycle being the one-circle case.
    pub stably_circles: Option<Vec<usize>>,
}

#[derive(Clone, Debug, PartialEq, Serialize)]
#[serde(rename_all = "camelCase")]
pub struct GateSection {
    pub covered: bool,
    pub v0: Option<VertexSet>,
    pub v1: Option<VertexSet>,
    pub v2: Option<VertexSet>,
    pub circle_lengths: Vec<usize>,
    pub ideal_class: Option<&'static str>,
    pub quotient_space: usize,
    pub conclusion: Option<GateConclusion>,
    pub failure_reason: Option<CandidateFailure>,
    pub candidates_examined: usize,
}

impl GateSection {
    pub fn from_verdict(gate: &GateVerdict) -> Self {
        let d = gate.decomposition.as_ref();
        GateSection {
            covered: gate.covered,
            v0: d.map(|d| d.v0),
            v1: d.map(|d| d.v1),
            v2: d.map(|d| d.v2),
            circle_lengths: d.map(|d| d.circles.lengths()).unwrap_or_default(),
            ideal_class: d.map(|_| "C*(E_2) (x) K"),
            quotient_space: gate.quotient_circles,
            conclusion: gate.conclusion(),
            failure_reason: gate.best_failure.clone(),
            candidates_examined: gate.candidates_examined,
        }
    }
}

#[derive(Clone, Debug, PartialEq, Serialize)]
#[serde(rename_all = "camelCase")]
pub struct Report {
    pub input: String,
    pub lattice: LatticeSection,
    pub cycles: CyclesSection,
    pub algebra_class: ClassSection,
    pub gate: GateSection,
    pub dim_nuc: DimNucVerdict,
}

impl Report {
    /// Runs every analysis on `g`, enumerating the lattice under the cap.
    pub fn analyze(g: &Graph, max_vertices: usize) -> Result<Report> {
        let lattice = enumerate_sat_her(g, max_vertices)?;
        let gate = decompose_with_lattice(g, &lattice)?;
        let dim_nuc = verdict_with(g, &lattice, &gate)?;
        Ok(Report {
            input: g.to_text(),
            lattice: lattice_section(&lattice),
            cycles: cycles_section(g, classify_cycles(g)),
            algebra_class: class_section(classify_graph_algebra(g)),
            gate: GateSection::from_verdict(&gate),
            dim_nuc,
        })
    }

    pub fn to_text(&self) -> String {
        let mut out = String::new();
        let set_list = |sets: &[VertexSet]| {
            sets.iter().map(|s| s.to_string()).collect::<Vec<_>>().join(" ")
        };
        let _ = writeln!(out, "input:");
        for line in self.input.lines() {
            let _ = writeln!(out, "  {line}");
        }
        let _ = writeln!(
            out,
            "lattice: {} element(s), {} nontrivial: {}",
            self.lattice.elements.len(),
            self.lattice.nontrivial_count,
            set_list(&self.lattice.elements)
        );
        let c = &self.cycles;
        let _ = writeln!(
            out,
            "cycles: {}{}; condition (K) {}; condition (L) {}",
            c.cycle_class.label(),
            c.witness.as_ref().map(|w| format!(" [{w}]")).unwrap_or_default(),
            yes_no(c.condition_k),
            yes_no(c.condition_l)
        );
        let circles: Vec<String> = c
            .exitless_cycle_family
            .iter()
            .map(|e| format!("{} (length {})", e.vertices, e.length))
            .collect();
        let _ = writeln!(
            out,
            "exitless cycles: {}",
            if circles.is_empty() { "none".to_string() } else { circles.join(", ") }
        );
        let a = &self.algebra_class;
        let _ = writeln!(
            out,
            "class: {} ({}){}",
            a.rendered,
            a.kind,
            if a.simple { ", simple" } else { ", not simple" }
        );
        let gate = &self.gate;
        if let (Some(v0), Some(v1), Some(v2)) = (gate.v0, gate.v1, gate.v2) {
            let _ = writeln!(out, "gate: covered, V0={v0} V1={v1} V2={v2}");
            if let Some(conc) = &gate.conclusion {
                let _ = writeln!(
                    out,
                    "  ideal {}, quotient {}, dim_nuc {} [{}]",
                    conc.ideal,
                    conc.quotient,
                    conc.dim_nuc,
                    conc.citations.join(", ")
                );
            }
        } else {
            let _ = write!(out, "gate: not covered");
            if let Some(f) = &gate.failure_reason {
                let _ = write!(
                    out,
                    "; best candidate V0={} V1={} V2={} fails condition {}",
                    f.v0, f.v1, f.v2, f.failure.condition
                );
            }
            let _ = writeln!(out);
        }
        let d = &self.dim_nuc;
        let value = match d.estimate.value() {
            Some(v) => v.to_string(),
            None => format!("[{}, {}]", d.estimate.lower, d.estimate.upper),
        };
        let _ = writeln!(
            out,
            "dim_nuc: {value} ({:?} via {:?}) [{}]",
            d.estimate.status,
            d.route,
            d.citations.join(", ")
        );
        for step in &d.trace {
            let _ = writeln!(out, "  {step}");
        }
        out
    }
}

fn yes_no(b: bool) -> &'static str {
    if b {
        "holds"
    } else {
        "fails"
    }
}

fn lattice_section(l: &SatHerLattice) -> LatticeSection {
    LatticeSection {
        elements: l.elements.clone(),
        covers: l.covers.clone(),
        nontrivial_count: l.nontrivial().count(),
    }
}

fn cycles_section(g: &Graph, class: CycleClass) -> CyclesSection {
    CyclesSection {
        cycle_class: class.kind,
        witness: class.witness,
        condition_k: condition_k(g),
        condition_l: condition_l(g),
        exitless_cycle_family: cycles_without_exit_family(g)
            .circles
            .iter()
            .map(|c| CircleEntry {
                vertices: c.vertices,
                length: c.length,
            })
            .collect(),
    }
}

fn class_section(class: AlgebraClass) -> ClassSection {
    ClassSection {
        kind: class.kind.name(),
        simple: class.simple,
        rendered: class.kind.rendered(),
        stably_circles: class.kind.circle_lengths(),
    }
}
