//! Combinatorial analysis of finite directed graphs and their graph
//! C*-algebras: ideal lattices, cycle structure, building-block
//! classification, the decomposition criterion for essential extensions of
//! circles by Kirchberg ideals, and cited nuclear-dimension verdicts.
//!
//! Edges point from `s(e)` to `r(e)`; a hereditary set is closed under
//! following edges forward.

pub mod census;
pub mod citations;
pub mod classify;
pub mod closure;
pub mod cycles;
pub mod dimnuc;
pub mod error;
pub mod gate;
pub mod graph;
pub mod report;

pub use census::{run_census, CensusStats, EnumSpec};
pub use classify::{classify_graph_algebra, AlgebraClass, AlgebraKind};
pub use closure::{enumerate_sat_her, SatHerLattice, DEFAULT_MAX_VERTICES};
pub use cycles::{classify_cycles, CycleClass, CycleKind};
pub use dimnuc::{verdict, DimEstimate, DimNucVerdict, Route, Status};
pub use error::{Error, Result};
pub use gate::{brute_decompose, check_conditions, decompose, stability_witness, Decomposition, GateVerdict};
pub use graph::{parse_graph, Components, Edge, EdgeId, Graph, Path, Subgraph, VertexId, VertexSet};
pub use report::Report;
