use std::fmt::Write as _;
use std::path::{Path, PathBuf};
use std::process::ExitCode;

use clap::{Parser, Subcommand};
use graphalg_core::census::{run_census, CensusStats, EnumSpec};
use graphalg_core::closure::{enumerate_sat_her, DEFAULT_MAX_VERTICES};
use graphalg_core::dimnuc::{table_entry, TableCell, TableEntry, TABLE_ORDER};
use graphalg_core::gate::{check_conditions, decompose_with_lattice, stability_witness, StabilityWitness};
use graphalg_core::report::{GateSection, Report};
use graphalg_core::{parse_graph, Error, Graph, Status, VertexId, VertexSet};
use serde::Serialize;

const CAP_ENV: &str = "GRAPHALG_MAX_VERTICES";

#[derive(Parser)]
#[command(name = "graphalg", version, about = "Ideal structure and nuclear dimension of graph C*-algebras")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Full report: lattice, cycles, class, decomposition and dim_nuc verdict.
    Analyze {
        file: PathBuf,
        #[arg(long)]
        json: bool,
    },
    /// List the saturated hereditary vertex sets.
    Ideals {
        file: PathBuf,
        #[arg(long)]
        json: bool,
    },
    /// Search for a circles-by-Kirchberg decomposition.
    Decompose {
        file: PathBuf,
        #[arg(long)]
        json: bool,
        /// Stability witness paths, as VERTEX:COUNT.
        #[arg(long, value_name = "VERTEX:COUNT")]
        witness: Option<String>,
    },
    /// Print the single-ideal table of known values.
    Table {
        #[arg(long)]
        json: bool,
    },
    /// Run the pipeline over every small multigraph.
    Census {
        #[arg(long)]
        max_vertices: usize,
        #[arg(long)]
        max_mult: usize,
        /// Skip strata below this vertex count.
        #[arg(long, default_value_t = 1)]
        min_vertices: usize,
        #[arg(long)]
        dedup: bool,
        #[arg(long, default_value_t = 1)]
        workers: usize,
        #[arg(long)]
        json: bool,
    },
    /// Graphviz rendering, one arc per edge.
    ExportDot { file: PathBuf },
}

/// Failure with its exit status.
struct Failure {
    code: u8,
    message: String,
}

impl Failure {
    fn input(message: impl Into<String>) -> Self {
        Failure {
            code: 2,
            message: message.into(),
        }
    }

    fn invariant(message: impl Into<String>) -> Self {
        Failure {
            code: 4,
            message: message.into(),
        }
    }
}

impl From<Error> for Failure {
    fn from(e: Error) -> Self {
        let code = if e.is_cap_error() {
            3
        } else {
            match e {
                Error::Parse { .. }
                | Error::NoVertices
                | Error::VertexOutOfRange { .. }
                | Error::NotInIdealPart(_)
                | Error::FiniteWitnessFamily { .. }
                | Error::InvalidEnumSpec(_) => 2,
                _ => 4,
            }
        };
        Failure {
            code,
            message: e.to_string(),
        }
    }
}

type CmdResult = Result<String, Failure>;

fn main() -> ExitCode {
    let cli = Cli::parse();
    match run(cli.command) {
        Ok(out) => {
            print!("{out}");
            ExitCode::SUCCESS
        }
        Err(f) => {
            eprintln!("graphalg: {}", f.message);
            ExitCode::from(f.code)
        }
    }
}

fn run(command: Command) -> CmdResult {
    match command {
        Command::Analyze { file, json } => analyze(&file, json),
        Command::Ideals { file, json } => ideals(&file, json),
        Command::Decompose { file, json, witness } => decompose(&file, json, witness.as_deref()),
        Command::Table { json } => table(json),
        Command::Census {
            max_vertices,
            max_mult,
            min_vertices,
            dedup,
            workers,
            json,
        } => {
            let spec = EnumSpec::new(max_vertices, max_mult)
                .min_vertices(min_vertices)
                .dedup(dedup);
            census(&spec, workers, json)
        }
        Command::ExportDot { file } => Ok(export_dot(&load(&file)?)),
    }
}

fn max_vertices() -> Result<usize, Failure> {
    match std::env::var(CAP_ENV) {
        Ok(v) => v
            .trim()
            .parse()
            .map_err(|_| Failure::input(format!("{CAP_ENV} must be a nonnegative integer, got {v:?}"))),
        Err(_) => Ok(DEFAULT_MAX_VERTICES),
    }
}

fn load(path: &Path) -> Result<Graph, Failure> {
    let text = std::fs::read_to_string(path)
        .map_err(|e| Failure::input(format!("{}: {e}", path.display())))?;
    parse_graph(&text).map_err(|e| {
        let mut f = Failure::from(e);
        f.message = format!("{}: {}", path.display(), f.message);
        f
    })
}

fn to_json<T: Serialize>(value: &T) -> String {
    let mut s = serde_json::to_string_pretty(value).expect("report types serialize");
    s.push('\n');
    s
}

fn analyze(path: &Path, json: bool) -> CmdResult {
    let g = load(path)?;
    let report = Report::analyze(&g, max_vertices()?)?;
    self_check(&g, &report)?;
    Ok(if json { to_json(&report) } else { report.to_text() })
}

/// Internal consistency checks on a finished report.
fn self_check(g: &Graph, report: &Report) -> Result<(), Failure> {
    if let (Some(v0), Some(v1), Some(v2)) = (report.gate.v0, report.gate.v1, report.gate.v2) {
        if !check_conditions(g, v0, v1, v2)?.passed() {
            return Err(Failure::invariant("decomposition fails its own condition check"));
        }
    }
    let est = &report.dim_nuc.estimate;
    if est.status == Status::Exact && est.lower >= 2 {
        return Err(Failure::invariant(format!("exact dim_nuc {} is at least 2", est.lower)));
    }
    Ok(())
}

#[derive(Serialize)]
#[serde(rename_all = "camelCase")]
struct IdealEntry {
    vertices: VertexSet,
    proper: bool,
    trivial: bool,
}

#[derive(Serialize)]
#[serde(rename_all = "camelCase")]
struct IdealsOutput {
    elements: Vec<IdealEntry>,
    covers: Vec<(usize, usize)>,
    nontrivial_count: usize,
}

fn ideals(path: &Path, json: bool) -> CmdResult {
    let g = load(path)?;
    let lattice = enumerate_sat_her(&g, max_vertices()?)?;
    let all = g.all_vertices();
    let out = IdealsOutput {
        elements: lattice
            .elements
            .iter()
            .map(|&w| IdealEntry {
                vertices: w,
                proper: w != all,
                trivial: w.is_empty() || w == all,
            })
            .collect(),
        covers: lattice.covers.clone(),
        nontrivial_count: lattice.nontrivial().count(),
    };
    if json {
        return Ok(to_json(&out));
    }
    let mut s = String::new();
    for (i, e) in out.elements.iter().enumerate() {
        let tag = match (e.trivial, e.proper) {
            (true, true) => "trivial",
            (true, false) => "trivial, improper",
            _ => "proper",
        };
        let covers: Vec<String> = lattice.covers_of(i).map(|j| j.to_string()).collect();
        let _ = writeln!(s, "[{i}] {} ({tag}) covered by [{}]", e.vertices, covers.join(", "));
    }
    let _ = writeln!(s, "{} nontrivial saturated hereditary set(s)", out.nontrivial_count);
    Ok(s)
}

#[derive(Serialize)]
#[serde(rename_all = "camelCase")]
struct DecomposeOutput {
    #[serde(flatten)]
    gate: GateSection,
    #[serde(skip_serializing_if = "Option::is_none")]
    witness: Option<StabilityWitness>,
}

fn parse_witness(arg: &str) -> Result<(VertexId, usize), Failure> {
    let bad = || Failure::input(format!("--witness expects VERTEX:COUNT, got {arg:?}"));
    let (v, n) = arg.split_once(':').ok_or_else(bad)?;
    Ok((VertexId(v.trim().parse().map_err(|_| bad())?), n.trim().parse().map_err(|_| bad())?))
}

fn decompose(path: &Path, json: bool, witness: Option<&str>) -> CmdResult {
    let g = load(path)?;
    let request = witness.map(parse_witness).transpose()?;
    let lattice = enumerate_sat_her(&g, max_vertices()?)?;
    let verdict = decompose_with_lattice(&g, &lattice)?;
    let witness = match (request, &verdict.decomposition) {
        (None, _) => None,
        (Some(_), None) => {
            return Err(Failure::input("no decomposition exists, so there is no stability witness"))
        }
        (Some((v, count)), Some(d)) => {
            if v.index() >= g.vertex_count() {
                return Err(Error::VertexOutOfRange {
                    vertex: v.index(),
                    vertex_count: g.vertex_count(),
                }
                .into());
            }
            Some(stability_witness(&g, d, v, count)?)
        }
    };
    let out = DecomposeOutput {
        gate: GateSection::from_verdict(&verdict),
        witness,
    };
    if json {
        return Ok(to_json(&out));
    }
    let mut s = String::new();
    let gate = &out.gate;
    match (gate.v0, gate.v1, gate.v2, &gate.conclusion) {
        (Some(v0), Some(v1), Some(v2), Some(c)) => {
            let _ = writeln!(s, "covered: V0={v0} V1={v1} V2={v2}");
            let _ = writeln!(s, "circles: {:?}", gate.circle_lengths);
            let _ = writeln!(
                s,
                "ideal {}, quotient {}, dim_nuc {} [{}]",
                c.ideal,
                c.quotient,
                c.dim_nuc,
                c.citations.join(", ")
            );
        }
        _ => {
            let _ = writeln!(s, "not covered ({} candidate(s) examined)", gate.candidates_examined);
            if let Some(f) = &gate.failure_reason {
                let _ = writeln!(
                    s,
                    "best candidate V0={} V1={} V2={} fails condition {}: {:?}",
                    f.v0, f.v1, f.v2, f.failure.condition, f.failure.witness
                );
            }
        }
    }
    if let Some(w) = &out.witness {
        let paths: Vec<String> = w.paths.iter().map(|p| p.to_string()).collect();
        let _ = writeln!(s, "witness at {}: {}", w.vertex, paths.join("; "));
    }
    Ok(s)
}

#[derive(Serialize)]
#[serde(rename_all = "camelCase")]
struct TableCellOutput {
    #[serde(flatten)]
    cell: TableCell,
    #[serde(flatten)]
    entry: TableEntry,
    rendered: String,
}

fn table(json: bool) -> CmdResult {
    let cells: Vec<TableCellOutput> = TABLE_ORDER
        .iter()
        .flat_map(|&quotient| {
            TABLE_ORDER.iter().map(move |&ideal| {
                let cell = TableCell { quotient, ideal };
                let entry = table_entry(cell);
                TableCellOutput {
                    cell,
                    entry,
                    rendered: entry.rendered(),
                }
            })
        })
        .collect();
    if json {
        return Ok(to_json(&cells));
    }
    let width = 30;
    let mut s = String::new();
    let _ = write!(s, "{:<width$}", "E_0 (quotient) \\ E_1 (ideal)");
    for k in TABLE_ORDER {
        let _ = write!(s, "{:<width$}", k.label());
    }
    s = s.trim_end().to_string();
    s.push('\n');
    for row in cells.chunks(3) {
        let mut line = format!("{:<width$}", row[0].cell.quotient.label());
        for c in row {
            let _ = write!(line, "{:<width$}", c.rendered);
        }
        let _ = writeln!(s, "{}", line.trim_end());
    }
    Ok(s)
}

fn census(spec: &EnumSpec, workers: usize, json: bool) -> CmdResult {
    let stats = run_census(spec, workers)?;
    let out = if json { to_json(&stats) } else { census_text(&stats) };
    if !stats.oracle_disagreements.is_empty() {
        print!("{out}");
        return Err(Failure::invariant(format!(
            "{} oracle disagreement(s): {}",
            stats.oracle_disagreements.len(),
            stats.oracle_disagreements.join(", ")
        )));
    }
    if !stats.exact_ge2.is_empty() {
        print!("{out}");
        return Err(Failure::invariant(format!(
            "exact dim_nuc >= 2 for: {}",
            stats.exact_ge2.join(", ")
        )));
    }
    Ok(out)
}

fn census_text(stats: &CensusStats) -> String {
    let mut s = String::new();
    let _ = writeln!(s, "graphs: {}", stats.total);
    for (n, st) in &stats.per_stratum {
        let _ = writeln!(
            s,
            "  n={n}: {} graph(s), {} covered, {} open",
            st.total, st.gate_covered, st.open
        );
    }
    let _ = writeln!(s, "classes:");
    for (k, v) in &stats.by_class {
        let _ = writeln!(s, "  {k}: {v}");
    }
    let _ = writeln!(s, "gate covered: {}", stats.gate_covered);
    let _ = writeln!(
        s,
        "dim_nuc: exact 0: {}, exact 1: {}, exact >= 2: {}, open: {}, bound only: {}",
        stats.exact0,
        stats.exact1,
        stats.exact_ge2.len(),
        stats.open,
        stats.bound_only
    );
    let _ = writeln!(
        s,
        "consistent with dim_nuc <= 1: {} of {} ({:.4})",
        stats.question.consistent, stats.question.total, stats.question.consistent_fraction
    );
    let _ = writeln!(s, "oracle disagreements: {}", stats.oracle_disagreements.len());
    s
}

fn export_dot(g: &Graph) -> String {
    let mut s = String::from("// arrow: s(e) -> r(e)\ndigraph E {\n");
    for v in g.vertices() {
        let _ = writeln!(s, "  {};", v.index());
    }
    for e in g.edges() {
        let _ = writeln!(
            s,
            "  {} -> {} [label=\"{}\"];",
            e.source.index(),
            e.range.index(),
            e.id
        );
    }
    s.push_str("}\n");
    s
}
