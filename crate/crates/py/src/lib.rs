//! Python bindings. Vertex sets cross the boundary as sorted lists of ints,
//! reports as plain dicts with the same keys as the CLI's JSON output.

use graphalg_core::census::{run_census, EnumSpec};
use graphalg_core::closure::{self, DEFAULT_MAX_VERTICES};
use graphalg_core::cycles;
use graphalg_core::dimnuc::{table_entry, TableCell, TABLE_ORDER};
use graphalg_core::gate::{self, CheckOutcome};
use graphalg_core::report::{GateSection, Report};
use graphalg_core::{classify_graph_algebra, verdict, Error, Graph, VertexId, VertexSet};
use pyo3::create_exception;
use pyo3::exceptions::PyValueError;
use pyo3::prelude::*;
use pyo3::types::{PyDict, PyList};
use pyo3::IntoPyObjectExt;
use serde_json::Value;

create_exception!(graphalg, GraphalgError, PyValueError);
create_exception!(graphalg, CapExceededError, GraphalgError);

fn py_err(e: Error) -> PyErr {
    if e.is_cap_error() {
        CapExceededError::new_err(e.to_string())
    } else {
        GraphalgError::new_err(e.to_string())
    }
}

fn to_py<'py>(py: Python<'py>, v: &Value) -> PyResult<Bound<'py, PyAny>> {
    match v {
        Value::Null => Ok(py.None().into_bound(py)),
        Value::Bool(b) => b.into_bound_py_any(py),
        Value::Number(n) => match (n.as_i64(), n.as_u64()) {
            (Some(i), _) => i.into_bound_py_any(py),
            (None, Some(u)) => u.into_bound_py_any(py),
            _ => n.as_f64().unwrap_or(f64::NAN).into_bound_py_any(py),
        },
        Value::String(s) => s.into_bound_py_any(py),
        Value::Array(items) => {
            let list = PyList::empty(py);
            for item in items {
                list.append(to_py(py, item)?)?;
            }
            Ok(list.into_any())
        }
        Value::Object(map) => {
            let dict = PyDict::new(py);
            for (k, item) in map {
                dict.set_item(k, to_py(py, item)?)?;
            }
            Ok(dict.into_any())
        }
    }
}

fn serialized<'py, T: serde::Serialize>(py: Python<'py>, value: &T) -> PyResult<Bound<'py, PyAny>> {
    let v = serde_json::to_value(value).map_err(|e| GraphalgError::new_err(e.to_string()))?;
    to_py(py, &v)
}

/// A finite directed multigraph; edges point from source to range.
#[pyclass(name = "Graph", module = "graphalg", frozen)]
struct PyGraph {
    inner: Graph,
}

impl PyGraph {
    fn set(&self, vertices: Vec<usize>) -> PyResult<VertexSet> {
        let n = self.inner.vertex_count();
        if let Some(&v) = vertices.iter().find(|&&v| v >= n) {
            return Err(py_err(Error::VertexOutOfRange { vertex: v, vertex_count: n }));
        }
        Ok(VertexSet::from_indices(vertices))
    }

    fn cap(max_vertices: Option<usize>) -> usize {
        max_vertices.unwrap_or(DEFAULT_MAX_VERTICES)
    }
}

#[pymethods]
impl PyGraph {
    #[new]
    fn new(vertex_count: usize, edges: Vec<(usize, usize)>) -> PyResult<Self> {
        Graph::new(vertex_count, edges)
            .map(|inner| PyGraph { inner })
            .map_err(py_err)
    }

    /// Parses the `vertices N` / `edge S R` text format.
    #[staticmethod]
    fn parse(text: &str) -> PyResult<Self> {
        graphalg_core::parse_graph(text)
            .map(|inner| PyGraph { inner })
            .map_err(py_err)
    }

    #[getter]
    fn vertex_count(&self) -> usize {
        self.inner.vertex_count()
    }

    #[getter]
    fn edge_count(&self) -> usize {
        self.inner.edge_count()
    }

    /// `(source, range)` pairs in edge-id order.
    fn edges(&self) -> Vec<(usize, usize)> {
        self.inner
            .edges()
            .iter()
            .map(|e| (e.source.index(), e.range.index()))
            .collect()
    }

    fn to_text(&self) -> String {
        self.inner.to_text()
    }

    fn sinks(&self) -> Vec<usize> {
        self.inner.sinks().to_vec()
    }

    fn is_strongly_connected(&self) -> bool {
        self.inner.is_strongly_connected()
    }

    fn hereditary_closure(&self, vertices: Vec<usize>) -> PyResult<Vec<usize>> {
        Ok(closure::hereditary_closure(&self.inner, self.set(vertices)?).to_vec())
    }

    fn saturation(&self, vertices: Vec<usize>) -> PyResult<Vec<usize>> {
        Ok(closure::saturation(&self.inner, self.set(vertices)?).to_vec())
    }

    fn sat_her_closure(&self, vertices: Vec<usize>) -> PyResult<Vec<usize>> {
        Ok(closure::sat_her_closure(&self.inner, self.set(vertices)?).to_vec())
    }

    /// Saturated hereditary sets in lattice order.
    #[pyo3(signature = (max_vertices=None))]
    fn ideal_lattice(&self, max_vertices: Option<usize>) -> PyResult<Vec<Vec<usize>>> {
        let lattice = closure::enumerate_sat_her(&self.inner, Self::cap(max_vertices)).map_err(py_err)?;
        Ok(lattice.elements.iter().map(|w| w.to_vec()).collect())
    }

    /// `"NoCycle"`, `"CycleWithoutExit"` or `"CycleWithExit"`.
    fn cycle_class(&self) -> String {
        format!("{:?}", cycles::classify_cycles(&self.inner).kind)
    }

    fn condition_k(&self) -> bool {
        cycles::condition_k(&self.inner)
    }

    fn condition_l(&self) -> bool {
        cycles::condition_l(&self.inner)
    }

    fn classify<'py>(&self, py: Python<'py>) -> PyResult<Bound<'py, PyAny>> {
        serialized(py, &classify_graph_algebra(&self.inner))
    }

    fn check_conditions<'py>(
        &self,
        py: Python<'py>,
        v0: Vec<usize>,
        v1: Vec<usize>,
        v2: Vec<usize>,
    ) -> PyResult<Bound<'py, PyAny>> {
        let outcome = gate::check_conditions(&self.inner, self.set(v0)?, self.set(v1)?, self.set(v2)?)
            .map_err(py_err)?;
        match outcome {
            CheckOutcome::Passed(d) => serialized(py, &serde_json::json!({"passed": true, "decomposition": d})),
            CheckOutcome::Failed(f) => serialized(py, &serde_json::json!({"passed": false, "failure": f})),
        }
    }

    #[pyo3(signature = (max_vertices=None))]
    fn decompose<'py>(&self, py: Python<'py>, max_vertices: Option<usize>) -> PyResult<Bound<'py, PyAny>> {
        let v = gate::decompose(&self.inner, Self::cap(max_vertices)).map_err(py_err)?;
        serialized(py, &GateSection::from_verdict(&v))
    }

    /// Edge-id lists of the first `count` stability-family paths at `vertex`.
    #[pyo3(signature = (vertex, count, max_vertices=None))]
    fn stability_witness(&self, vertex: usize, count: usize, max_vertices: Option<usize>) -> PyResult<Vec<Vec<usize>>> {
        let v = gate::decompose(&self.inner, Self::cap(max_vertices)).map_err(py_err)?;
        let d = v
            .decomposition
            .ok_or_else(|| GraphalgError::new_err("graph has no decomposition"))?;
        self.set(vec![vertex])?;
        let w = gate::stability_witness(&self.inner, &d, VertexId(vertex), count).map_err(py_err)?;
        Ok(w.paths.iter().map(|p| p.edges().iter().map(|e| e.index()).collect()).collect())
    }

    #[pyo3(signature = (max_vertices=None))]
    fn dim_nuc<'py>(&self, py: Python<'py>, max_vertices: Option<usize>) -> PyResult<Bound<'py, PyAny>> {
        serialized(py, &verdict(&self.inner, Self::cap(max_vertices)).map_err(py_err)?)
    }

    fn __len__(&self) -> usize {
        self.inner.vertex_count()
    }

    fn __eq__(&self, other: &Self) -> bool {
        self.inner == other.inner
    }

    fn __repr__(&self) -> String {
        format!(
            "Graph({}, {:?})",
            self.inner.vertex_count(),
            self.edges()
        )
    }
}

/// Full report for a graph, as a dict.
#[pyfunction]
#[pyo3(signature = (graph, max_vertices=None))]
fn analyze<'py>(py: Python<'py>, graph: &PyGraph, max_vertices: Option<usize>) -> PyResult<Bound<'py, PyAny>> {
    let report = Report::analyze(&graph.inner, PyGraph::cap(max_vertices)).map_err(py_err)?;
    serialized(py, &report)
}

/// Exhaustive run over all multigraphs in the given range.
#[pyfunction]
#[pyo3(signature = (max_vertices, max_mult, dedup=false, workers=1, min_vertices=1))]
fn census<'py>(
    py: Python<'py>,
    max_vertices: usize,
    max_mult: usize,
    dedup: bool,
    workers: usize,
    min_vertices: usize,
) -> PyResult<Bound<'py, PyAny>> {
    let spec = EnumSpec::new(max_vertices, max_mult)
        .min_vertices(min_vertices)
        .dedup(dedup);
    let stats = py.detach(|| run_census(&spec, workers)).map_err(py_err)?;
    serialized(py, &stats)
}

/// The nine single-ideal table cells, row by row.
#[pyfunction]
fn table<'py>(py: Python<'py>) -> PyResult<Bound<'py, PyAny>> {
    let cells: Vec<Value> = TABLE_ORDER
        .iter()
        .flat_map(|&quotient| {
            TABLE_ORDER.iter().map(move |&ideal| {
                let cell = TableCell { quotient, ideal };
                let entry = table_entry(cell);
                serde_json::json!({
                    "quotient": quotient,
                    "ideal": ideal,
                    "value": entry.value,
                    "citation": entry.citation,
                    "supporting": entry.supporting,
                    "rendered": entry.rendered(),
                })
            })
        })
        .collect();
    to_py(py, &Value::Array(cells))
}

#[pymodule]
fn graphalg(m: &Bound<'_, PyModule>) -> PyResult<()> {
    m.add_class::<PyGraph>()?;
    m.add_function(wrap_pyfunction!(analyze, m)?)?;
    m.add_function(wrap_pyfunction!(census, m)?)?;
    m.add_function(wrap_pyfunction!(table, m)?)?;
    m.add("GraphalgError", m.py().get_type::<GraphalgError>())?;
    m.add("CapExceededError", m.py().get_type::<CapExceededError>())?;
    m.add("DEFAULT_MAX_VERTICES", DEFAULT_MAX_VERTICES)?;
    Ok(())
}
