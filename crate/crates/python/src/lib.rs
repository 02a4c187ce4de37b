//! Python bindings. Vertices are 0-based here, unlike the text formats.
//! Structured results (reports, reconstructions) come back as dicts.

use pyo3::create_exception;
use pyo3::exceptions::PyValueError;
use pyo3::prelude::*;
use pyo3::types::PyAny;
use rigidity_core::graph::io::{parse_any, to_json, to_text};
use rigidity_core::graph::{self as core_graph, catalog, EdgeBijection, OrderedGraph, DEFAULT_CIRCUIT_CAP};
use rigidity_core::linalg::{random_unit_configuration, Configuration};
use rigidity_core::rigidity::{self as rig, Framework};
use rigidity_core::unlabeled::{self as unl, DistanceMultiset, SearchOptions, DEFAULT_RESTARTS};
use serde::Serialize;

create_exception!(rigidity, RigidityError, PyValueError);

fn err(e: rigidity_core::Error) -> PyErr {
    RigidityError::new_err(e.to_string())
}

fn to_py<'py, T: Serialize>(py: Python<'py>, value: &T) -> PyResult<Bound<'py, PyAny>> {
    let text = serde_json::to_string(value).map_err(|e| PyValueError::new_err(e.to_string()))?;
    py.import("json")?.call_method1("loads", (text,))
}

fn configuration(points: Vec<Vec<f64>>) -> PyResult<Configuration> {
    let d = points.first().map_or(0, Vec::len);
    if points.iter().any(|p| p.len() != d) || points.iter().flatten().any(|x| !x.is_finite()) {
        return Err(PyValueError::new_err("points must be finite and of equal dimension"));
    }
    Ok(Configuration::from_points(&points))
}

/// Graph with an ordered edge list.
#[pyclass(name = "Graph", module = "rigidity", frozen, eq, skip_from_py_object)]
#[derive(Clone, PartialEq)]
struct PyGraph(OrderedGraph);

#[pymethods]
impl PyGraph {
    #[new]
    fn new(n: usize, edges: Vec<(usize, usize)>) -> PyResult<Self> {
        OrderedGraph::new(n, edges).map(PyGraph).map_err(err)
    }

    /// Built-in graph by name: `K5`, `C6`, `W4`, `K4,3`, `reversal-a`, ...
    #[staticmethod]
    fn named(name: &str) -> PyResult<Self> {
        catalog::by_name(name).map(PyGraph).map_err(err)
    }

    /// Parses the text or JSON graph format.
    #[staticmethod]
    fn parse(src: &str) -> PyResult<Self> {
        parse_any(src).map(PyGraph).map_err(err)
    }

    #[getter]
    fn n(&self) -> usize {
        self.0.n()
    }

    #[getter]
    fn m(&self) -> usize {
        self.0.m()
    }

    #[getter]
    fn edges(&self) -> Vec<(usize, usize)> {
        self.0.edges().to_vec()
    }

    fn to_text(&self) -> String {
        to_text(&self.0)
    }

    fn to_json(&self) -> String {
        to_json(&self.0)
    }

    fn cone(&self) -> Self {
        PyGraph(self.0.cone())
    }

    fn canonical(&self) -> Self {
        PyGraph(self.0.canonical())
    }

    fn is_isomorphic(&self, other: &PyGraph) -> bool {
        core_graph::is_isomorphic(&self.0, &other.0)
    }

    fn vertex_connectivity(&self) -> usize {
        core_graph::vertex_connectivity(&self.0)
    }

    fn circuits(&self) -> PyResult<Vec<Vec<usize>>> {
        core_graph::enumerate_circuits(&self.0, DEFAULT_CIRCUIT_CAP).map_err(err)
    }

    fn __len__(&self) -> usize {
        self.0.m()
    }

    fn __repr__(&self) -> String {
        format!("Graph({}, {:?})", self.0.n(), self.0.edges())
    }
}

/// Full rigidity report as a dict.
#[pyfunction]
#[pyo3(signature = (g, d, seed = 0))]
fn analyze<'py>(py: Python<'py>, g: &PyGraph, d: usize, seed: u64) -> PyResult<Bound<'py, PyAny>> {
    to_py(py, &rig::hendrickson_check(&g.0, d, seed).map_err(err)?)
}

#[pyfunction]
#[pyo3(signature = (g, d, seed = 0))]
fn is_generically_locally_rigid(g: &PyGraph, d: usize, seed: u64) -> PyResult<bool> {
    rig::is_generically_locally_rigid(&g.0, d, seed).map_err(err)
}

#[pyfunction]
#[pyo3(signature = (g, d, seed = 0))]
fn is_generically_globally_rigid(g: &PyGraph, d: usize, seed: u64) -> PyResult<bool> {
    rig::is_generically_globally_rigid(&g.0, d, seed).map_err(err)
}

#[pyfunction]
#[pyo3(signature = (g, d, seed = 0))]
fn measurement_variety_dim(g: &PyGraph, d: usize, seed: u64) -> usize {
    rig::measurement_variety_dim(&g.0, d, seed)
}

#[pyfunction]
#[pyo3(signature = (g, d, seed = 0))]
fn gauss_fiber_dim(g: &PyGraph, d: usize, seed: u64) -> PyResult<usize> {
    rig::gauss_fiber_dim(&g.0, d, seed).map_err(err)
}

/// Squared edge lengths of `g` at `points`, in edge order.
#[pyfunction]
fn measure(g: &PyGraph, points: Vec<Vec<f64>>) -> PyResult<Vec<f64>> {
    let f = Framework::new(g.0.clone(), configuration(points)?).map_err(err)?;
    Ok(rig::measure(&f).to_f64())
}

/// Uniform random points in `[-1, 1]^d`.
#[pyfunction]
#[pyo3(signature = (n, d, seed = 0))]
fn random_configuration(n: usize, d: usize, seed: u64) -> Vec<Vec<f64>> {
    random_unit_configuration(n, d, seed).points_f64()
}

#[pyfunction]
#[pyo3(signature = (g, target, d, restarts = DEFAULT_RESTARTS, seed = 0))]
fn realize<'py>(
    py: Python<'py>,
    g: &PyGraph,
    target: Vec<f64>,
    d: usize,
    restarts: usize,
    seed: u64,
) -> PyResult<Bound<'py, PyAny>> {
    if target.len() != g.0.m() {
        return Err(PyValueError::new_err("one target per edge"));
    }
    let res = py.detach(|| unl::realize(&g.0, &target, d, restarts.max(1), seed));
    to_py(py, &res)
}

#[pyfunction]
#[pyo3(signature = (g, target, d, restarts = DEFAULT_RESTARTS, seed = 0))]
fn is_member(g: &PyGraph, target: Vec<f64>, d: usize, restarts: usize, seed: u64) -> PyResult<bool> {
    if target.len() != g.0.m() {
        return Err(PyValueError::new_err("one target per edge"));
    }
    Ok(unl::is_member(&g.0, &target, d, restarts.max(1), seed))
}

#[pyfunction]
#[pyo3(signature = (p, q, tol = unl::DEFAULT_CONGRUENCE_TOL))]
fn congruent(p: Vec<Vec<f64>>, q: Vec<Vec<f64>>, tol: f64) -> PyResult<bool> {
    unl::congruent(&configuration(p)?, &configuration(q)?, tol).map_err(err)
}

/// Solution classes for an unlabeled list of squared lengths, as a dict with
/// `solutions` and `stats`.
#[pyfunction]
#[pyo3(signature = (values, n, d, restarts = DEFAULT_RESTARTS, seed = 0, max_time = None))]
fn reconstruct<'py>(
    py: Python<'py>,
    values: Vec<f64>,
    n: usize,
    d: usize,
    restarts: usize,
    seed: u64,
    max_time: Option<f64>,
) -> PyResult<Bound<'py, PyAny>> {
    let v = DistanceMultiset::new(values).map_err(err)?;
    let max_time = match max_time {
        Some(t) if t.is_finite() && t >= 0.0 => Some(std::time::Duration::from_secs_f64(t)),
        Some(_) => return Err(PyValueError::new_err("max_time must be a nonnegative number")),
        None => None,
    };
    let opts = SearchOptions { restarts: restarts.max(1), seed, max_time, ..SearchOptions::default() };
    let res = py.detach(|| unl::reconstruct(&v, n, d, &opts)).map_err(err)?;
    to_py(py, &res)
}

#[pyfunction]
#[pyo3(signature = (values, n, d, h, points, seed = 0))]
fn certify(values: Vec<f64>, n: usize, d: usize, h: &PyGraph, points: Vec<Vec<f64>>, seed: u64) -> PyResult<bool> {
    let v = DistanceMultiset::new(values).map_err(err)?;
    unl::certify(&v, n, d, &h.0, &configuration(points)?, seed).map_err(err)
}

fn bijection(g: &PyGraph, h: &PyGraph, map: Option<Vec<usize>>) -> PyResult<EdgeBijection> {
    match map {
        Some(m) => EdgeBijection::new(g.0.clone(), h.0.clone(), m),
        None => EdgeBijection::by_index(g.0.clone(), h.0.clone()),
    }
    .map_err(err)
}

/// Whether `map` (edge `e` of `g` to edge `map[e]` of `h`; default identity)
/// carries circuits onto circuits.
#[pyfunction]
#[pyo3(signature = (g, h, map = None))]
fn is_cycle_isomorphism(g: &PyGraph, h: &PyGraph, map: Option<Vec<usize>>) -> PyResult<bool> {
    core_graph::is_cycle_isomorphism(&bijection(g, h, map)?).map_err(err)
}

#[pyfunction]
#[pyo3(signature = (g, h, map = None))]
fn vertex_map_from_edge_bijection(g: &PyGraph, h: &PyGraph, map: Option<Vec<usize>>) -> PyResult<Option<Vec<usize>>> {
    Ok(core_graph::vertex_map_from_edge_bijection(&bijection(g, h, map)?).map(|v| v.as_slice().to_vec()))
}

#[pyfunction]
fn whitney_reversal(g: &PyGraph, cut: (usize, usize), side: Vec<usize>) -> PyResult<PyGraph> {
    core_graph::whitney_reversal(&g.0, cut, &side).map(PyGraph).map_err(err)
}

#[pyfunction]
#[pyo3(signature = (n, m, no_isolated = true))]
fn enumerate_graphs(n: usize, m: usize, no_isolated: bool) -> PyResult<Vec<PyGraph>> {
    Ok(core_graph::enumerate_graphs(n, m, no_isolated).map_err(err)?.into_iter().map(PyGraph).collect())
}

#[pyfunction]
#[pyo3(signature = (g, edge, new_edge, d, seed = 0))]
fn not_rr_pair(g: &PyGraph, edge: usize, new_edge: (usize, usize), d: usize, seed: u64) -> PyResult<(PyGraph, PyGraph)> {
    let (a, b) = unl::not_rr_pair(&g.0, edge, new_edge, d, seed).map_err(err)?;
    Ok((PyGraph(a), PyGraph(b)))
}

#[pymodule]
fn rigidity(m: &Bound<'_, PyModule>) -> PyResult<()> {
    m.add("RigidityError", m.py().get_type::<RigidityError>())?;
    m.add_class::<PyGraph>()?;
    m.add_function(wrap_pyfunction!(analyze, m)?)?;
    m.add_function(wrap_pyfunction!(is_generically_locally_rigid, m)?)?;
    m.add_function(wrap_pyfunction!(is_generically_globally_rigid, m)?)?;
    m.add_function(wrap_pyfunction!(measurement_variety_dim, m)?)?;
    m.add_function(wrap_pyfunction!(gauss_fiber_dim, m)?)?;
    m.add_function(wrap_pyfunction!(measure, m)?)?;
    m.add_function(wrap_pyfunction!(random_configuration, m)?)?;
    m.add_function(wrap_pyfunction!(realize, m)?)?;
    m.add_function(wrap_pyfunction!(is_member, m)?)?;
    m.add_function(wrap_pyfunction!(congruent, m)?)?;
    m.add_function(wrap_pyfunction!(reconstruct, m)?)?;
    m.add_function(wrap_pyfunction!(certify, m)?)?;
    m.add_function(wrap_pyfunction!(is_cycle_isomorphism, m)?)?;
    m.add_function(wrap_pyfunction!(vertex_map_from_edge_bijection, m)?)?;
    m.add_function(wrap_pyfunction!(whitney_reversal, m)?)?;
    m.add_function(wrap_pyfunction!(enumerate_graphs, m)?)?;
    m.add_function(wrap_pyfunction!(not_rr_pair, m)?)?;
    Ok(())
}
