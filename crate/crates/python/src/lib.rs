//! Python bindings.

use pyo3::exceptions::{PyRuntimeError, PyValueError};
use pyo3::prelude::*;
use pyo3::types::{PyDict, PyList};
use serde_json::Value;

use outerdom_core::bounds::{bounds_report, check_li_counterexample, essential_pair_count};
use outerdom_core::domination::{gamma_exact_bb_with_limit, gamma_mop_dp, is_dominating as core_is_dominating};
use outerdom_core::dot::{ham_to_dot, mop_to_dot};
use outerdom_core::generators::{self, NamedGraph};
use outerdom_core::hamiltonian::{self, PipelineConfig, Side};
use outerdom_core::reductions;
use outerdom_core::SimpleGraph;

fn value_err(e: impl std::fmt::Display) -> PyErr {
    PyValueError::new_err(e.to_string())
}

fn to_py(py: Python<'_>, v: &Value) -> PyResult<Py<PyAny>> {
    Ok(match v {
        Value::Null => py.None(),
        Value::Bool(b) => b.into_pyobject(py)?.to_owned().into_any().unbind(),
        Value::Number(n) => match (n.as_u64(), n.as_i64()) {
            (Some(u), _) => u.into_pyobject(py)?.into_any().unbind(),
            (None, Some(i)) => i.into_pyobject(py)?.into_any().unbind(),
            _ => n.as_f64().unwrap_or(f64::NAN).into_pyobject(py)?.into_any().unbind(),
        },
        Value::String(s) => s.into_pyobject(py)?.into_any().unbind(),
        Value::Array(items) => {
            let list = PyList::empty(py);
            for item in items {
                list.append(to_py(py, item)?)?;
            }
            list.into_any().unbind()
        }
        Value::Object(map) => {
            let dict = PyDict::new(py);
            for (k, item) in map {
                dict.set_item(k, to_py(py, item)?)?;
            }
            dict.into_any().unbind()
        }
    })
}

fn serialize<T: serde::Serialize>(py: Python<'_>, value: &T) -> PyResult<Py<PyAny>> {
    let v = serde_json::to_value(value).map_err(|e| PyRuntimeError::new_err(e.to_string()))?;
    to_py(py, &v)
}

/// A maximal outerplane graph on boundary positions `1..=n`.
#[pyclass(name = "MopGraph", frozen, eq, hash, skip_from_py_object)]
#[derive(Clone, PartialEq, Eq, Hash)]
struct PyMop(outerdom_core::MopGraph);

#[pymethods]
impl PyMop {
    #[new]
    fn new(n: usize, chords: Vec<(usize, usize)>) -> PyResult<Self> {
        outerdom_core::MopGraph::new(n, &chords).map(PyMop).map_err(value_err)
    }

    #[staticmethod]
    fn from_json(text: &str) -> PyResult<Self> {
        serde_json::from_str(text).map(PyMop).map_err(value_err)
    }

    fn to_json(&self) -> String {
        serde_json::to_string(&self.0).expect("graphs serialize")
    }

    #[getter]
    fn n(&self) -> usize {
        self.0.n()
    }

    #[getter]
    fn chords(&self) -> Vec<(usize, usize)> {
        self.0.chords().to_vec()
    }

    fn edges(&self) -> Vec<(usize, usize)> {
        self.0.edges()
    }

    fn degree(&self, v: usize) -> PyResult<usize> {
        if v == 0 || v > self.0.n() {
            return Err(value_err(format!("vertex {v} out of range")));
        }
        Ok(self.0.degree(v))
    }

    fn degree_two_vertices(&self) -> Vec<usize> {
        self.0.degree_two_vertices()
    }

    fn is_striped(&self) -> bool {
        self.0.is_striped()
    }

    fn essential_pair_count(&self) -> usize {
        essential_pair_count(&self.0)
    }

    fn domination_number(&self) -> usize {
        gamma_mop_dp(&self.0).size
    }

    /// Lexicographically least minimum dominating set.
    fn minimum_dominating_set(&self) -> Vec<usize> {
        gamma_mop_dp(&self.0).vertices
    }

    fn violates_li_bound(&self) -> bool {
        check_li_counterexample(&self.0)
    }

    fn bounds(&self, py: Python<'_>) -> PyResult<Py<PyAny>> {
        serialize(py, &bounds_report(&self.0, true))
    }

    /// Reduction trace as a dict; `trace["set"]["vertices"]` is the set.
    fn dominate(&self, py: Python<'_>) -> PyResult<Py<PyAny>> {
        let trace = reductions::dominate_mop(&self.0).map_err(|e| PyRuntimeError::new_err(e.to_string()))?;
        serialize(py, &trace)
    }

    fn to_dot(&self) -> String {
        mop_to_dot(&self.0, &gamma_mop_dp(&self.0).vertices)
    }

    fn __repr__(&self) -> String {
        format!("MopGraph(n={}, chords={:?})", self.0.n(), self.0.chords())
    }
}

/// A plane triangulation with Hamilton cycle `1..=n`.
#[pyclass(name = "HamTriangulation", frozen, eq, hash, skip_from_py_object)]
#[derive(Clone, PartialEq, Eq, Hash)]
struct PyHam(hamiltonian::HamTriangulation);

#[pymethods]
impl PyHam {
    #[new]
    fn new(n: usize, inner: Vec<(usize, usize)>, outer: Vec<(usize, usize)>) -> PyResult<Self> {
        hamiltonian::build_ht(n, &inner, &outer).map(PyHam).map_err(value_err)
    }

    #[getter]
    fn n(&self) -> usize {
        self.0.n()
    }

    #[getter]
    fn inner(&self) -> PyMop {
        PyMop(self.0.side_graph(Side::Interior).clone())
    }

    #[getter]
    fn outer(&self) -> PyMop {
        PyMop(self.0.side_graph(Side::Exterior).clone())
    }

    fn edges(&self) -> Vec<(usize, usize)> {
        self.0.full_graph().edges()
    }

    fn two_vertices(&self) -> Vec<usize> {
        self.0.two_vertices()
    }

    fn is_good_cycle(&self) -> bool {
        self.0.good_cycle_check()
    }

    #[pyo3(signature = (limit = None))]
    fn domination_number(&self, limit: Option<usize>) -> PyResult<usize> {
        let limit = limit.unwrap_or(outerdom_core::domination::DEFAULT_BB_LIMIT);
        gamma_exact_bb_with_limit(&self.0.full_graph(), limit)
            .map(|d| d.size)
            .map_err(value_err)
    }

    /// Runs the triangulation pipeline; returns `(set, report)`.
    fn dominate(&self, py: Python<'_>) -> PyResult<(Vec<usize>, Py<PyAny>)> {
        let (set, report) = hamiltonian::dominate_triangulation_with(&self.0, PipelineConfig { bb_limit: 64 })
            .map_err(|e| PyRuntimeError::new_err(e.to_string()))?;
        Ok((set.vertices, serialize(py, &report)?))
    }

    fn to_dot(&self) -> String {
        ham_to_dot(&self.0, &[])
    }

    fn __repr__(&self) -> String {
        format!("{:?}", self.0)
    }
}

fn named_to_py(py: Python<'_>, g: NamedGraph) -> PyResult<Py<PyAny>> {
    match g {
        NamedGraph::Mop(m) => Ok(Py::new(py, PyMop(m))?.into_any()),
        NamedGraph::Ham(t) => Ok(Py::new(py, PyHam(t))?.into_any()),
    }
}

#[pyfunction]
fn named_graph(py: Python<'_>, name: &str) -> PyResult<Py<PyAny>> {
    named_to_py(py, generators::named_graph(name).map_err(value_err)?)
}

#[pyfunction]
fn random_mop(n: usize, seed: u64) -> PyResult<PyMop> {
    if n < 3 {
        return Err(value_err("n must be at least 3"));
    }
    Ok(PyMop(generators::random_mop(n, seed)))
}

#[pyfunction]
fn random_ht(n: usize, seed: u64) -> PyResult<PyHam> {
    if n < 4 {
        return Err(value_err("n must be at least 4"));
    }
    Ok(PyHam(generators::random_ht(n, seed)))
}

#[pyfunction]
fn enumerate_mops(n: usize) -> PyResult<Vec<PyMop>> {
    Ok(generators::enumerate_mops(n).map_err(value_err)?.map(PyMop).collect())
}

#[pyfunction]
fn figure2_family(m: usize) -> PyResult<PyMop> {
    if m == 0 {
        return Err(value_err("m must be at least 1"));
    }
    Ok(PyMop(generators::figure2_family(m)))
}

/// Exact domination number of an arbitrary graph on `1..=n`.
#[pyfunction]
#[pyo3(signature = (n, edges, limit = 32))]
fn gamma_exact(n: usize, edges: Vec<(usize, usize)>, limit: usize) -> PyResult<Vec<usize>> {
    let g = SimpleGraph::new(n, &edges).map_err(value_err)?;
    gamma_exact_bb_with_limit(&g, limit).map(|d| d.vertices).map_err(value_err)
}

#[pyfunction]
fn is_dominating(n: usize, edges: Vec<(usize, usize)>, set: Vec<usize>) -> PyResult<bool> {
    let g = SimpleGraph::new(n, &edges).map_err(value_err)?;
    core_is_dominating(&g, &set).map_err(value_err)
}

/// Replays a JSON reduction trace; raises `ValueError` if it does not check.
#[pyfunction]
fn verify_trace(text: &str) -> PyResult<()> {
    let trace: reductions::ReductionTrace = serde_json::from_str(text).map_err(value_err)?;
    reductions::verify_trace(&trace).map_err(value_err)
}

#[pymodule]
#[pyo3(name = "outerdom")]
fn outerdom_py(m: &Bound<'_, PyModule>) -> PyResult<()> {
    m.add_class::<PyMop>()?;
    m.add_class::<PyHam>()?;
    m.add_function(wrap_pyfunction!(named_graph, m)?)?;
    m.add_function(wrap_pyfunction!(random_mop, m)?)?;
    m.add_function(wrap_pyfunction!(random_ht, m)?)?;
    m.add_function(wrap_pyfunction!(enumerate_mops, m)?)?;
    m.add_function(wrap_pyfunction!(figure2_family, m)?)?;
    m.add_function(wrap_pyfunction!(gamma_exact, m)?)?;
    m.add_function(wrap_pyfunction!(is_dominating, m)?)?;
    m.add_function(wrap_pyfunction!(verify_trace, m)?)?;
    Ok(())
}
