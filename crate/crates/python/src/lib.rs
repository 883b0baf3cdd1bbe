//! Python bindings for the `cayley_drg` library.

use cayley_drg::bits::BitSet;
use cayley_drg::cayley::{build, CayleyGraph as CoreGraph, SymmetricSet};
use cayley_drg::classify::{
    census as core_census, construct_family, CensusMode, CensusOptions, DEFAULT_MAX_SETS,
};
use cayley_drg::designs::{bipartite_from_rows, diffset_verify};
use cayley_drg::drg::{check_drg, recognize, srg_params, FamilyTag};
use cayley_drg::fourier::fourier_audit as core_fourier_audit;
use cayley_drg::group::GroupDescriptor;
use cayley_drg::structure::{antipodal_classes, is_bipartite};
use cayley_drg::Error;
use pyo3::exceptions::{PyOverflowError, PyValueError};
use pyo3::prelude::*;
use pyo3::types::PyAny;

fn py_err(e: Error) -> PyErr {
    match e {
        Error::BudgetExceeded { .. } => PyOverflowError::new_err(e.to_string()),
        _ => PyValueError::new_err(e.to_string()),
    }
}

fn to_py<'py>(py: Python<'py>, value: &impl serde::Serialize) -> PyResult<Bound<'py, PyAny>> {
    let text = serde_json::to_string(value).map_err(|e| PyValueError::new_err(e.to_string()))?;
    py.import("json")?.call_method1("loads", (text,))
}

/// `Z_m + Z_q`, from "3^2x3", "Zn:27" or "Zn:16x2".
#[pyclass(name = "Group", frozen, skip_from_py_object)]
#[derive(Clone)]
struct PyGroup {
    inner: GroupDescriptor,
}

#[pymethods]
impl PyGroup {
    #[new]
    fn new(spec: &str) -> PyResult<Self> {
        Ok(PyGroup {
            inner: spec.parse().map_err(py_err)?,
        })
    }

    #[staticmethod]
    fn pair(p: usize, s: u32) -> PyResult<Self> {
        Ok(PyGroup {
            inner: GroupDescriptor::prime_power_pair(p, s).map_err(py_err)?,
        })
    }

    #[getter]
    fn order(&self) -> usize {
        self.inner.order()
    }

    fn elements(&self) -> Vec<(usize, usize)> {
        self.inner.elements().map(|e| (e.first, e.second)).collect()
    }

    /// Inverse classes as lists of elements.
    fn inverse_classes(&self) -> Vec<Vec<(usize, usize)>> {
        self.inner
            .inverse_classes()
            .iter()
            .map(|c| {
                c.iter()
                    .map(|&r| {
                        let e = self.inner.element_at(r);
                        (e.first, e.second)
                    })
                    .collect()
            })
            .collect()
    }

    fn automorphism_count(&self) -> PyResult<usize> {
        Ok(self.inner.automorphism_group().map_err(py_err)?.len())
    }

    fn __str__(&self) -> String {
        self.inner.to_string()
    }

    fn __repr__(&self) -> String {
        format!("Group('{}')", self.inner)
    }
}

fn parse_set(group: GroupDescriptor, set: &str) -> PyResult<SymmetricSet> {
    if set.trim() == "all" {
        return Ok(SymmetricSet::all_nonidentity(group));
    }
    let elements = group.parse_elements(set).map_err(py_err)?;
    SymmetricSet::from_elements(group, &elements).map_err(py_err)
}

/// A Cayley graph with its connection set.
#[pyclass(name = "CayleyGraph", frozen)]
struct PyCayleyGraph {
    inner: CoreGraph,
}

#[pymethods]
impl PyCayleyGraph {
    /// `set` is an element list such as "(1,0),(2,0)" or "all".
    #[new]
    fn new(group: &PyGroup, set: &str) -> PyResult<Self> {
        Ok(PyCayleyGraph {
            inner: build(parse_set(group.inner, set)?),
        })
    }

    #[getter]
    fn order(&self) -> usize {
        self.inner.order()
    }

    #[getter]
    fn valency(&self) -> usize {
        self.inner.valency()
    }

    fn group(&self) -> PyGroup {
        PyGroup {
            inner: self.inner.group(),
        }
    }

    fn connection_set(&self) -> Vec<String> {
        self.inner.connection_set().to_strings()
    }

    fn is_connected(&self) -> bool {
        self.inner.is_connected()
    }

    /// "{b_0,...; c_1,...}" if distance-regular, else None.
    fn intersection_array(&self) -> Option<String> {
        check_drg(&self.inner).map(|a| a.to_string())
    }

    fn family(&self) -> Option<String> {
        check_drg(&self.inner).map(|a| recognize(&a).to_string())
    }

    fn is_bipartite(&self) -> bool {
        is_bipartite(self.inner.graph()).is_some()
    }

    fn is_antipodal(&self) -> bool {
        check_drg(&self.inner).is_some_and(|a| {
            a.diameter() >= 2 && antipodal_classes(self.inner.graph(), a.diameter()).is_some()
        })
    }

    fn edges(&self) -> Vec<(usize, usize)> {
        let g = self.inner.graph();
        (0..g.order())
            .flat_map(|u| {
                g.neighbors(u)
                    .iter()
                    .filter(move |&v| v > u)
                    .map(move |v| (u, v))
            })
            .collect()
    }

    fn to_graph6(&self) -> String {
        self.inner.to_graph6()
    }

    fn __repr__(&self) -> String {
        format!(
            "CayleyGraph({}, {{{}}})",
            self.inner.group(),
            self.connection_set().join(",")
        )
    }
}

/// Verdict for one connection set, as a dict.
#[pyfunction]
fn check<'py>(py: Python<'py>, group: &PyGroup, set: &str) -> PyResult<Bound<'py, PyAny>> {
    let graph = build(parse_set(group.inner, set)?);
    let array = check_drg(&graph);
    let report = serde_json::json!({
        "drg": array.is_some(),
        "connected": graph.is_connected(),
        "array": array,
        "family": array.as_ref().map(recognize),
        "srg": array.as_ref().and_then(srg_params),
    });
    to_py(py, &report)
}

/// Exhaustive census; returns the JSON report as a dict.
#[pyfunction]
#[pyo3(signature = (group, threads = 1, partitions = 1, pruning = true, orbit_first = false, max_sets = DEFAULT_MAX_SETS))]
fn census<'py>(
    py: Python<'py>,
    group: &PyGroup,
    threads: usize,
    partitions: usize,
    pruning: bool,
    orbit_first: bool,
    max_sets: u128,
) -> PyResult<Bound<'py, PyAny>> {
    let opts = CensusOptions {
        threads,
        partitions,
        pruning,
        max_sets,
        mode: if orbit_first {
            CensusMode::OrbitFirst {
                node_budget: cayley_drg::classify::DEFAULT_NODE_BUDGET,
            }
        } else {
            CensusMode::Full
        },
        ..CensusOptions::default()
    };
    let g = group.inner;
    let report = py.detach(|| core_census(g, &opts)).map_err(py_err)?;
    to_py(py, &report)
}

/// Family constructions: "complete", "multipartite" (part size m),
/// "td-line" (r parallel classes).
#[pyfunction]
#[pyo3(signature = (family, group, r = None, part_size = None))]
fn construct(
    family: &str,
    group: &PyGroup,
    r: Option<usize>,
    part_size: Option<usize>,
) -> PyResult<PyCayleyGraph> {
    let g = group.inner;
    let need = |v: Option<usize>, name: &str| {
        v.ok_or_else(|| PyValueError::new_err(format!("{name} is required")))
    };
    let tag = match family {
        "complete" => FamilyTag::Complete,
        "multipartite" => {
            let m = need(part_size, "part_size")?;
            if m == 0 || !g.order().is_multiple_of(m) {
                return Err(PyValueError::new_err(format!(
                    "part size {m} does not divide {}",
                    g.order()
                )));
            }
            FamilyTag::CompleteMultipartite {
                parts: g.order() / m,
                part_size: m,
            }
        }
        "td-line" => FamilyTag::TdLineGraph {
            r: need(r, "r")?,
            v: g.first_mod(),
        },
        other => return Err(PyValueError::new_err(format!("unknown family {other:?}"))),
    };
    Ok(PyCayleyGraph {
        inner: construct_family(g, tag).map_err(py_err)?,
    })
}

#[pyfunction]
fn fourier_audit<'py>(py: Python<'py>, graph: &PyCayleyGraph) -> PyResult<Bound<'py, PyAny>> {
    let audit = core_fourier_audit(&graph.inner).map_err(py_err)?;
    to_py(py, &audit)
}

/// Difference-set certificate for a list of elements, or None.
#[pyfunction]
fn difference_set<'py>(
    py: Python<'py>,
    group: &PyGroup,
    set: &str,
) -> PyResult<Option<Bound<'py, PyAny>>> {
    let g = group.inner;
    let mask: BitSet = g
        .parse_elements(set)
        .map_err(py_err)?
        .into_iter()
        .map(|e| g.rank(e))
        .collect();
    diffset_verify(g, &mask).map(|c| to_py(py, &c)).transpose()
}

/// Bipartite construction over `Z_n + Z_2` from two rows of odd residues.
#[pyfunction(name = "bipartite_from_rows")]
fn bipartite_from_rows_py<'py>(
    py: Python<'py>,
    n: usize,
    r0: Vec<usize>,
    r1: Vec<usize>,
) -> PyResult<Bound<'py, PyAny>> {
    let row = |v: Vec<usize>| v.into_iter().map(|x| x % n.max(1)).collect::<BitSet>();
    let c = bipartite_from_rows(n, &row(r0), &row(r1)).map_err(py_err)?;
    to_py(py, &c)
}

#[pymodule]
fn cayley_drg_py(m: &Bound<'_, PyModule>) -> PyResult<()> {
    m.add_class::<PyGroup>()?;
    m.add_class::<PyCayleyGraph>()?;
    m.add_function(wrap_pyfunction!(check, m)?)?;
    m.add_function(wrap_pyfunction!(census, m)?)?;
    m.add_function(wrap_pyfunction!(construct, m)?)?;
    m.add_function(wrap_pyfunction!(fourier_audit, m)?)?;
    m.add_function(wrap_pyfunction!(difference_set, m)?)?;
    m.add_function(wrap_pyfunction!(bipartite_from_rows_py, m)?)?;
    Ok(())
}
