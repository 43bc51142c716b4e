//! Python bindings: permutations with their block statistics, the
//! recursive bijection with traces, tableaux and RSK, exact Catalan and
//! ballot arithmetic, level-set expansions, and the verification drivers.
//!
//! Structured results (expansions, certificates, reports) cross the
//! boundary as plain dicts and lists mirroring the library's JSON forms.

use num_bigint::BigUint;
use pyo3::exceptions::PyValueError;
use pyo3::prelude::*;
use pyo3::types::PyModule;

use catalan_blocks::bijection;
use catalan_blocks::catalan;
use catalan_blocks::perm;
use catalan_blocks::symfun;
use catalan_blocks::tableaux;
use catalan_blocks::verify;

fn value_error(e: impl std::fmt::Display) -> PyErr {
    PyValueError::new_err(e.to_string())
}

fn json_to_py(py: Python<'_>, v: &serde_json::Value) -> PyResult<PyObject> {
    // Route through the stdlib parser; the payloads are plain JSON.
    let json = py.import("json")?;
    Ok(json.call_method1("loads", (v.to_string(),))?.unbind())
}

/// A permutation of {1, ..., n} in one-line notation.
#[pyclass(name = "Permutation")]
#[derive(Clone)]
struct PyPermutation {
    inner: perm::Permutation,
}

#[pymethods]
impl PyPermutation {
    #[new]
    fn new(word: Vec<usize>) -> PyResult<Self> {
        perm::Permutation::from_word(word)
            .map(|inner| PyPermutation { inner })
            .map_err(value_error)
    }

    #[staticmethod]
    fn identity(n: usize) -> PyResult<Self> {
        if n > perm::MAX_LEN {
            return Err(value_error(format!("length {n} exceeds the limit {}", perm::MAX_LEN)));
        }
        Ok(PyPermutation { inner: perm::Permutation::identity(n) })
    }

    fn word(&self) -> Vec<usize> {
        self.inner.to_vec()
    }

    fn inverse(&self) -> Self {
        PyPermutation { inner: self.inner.inverse() }
    }

    fn direct_sum(&self, other: PyRef<'_, Self>) -> PyResult<Self> {
        if self.inner.len() + other.inner.len() > perm::MAX_LEN {
            return Err(value_error("direct sum exceeds the length limit"));
        }
        Ok(PyPermutation { inner: self.inner.direct_sum(&other.inner) })
    }

    fn block_number(&self) -> usize {
        self.inner.block_number()
    }

    fn blocks(&self) -> Vec<Self> {
        self.inner.blocks().into_iter().map(|inner| PyPermutation { inner }).collect()
    }

    /// Descent positions, ascending.
    fn des(&self) -> Vec<usize> {
        self.inner.des_set().to_vec()
    }

    /// Positions of the left-to-right maxima, ascending.
    fn ltr(&self) -> Vec<usize> {
        self.inner.ltr_set().to_vec()
    }

    fn ldes(&self) -> usize {
        self.inner.ldes()
    }

    fn ides(&self) -> usize {
        self.inner.ides()
    }

    fn imaj(&self) -> usize {
        self.inner.imaj()
    }

    fn avoids(&self, pattern: PyRef<'_, Self>) -> bool {
        self.inner.avoids(&pattern.inner)
    }

    /// Contiguous digits for n <= 9, space-separated otherwise.
    fn compact(&self) -> String {
        self.inner.to_compact_string()
    }

    fn __len__(&self) -> usize {
        self.inner.len()
    }

    fn __str__(&self) -> String {
        self.inner.to_string()
    }

    fn __repr__(&self) -> String {
        format!("Permutation({:?})", self.inner.to_vec())
    }

    fn __eq__(&self, other: &Bound<'_, PyAny>) -> bool {
        match other.downcast::<PyPermutation>() {
            Ok(b) => b.borrow().inner == self.inner,
            Err(_) => false,
        }
    }

    fn __hash__(&self) -> u64 {
        use std::hash::{Hash, Hasher};
        let mut h = std::collections::hash_map::DefaultHasher::new();
        self.inner.to_vec().hash(&mut h);
        h.finish()
    }
}

/// One level of the bijection's recursion.
#[pyclass(name = "TraceStep")]
struct PyTraceStep {
    inner: bijection::TraceStep,
}

#[pymethods]
impl PyTraceStep {
    #[getter]
    fn level(&self) -> usize {
        self.inner.level
    }

    #[getter]
    fn case(&self) -> String {
        self.inner.case.to_string()
    }

    #[getter]
    fn cycle(&self) -> Option<Vec<usize>> {
        self.inner.cycle.clone()
    }

    #[getter]
    fn pi(&self) -> PyPermutation {
        PyPermutation { inner: self.inner.pi.clone() }
    }

    #[getter]
    fn f(&self) -> PyPermutation {
        PyPermutation { inner: self.inner.f.clone() }
    }

    fn __str__(&self) -> String {
        self.inner.render()
    }

    fn __repr__(&self) -> String {
        self.inner.render()
    }
}

/// A standard Young tableau, possibly of skew shape.
#[pyclass(name = "StandardTableau")]
#[derive(Clone)]
struct PyStandardTableau {
    inner: tableaux::StandardTableau,
}

#[pymethods]
impl PyStandardTableau {
    /// Build a straight-shape tableau from its rows.
    #[new]
    fn new(rows: Vec<Vec<usize>>) -> PyResult<Self> {
        tableaux::StandardTableau::from_rows(rows)
            .map(|inner| PyStandardTableau { inner })
            .map_err(value_error)
    }

    fn rows(&self) -> Vec<Vec<usize>> {
        self.inner.rows().to_vec()
    }

    fn outer(&self) -> Vec<usize> {
        self.inner.shape().outer().parts().to_vec()
    }

    fn inner_shape(&self) -> Vec<usize> {
        self.inner.shape().inner().parts().to_vec()
    }

    fn size(&self) -> usize {
        self.inner.size()
    }

    fn height(&self) -> usize {
        self.inner.height()
    }

    fn des(&self) -> Vec<usize> {
        self.inner.des_set().to_vec()
    }

    fn ldes(&self) -> usize {
        self.inner.ldes()
    }

    fn first_descent(&self) -> usize {
        self.inner.first_descent()
    }

    fn __str__(&self) -> String {
        self.inner.to_string()
    }

    fn __repr__(&self) -> String {
        format!("StandardTableau({:?})", self.inner.rows())
    }

    fn __eq__(&self, other: &Bound<'_, PyAny>) -> bool {
        match other.downcast::<PyStandardTableau>() {
            Ok(b) => b.borrow().inner == self.inner,
            Err(_) => false,
        }
    }
}

#[pyfunction]
#[pyo3(name = "f_map")]
fn py_f_map(p: PyRef<'_, PyPermutation>) -> PyResult<PyPermutation> {
    bijection::f_map(&p.inner)
        .map(|inner| PyPermutation { inner })
        .map_err(value_error)
}

#[pyfunction]
#[pyo3(name = "f_inverse")]
fn py_f_inverse(p: PyRef<'_, PyPermutation>) -> PyResult<PyPermutation> {
    bijection::f_inverse(&p.inner)
        .map(|inner| PyPermutation { inner })
        .map_err(value_error)
}

#[pyfunction]
#[pyo3(name = "trace")]
fn py_trace(p: PyRef<'_, PyPermutation>) -> PyResult<Vec<PyTraceStep>> {
    bijection::trace(&p.inner)
        .map(|steps| steps.into_iter().map(|inner| PyTraceStep { inner }).collect())
        .map_err(value_error)
}

#[pyfunction]
#[pyo3(name = "enumerate_avoiding")]
fn py_enumerate_avoiding(
    py: Python<'_>,
    n: usize,
    patterns: Vec<Py<PyPermutation>>,
) -> PyResult<Vec<PyPermutation>> {
    if n > perm::MAX_LEN {
        return Err(value_error(format!("length {n} exceeds the limit {}", perm::MAX_LEN)));
    }
    let pats: Vec<perm::Permutation> =
        patterns.iter().map(|p| p.borrow(py).inner.clone()).collect();
    Ok(perm::enumerate_avoiding(n, &pats)
        .map(|inner| PyPermutation { inner })
        .collect())
}

#[pyfunction]
#[pyo3(name = "rsk")]
fn py_rsk(p: PyRef<'_, PyPermutation>) -> (PyStandardTableau, PyStandardTableau) {
    let (pt, qt) = tableaux::rsk(&p.inner);
    (PyStandardTableau { inner: pt }, PyStandardTableau { inner: qt })
}

#[pyfunction]
#[pyo3(name = "rsk_inverse")]
fn py_rsk_inverse(
    p_tab: PyRef<'_, PyStandardTableau>,
    q_tab: PyRef<'_, PyStandardTableau>,
) -> PyResult<PyPermutation> {
    tableaux::rsk_inverse(&p_tab.inner, &q_tab.inner)
        .map(|inner| PyPermutation { inner })
        .map_err(value_error)
}

fn build_skew(outer: Vec<usize>, inner: Vec<usize>) -> PyResult<tableaux::SkewShape> {
    let outer = tableaux::Shape::new(outer).map_err(value_error)?;
    let inner = tableaux::Shape::new(inner).map_err(value_error)?;
    tableaux::SkewShape::new(outer, inner).map_err(value_error)
}

#[pyfunction]
#[pyo3(name = "syt_enumerate", signature = (outer, inner = vec![]))]
fn py_syt_enumerate(outer: Vec<usize>, inner: Vec<usize>) -> PyResult<Vec<PyStandardTableau>> {
    let shape = build_skew(outer, inner)?;
    tableaux::syt_enumerate(&shape)
        .map(|ts| ts.into_iter().map(|inner| PyStandardTableau { inner }).collect())
        .map_err(value_error)
}

/// Rotate a two-row skew shape by a half turn inside the 2 x n box;
/// returns the (outer, inner) parts of the image.
#[pyfunction]
#[pyo3(name = "rotate_180", signature = (outer, inner, n))]
fn py_rotate_180(
    outer: Vec<usize>,
    inner: Vec<usize>,
    n: usize,
) -> PyResult<(Vec<usize>, Vec<usize>)> {
    let shape = build_skew(outer, inner)?;
    let rotated = tableaux::rotate_180(&shape, n).map_err(value_error)?;
    Ok((rotated.outer().parts().to_vec(), rotated.inner().parts().to_vec()))
}

#[pyfunction]
#[pyo3(name = "catalan")]
fn py_catalan(n: usize) -> BigUint {
    catalan::catalan(n)
}

#[pyfunction]
#[pyo3(name = "ballot")]
fn py_ballot(n: usize, k: usize) -> PyResult<BigUint> {
    catalan::ballot(n, k).map_err(value_error)
}

#[pyfunction]
#[pyo3(name = "gf_coefficients")]
fn py_gf_coefficients(k: usize, n_max: usize) -> Vec<BigUint> {
    catalan::gf_coefficients(k, n_max)
}

fn perms_of(py: Python<'_>, perms: &[Py<PyPermutation>]) -> Vec<perm::Permutation> {
    perms.iter().map(|p| p.borrow(py).inner.clone()).collect()
}

#[pyfunction]
#[pyo3(name = "q_of")]
fn py_q_of(py: Python<'_>, degree: usize, perms: Vec<Py<PyPermutation>>) -> PyResult<PyObject> {
    let owned = perms_of(py, &perms);
    let v = symfun::q_of(degree, owned.iter()).map_err(value_error)?;
    json_to_py(py, &v.to_json())
}

#[pyfunction]
#[pyo3(name = "schur_expand")]
fn py_schur_expand(
    py: Python<'_>,
    degree: usize,
    perms: Vec<Py<PyPermutation>>,
) -> PyResult<PyObject> {
    let owned = perms_of(py, &perms);
    let v = symfun::q_of(degree, owned.iter()).map_err(value_error)?;
    let payload = match symfun::schur_expand(&v).map_err(value_error)? {
        symfun::Expansion::Symmetric(sv) => {
            serde_json::json!({ "symmetric": true, "schur": sv.to_json() })
        }
        symfun::Expansion::NotSymmetric(w) => {
            serde_json::json!({ "symmetric": false, "witness": w.to_json() })
        }
    };
    json_to_py(py, &payload)
}

#[pyfunction]
#[pyo3(name = "is_schur_positive")]
fn py_is_schur_positive(
    py: Python<'_>,
    degree: usize,
    perms: Vec<Py<PyPermutation>>,
) -> PyResult<PyObject> {
    let owned = perms_of(py, &perms);
    let v = symfun::q_of(degree, owned.iter()).map_err(value_error)?;
    let cert = symfun::is_schur_positive(&v).map_err(value_error)?;
    json_to_py(py, &cert.to_json())
}

#[pyfunction]
#[pyo3(name = "check_pair")]
fn py_check_pair(
    py: Python<'_>,
    patterns: Vec<Py<PyPermutation>>,
    statistic: &str,
    n: usize,
) -> PyResult<PyObject> {
    let stat: symfun::Statistic = statistic.parse().map_err(value_error)?;
    let pats = perms_of(py, &patterns);
    let report = symfun::check_pair(&pats, stat, n).map_err(value_error)?;
    let levels: Vec<serde_json::Value> = report
        .levels
        .iter()
        .map(|l| {
            serde_json::json!({
                "value": l.value,
                "count": l.count,
                "certificate": l.certificate.to_json(),
            })
        })
        .collect();
    let payload = serde_json::json!({
        "patterns": report.patterns.iter().map(|p| p.to_vec()).collect::<Vec<_>>(),
        "statistic": report.statistic.to_string(),
        "n": report.n,
        "all_positive": report.all_positive(),
        "levels": levels,
    });
    json_to_py(py, &payload)
}

#[pyfunction]
#[pyo3(name = "bl_level_set")]
fn py_bl_level_set(n: usize, k: usize) -> Vec<PyPermutation> {
    symfun::bl_level_set(n, k)
        .into_iter()
        .map(|inner| PyPermutation { inner })
        .collect()
}

#[pyfunction]
#[pyo3(name = "ldes_inverse_level_set")]
fn py_ldes_inverse_level_set(n: usize, k: usize) -> Vec<PyPermutation> {
    symfun::ldes_inverse_level_set(n, k)
        .into_iter()
        .map(|inner| PyPermutation { inner })
        .collect()
}

/// Run one verification driver; returns the report dicts in ascending n.
#[pyfunction]
#[pyo3(name = "verify", signature = (command, n_max = None))]
fn py_verify(py: Python<'_>, command: &str, n_max: Option<usize>) -> PyResult<PyObject> {
    let reports = match command {
        "equidist" => verify::verify_equidist(n_max.unwrap_or(verify::DEFAULT_EQUIDIST_N)),
        "schur" => verify::verify_schur(n_max.unwrap_or(verify::DEFAULT_SCHUR_N)),
        "cardinalities" => {
            verify::verify_cardinalities(n_max.unwrap_or(verify::DEFAULT_CARDINALITIES_N))
        }
        "hilbert" => verify::verify_hilbert(n_max.unwrap_or(verify::DEFAULT_HILBERT_N)),
        "pairs" => verify::verify_pairs(n_max.unwrap_or(verify::DEFAULT_PAIRS_N)),
        other => return Err(value_error(format!("unknown verify command {other:?}"))),
    }
    .map_err(value_error)?;
    let arr = serde_json::Value::Array(reports.iter().map(|r| r.to_json()).collect());
    json_to_py(py, &arr)
}

#[pymodule]
fn catalan_blocks_py(m: &Bound<'_, PyModule>) -> PyResult<()> {
    m.add_class::<PyPermutation>()?;
    m.add_class::<PyTraceStep>()?;
    m.add_class::<PyStandardTableau>()?;
    m.add_function(wrap_pyfunction!(py_f_map, m)?)?;
    m.add_function(wrap_pyfunction!(py_f_inverse, m)?)?;
    m.add_function(wrap_pyfunction!(py_trace, m)?)?;
    m.add_function(wrap_pyfunction!(py_enumerate_avoiding, m)?)?;
    m.add_function(wrap_pyfunction!(py_rsk, m)?)?;
    m.add_function(wrap_pyfunction!(py_rsk_inverse, m)?)?;
    m.add_function(wrap_pyfunction!(py_syt_enumerate, m)?)?;
    m.add_function(wrap_pyfunction!(py_rotate_180, m)?)?;
    m.add_function(wrap_pyfunction!(py_catalan, m)?)?;
    m.add_function(wrap_pyfunction!(py_ballot, m)?)?;
    m.add_function(wrap_pyfunction!(py_gf_coefficients, m)?)?;
    m.add_function(wrap_pyfunction!(py_q_of, m)?)?;
    m.add_function(wrap_pyfunction!(py_schur_expand, m)?)?;
    m.add_function(wrap_pyfunction!(py_is_schur_positive, m)?)?;
    m.add_function(wrap_pyfunction!(py_check_pair, m)?)?;
    m.add_function(wrap_pyfunction!(py_bl_level_set, m)?)?;
    m.add_function(wrap_pyfunction!(py_ldes_inverse_level_set, m)?)?;
    m.add_function(wrap_pyfunction!(py_verify, m)?)?;
    Ok(())
}
