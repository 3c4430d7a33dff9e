//! Python bindings. Permutations cross the boundary as lists of ints, Dyck
//! words and `{a, bb}` words as strings, and counts as Python ints.

use invol_core::bijections as bij;
use invol_core::oracle::{self, ClassSpec, Limits, OccurrenceConstraint, Relation};
use invol_core::series::{gf_catalog, CatalogName, Params};
use invol_core::verify::{suite, verify_case, ErratumLedger};
use invol_core::{trees, Error};
use num_bigint::{BigInt, BigUint};
use pyo3::create_exception;
use pyo3::exceptions::PyValueError;
use pyo3::prelude::*;
use pyo3::types::PyDict;

create_exception!(invol, InvolError, PyValueError);
create_exception!(invol, ResourceLimitError, InvolError);

fn to_py(e: Error) -> PyErr {
    match e {
        Error::ResourceLimit { .. } => ResourceLimitError::new_err(e.to_string()),
        _ => InvolError::new_err(e.to_string()),
    }
}

fn limits() -> Limits {
    std::env::var("INVOL_MAX_N").ok().and_then(|v| v.trim().parse().ok()).map(Limits::uniform).unwrap_or_default()
}

/// An involution of `1..=n`, given by its values.
#[pyclass(name = "Involution", frozen, eq, hash, from_py_object)]
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct PyInvolution(invol_core::perm::Involution);

#[pymethods]
impl PyInvolution {
    #[new]
    fn new(values: Vec<usize>) -> PyResult<Self> {
        invol_core::perm::Involution::from_values(values).map(PyInvolution).map_err(to_py)
    }

    /// Parses `"2 1 3"` or `"213"`.
    #[staticmethod]
    fn parse(text: &str) -> PyResult<Self> {
        text.parse().map(PyInvolution).map_err(to_py)
    }

    #[getter]
    fn values(&self) -> Vec<usize> {
        self.0.values().to_vec()
    }

    #[getter]
    fn fixed_points(&self) -> usize {
        self.0.fixed_point_count()
    }

    /// Number of occurrences of `pattern` (a list of ints).
    fn occurrences(&self, pattern: Vec<usize>) -> u64 {
        invol_core::perm::PatternMatcher::new(&pattern).count(self.0.values())
    }

    fn __len__(&self) -> usize {
        self.0.len()
    }

    fn __str__(&self) -> String {
        self.0.to_string()
    }

    fn __repr__(&self) -> String {
        format!("Involution({:?})", self.0.values())
    }
}

/// A word over `x` (up) and `X` (down) whose prefixes never go below zero.
#[pyclass(name = "DyckWord", frozen, eq, hash, from_py_object)]
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct PyDyckWord(bij::DyckWord);

#[pymethods]
impl PyDyckWord {
    #[new]
    fn new(text: &str) -> PyResult<Self> {
        text.parse().map(PyDyckWord).map_err(to_py)
    }

    #[getter]
    fn balance(&self) -> i64 {
        self.0.balance()
    }

    #[getter]
    fn height(&self) -> i64 {
        self.0.height()
    }

    fn __len__(&self) -> usize {
        self.0.len()
    }

    fn __str__(&self) -> String {
        self.0.to_string()
    }

    fn __repr__(&self) -> String {
        format!("DyckWord({:?})", self.0.to_string())
    }
}

/// A class of involutions or permutations: a relation to 132 plus
/// constraints written as `"<pattern>:<avoid|eq:r|ge:r>"`.
#[pyclass(name = "ClassSpec", frozen, from_py_object)]
#[derive(Clone)]
pub struct PyClassSpec(ClassSpec);

#[pymethods]
impl PyClassSpec {
    #[new]
    #[pyo3(signature = (c132 = "avoid", constraints = Vec::new(), kind = "inv"))]
    fn new(c132: &str, constraints: Vec<String>, kind: &str) -> PyResult<Self> {
        let relation = match c132 {
            "avoid" => Relation::Avoid,
            "once" => Relation::Eq(1),
            "free" => Relation::Ge(0),
            other => other.parse().map_err(to_py)?,
        };
        let extra = constraints.iter().map(|c| c.parse::<OccurrenceConstraint>()).collect::<Result<Vec<_>, _>>().map_err(to_py)?;
        match kind {
            "inv" => Ok(PyClassSpec(ClassSpec::involutions(relation, extra))),
            "perm" => Ok(PyClassSpec(ClassSpec::permutations(relation, extra))),
            other => Err(InvolError::new_err(format!("kind must be 'inv' or 'perm', got {other:?}"))),
        }
    }

    fn count(&self, n: usize) -> PyResult<BigUint> {
        oracle::count_class(&self.0.at(n), &limits()).map_err(to_py)
    }

    /// Counts for lengths `0..=n_max`.
    fn series(&self, n_max: usize) -> PyResult<Vec<BigInt>> {
        Ok(oracle::count_series(&self.0, n_max, &limits()).map_err(to_py)?.coeffs().to_vec())
    }

    /// `{p: [count for n in n_min..=n_max]}` keyed by number of fixed points.
    #[pyo3(signature = (n_max, n_min = 1))]
    fn fixed_point_table(&self, n_max: usize, n_min: usize) -> PyResult<std::collections::BTreeMap<usize, Vec<BigUint>>> {
        Ok(oracle::fixed_point_table(&self.0, n_min, n_max, &limits()).map_err(to_py)?.rows)
    }

    /// The table in its plain-text layout.
    #[pyo3(signature = (n_max, n_min = 1))]
    fn render_table(&self, n_max: usize, n_min: usize) -> PyResult<String> {
        Ok(oracle::fixed_point_table(&self.0, n_min, n_max, &limits()).map_err(to_py)?.render())
    }

    fn __repr__(&self) -> String {
        format!("ClassSpec({:?})", self.0.to_string())
    }
}

/// Coefficients `0..=order` of a catalog generating function.
#[pyfunction]
#[pyo3(signature = (name, order, params = ""))]
fn gf(name: &str, order: usize, params: &str) -> PyResult<Vec<BigInt>> {
    let name: CatalogName = name.parse().map_err(to_py)?;
    let params: Params = params.parse().map_err(to_py)?;
    Ok(gf_catalog(name, &params, order).map_err(to_py)?.coeffs().to_vec())
}

/// Names accepted by [`gf`].
#[pyfunction]
fn catalog_names() -> Vec<&'static str> {
    CatalogName::ALL.iter().map(|n| n.as_str()).collect()
}

/// Formula-versus-oracle reports as dicts, for one entry or `"all"`.
#[pyfunction]
#[pyo3(signature = (suite_name = "all", n_max = 11))]
fn verify<'py>(py: Python<'py>, suite_name: &str, n_max: usize) -> PyResult<Vec<Bound<'py, PyDict>>> {
    let name = match suite_name {
        "all" => None,
        other => Some(other.parse::<CatalogName>().map_err(to_py)?),
    };
    let ledger = ErratumLedger::builtin();
    suite(name)
        .iter()
        .map(|case| {
            let report = verify_case(case, n_max, &limits(), &ledger).map_err(to_py)?;
            let d = PyDict::new(py);
            d.set_item("entry", case.name.as_str())?;
            d.set_item("params", case.params.to_string())?;
            d.set_item("checked_range", report.checked_range)?;
            d.set_item("status", if report.first_mismatch.is_some() { "MISMATCH" } else { "MATCH" })?;
            let first = report.first_mismatch.as_ref().map(|m| (m.n, m.formula.clone(), m.oracle.clone()));
            d.set_item("first_mismatch", first)?;
            d.set_item("ledgered", report.ledgered)?;
            Ok(d)
        })
        .collect()
}

#[pyfunction]
fn phi(inv: &PyInvolution) -> PyResult<PyDyckWord> {
    bij::phi(&inv.0).map(PyDyckWord).map_err(to_py)
}

#[pyfunction]
fn phi_inv(word: &PyDyckWord) -> PyResult<PyInvolution> {
    bij::phi_inv(&word.0).map(PyInvolution).map_err(to_py)
}

#[pyfunction]
fn psi(inv: &PyInvolution) -> PyResult<PyInvolution> {
    bij::psi(&inv.0).map(PyInvolution).map_err(to_py)
}

#[pyfunction]
fn psi_inv(inv: &PyInvolution) -> PyResult<PyInvolution> {
    bij::psi_inv(&inv.0).map(PyInvolution).map_err(to_py)
}

#[pyfunction]
fn theta_2134(inv: &PyInvolution, k: usize) -> PyResult<PyInvolution> {
    bij::theta_2134(&inv.0, k).map(PyInvolution).map_err(to_py)
}

#[pyfunction]
fn theta_2134_inv(inv: &PyInvolution, k: usize) -> PyResult<PyInvolution> {
    bij::theta_2134_inv(&inv.0, k).map(PyInvolution).map_err(to_py)
}

#[pyfunction]
fn code_213(inv: &PyInvolution) -> PyResult<Vec<usize>> {
    Ok(bij::code_213(&inv.0).map_err(to_py)?.parts().to_vec())
}

#[pyfunction]
fn decode_213(parts: Vec<usize>, n: usize) -> PyResult<PyInvolution> {
    let code = bij::CompositionCode::new(parts).map_err(to_py)?;
    bij::decode_213(&code, n).map(PyInvolution).map_err(to_py)
}

#[pyfunction]
fn code_3412(inv: &PyInvolution) -> PyResult<String> {
    Ok(bij::code_3412(&inv.0).map_err(to_py)?.to_string())
}

#[pyfunction]
fn decode_3412(word: &str) -> PyResult<PyInvolution> {
    let w: bij::AbWord = word.parse().map_err(to_py)?;
    bij::decode_3412(&w).map(PyInvolution).map_err(to_py)
}

#[pyfunction]
fn code_123_213(inv: &PyInvolution) -> PyResult<String> {
    Ok(bij::code_123_213(&inv.0).map_err(to_py)?.to_string())
}

#[pyfunction]
fn decode_123_213(word: &str, n: usize) -> PyResult<PyInvolution> {
    let w: bij::AbWord = word.parse().map_err(to_py)?;
    bij::decode_123_213(&w, n).map(PyInvolution).map_err(to_py)
}

/// Per-label counts at depth `n` of the fixed-point succession system.
#[pyfunction]
fn level_counts(k: usize, n: usize) -> PyResult<Vec<BigUint>> {
    let sys = trees::system_star(k).map_err(to_py)?;
    Ok(trees::level_counts(&sys, n).into_values().collect())
}

#[pyfunction]
fn transfer_counts(k: usize, n: usize) -> PyResult<Vec<BigUint>> {
    trees::transfer_counts(k, n).map_err(to_py)
}

#[pyfunction]
fn dyck_bounded_height_count(n: usize, h: usize) -> BigUint {
    trees::dyck_bounded_height_count(n, h)
}

#[pymodule]
fn invol(m: &Bound<'_, PyModule>) -> PyResult<()> {
    m.add("InvolError", m.py().get_type::<InvolError>())?;
    m.add("ResourceLimitError", m.py().get_type::<ResourceLimitError>())?;
    m.add_class::<PyInvolution>()?;
    m.add_class::<PyDyckWord>()?;
    m.add_class::<PyClassSpec>()?;
    m.add_function(wrap_pyfunction!(gf, m)?)?;
    m.add_function(wrap_pyfunction!(catalog_names, m)?)?;
    m.add_function(wrap_pyfunction!(verify, m)?)?;
    m.add_function(wrap_pyfunction!(phi, m)?)?;
    m.add_function(wrap_pyfunction!(phi_inv, m)?)?;
    m.add_function(wrap_pyfunction!(psi, m)?)?;
    m.add_function(wrap_pyfunction!(psi_inv, m)?)?;
    m.add_function(wrap_pyfunction!(theta_2134, m)?)?;
    m.add_function(wrap_pyfunction!(theta_2134_inv, m)?)?;
    m.add_function(wrap_pyfunction!(code_213, m)?)?;
    m.add_function(wrap_pyfunction!(decode_213, m)?)?;
    m.add_function(wrap_pyfunction!(code_3412, m)?)?;
    m.add_function(wrap_pyfunction!(decode_3412, m)?)?;
    m.add_function(wrap_pyfunction!(code_123_213, m)?)?;
    m.add_function(wrap_pyfunction!(decode_123_213, m)?)?;
    m.add_function(wrap_pyfunction!(level_counts, m)?)?;
    m.add_function(wrap_pyfunction!(transfer_counts, m)?)?;
    m.add_function(wrap_pyfunction!(dyck_bounded_height_count, m)?)?;
    Ok(())
}
