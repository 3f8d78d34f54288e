//! Python bindings, importable as `chipfire`.

use chipfire::arith::{enumerate, validate};
use chipfire::critgrp::{critical_group, spanning_tree_count};
use chipfire::divisors::{default_q, gonality, monodromy_pairing, q_reduce};
use chipfire::exactla::smith_normal_form;
use chipfire::randomlab::{run_experiment, wood_probability, ExperimentConfig};
use chipfire::{AbelianGroup, Divisor, Error, IntMatrix, Multigraph};
use num_bigint::BigInt;
use pyo3::exceptions::PyValueError;
use pyo3::prelude::*;

fn py_err(e: Error) -> PyErr {
    PyValueError::new_err(e.to_string())
}

fn group_factors(k: &AbelianGroup) -> Vec<BigInt> {
    k.factors().to_vec()
}

/// Undirected multigraph without self-loops.
#[pyclass(name = "Graph", module = "chipfire", frozen)]
struct PyGraph {
    inner: Multigraph,
}

#[pymethods]
impl PyGraph {
    /// Parses the `u v [m]` text format.
    #[staticmethod]
    fn from_text(text: &str) -> PyResult<Self> {
        Ok(PyGraph { inner: text.parse().map_err(py_err)? })
    }

    /// Graph on `v1..vn` from `(i, j, multiplicity)` triples with 0-based indices.
    #[staticmethod]
    fn from_edges(n: usize, edges: Vec<(usize, usize, u64)>) -> PyResult<Self> {
        Ok(PyGraph { inner: Multigraph::from_edges(n, &edges).map_err(py_err)? })
    }

    #[getter]
    fn labels(&self) -> Vec<String> {
        self.inner.labels().to_vec()
    }

    fn __len__(&self) -> usize {
        self.inner.n()
    }

    fn __repr__(&self) -> String {
        format!("Graph(n={}, edges={})", self.inner.n(), self.inner.edge_count())
    }

    fn to_text(&self) -> String {
        self.inner.to_text()
    }

    fn laplacian(&self) -> Vec<Vec<BigInt>> {
        self.inner.laplacian().to_rows()
    }

    /// Invariant factors of the critical group (empty when trivial).
    fn critical_group(&self) -> PyResult<Vec<BigInt>> {
        Ok(group_factors(&critical_group(&self.inner).map_err(py_err)?))
    }

    fn spanning_tree_count(&self) -> BigInt {
        spanning_tree_count(&self.inner)
    }

    fn genus(&self) -> PyResult<u64> {
        self.inner.genus().map_err(py_err)
    }

    /// The q-reduced divisor equivalent to `divisor` (default q: last vertex).
    #[pyo3(signature = (divisor, q=None))]
    fn q_reduce(&self, divisor: Vec<i64>, q: Option<usize>) -> PyResult<Vec<i64>> {
        let q = q.unwrap_or_else(|| default_q(&self.inner));
        let r = q_reduce(&self.inner, &Divisor::new(divisor), q).map_err(py_err)?;
        Ok(r.into_values())
    }

    /// `(numerator, denominator)` of the pairing value in `[0, 1)`.
    #[pyo3(signature = (d1, d2, q=None))]
    fn monodromy_pairing(&self, d1: Vec<i64>, d2: Vec<i64>, q: Option<usize>) -> PyResult<(BigInt, BigInt)> {
        let q = q.unwrap_or_else(|| default_q(&self.inner));
        let v = monodromy_pairing(&self.inner, &Divisor::new(d1), &Divisor::new(d2), q)
            .map_err(py_err)?;
        Ok((v.numer().clone(), v.denom().clone()))
    }

    /// `(gonality, witness divisor)`.
    fn gonality(&self) -> PyResult<(u64, Vec<i64>)> {
        let g = gonality(&self.inner).map_err(py_err)?;
        Ok((g.gonality, g.witness.into_values()))
    }

    /// The `d` vector of the arithmetical structure with labels `r`.
    fn arith_validate(&self, r: Vec<u64>) -> PyResult<Vec<u64>> {
        Ok(validate(&self.inner, &r).map_err(py_err)?.d)
    }

    /// All `(r, d)` pairs with entries of `r` at most `r_max`, sorted by `r`.
    fn arith_enumerate(&self, py: Python<'_>, r_max: u64) -> PyResult<Vec<(Vec<u64>, Vec<u64>)>> {
        let e = py.detach(|| enumerate(&self.inner, r_max)).map_err(py_err)?;
        Ok(e.structures.into_iter().map(|s| (s.r, s.d)).collect())
    }
}

/// `(S, U, V)` with `S = U·M·V` in Smith normal form.
#[pyfunction(name = "smith_normal_form")]
#[allow(clippy::type_complexity)]
fn smith_normal_form_py(rows: Vec<Vec<BigInt>>) -> PyResult<(Vec<Vec<BigInt>>, Vec<Vec<BigInt>>, Vec<Vec<BigInt>>)> {
    let r = rows.len();
    let c = rows.first().map_or(0, Vec::len);
    if rows.iter().any(|row| row.len() != c) {
        return Err(PyValueError::new_err("ragged matrix rows"));
    }
    let m = IntMatrix::from_vec(r, c, rows.into_iter().flatten().collect()).map_err(py_err)?;
    let snf = smith_normal_form(&m);
    Ok((snf.s.to_rows(), snf.u.to_rows(), snf.v.to_rows()))
}

/// Limiting probability that the Sylow p-subgroup equals `⊕ Z/factors`.
#[pyfunction(name = "wood_probability")]
#[pyo3(signature = (factors, p, tol=1e-15))]
fn wood_probability_py(factors: Vec<u64>, p: u64, tol: f64) -> PyResult<f64> {
    let h = AbelianGroup::from_cyclic_factors(factors).map_err(py_err)?;
    wood_probability(&h, p, tol).map_err(py_err)
}

/// Runs a random-graph experiment and returns the JSON report text.
#[pyfunction]
#[pyo3(signature = (n, q, samples, p=2, seed=0))]
fn random_experiment(py: Python<'_>, n: usize, q: &str, samples: u64, p: u64, seed: u64) -> PyResult<String> {
    let q = q
        .parse()
        .map_err(|_| PyValueError::new_err(format!("bad fraction `{q}`")))?;
    let config = ExperimentConfig { n, q, samples, p, seed };
    let report = py.detach(|| run_experiment(&config)).map_err(py_err)?;
    Ok(serde_json::to_string(&report.to_json()).expect("serializable"))
}

#[pymodule]
#[pyo3(name = "chipfire")]
fn pychipfire(m: &Bound<'_, PyModule>) -> PyResult<()> {
    m.add_class::<PyGraph>()?;
    m.add_function(wrap_pyfunction!(smith_normal_form_py, m)?)?;
    m.add_function(wrap_pyfunction!(wood_probability_py, m)?)?;
    m.add_function(wrap_pyfunction!(random_experiment, m)?)?;
    Ok(())
}
