//! Python bindings for `ngonlift`.

use std::collections::BTreeMap;

use ngonlift::interp::ngon_interpolation;
use ngonlift::lift::{self, LiftDescription, LiftPoint};
use ngonlift::lowerbound;
use ngonlift::momentmap::{self, Var};
use ngonlift::sdpa;
use ngonlift::soscert::{self, SosCertificate};
use ngonlift::{FrequencySet, Univariate};
use num_complex::Complex64;
use pyo3::exceptions::PyValueError;
use pyo3::prelude::*;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

fn err(e: ngonlift::Error) -> PyErr {
    PyValueError::new_err(e.to_string())
}

/// Parses JSON text into Python objects through the stdlib `json` module.
fn to_py<'py>(py: Python<'py>, value: &impl serde::Serialize) -> PyResult<Bound<'py, PyAny>> {
    let text = serde_json::to_string(value).map_err(|e| PyValueError::new_err(e.to_string()))?;
    py.import("json")?.call_method1("loads", (text,))
}

fn freq_set(n: usize, freqs: Vec<i64>) -> PyResult<FrequencySet> {
    if n < 3 {
        return Err(PyValueError::new_err(format!("modulus must be at least 3, got {n}")));
    }
    Ok(FrequencySet::new(n, freqs))
}

/// A function on the vertices of the regular N-gon.
#[pyclass(name = "TrigPoly", module = "ngonlift_py")]
pub struct PyTrigPoly {
    inner: ngonlift::TrigPoly,
}

#[pymethods]
impl PyTrigPoly {
    #[getter]
    fn n(&self) -> usize {
        self.inner.modulus()
    }

    fn coeff(&self, k: i64) -> Complex64 {
        self.inner.coeff(k)
    }

    /// `{k: coefficient}` in the `e_k` basis.
    fn terms(&self) -> BTreeMap<usize, Complex64> {
        self.inner.terms().collect()
    }

    fn eval_at_vertex(&self, i: usize) -> PyResult<Complex64> {
        self.inner.eval_at_vertex(i).map_err(err)
    }

    fn eval_all_vertices(&self) -> Vec<Complex64> {
        self.inner.eval_all_vertices()
    }

    fn rotate(&self, r: i64) -> PyTrigPoly {
        PyTrigPoly { inner: self.inner.rotate(r) }
    }

    fn __repr__(&self) -> String {
        format!("TrigPoly(n={}, terms={})", self.inner.modulus(), self.inner.num_terms())
    }
}

#[pyclass(name = "Certificate", module = "ngonlift_py")]
pub struct PyCertificate {
    inner: SosCertificate,
}

#[pymethods]
impl PyCertificate {
    #[getter]
    fn n(&self) -> usize {
        self.inner.n
    }

    #[getter]
    fn scheme(&self) -> String {
        self.inner.scheme.to_string()
    }

    #[getter]
    fn squares(&self) -> Vec<PyTrigPoly> {
        self.inner.squares.iter().map(|h| PyTrigPoly { inner: h.clone() }).collect()
    }

    #[getter]
    fn target(&self) -> PyTrigPoly {
        PyTrigPoly { inner: self.inner.target.clone() }
    }

    /// Real frequencies touched by the squares.
    fn support(&self) -> Vec<usize> {
        self.inner.support().to_vec()
    }

    fn hermitian_support(&self) -> Vec<usize> {
        self.inner.hermitian_support().to_vec()
    }

    #[pyo3(signature = (tol = 1e-10))]
    fn verify<'py>(&self, py: Python<'py>, tol: f64) -> PyResult<Bound<'py, PyAny>> {
        to_py(py, &soscert::verify_certificate(&self.inner, tol))
    }

    fn rotate(&self, r: i64) -> PyCertificate {
        PyCertificate { inner: self.inner.rotate(r) }
    }

    fn to_json(&self) -> PyResult<String> {
        self.inner.to_json().map_err(err)
    }

    #[staticmethod]
    fn from_json(text: &str) -> PyResult<PyCertificate> {
        Ok(PyCertificate { inner: SosCertificate::from_json(text).map_err(err)? })
    }

    fn __len__(&self) -> usize {
        self.inner.squares.len()
    }

    fn __repr__(&self) -> String {
        format!("Certificate(scheme={}, n={}, squares={})", self.inner.scheme, self.inner.n, self.inner.squares.len())
    }
}

#[pyclass(name = "Lift", module = "ngonlift_py")]
pub struct PyLift {
    inner: LiftDescription,
}

fn parse_point(n: usize, values: BTreeMap<String, f64>) -> PyResult<LiftPoint> {
    let values = values
        .into_iter()
        .map(|(k, v)| Ok((k.parse::<Var>().map_err(err)?, v)))
        .collect::<PyResult<_>>()?;
    Ok(LiftPoint { n, values })
}

fn point_dict(p: &LiftPoint) -> BTreeMap<String, f64> {
    p.values.iter().map(|(k, v)| (k.to_string(), *v)).collect()
}

#[pymethods]
impl PyLift {
    #[getter]
    fn n(&self) -> usize {
        self.inner.n
    }

    #[getter]
    fn scheme(&self) -> String {
        self.inner.scheme.to_string()
    }

    fn block_sizes(&self) -> Vec<usize> {
        self.inner.block_sizes()
    }

    fn variables(&self) -> Vec<String> {
        self.inner.variables().iter().map(Var::to_string).collect()
    }

    /// Entries of block `b` as printed expressions.
    fn block(&self, b: usize) -> PyResult<Vec<Vec<String>>> {
        let block = self.inner.blocks.get(b).ok_or_else(|| PyValueError::new_err(format!("no block {b}")))?;
        Ok(block.matrix.entries.iter().map(|row| row.iter().map(|e| e.to_string()).collect()).collect())
    }

    /// Three-leg verification against the matching certificate.
    #[pyo3(signature = (tol = None))]
    fn verify<'py>(&self, py: Python<'py>, tol: Option<f64>) -> PyResult<Bound<'py, PyAny>> {
        let cert = lift::matching_certificate(&self.inner).map_err(err)?;
        let tol = tol.unwrap_or(if self.inner.scheme == lift::LiftScheme::Hierarchy { 1e-8 } else { lift::GRAM_TOL });
        to_py(py, &lift::verify_lift_with(&self.inner, &cert, lift::PSD_SLACK, tol))
    }

    fn vertex_point(&self, i: usize) -> PyResult<BTreeMap<String, f64>> {
        Ok(point_dict(&lift::vertex_lift_point(&self.inner, i).map_err(err)?))
    }

    fn rotate_point(&self, point: BTreeMap<String, f64>, r: i64) -> PyResult<BTreeMap<String, f64>> {
        Ok(point_dict(&lift::rotate_lift_point(&parse_point(self.inner.n, point)?, r)))
    }

    /// Smallest scaled eigenvalue per block at `point`.
    fn min_eigenvalues(&self, point: BTreeMap<String, f64>) -> PyResult<Vec<f64>> {
        lift::block_min_eigenvalues(&self.inner, &parse_point(self.inner.n, point)?).map_err(err)
    }

    fn to_sdpa(&self) -> String {
        sdpa::export_sdpa_string(&self.inner)
    }

    #[staticmethod]
    fn from_sdpa(text: &str) -> PyResult<PyLift> {
        Ok(PyLift { inner: sdpa::import_sdpa_str(text).map_err(err)? })
    }

    fn to_json(&self) -> PyResult<String> {
        self.inner.to_json().map_err(err)
    }

    #[staticmethod]
    fn from_json(text: &str) -> PyResult<PyLift> {
        Ok(PyLift { inner: LiftDescription::from_json(text).map_err(err)? })
    }

    fn __repr__(&self) -> String {
        format!("Lift(scheme={}, n={}, blocks={:?})", self.inner.scheme, self.inner.n, self.inner.block_sizes())
    }
}

#[pyfunction]
fn facet_functional(n: usize) -> PyResult<PyTrigPoly> {
    Ok(PyTrigPoly { inner: soscert::facet_functional(n).map_err(err)? })
}

#[pyfunction]
fn powers_of_two_certificate(n: u32) -> PyResult<PyCertificate> {
    Ok(PyCertificate { inner: soscert::powers_of_two_certificate(n).map_err(err)? })
}

#[pyfunction]
fn hexagon_certificate() -> PyCertificate {
    PyCertificate { inner: soscert::hexagon_certificate() }
}

#[pyfunction]
fn hierarchy_certificate(n: usize) -> PyResult<PyCertificate> {
    Ok(PyCertificate { inner: soscert::hierarchy_certificate(n).map_err(err)? })
}

#[pyfunction]
fn build_chained_lift(n: u32) -> PyResult<PyLift> {
    Ok(PyLift { inner: lift::build_chained_lift(n).map_err(err)? })
}

#[pyfunction]
fn build_single_block_lift(n: u32) -> PyResult<PyLift> {
    Ok(PyLift { inner: lift::build_single_block_lift(n).map_err(err)? })
}

#[pyfunction]
fn build_hierarchy_lift(n: usize) -> PyResult<PyLift> {
    Ok(PyLift { inner: lift::build_hierarchy_lift(n).map_err(err)? })
}

/// Moment matrix over `⊕_{k∈K} T_k(N)` as printed expressions.
#[pyfunction]
#[pyo3(signature = (freqs, n, u0_one = false))]
fn moment_matrix(freqs: Vec<i64>, n: usize, u0_one: bool) -> PyResult<Vec<Vec<String>>> {
    let m = momentmap::moment_matrix(&freq_set(n, freqs)?, n).map_err(err)?;
    let m = if u0_one { m.with_u0_one() } else { m };
    Ok(m.entries.iter().map(|row| row.iter().map(|e| e.to_string()).collect()).collect())
}

/// Chebyshev coefficients of the nonnegative interpolant for the N-gon.
#[pyfunction]
fn theta_rank_interpolant<'py>(py: Python<'py>, n: usize) -> PyResult<Bound<'py, PyAny>> {
    let data = ngon_interpolation(n).map_err(err)?;
    let value = serde_json::json!({
        "N": n,
        "degree": data.p.degree(),
        "chebyshev_coefficients": data.p.coeffs(),
        "levels": data.levels.values(),
        "interpolation_residual": data.interpolation_residual(),
    });
    to_py(py, &value)
}

#[pyfunction]
fn mod_star(k: i64, n: usize) -> PyResult<i64> {
    if n < 3 {
        return Err(PyValueError::new_err(format!("modulus must be at least 3, got {n}")));
    }
    Ok(lowerbound::mod_star(k, n))
}

/// `(clusters, gamma)` from the greedy algorithm, or `None`.
#[pyfunction]
fn greedy_clustering(n: usize, freqs: Vec<i64>) -> PyResult<Option<(Vec<Vec<usize>>, usize)>> {
    let k = freq_set(n, freqs)?;
    Ok(lowerbound::greedy_clustering(&k).map(|c| (c.cluster_lists(), c.gamma)))
}

#[pyfunction]
#[pyo3(signature = (n, freqs, seed = 0, symmetric = false))]
fn refute_sos_valid<'py>(
    py: Python<'py>,
    n: usize,
    freqs: Vec<i64>,
    seed: u64,
    symmetric: bool,
) -> PyResult<Option<Bound<'py, PyAny>>> {
    let mut k = freq_set(n, freqs)?;
    if symmetric {
        k = k.symmetric_closure();
    }
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    match lowerbound::refute_sos_valid(&k, &mut rng).map_err(err)? {
        Some(r) => Ok(Some(to_py(py, &r)?)),
        None => Ok(None),
    }
}

#[pyfunction]
#[pyo3(signature = (n, trials, seed = 0))]
fn log_bound_check<'py>(py: Python<'py>, n: usize, trials: usize, seed: u64) -> PyResult<Bound<'py, PyAny>> {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    to_py(py, &lowerbound::log_bound_check(n, trials, &mut rng).map_err(err)?)
}

#[pymodule]
pub fn ngonlift_py(m: &Bound<'_, PyModule>) -> PyResult<()> {
    m.add_class::<PyTrigPoly>()?;
    m.add_class::<PyCertificate>()?;
    m.add_class::<PyLift>()?;
    m.add_function(wrap_pyfunction!(facet_functional, m)?)?;
    m.add_function(wrap_pyfunction!(powers_of_two_certificate, m)?)?;
    m.add_function(wrap_pyfunction!(hexagon_certificate, m)?)?;
    m.add_function(wrap_pyfunction!(hierarchy_certificate, m)?)?;
    m.add_function(wrap_pyfunction!(build_chained_lift, m)?)?;
    m.add_function(wrap_pyfunction!(build_single_block_lift, m)?)?;
    m.add_function(wrap_pyfunction!(build_hierarchy_lift, m)?)?;
    m.add_function(wrap_pyfunction!(moment_matrix, m)?)?;
    m.add_function(wrap_pyfunction!(theta_rank_interpolant, m)?)?;
    m.add_function(wrap_pyfunction!(mod_star, m)?)?;
    m.add_function(wrap_pyfunction!(greedy_clustering, m)?)?;
    m.add_function(wrap_pyfunction!(refute_sos_valid, m)?)?;
    m.add_function(wrap_pyfunction!(log_bound_check, m)?)?;
    Ok(())
}
