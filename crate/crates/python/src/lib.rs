//! Python bindings: states, channels and the main analyses.
//!
//! Matrices cross the boundary as nested lists of Python `complex` (or
//! `float`) values; structured results come back as plain dicts.

use num_complex::Complex64;
use pyo3::create_exception;
use pyo3::exceptions::PyException;
use pyo3::prelude::*;
use serde::Serialize;

use qdiscord::channels::{self, Builtin, LocalProductMap};
use qdiscord::correlations::{self as corr, DEFAULT_RANK_TOL};
use qdiscord::linalg::ComplexMatrix;
use qdiscord::report::AnalysisOptions;
use qdiscord::sphere::OptimizerSettings;
use qdiscord::state::{Subsystem, Tolerances};
use qdiscord::{discord as disc, family, io, named, random, report, reproduce, rsp, state, Error};

create_exception!(qdiscord_py, QDiscordError, PyException);
create_exception!(qdiscord_py, ValidationError, QDiscordError);
create_exception!(qdiscord_py, ParseError, QDiscordError);
create_exception!(qdiscord_py, AnnihilatedError, QDiscordError);

fn to_py_err(e: Error) -> PyErr {
    let msg = e.to_string();
    match e {
        _ if e.is_validation() => ValidationError::new_err(msg),
        Error::NonFinite => ValidationError::new_err(msg),
        Error::Parse(_) | Error::Shape(_) => ParseError::new_err(msg),
        Error::Annihilated(_) => AnnihilatedError::new_err(msg),
        _ => QDiscordError::new_err(msg),
    }
}

trait IntoPy<T> {
    fn py_err(self) -> PyResult<T>;
}

impl<T> IntoPy<T> for qdiscord::Result<T> {
    fn py_err(self) -> PyResult<T> {
        self.map_err(to_py_err)
    }
}

fn side(s: &str) -> PyResult<Subsystem> {
    s.parse().py_err()
}

fn matrix(rows: Vec<Vec<Complex64>>) -> PyResult<ComplexMatrix> {
    ComplexMatrix::from_rows(&rows).py_err()
}

fn rows(m: &ComplexMatrix) -> Vec<Vec<Complex64>> {
    (0..m.rows()).map(|i| m.row(i).to_vec()).collect()
}

fn to_dict<'py>(py: Python<'py>, value: &impl Serialize) -> PyResult<Bound<'py, PyAny>> {
    let text = serde_json::to_string(value).map_err(|e| QDiscordError::new_err(e.to_string()))?;
    py.import("json")?.call_method1("loads", (text,))
}

fn optimizer(grid: (usize, usize)) -> PyResult<OptimizerSettings> {
    let s = OptimizerSettings {
        coarse_grid: grid,
        ..OptimizerSettings::default()
    };
    s.validate().py_err()?;
    Ok(s)
}

/// A validated two-qubit density matrix (basis |00>, |01>, |10>, |11>).
#[pyclass(name = "DensityMatrix", frozen, skip_from_py_object)]
#[derive(Clone)]
struct PyDensityMatrix {
    inner: state::DensityMatrix,
}

#[pymethods]
impl PyDensityMatrix {
    #[new]
    fn new(rows: Vec<Vec<Complex64>>) -> PyResult<Self> {
        let inner = state::validate_density(&matrix(rows)?, &Tolerances::default()).py_err()?;
        Ok(Self { inner })
    }

    /// One of rho_cl, rho_tilde, sigma, bell_phi_plus, product_plus.
    #[staticmethod]
    fn named(name: &str) -> PyResult<Self> {
        Ok(Self {
            inner: named::reference_state(name).py_err()?,
        })
    }

    /// Ginibre random state of the given rank.
    #[staticmethod]
    fn random(seed: u64, rank: usize) -> PyResult<Self> {
        Ok(Self {
            inner: random::random_density(seed, rank).py_err()?,
        })
    }

    /// Parses the JSON state-file syntax.
    #[staticmethod]
    fn from_json(text: &str) -> PyResult<Self> {
        let m = io::parse_state(text).py_err()?;
        Ok(Self {
            inner: state::validate_density(&m, &Tolerances::default()).py_err()?,
        })
    }

    fn to_json(&self) -> String {
        io::format_state(self.inner.matrix())
    }

    fn matrix(&self) -> Vec<Vec<Complex64>> {
        rows(self.inner.matrix())
    }

    fn eigenvalues(&self) -> PyResult<Vec<f64>> {
        Ok(self.inner.spectrum().py_err()?.eigenvalues)
    }

    /// Reduced 2x2 state of `keep` ("A" or "B").
    fn partial_trace(&self, keep: &str) -> PyResult<Vec<Vec<Complex64>>> {
        Ok(rows(&state::partial_trace(&self.inner, side(keep)?)))
    }

    /// Von Neumann entropy in bits.
    fn entropy(&self) -> PyResult<f64> {
        state::von_neumann_entropy(self.inner.matrix()).py_err()
    }

    /// `{"x": [...], "y": [...], "t": [[...]]}`.
    fn bloch<'py>(&self, py: Python<'py>) -> PyResult<Bound<'py, PyAny>> {
        to_dict(py, &qdiscord::bloch_decompose(&self.inner))
    }

    fn __repr__(&self) -> String {
        format!("DensityMatrix({})", io::format_state(self.inner.matrix()).trim_end())
    }

    fn __eq__(&self, other: &Self) -> bool {
        self.inner == other.inner
    }
}

/// A single-qubit channel in Kraus form.
#[pyclass(name = "KrausChannel", frozen, skip_from_py_object)]
#[derive(Clone)]
struct PyKrausChannel {
    inner: channels::KrausChannel,
}

#[pymethods]
impl PyKrausChannel {
    #[new]
    fn new(ops: Vec<Vec<Vec<Complex64>>>) -> PyResult<Self> {
        let ops = ops.into_iter().map(matrix).collect::<PyResult<Vec<_>>>()?;
        Ok(Self {
            inner: channels::KrausChannel::new(ops).py_err()?,
        })
    }

    /// `identity`, `phi`, `dephasing:p`, `depolarizing:p` or
    /// `amplitude_damping:g`.
    #[staticmethod]
    fn builtin(spec: &str) -> PyResult<Self> {
        let which: Builtin = spec.parse().py_err()?;
        Ok(Self {
            inner: channels::builtin(which).py_err()?,
        })
    }

    fn is_cptp(&self) -> bool {
        self.inner.validate_cptp().cptp
    }

    /// Operator-norm distance of the completeness sum from the identity.
    fn cptp_defect(&self) -> f64 {
        self.inner.validate_cptp().defect
    }

    fn ops(&self) -> Vec<Vec<Vec<Complex64>>> {
        self.inner.ops().iter().map(rows).collect()
    }

    fn __len__(&self) -> usize {
        self.inner.ops().len()
    }
}

#[pyfunction]
fn correlation_matrix(rho: &PyDensityMatrix) -> PyResult<Vec<Vec<f64>>> {
    Ok(corr::correlation_matrix(&qdiscord::bloch_decompose(&rho.inner))
        .py_err()?
        .r
        .to_rows())
}

#[pyfunction]
#[pyo3(signature = (rho, tol = DEFAULT_RANK_TOL))]
fn correlation_rank(rho: &PyDensityMatrix, tol: f64) -> PyResult<usize> {
    corr::correlation_rank(&rho.inner, tol).py_err()
}

#[pyfunction]
#[pyo3(signature = (rho, tol = DEFAULT_RANK_TOL))]
fn tensor_rank(rho: &PyDensityMatrix, tol: f64) -> PyResult<usize> {
    corr::tensor_rank(&rho.inner, tol).py_err()
}

/// Entropic discord in bits with the measurement on `side`.
#[pyfunction]
#[pyo3(signature = (rho, side = "B", grid = (32, 64)))]
fn discord<'py>(
    py: Python<'py>,
    rho: &PyDensityMatrix,
    side: &str,
    grid: (usize, usize),
) -> PyResult<Bound<'py, PyAny>> {
    let r = disc::discord(&rho.inner, self::side(side)?, &optimizer(grid)?).py_err()?;
    to_dict(py, &r)
}

#[pyfunction]
#[pyo3(signature = (rho, side = "B"))]
fn geometric_discord(rho: &PyDensityMatrix, side: &str) -> PyResult<f64> {
    disc::geometric_discord(&rho.inner, self::side(side)?).py_err()
}

#[pyfunction]
#[pyo3(signature = (rho, side = "B", grid = (180, 360)))]
fn discord_oracle(rho: &PyDensityMatrix, side: &str, grid: (usize, usize)) -> PyResult<f64> {
    disc::discord_oracle(&rho.inner, self::side(side)?, grid).py_err()
}

#[pyfunction]
fn rsp_fidelity<'py>(py: Python<'py>, rho: &PyDensityMatrix) -> PyResult<Bound<'py, PyAny>> {
    to_dict(py, &rsp::rsp_fidelity(&rho.inner).py_err()?)
}

#[pyfunction]
#[pyo3(signature = (rho, n_targets = 16))]
fn rsp_protocol_average(rho: &PyDensityMatrix, n_targets: usize) -> PyResult<f64> {
    rsp::rsp_protocol_average(&rho.inner, n_targets, &OptimizerSettings::default()).py_err()
}

/// `(a ⊗ b) ρ`, renormalized.
#[pyfunction]
#[pyo3(signature = (rho, a, b = None))]
fn apply_local(rho: &PyDensityMatrix, a: &PyKrausChannel, b: Option<&PyKrausChannel>) -> PyResult<PyDensityMatrix> {
    let b = b.unwrap_or(a);
    let map = LocalProductMap::new(a.inner.clone(), b.inner.clone());
    Ok(PyDensityMatrix {
        inner: channels::apply_local(&rho.inner, &map).py_err()?,
    })
}

/// Full report as a dict.
#[pyfunction]
#[pyo3(signature = (rho, side = "B", rank_tol = DEFAULT_RANK_TOL, disc_tol = report::DEFAULT_DISC_TOL))]
fn analyze<'py>(
    py: Python<'py>,
    rho: &PyDensityMatrix,
    side: &str,
    rank_tol: f64,
    disc_tol: f64,
) -> PyResult<Bound<'py, PyAny>> {
    let opts = AnalysisOptions {
        side: self::side(side)?,
        rank_tol,
        disc_tol,
        ..AnalysisOptions::default()
    };
    to_dict(py, &report::analyze(&rho.inner, &opts).py_err()?)
}

/// Member of the rank-one-tensor family with diagonal `diag` and common
/// off-diagonal value `c`.
#[pyfunction]
fn sigma_family(diag: [f64; 4], c: f64) -> PyResult<PyDensityMatrix> {
    let spec = family::SigmaFamilySpec::new(diag, c).py_err()?;
    Ok(PyDensityMatrix {
        inner: spec.build().py_err()?,
    })
}

/// Runs the reference-example suite; returns one dict per check.
#[pyfunction]
fn reproduce_checks<'py>(py: Python<'py>) -> PyResult<Bound<'py, PyAny>> {
    let rows = reproduce::run(&Default::default()).py_err()?;
    to_dict(py, &rows)
}

#[pymodule]
fn qdiscord_py(m: &Bound<'_, PyModule>) -> PyResult<()> {
    let py = m.py();
    m.add("__version__", env!("CARGO_PKG_VERSION"))?;
    m.add("QDiscordError", py.get_type::<QDiscordError>())?;
    m.add("ValidationError", py.get_type::<ValidationError>())?;
    m.add("ParseError", py.get_type::<ParseError>())?;
    m.add("AnnihilatedError", py.get_type::<AnnihilatedError>())?;
    m.add_class::<PyDensityMatrix>()?;
    m.add_class::<PyKrausChannel>()?;
    m.add_function(wrap_pyfunction!(correlation_matrix, m)?)?;
    m.add_function(wrap_pyfunction!(correlation_rank, m)?)?;
    m.add_function(wrap_pyfunction!(tensor_rank, m)?)?;
    m.add_function(wrap_pyfunction!(discord, m)?)?;
    m.add_function(wrap_pyfunction!(geometric_discord, m)?)?;
    m.add_function(wrap_pyfunction!(discord_oracle, m)?)?;
    m.add_function(wrap_pyfunction!(rsp_fidelity, m)?)?;
    m.add_function(wrap_pyfunction!(rsp_protocol_average, m)?)?;
    m.add_function(wrap_pyfunction!(apply_local, m)?)?;
    m.add_function(wrap_pyfunction!(analyze, m)?)?;
    m.add_function(wrap_pyfunction!(sigma_family, m)?)?;
    m.add_function(wrap_pyfunction!(reproduce_checks, m)?)?;
    Ok(())
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn sides_parse() {
        assert_eq!(side("A").unwrap(), Subsystem::A);
        assert_eq!(side("b").unwrap(), Subsystem::B);
    }

    #[test]
    fn rows_round_trip() {
        let sigma = named::named_state(named::NamedState::Sigma);
        let back = matrix(rows(sigma.matrix())).unwrap();
        assert_eq!(&back, sigma.matrix());
    }

    #[test]
    fn optimizer_grid_is_validated() {
        assert!(optimizer((32, 64)).is_ok());
        assert!(optimizer((2, 64)).is_err());
    }
}
