//! Validated two-qubit density matrices, reduced states and entropies.

use std::fmt;
use std::str::FromStr;

use serde::{Deserialize, Serialize};

use crate::eigen::{hermitian_eigensystem, Spectrum};
use crate::error::{Error, Result};
use crate::linalg::{ComplexMatrix, C64};

/// Numerical tolerances used when validating states.
#[derive(Clone, Copy, Debug, PartialEq, Serialize, Deserialize)]
pub struct Tolerances {
    pub hermitian: f64,
    pub trace: f64,
    pub psd: f64,
    pub eig: f64,
}

impl Default for Tolerances {
    fn default() -> Self {
        Self {
            hermitian: 1e-9,
            trace: 1e-9,
            psd: 1e-10,
            eig: 1e-10,
        }
    }
}

/// One of the two qubits. The basis is ordered |00⟩,|01⟩,|10⟩,|11⟩ with A as
/// the left tensor factor.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub enum Subsystem {
    A,
    B,
}

impl Subsystem {
    pub fn other(self) -> Self {
        match self {
            Subsystem::A => Subsystem::B,
            Subsystem::B => Subsystem::A,
        }
    }
}

impl fmt::Display for Subsystem {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Subsystem::A => "A",
            Subsystem::B => "B",
        })
    }
}

impl FromStr for Subsystem {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s {
            "A" | "a" => Ok(Subsystem::A),
            "B" | "b" => Ok(Subsystem::B),
            other => Err(Error::UnknownName(other.to_string())),
        }
    }
}

/// A 4×4 two-qubit state: Hermitian, unit trace, positive semidefinite.
#[derive(Clone, Debug, PartialEq)]
pub struct DensityMatrix {
    mat: ComplexMatrix,
}

impl DensityMatrix {
    /// Validates with the default tolerances.
    pub fn new(m: ComplexMatrix) -> Result<Self> {
        validate_density(&m, &Tolerances::default())
    }

    pub fn from_real_rows(rows: &[[f64; 4]]) -> Result<Self> {
        Self::new(ComplexMatrix::from_real_rows(rows)?)
    }

    pub fn matrix(&self) -> &ComplexMatrix {
        &self.mat
    }

    pub fn into_matrix(self) -> ComplexMatrix {
        self.mat
    }

    pub fn spectrum(&self) -> Result<Spectrum> {
        hermitian_eigensystem(&self.mat)
    }

    /// `ρ_A ⊗ ρ_B` for two single-qubit states.
    pub fn product(a: &ComplexMatrix, b: &ComplexMatrix) -> Result<Self> {
        Self::new(a.kron(b))
    }

    /// `|ψ⟩⟨ψ|` for a (not necessarily normalized) two-qubit vector.
    pub fn pure(psi: &[C64; 4]) -> Result<Self> {
        let nrm: f64 = psi.iter().map(|z| z.norm_sqr()).sum::<f64>().sqrt();
        if nrm == 0.0 {
            return Err(Error::NotUnitTrace(0.0));
        }
        let v: Vec<C64> = psi.iter().map(|z| z / nrm).collect();
        Self::new(ComplexMatrix::projector(&v))
    }

    pub fn maximally_mixed() -> Self {
        Self {
            mat: ComplexMatrix::identity(4).scale_real(0.25),
        }
    }
}

/// Checks that `m` is a valid two-qubit state. Small Hermiticity deviations
/// (below the tolerance) are removed by symmetrization.
pub fn validate_density(m: &ComplexMatrix, tol: &Tolerances) -> Result<DensityMatrix> {
    if m.rows() != 4 || m.cols() != 4 {
        return Err(Error::Shape(format!(
            "two-qubit state must be 4x4, got {}x{}",
            m.rows(),
            m.cols()
        )));
    }
    let defect = m.hermiticity_defect();
    if defect.is_nan() || defect >= tol.hermitian {
        return Err(Error::NotHermitian(defect));
    }
    let mat = m.hermitian_part();
    let tr = mat.trace().re;
    if (tr - 1.0).abs() > tol.trace {
        return Err(Error::NotUnitTrace(tr));
    }
    let spectrum = hermitian_eigensystem(&mat)?;
    let lowest = spectrum.eigenvalues[3];
    if lowest < -tol.psd {
        return Err(Error::NotPositive(lowest));
    }
    Ok(DensityMatrix { mat })
}

/// Reduced state of the `keep` qubit.
pub fn partial_trace(rho: &DensityMatrix, keep: Subsystem) -> ComplexMatrix {
    partial_trace_matrix(rho.matrix(), keep)
}

/// Partial trace of any 4×4 operator on the two-qubit space.
pub fn partial_trace_matrix(m: &ComplexMatrix, keep: Subsystem) -> ComplexMatrix {
    // index = 2·a + b
    ComplexMatrix::from_fn(2, 2, |i, j| match keep {
        Subsystem::A => m[(2 * i, 2 * j)] + m[(2 * i + 1, 2 * j + 1)],
        Subsystem::B => m[(i, j)] + m[(2 + i, 2 + j)],
    })
}

/// Von Neumann entropy in bits of a PSD unit-trace matrix.
pub fn von_neumann_entropy(m: &ComplexMatrix) -> Result<f64> {
    let tol = Tolerances::default();
    let tr = m.trace().re;
    if (tr - 1.0).abs() > tol.trace {
        return Err(Error::NotUnitTrace(tr));
    }
    let spectrum = hermitian_eigensystem(m)?;
    let lowest = spectrum.eigenvalues.last().copied().unwrap_or(0.0);
    if lowest < -tol.psd {
        return Err(Error::NotPositive(lowest));
    }
    Ok(entropy_of_spectrum(&spectrum.eigenvalues))
}

/// `−Σ λ log₂ λ` with `0·log 0 = 0`; negative rounding noise is dropped.
pub fn entropy_of_spectrum(eigenvalues: &[f64]) -> f64 {
    let s: f64 = eigenvalues.iter().filter(|&&l| l > 0.0).map(|&l| -l * l.log2()).sum();
    s.max(0.0)
}

/// Entropy of a qubit whose Bloch vector has length `r`.
pub fn qubit_entropy_from_bloch_length(r: f64) -> f64 {
    let r = r.clamp(0.0, 1.0);
    entropy_of_spectrum(&[0.5 * (1.0 + r), 0.5 * (1.0 - r)])
}
