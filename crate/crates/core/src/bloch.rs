//! Pauli-basis (Bloch) representation of two-qubit states:
//!
//! ρ = ¼ [𝟙⊗𝟙 + Σ xᵢ σᵢ⊗𝟙 + Σ yᵢ 𝟙⊗σᵢ + Σ Tᵢⱼ σᵢ⊗σⱼ]

use serde::{Deserialize, Serialize};

use crate::linalg::{ComplexMatrix, RealMatrix, C64, I, ONE, ZERO};
use crate::state::DensityMatrix;

/// `σ₀ = 𝟙`, then σ_x, σ_y, σ_z.
pub fn pauli(k: usize) -> ComplexMatrix {
    let rows = match k {
        0 => [[ONE, ZERO], [ZERO, ONE]],
        1 => [[ZERO, ONE], [ONE, ZERO]],
        2 => [[ZERO, -I], [I, ZERO]],
        3 => [[ONE, ZERO], [ZERO, -ONE]],
        _ => panic!("Pauli index {k} out of range"),
    };
    ComplexMatrix::from_rows(&rows).expect("2x2 literal")
}

/// `½(𝟙 + r·σ)`
pub fn qubit_from_bloch(r: [f64; 3]) -> ComplexMatrix {
    let mut m = pauli(0);
    for (k, &rk) in r.iter().enumerate() {
        m = &m + &pauli(k + 1).scale_real(rk);
    }
    m.scale_real(0.5)
}

/// Bloch vector `Tr(m σᵢ)` of a 2×2 operator.
pub fn bloch_of_qubit(m: &ComplexMatrix) -> [f64; 3] {
    [1, 2, 3].map(|k| (&pauli(k) * m).trace().re)
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct BlochForm {
    /// Local Bloch vector of A.
    pub x: [f64; 3],
    /// Local Bloch vector of B.
    pub y: [f64; 3],
    /// Correlation tensor, `t[i][j] = Tr ρ(σᵢ⊗σⱼ)`.
    pub t: [[f64; 3]; 3],
}

impl BlochForm {
    pub fn zero() -> Self {
        Self {
            x: [0.0; 3],
            y: [0.0; 3],
            t: [[0.0; 3]; 3],
        }
    }

    pub fn tensor(&self) -> RealMatrix {
        RealMatrix::from_fn(3, 3, |i, j| self.t[i][j])
    }

    /// `TᵀT`
    pub fn tt_t(&self) -> RealMatrix {
        let t = self.tensor();
        &t.transpose() * &t
    }
}

/// Pauli coefficients of a two-qubit state.
pub fn bloch_decompose(rho: &DensityMatrix) -> BlochForm {
    let m = rho.matrix();
    let coeff = |i: usize, j: usize| (&pauli(i).kron(&pauli(j)) * m).trace().re;
    let mut b = BlochForm::zero();
    for i in 0..3 {
        b.x[i] = coeff(i + 1, 0);
        b.y[i] = coeff(0, i + 1);
        for j in 0..3 {
            b.t[i][j] = coeff(i + 1, j + 1);
        }
    }
    b
}

/// Rebuilds the 4×4 matrix. Positivity is not enforced; pass the result
/// through [`DensityMatrix::new`] if it must be a state.
pub fn bloch_reconstruct(b: &BlochForm) -> ComplexMatrix {
    let mut m = pauli(0).kron(&pauli(0));
    for i in 0..3 {
        m = &m + &pauli(i + 1).kron(&pauli(0)).scale_real(b.x[i]);
        m = &m + &pauli(0).kron(&pauli(i + 1)).scale_real(b.y[i]);
        for j in 0..3 {
            m = &m + &pauli(i + 1).kron(&pauli(j + 1)).scale_real(b.t[i][j]);
        }
    }
    m.scale(C64::new(0.25, 0.0))
}
