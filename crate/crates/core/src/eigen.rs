//! Cyclic Jacobi eigensolver for small Hermitian matrices and a one-sided
//! Jacobi SVD for small real matrices.

use serde::Serialize;

use crate::error::{Error, Result};
use crate::linalg::{ComplexMatrix, RealMatrix, C64};

/// Sweep cap for both Jacobi iterations.
pub const MAX_SWEEPS: usize = 100;

/// Hermiticity tolerance accepted by [`hermitian_eigensystem`].
pub const HERMITIAN_TOL: f64 = 1e-9;

/// Eigenvalues in descending order with matching eigenvector columns.
#[derive(Clone, Debug)]
pub struct Spectrum {
    pub eigenvalues: Vec<f64>,
    pub eigenvectors: ComplexMatrix,
}

impl Spectrum {
    pub fn vector(&self, k: usize) -> Vec<C64> {
        self.eigenvectors.column(k)
    }

    /// `Σ λ_k v_k v_k†`
    pub fn reconstruct(&self) -> ComplexMatrix {
        let n = self.eigenvalues.len();
        let mut out = ComplexMatrix::zeros(n, n);
        for (k, &lambda) in self.eigenvalues.iter().enumerate() {
            let p = ComplexMatrix::projector(&self.vector(k)).scale_real(lambda);
            out = &out + &p;
        }
        out
    }
}

/// Full spectral decomposition of a Hermitian matrix.
///
/// Eigenvalues are sorted descending (stable on ties) and each eigenvector is
/// rotated so that its first non-negligible component is real and positive.
pub fn hermitian_eigensystem(m: &ComplexMatrix) -> Result<Spectrum> {
    if !m.is_square() {
        return Err(Error::Shape(format!(
            "eigensystem of a {}x{} matrix",
            m.rows(),
            m.cols()
        )));
    }
    let defect = m.hermiticity_defect();
    if defect > HERMITIAN_TOL {
        return Err(Error::NotHermitian(defect));
    }
    let n = m.rows();
    let mut a = m.hermitian_part();
    let mut v = ComplexMatrix::identity(n);
    let scale = a.frobenius_norm();

    let mut converged = false;
    for _ in 0..MAX_SWEEPS {
        if off_diagonal_norm(&a) <= 1e-14 * scale || scale == 0.0 {
            converged = true;
            break;
        }
        for p in 0..n {
            for q in (p + 1)..n {
                rotate_pair(&mut a, &mut v, p, q);
            }
        }
    }
    if !converged && off_diagonal_norm(&a) > 1e-14 * scale {
        return Err(Error::NoConvergence(MAX_SWEEPS));
    }

    let mut order: Vec<usize> = (0..n).collect();
    order.sort_by(|&i, &j| a[(j, j)].re.total_cmp(&a[(i, i)].re));
    let eigenvalues = order.iter().map(|&i| a[(i, i)].re).collect();
    let mut vectors = ComplexMatrix::zeros(n, n);
    for (col, &src) in order.iter().enumerate() {
        let mut vec = v.column(src);
        fix_phase(&mut vec);
        for (row, z) in vec.into_iter().enumerate() {
            vectors[(row, col)] = z;
        }
    }
    Ok(Spectrum {
        eigenvalues,
        eigenvectors: vectors,
    })
}

/// Eigenvalues of a real symmetric matrix, descending.
pub fn symmetric_eigenvalues(m: &RealMatrix) -> Result<Vec<f64>> {
    Ok(hermitian_eigensystem(&m.to_complex())?.eigenvalues)
}

fn off_diagonal_norm(a: &ComplexMatrix) -> f64 {
    let n = a.rows();
    let mut acc = 0.0;
    for i in 0..n {
        for j in 0..n {
            if i != j {
                acc += a[(i, j)].norm_sqr();
            }
        }
    }
    acc.sqrt()
}

/// One complex Jacobi rotation zeroing `a[p][q]`; accumulates into `v`.
fn rotate_pair(a: &mut ComplexMatrix, v: &mut ComplexMatrix, p: usize, q: usize) {
    let g = a[(p, q)];
    let beta = g.norm();
    if beta < 1e-300 {
        return;
    }
    let phase = g / beta;
    let alpha = a[(p, p)].re;
    let gamma = a[(q, q)].re;
    let tau = (gamma - alpha) / (2.0 * beta);
    let t = if tau >= 0.0 {
        1.0 / (tau + (1.0 + tau * tau).sqrt())
    } else {
        -1.0 / (-tau + (1.0 + tau * tau).sqrt())
    };
    let c = 1.0 / (1.0 + t * t).sqrt();
    let s = t * c;
    // U restricted to (p, q): [[c, s], [-s·ē, c·ē]] with e the phase of a_pq.
    let u_pp = C64::new(c, 0.0);
    let u_pq = C64::new(s, 0.0);
    let u_qp = -phase.conj() * s;
    let u_qq = phase.conj() * c;

    let n = a.rows();
    for k in 0..n {
        let (akp, akq) = (a[(k, p)], a[(k, q)]);
        a[(k, p)] = akp * u_pp + akq * u_qp;
        a[(k, q)] = akp * u_pq + akq * u_qq;
        let (vkp, vkq) = (v[(k, p)], v[(k, q)]);
        v[(k, p)] = vkp * u_pp + vkq * u_qp;
        v[(k, q)] = vkp * u_pq + vkq * u_qq;
    }
    for k in 0..n {
        let (apk, aqk) = (a[(p, k)], a[(q, k)]);
        a[(p, k)] = u_pp.conj() * apk + u_qp.conj() * aqk;
        a[(q, k)] = u_pq.conj() * apk + u_qq.conj() * aqk;
    }
    a[(p, q)] = C64::new(0.0, 0.0);
    a[(q, p)] = C64::new(0.0, 0.0);
    a[(p, p)] = C64::new(a[(p, p)].re, 0.0);
    a[(q, q)] = C64::new(a[(q, q)].re, 0.0);
}

fn fix_phase(vec: &mut [C64]) {
    let scale = vec.iter().map(|z| z.norm()).fold(0.0, f64::max);
    if let Some(lead) = vec.iter().find(|z| z.norm() > 1e-12 * scale.max(1e-300)) {
        let rot = lead.conj() / lead.norm();
        for z in vec.iter_mut() {
            *z *= rot;
        }
    }
}

/// Thin singular value decomposition `m = U · diag(σ) · Vᵀ`.
#[derive(Clone, Debug, Serialize)]
pub struct Svd {
    /// Nonnegative, descending.
    pub singular_values: Vec<f64>,
    pub u: RealMatrix,
    pub v: RealMatrix,
}

impl Svd {
    pub fn reconstruct(&self) -> RealMatrix {
        let k = self.singular_values.len();
        let mut us = self.u.clone();
        for j in 0..k {
            for i in 0..us.rows() {
                us[(i, j)] *= self.singular_values[j];
            }
        }
        &us * &self.v.transpose()
    }
}

/// One-sided (Hestenes) Jacobi SVD. Small singular values come out with high
/// relative accuracy, which the rank tests rely on.
pub fn real_svd(m: &RealMatrix) -> Result<Svd> {
    if m.entries().iter().any(|x| !x.is_finite()) {
        return Err(Error::NonFinite);
    }
    if m.rows() < m.cols() {
        let t = real_svd(&m.transpose())?;
        return Ok(Svd {
            singular_values: t.singular_values,
            u: t.v,
            v: t.u,
        });
    }
    let (rows, cols) = (m.rows(), m.cols());
    let mut w = m.clone();
    let mut v = RealMatrix::identity(cols);

    let mut converged = false;
    for _ in 0..MAX_SWEEPS {
        let mut rotated = false;
        for p in 0..cols {
            for q in (p + 1)..cols {
                let (mut alpha, mut beta, mut gamma) = (0.0, 0.0, 0.0);
                for k in 0..rows {
                    alpha += w[(k, p)] * w[(k, p)];
                    beta += w[(k, q)] * w[(k, q)];
                    gamma += w[(k, p)] * w[(k, q)];
                }
                if gamma == 0.0 || gamma.abs() <= 1e-15 * (alpha * beta).sqrt() {
                    continue;
                }
                rotated = true;
                let zeta = (beta - alpha) / (2.0 * gamma);
                let t = zeta.signum() / (zeta.abs() + (1.0 + zeta * zeta).sqrt());
                let c = 1.0 / (1.0 + t * t).sqrt();
                let s = c * t;
                for k in 0..rows {
                    let (x, y) = (w[(k, p)], w[(k, q)]);
                    w[(k, p)] = c * x - s * y;
                    w[(k, q)] = s * x + c * y;
                }
                for k in 0..cols {
                    let (x, y) = (v[(k, p)], v[(k, q)]);
                    v[(k, p)] = c * x - s * y;
                    v[(k, q)] = s * x + c * y;
                }
            }
        }
        if !rotated {
            converged = true;
            break;
        }
    }
    if !converged {
        return Err(Error::NoConvergence(MAX_SWEEPS));
    }

    let norms: Vec<f64> = (0..cols)
        .map(|j| (0..rows).map(|k| w[(k, j)] * w[(k, j)]).sum::<f64>().sqrt())
        .collect();
    let mut order: Vec<usize> = (0..cols).collect();
    order.sort_by(|&i, &j| norms[j].total_cmp(&norms[i]));

    let largest = norms.iter().copied().fold(0.0, f64::max);
    let mut u = RealMatrix::zeros(rows, cols);
    let mut v_sorted = RealMatrix::zeros(cols, cols);
    let mut singular_values = Vec::with_capacity(cols);
    let mut basis: Vec<Vec<f64>> = Vec::new();
    for (col, &src) in order.iter().enumerate() {
        let sigma = norms[src];
        singular_values.push(sigma);
        for k in 0..cols {
            v_sorted[(k, col)] = v[(k, src)];
        }
        if sigma > 1e-300 && sigma > 1e-14 * largest {
            let u_col: Vec<f64> = (0..rows).map(|k| w[(k, src)] / sigma).collect();
            basis.push(u_col);
        } else {
            basis.push(complete_orthonormal(&basis, rows));
        }
        for (k, x) in basis[col].iter().enumerate() {
            u[(k, col)] = *x;
        }
    }
    Ok(Svd {
        singular_values,
        u,
        v: v_sorted,
    })
}

/// A unit vector orthogonal to every vector in `basis`, built by Gram–Schmidt
/// over the standard basis.
fn complete_orthonormal(basis: &[Vec<f64>], dim: usize) -> Vec<f64> {
    let mut best = vec![0.0; dim];
    let mut best_norm = -1.0;
    for e in 0..dim {
        let mut cand = vec![0.0; dim];
        cand[e] = 1.0;
        for b in basis {
            let proj: f64 = b.iter().zip(&cand).map(|(x, y)| x * y).sum();
            for (c, x) in cand.iter_mut().zip(b) {
                *c -= proj * x;
            }
        }
        let nrm = cand.iter().map(|x| x * x).sum::<f64>().sqrt();
        if nrm > best_norm {
            best_norm = nrm;
            best = cand;
        }
    }
    best.iter().map(|x| x / best_norm).collect()
}
