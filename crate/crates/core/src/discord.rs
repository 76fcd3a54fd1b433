//! Entropic discord `D = I − J` with `J` maximized over orthogonal projective
//! measurements of one qubit, and the closed-form geometric discord.
//!
//! Measuring `±n` on one side leaves the other side in
//!
//! ```text
//! p± = (1 ± v·n)/2,    r± = (u ± K n)/(1 ± v·n)
//! ```
//!
//! where for a measurement on B, `v = y`, `u = x`, `K = T`, and for a
//! measurement on A, `v = x`, `u = y`, `K = Tᵀ`. The optimizer works on this
//! Bloch-vector form; [`discord_oracle`] uses explicit projectors instead.

use serde::Serialize;

use crate::bloch::{bloch_decompose, pauli, qubit_from_bloch, BlochForm};
use crate::eigen::symmetric_eigenvalues;
use crate::error::{Error, Result};
use crate::linalg::{dot, norm, ComplexMatrix, RealMatrix};
use crate::sphere::{direction, grid_angles, maximize_on_sphere, OptimizerSettings};
use crate::state::{
    partial_trace, partial_trace_matrix, qubit_entropy_from_bloch_length, von_neumann_entropy, DensityMatrix, Subsystem,
};

/// Outcomes less likely than this carry no conditional state.
pub const DEGENERATE_PROB: f64 = 1e-14;

/// Negative discord or classical correlation down to this is rounding noise.
pub const CLAMP_TOL: f64 = 1e-9;

/// Unit Bloch direction defining the projector pair `(𝟙 ± n·σ)/2`.
#[derive(Clone, Copy, Debug, PartialEq, Serialize)]
pub struct MeasurementDirection([f64; 3]);

impl MeasurementDirection {
    /// Normalizes `v`; fails on the zero vector.
    pub fn new(v: [f64; 3]) -> Result<Self> {
        let n = norm(&v);
        if !n.is_finite() || n <= 1e-300 {
            return Err(Error::InvalidSettings("zero measurement direction".into()));
        }
        Ok(Self(v.map(|c| c / n)))
    }

    pub fn from_angles(theta: f64, phi: f64) -> Self {
        Self(direction(theta, phi))
    }

    pub fn z() -> Self {
        Self([0.0, 0.0, 1.0])
    }

    pub fn vector(&self) -> [f64; 3] {
        self.0
    }

    /// `(𝟙 + sign·n·σ)/2`
    pub fn projector(&self, sign: f64) -> ComplexMatrix {
        qubit_from_bloch(self.0.map(|c| sign * c))
    }
}

/// One measurement outcome and the normalized state left on the other qubit.
#[derive(Clone, Debug)]
pub struct Outcome {
    pub probability: f64,
    pub state: ComplexMatrix,
    /// Probability below [`DEGENERATE_PROB`]; `state` is then 𝟙/2.
    pub degenerate: bool,
}

/// The Bloch data entering the measurement formulas for a given side.
pub(crate) struct SideView {
    pub v: [f64; 3],
    pub u: [f64; 3],
    pub k: RealMatrix,
}

impl SideView {
    pub fn new(b: &BlochForm, measured: Subsystem) -> Self {
        match measured {
            Subsystem::B => Self {
                v: b.y,
                u: b.x,
                k: b.tensor(),
            },
            Subsystem::A => Self {
                v: b.x,
                u: b.y,
                k: b.tensor().transpose(),
            },
        }
    }

    /// `(p, r)` for outcome sign ±1.
    pub fn outcome(&self, n: &[f64; 3], sign: f64) -> (f64, [f64; 3]) {
        let denom = 1.0 + sign * dot(&self.v, n);
        let kn = self.k.apply(n);
        let r = [0, 1, 2].map(|i| (self.u[i] + sign * kn[i]) / denom);
        (0.5 * denom, r)
    }

    /// `Σ p± S(ρ±)`
    pub fn conditional_entropy(&self, n: &[f64; 3]) -> f64 {
        [1.0, -1.0]
            .into_iter()
            .map(|sign| {
                let (p, r) = self.outcome(n, sign);
                if p < DEGENERATE_PROB {
                    0.0
                } else {
                    p * qubit_entropy_from_bloch_length(norm(&r))
                }
            })
            .sum()
    }
}

/// Both outcomes of measuring `side` along `±dir`; the returned states live
/// on the other qubit.
pub fn conditional_state(rho: &DensityMatrix, dir: &MeasurementDirection, side: Subsystem) -> [Outcome; 2] {
    let view = SideView::new(&bloch_decompose(rho), side);
    [1.0, -1.0].map(|sign| {
        let (p, r) = view.outcome(&dir.0, sign);
        if p < DEGENERATE_PROB {
            Outcome {
                probability: p.max(0.0),
                state: ComplexMatrix::identity(2).scale_real(0.5),
                degenerate: true,
            }
        } else {
            Outcome {
                probability: p,
                state: qubit_from_bloch(r),
                degenerate: false,
            }
        }
    })
}

/// `S(ρ_A) + S(ρ_B) − S(ρ)` in bits.
pub fn mutual_information(rho: &DensityMatrix) -> Result<f64> {
    let sa = von_neumann_entropy(&partial_trace(rho, Subsystem::A))?;
    let sb = von_neumann_entropy(&partial_trace(rho, Subsystem::B))?;
    let s = von_neumann_entropy(rho.matrix())?;
    Ok(sa + sb - s)
}

/// Maximal classical correlation `J` obtainable by projectively measuring
/// `side`, with the maximizing direction.
pub fn classical_correlations(
    rho: &DensityMatrix,
    side: Subsystem,
    s: &OptimizerSettings,
) -> Result<(f64, MeasurementDirection)> {
    let view = SideView::new(&bloch_decompose(rho), side);
    let unmeasured = qubit_entropy_from_bloch_length(norm(&view.u));
    let best = maximize_on_sphere(|n| unmeasured - view.conditional_entropy(&n), s)?;
    let j = clamp_small_negative(best.value, "classical correlation")?;
    Ok((j, MeasurementDirection(best.direction)))
}

#[derive(Clone, Copy, Debug, Serialize)]
pub struct DiscordResult {
    pub discord: f64,
    pub classical_corr: f64,
    pub mutual_info: f64,
    pub argmax_direction: MeasurementDirection,
    pub measured_side: Subsystem,
}

pub fn discord(rho: &DensityMatrix, side: Subsystem, s: &OptimizerSettings) -> Result<DiscordResult> {
    let mutual_info = mutual_information(rho)?;
    let (classical_corr, argmax_direction) = classical_correlations(rho, side, s)?;
    let discord = clamp_small_negative(mutual_info - classical_corr, "discord")?;
    Ok(DiscordResult {
        discord,
        classical_corr,
        mutual_info,
        argmax_direction,
        measured_side: side,
    })
}

fn clamp_small_negative(value: f64, what: &str) -> Result<f64> {
    if value >= 0.0 {
        Ok(value)
    } else if value > -CLAMP_TOL {
        Ok(0.0)
    } else {
        Err(Error::Consistency(format!("{what} is {value:.3e} < 0")))
    }
}

/// Squared Hilbert–Schmidt distance to the closest zero-discord state
/// (classical on `side`), in the normalization
/// `¼(‖v‖² + ‖T‖²_F − λ_max(v vᵀ + K))`, `K = TᵀT` for B and `TTᵀ` for A.
pub fn geometric_discord(rho: &DensityMatrix, side: Subsystem) -> Result<f64> {
    let b = bloch_decompose(rho);
    let t = b.tensor();
    let (v, k) = match side {
        Subsystem::B => (b.y, &t.transpose() * &t),
        Subsystem::A => (b.x, &t * &t.transpose()),
    };
    let m = RealMatrix::from_fn(3, 3, |i, j| v[i] * v[j] + k[(i, j)]);
    let lambda_max = symmetric_eigenvalues(&m)?[0];
    let tf = t.frobenius_norm();
    let value = 0.25 * (dot(&v, &v) + tf * tf - lambda_max);
    if value < -1e-12 {
        return Err(Error::Consistency(format!("geometric discord {value:.3e} < 0")));
    }
    Ok(value.max(0.0))
}

/// Entropy of a 2×2 density matrix from its closed-form eigenvalues.
fn qubit_matrix_entropy(m: &ComplexMatrix) -> f64 {
    let a = m[(0, 0)].re;
    let d = m[(1, 1)].re;
    let off = m[(0, 1)].norm();
    let half_gap = (0.25 * (a - d) * (a - d) + off * off).sqrt();
    let mid = 0.5 * (a + d);
    crate::state::entropy_of_spectrum(&[mid + half_gap, mid - half_gap])
}

/// Brute-force discord on a dense direction grid with no refinement.
///
/// Independent of the optimizer path: each grid point builds the projectors
/// `𝟙⊗Π±` (or `Π±⊗𝟙`) explicitly, forms `Π ρ Π`, and takes the partial trace.
pub fn discord_oracle(rho: &DensityMatrix, side: Subsystem, fine_grid: (usize, usize)) -> Result<f64> {
    let (nt, np) = fine_grid;
    if nt < 180 || np < 360 {
        return Err(Error::InvalidSettings(format!("oracle grid {nt}x{np} below 180x360")));
    }
    let keep = side.other();
    let unmeasured = von_neumann_entropy(&partial_trace(rho, keep))?;
    let id = pauli(0);
    let mut best_j = f64::NEG_INFINITY;
    for i in 0..nt {
        for j in 0..np {
            let (t, p) = grid_angles(nt, np, i, j);
            let dir = MeasurementDirection::from_angles(t, p);
            let mut cond = 0.0;
            for sign in [1.0, -1.0] {
                let proj = dir.projector(sign);
                let full = match side {
                    Subsystem::B => id.kron(&proj),
                    Subsystem::A => proj.kron(&id),
                };
                let post = full.conjugate(rho.matrix());
                let prob = post.trace().re;
                if prob < DEGENERATE_PROB {
                    continue;
                }
                let reduced = partial_trace_matrix(&post, keep).scale_real(1.0 / prob);
                cond += prob * qubit_matrix_entropy(&reduced);
            }
            best_j = best_j.max(unmeasured - cond);
        }
    }
    Ok(mutual_information(rho)? - best_j)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::named::{named_state, NamedState};

    fn settings() -> OptimizerSettings {
        OptimizerSettings::default()
    }

    #[test]
    fn rho_cl_measured_along_z() {
        let rho = named_state(NamedState::RhoCl);
        let [plus, minus] = conditional_state(&rho, &MeasurementDirection::z(), Subsystem::B);
        assert!((plus.probability - 0.5).abs() < 1e-15);
        assert!((minus.probability - 0.5).abs() < 1e-15);
        assert!(plus.state.max_abs_diff(&ComplexMatrix::diagonal_real(&[1.0, 0.0])) < 1e-15);
        assert!(minus.state.max_abs_diff(&ComplexMatrix::diagonal_real(&[0.0, 1.0])) < 1e-15);
    }

    #[test]
    fn bell_measured_along_z() {
        let rho = named_state(NamedState::BellPhiPlus);
        let [plus, minus] = conditional_state(&rho, &MeasurementDirection::z(), Subsystem::B);
        assert!((plus.probability - 0.5).abs() < 1e-15);
        assert!(plus.state.max_abs_diff(&ComplexMatrix::diagonal_real(&[1.0, 0.0])) < 1e-15);
        assert!(minus.state.max_abs_diff(&ComplexMatrix::diagonal_real(&[0.0, 1.0])) < 1e-15);
    }

    #[test]
    fn product_state_conditionals_equal_marginal() {
        let a = qubit_from_bloch([0.2, -0.1, 0.5]);
        let b = qubit_from_bloch([0.0, 0.6, 0.3]);
        let rho = DensityMatrix::product(&a, &b).unwrap();
        let dir = MeasurementDirection::new([1.0, 2.0, -0.5]).unwrap();
        for out in conditional_state(&rho, &dir, Subsystem::B) {
            assert!(out.state.max_abs_diff(&a) < 1e-14);
        }
    }

    #[test]
    fn pure_product_conditionals_flag_degenerate_outcome() {
        let rho = DensityMatrix::new(ComplexMatrix::diagonal_real(&[1.0, 0.0, 0.0, 0.0])).unwrap();
        let [plus, minus] = conditional_state(&rho, &MeasurementDirection::z(), Subsystem::B);
        assert!(!plus.degenerate);
        assert!(minus.degenerate);
        assert!(minus.state.max_abs_diff(&ComplexMatrix::identity(2).scale_real(0.5)) < 1e-16);
    }

    #[test]
    fn mutual_information_reference_values() {
        let product = named_state(NamedState::ProductPlus);
        assert!(mutual_information(&product).unwrap().abs() < 1e-12);
        assert!((mutual_information(&named_state(NamedState::RhoCl)).unwrap() - 1.0).abs() < 1e-12);
        assert!((mutual_information(&named_state(NamedState::BellPhiPlus)).unwrap() - 2.0).abs() < 1e-12);
    }

    #[test]
    fn classical_correlation_reference_values() {
        let (j, dir) = classical_correlations(&named_state(NamedState::RhoCl), Subsystem::B, &settings()).unwrap();
        assert!((j - 1.0).abs() < 1e-12);
        assert!((dir.vector()[2].abs() - 1.0).abs() < 1e-9);
        let (j, _) = classical_correlations(&named_state(NamedState::BellPhiPlus), Subsystem::B, &settings()).unwrap();
        assert!((j - 1.0).abs() < 1e-12);
        let (j, _) = classical_correlations(&named_state(NamedState::ProductPlus), Subsystem::B, &settings()).unwrap();
        assert!(j.abs() < 1e-12);
    }

    #[test]
    fn discord_reference_values() {
        let d = discord(&named_state(NamedState::RhoCl), Subsystem::B, &settings()).unwrap();
        assert!(d.discord.abs() < 1e-12);
        let d = discord(&named_state(NamedState::BellPhiPlus), Subsystem::B, &settings()).unwrap();
        assert!((d.discord - 1.0).abs() < 1e-12);
        let d = discord(&named_state(NamedState::Sigma), Subsystem::B, &settings()).unwrap();
        assert!((d.discord - 0.026).abs() <= 0.003, "{}", d.discord);
        assert!((d.discord - (d.mutual_info - d.classical_corr)).abs() < 1e-12);
    }

    #[test]
    fn geometric_discord_reference_values() {
        let g = geometric_discord(&named_state(NamedState::Sigma), Subsystem::B).unwrap();
        assert!((g - 0.01).abs() < 1e-14, "{g}");
        assert!(geometric_discord(&named_state(NamedState::RhoCl), Subsystem::B).unwrap() < 1e-15);
        let g = geometric_discord(&named_state(NamedState::BellPhiPlus), Subsystem::B).unwrap();
        assert!((g - 0.5).abs() < 1e-14);
    }

    #[test]
    fn oracle_agrees_on_reference_states() {
        let rho_cl = named_state(NamedState::RhoCl);
        assert!(discord_oracle(&rho_cl, Subsystem::B, (180, 360)).unwrap().abs() < 1e-6);
        let sigma = named_state(NamedState::Sigma);
        let oracle = discord_oracle(&sigma, Subsystem::B, (180, 360)).unwrap();
        let opt = discord(&sigma, Subsystem::B, &settings()).unwrap().discord;
        assert!((oracle - opt).abs() < 2e-3);
        assert!(opt <= oracle + 1e-9);
        assert!(discord_oracle(&sigma, Subsystem::B, (10, 360)).is_err());
    }

    #[test]
    fn zero_direction_is_rejected() {
        assert!(MeasurementDirection::new([0.0; 3]).is_err());
    }
}
