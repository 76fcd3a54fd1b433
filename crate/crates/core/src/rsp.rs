//! Remote state preparation of equatorial qubit states.
//!
//! The closed-form fidelity is `F = ½(T₁² + T₂²)` with `T₁² ≤ T₂²` the two
//! lowest eigenvalues of `TᵀT`. [`rsp_protocol_eval`] simulates one round of
//! a reconstructed protocol (Alice measures, sends one bit, Bob optionally
//! rotates) exactly, and [`rsp_protocol_average`] turns it into a number on
//! the same scale as `F` for cross-checks.

use serde::Serialize;

use crate::bloch::bloch_decompose;
use crate::discord::{conditional_state, MeasurementDirection, SideView, DEGENERATE_PROB};
use crate::eigen::symmetric_eigenvalues;
use crate::error::{Error, Result};
use crate::linalg::{dot, norm};
use crate::sphere::{maximize_on_sphere, OptimizerSettings};
use crate::state::{DensityMatrix, Subsystem};

#[derive(Clone, Copy, Debug, PartialEq, Serialize)]
pub struct RspResult {
    pub fidelity: f64,
    pub efficiency: f64,
    pub t1_sq: f64,
    pub t2_sq: f64,
    pub t_max_sq: f64,
    pub protocol_fidelity: Option<f64>,
}

pub fn rsp_fidelity(rho: &DensityMatrix) -> Result<RspResult> {
    let mut eig = symmetric_eigenvalues(&bloch_decompose(rho).tt_t())?;
    eig.sort_by(f64::total_cmp);
    let [t1_sq, t2_sq, t_max_sq] = [eig[0], eig[1], eig[2]].map(|l| l.max(0.0));
    let fidelity = (0.5 * (t1_sq + t2_sq)).clamp(0.0, 1.0);
    Ok(RspResult {
        fidelity,
        efficiency: rsp_efficiency(fidelity)?,
        t1_sq,
        t2_sq,
        t_max_sq,
        protocol_fidelity: None,
    })
}

/// `(2F − 1)²`. Note that this is 1 at both F = 0 and F = 1.
pub fn rsp_efficiency(f: f64) -> Result<f64> {
    if !(-1e-12..=1.0 + 1e-12).contains(&f) {
        return Err(Error::ParamOutOfRange { name: "F", value: f });
    }
    let f = f.clamp(0.0, 1.0);
    Ok((2.0 * f - 1.0).powi(2))
}

/// Target `(cos β, sin β, 0)` on the equator of Bob's Bloch sphere.
#[derive(Clone, Copy, Debug, PartialEq, Serialize)]
pub struct EquatorialTarget {
    pub phase: f64,
}

impl EquatorialTarget {
    pub fn new(phase: f64) -> Self {
        Self { phase }
    }

    pub fn bloch(&self) -> [f64; 3] {
        [self.phase.cos(), self.phase.sin(), 0.0]
    }
}

/// Bob's action on the `−` branch of Alice's measurement.
#[derive(Clone, Copy, Debug, PartialEq, Serialize)]
pub enum BobCorrection {
    Identity,
    /// Rotation by π about a unit axis: `r ↦ 2(a·r)a − r`.
    PiRotation([f64; 3]),
}

impl BobCorrection {
    /// π rotation about the axis normal to the equatorial plane.
    pub fn pi_about_z() -> Self {
        BobCorrection::PiRotation([0.0, 0.0, 1.0])
    }

    fn apply(&self, r: [f64; 3]) -> [f64; 3] {
        match self {
            BobCorrection::Identity => r,
            BobCorrection::PiRotation(axis) => {
                let n = norm(axis);
                let a = axis.map(|c| c / n);
                let ar = dot(&a, &r);
                [0, 1, 2].map(|i| 2.0 * ar * a[i] - r[i])
            }
        }
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Serialize)]
pub struct ProtocolEval {
    /// Outcome-averaged overlap `Σ p ⟨s|ρ_B|s⟩` in [0, 1].
    pub overlap: f64,
    /// Set when an outcome had probability below 1e−14; `overlap` is then the
    /// overlap with Bob's unconditional state.
    pub degenerate: bool,
}

/// Exact single-target evaluation of the reconstructed protocol.
pub fn rsp_protocol_eval(
    rho: &DensityMatrix,
    target: &EquatorialTarget,
    alice_dir: &MeasurementDirection,
    correction: &BobCorrection,
) -> ProtocolEval {
    let s = target.bloch();
    let outcomes = conditional_state(rho, alice_dir, Subsystem::A);
    if outcomes.iter().any(|o| o.degenerate) {
        let y = bloch_decompose(rho).y;
        return ProtocolEval {
            overlap: 0.5 * (1.0 + dot(&s, &y)),
            degenerate: true,
        };
    }
    let overlap = outcomes
        .iter()
        .zip([BobCorrection::Identity, *correction])
        .map(|(o, fix)| {
            let r = fix.apply(crate::bloch::bloch_of_qubit(&o.state));
            o.probability * 0.5 * (1.0 + dot(&s, &r))
        })
        .sum();
    ProtocolEval {
        overlap,
        degenerate: false,
    }
}

/// Average over `n_targets` equally spaced equatorial targets of
/// `(2o − 1)²`, where `o` is the overlap maximized over Alice's measurement
/// direction and Bob's binary correction (identity or π about z).
pub fn rsp_protocol_average(rho: &DensityMatrix, n_targets: usize, optimizer: &OptimizerSettings) -> Result<f64> {
    if n_targets < 8 {
        return Err(Error::InvalidSettings(format!("{n_targets} targets, need at least 8")));
    }
    let b = bloch_decompose(rho);
    let view = SideView::new(&b, Subsystem::A);
    let corrections = [BobCorrection::Identity, BobCorrection::pi_about_z()];
    let mut total = 0.0;
    for k in 0..n_targets {
        let target = EquatorialTarget::new(2.0 * std::f64::consts::PI * k as f64 / n_targets as f64);
        let s = target.bloch();
        let mut best_overlap = f64::NEG_INFINITY;
        for fix in &corrections {
            let objective = |n: [f64; 3]| {
                let mut o = 0.0;
                for (sign, branch_fix) in [(1.0, BobCorrection::Identity), (-1.0, *fix)] {
                    let (p, r) = view.outcome(&n, sign);
                    if p < DEGENERATE_PROB {
                        return 0.5 * (1.0 + dot(&s, &b.y));
                    }
                    o += p * 0.5 * (1.0 + dot(&s, &branch_fix.apply(r)));
                }
                o
            };
            let best = maximize_on_sphere(objective, optimizer)?;
            best_overlap = best_overlap.max(best.value);
        }
        total += (2.0 * best_overlap - 1.0).powi(2);
    }
    Ok(total / n_targets as f64)
}
