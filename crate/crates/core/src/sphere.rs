//! Derivative-free maximization over unit directions in R³: a coarse
//! (θ, φ) grid followed by a shrinking 3×3 local stencil around the incumbent.

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

/// Largest objective change allowed in the final refinement step.
pub const CONVERGENCE_TOL: f64 = 1e-10;

#[derive(Clone, Copy, Debug, PartialEq, Serialize, Deserialize)]
pub struct OptimizerSettings {
    /// (polar, azimuthal) grid counts.
    pub coarse_grid: (usize, usize),
    pub refine_iters: usize,
    pub refine_shrink: f64,
}

impl Default for OptimizerSettings {
    fn default() -> Self {
        Self {
            coarse_grid: (32, 64),
            refine_iters: 40,
            refine_shrink: 0.5,
        }
    }
}

impl OptimizerSettings {
    pub fn validate(&self) -> Result<()> {
        let (nt, np) = self.coarse_grid;
        if nt < 8 || np < 8 {
            return Err(Error::InvalidSettings(format!("grid {nt}x{np} below the 8x8 minimum")));
        }
        if !(self.refine_shrink > 0.0 && self.refine_shrink < 1.0) {
            return Err(Error::InvalidSettings(format!(
                "refine_shrink {} not in (0, 1)",
                self.refine_shrink
            )));
        }
        Ok(())
    }
}

pub fn direction(theta: f64, phi: f64) -> [f64; 3] {
    let (st, ct) = theta.sin_cos();
    let (sp, cp) = phi.sin_cos();
    [st * cp, st * sp, ct]
}

/// Polar angle `iπ/(n−1)` (both poles included) and azimuth `2πj/m`.
pub fn grid_angles(n_theta: usize, n_phi: usize, i: usize, j: usize) -> (f64, f64) {
    let pi = std::f64::consts::PI;
    (i as f64 * pi / (n_theta - 1) as f64, 2.0 * pi * j as f64 / n_phi as f64)
}

#[derive(Clone, Copy, Debug, PartialEq)]
pub struct SphereMax {
    pub value: f64,
    pub direction: [f64; 3],
    /// Objective gain of the final refinement iteration.
    pub last_change: f64,
}

/// Maximizes `f` over the unit sphere. Ties go to the lowest grid index, so
/// the result is independent of evaluation order.
pub fn maximize_on_sphere(f: impl Fn([f64; 3]) -> f64, s: &OptimizerSettings) -> Result<SphereMax> {
    s.validate()?;
    let (nt, np) = s.coarse_grid;
    let (mut theta, mut phi) = (0.0, 0.0);
    let mut best = f64::NEG_INFINITY;
    for i in 0..nt {
        for j in 0..np {
            let (t, p) = grid_angles(nt, np, i, j);
            let v = f(direction(t, p));
            if v > best {
                best = v;
                theta = t;
                phi = p;
            }
        }
    }

    let (mut d_theta, mut d_phi) = grid_angles(nt, np, 1, 1);
    let mut last_change = f64::INFINITY;
    for _ in 0..s.refine_iters {
        let start = best;
        let (mut next_theta, mut next_phi) = (theta, phi);
        for a in [-1.0, 0.0, 1.0] {
            for b in [-1.0, 0.0, 1.0] {
                if a == 0.0 && b == 0.0 {
                    continue;
                }
                let (t, p) = (theta + a * d_theta, phi + b * d_phi);
                let v = f(direction(t, p));
                if v > best {
                    best = v;
                    next_theta = t;
                    next_phi = p;
                }
            }
        }
        theta = next_theta;
        phi = next_phi;
        last_change = best - start;
        d_theta *= s.refine_shrink;
        d_phi *= s.refine_shrink;
    }
    if last_change.is_nan() || last_change >= CONVERGENCE_TOL {
        return Err(Error::OptimizerBudgetExceeded(last_change));
    }
    Ok(SphereMax {
        value: best,
        direction: direction(theta, phi),
        last_change,
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn finds_an_off_grid_maximum() {
        let target = direction(0.7312, 2.1234);
        let f = |n: [f64; 3]| n[0] * target[0] + n[1] * target[1] + n[2] * target[2];
        let best = maximize_on_sphere(f, &OptimizerSettings::default()).unwrap();
        assert!((best.value - 1.0).abs() < 1e-12);
        for (got, want) in best.direction.iter().zip(target) {
            assert!((got - want).abs() < 1e-6);
        }
    }

    #[test]
    fn pole_maximum_is_exact() {
        let best = maximize_on_sphere(|n| n[2], &OptimizerSettings::default()).unwrap();
        assert_eq!(best.value, 1.0);
    }

    #[test]
    fn tiny_budgets_are_reported() {
        let s = OptimizerSettings {
            refine_iters: 0,
            ..Default::default()
        };
        let target = direction(0.7312, 2.1234);
        let f = |n: [f64; 3]| n[0] * target[0] + n[1] * target[1] + n[2] * target[2];
        assert!(matches!(
            maximize_on_sphere(f, &s),
            Err(Error::OptimizerBudgetExceeded(_))
        ));
        let s = OptimizerSettings {
            refine_iters: 2,
            ..Default::default()
        };
        assert!(matches!(
            maximize_on_sphere(f, &s),
            Err(Error::OptimizerBudgetExceeded(_))
        ));
    }

    #[test]
    fn settings_are_validated() {
        let s = OptimizerSettings {
            coarse_grid: (4, 64),
            ..Default::default()
        };
        assert!(matches!(s.validate(), Err(Error::InvalidSettings(_))));
        let s = OptimizerSettings {
            refine_shrink: 1.0,
            ..Default::default()
        };
        assert!(s.validate().is_err());
    }
}
