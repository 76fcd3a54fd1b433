//! Real two-qubit states with `ρ₁₁ − ρ₂₂ = ρ₄₄ − ρ₃₃`, `ρ₁₄ = ρ₂₃ = 0` and all
//! remaining off-diagonal entries equal to a common value `c`.
//!
//! Every member has a correlation tensor of rank at most one, hence zero RSP
//! fidelity, while its correlation matrix generically has rank three.

use rand::Rng;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::linalg::ComplexMatrix;
use crate::state::DensityMatrix;

#[derive(Clone, Copy, Debug, PartialEq, Serialize, Deserialize)]
pub struct SigmaFamilySpec {
    /// (ρ₁₁, ρ₂₂, ρ₃₃, ρ₄₄)
    pub diag: [f64; 4],
    /// Common off-diagonal value.
    pub c: f64,
}

const SPEC_TOL: f64 = 1e-9;

impl SigmaFamilySpec {
    pub fn new(diag: [f64; 4], c: f64) -> Result<Self> {
        let s = Self { diag, c };
        s.check()?;
        Ok(s)
    }

    fn check(&self) -> Result<()> {
        let [a, b, c3, d] = self.diag;
        if self.diag.iter().chain([&self.c]).any(|x| !x.is_finite()) {
            return Err(Error::NonFinite);
        }
        let sum = a + b + c3 + d;
        if (sum - 1.0).abs() > SPEC_TOL {
            return Err(Error::NotUnitTrace(sum));
        }
        if ((a - b) - (d - c3)).abs() > SPEC_TOL {
            return Err(Error::InvalidSettings(format!(
                "diagonal violates r11 - r22 = r44 - r33 ({} vs {})",
                a - b,
                d - c3
            )));
        }
        Ok(())
    }

    pub fn matrix(&self) -> ComplexMatrix {
        let [a, b, c3, d] = self.diag;
        let c = self.c;
        ComplexMatrix::from_real_rows(&[[a, c, c, 0.0], [c, b, 0.0, c], [c, 0.0, c3, c], [0.0, c, c, d]])
            .expect("4x4 literal")
    }

    /// The member state; `NotPositive` when the parameters are infeasible.
    pub fn build(&self) -> Result<DensityMatrix> {
        self.check()?;
        DensityMatrix::new(self.matrix())
    }
}

/// Uniformly sampled positive member, by rejection.
pub fn random_member(rng: &mut impl Rng) -> (SigmaFamilySpec, DensityMatrix) {
    loop {
        // diag = (a, a − δ, ½ − a, ½ − a + δ)
        let a: f64 = rng.random_range(0.0..0.5);
        let delta: f64 = rng.random_range(-0.5..0.5);
        let c: f64 = rng.random_range(-0.25..0.25);
        let diag = [a, a - delta, 0.5 - a, 0.5 - a + delta];
        if diag.iter().any(|&x| x < 0.0) {
            continue;
        }
        let spec = SigmaFamilySpec { diag, c };
        if let Ok(rho) = spec.build() {
            return (spec, rho);
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::named::{named_state, NamedState};

    #[test]
    fn reference_parameters_give_sigma() {
        let rho = SigmaFamilySpec::new([0.2, 0.1, 0.3, 0.4], 0.1)
            .unwrap()
            .build()
            .unwrap();
        assert!(rho.matrix().max_abs_diff(named_state(NamedState::Sigma).matrix()) < 1e-16);
    }

    #[test]
    fn constraint_and_positivity_are_enforced() {
        assert!(SigmaFamilySpec::new([0.3, 0.1, 0.3, 0.3], 0.1).is_err());
        assert!(SigmaFamilySpec::new([0.2, 0.1, 0.3, 0.5], 0.1).is_err());
        let wild = SigmaFamilySpec::new([0.25; 4], 0.3).unwrap();
        assert!(matches!(wild.build(), Err(Error::NotPositive(_))));
    }

    #[test]
    fn random_members_satisfy_the_constraints() {
        let mut rng = crate::random::rng_from_seed(4);
        for _ in 0..20 {
            let (spec, rho) = random_member(&mut rng);
            let [a, b, c3, d] = spec.diag;
            assert!(((a - b) - (d - c3)).abs() < 1e-12);
            assert!(rho.matrix()[(0, 3)].norm() == 0.0);
        }
    }
}
