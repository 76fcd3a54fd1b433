//! The reference states used throughout the worked examples.

use std::fmt;
use std::str::FromStr;

use crate::error::{Error, Result};
use crate::linalg::{ComplexMatrix, C64};
use crate::state::DensityMatrix;

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum NamedState {
    /// ½(|00⟩⟨00| + |11⟩⟨11|)
    RhoCl,
    /// ½(|00⟩⟨00| + |++⟩⟨++|), the image of `RhoCl` under Φ⊗Φ.
    RhoTilde,
    /// Discordant state with one-dimensional correlation tensor.
    Sigma,
    /// (|00⟩ + |11⟩)/√2
    BellPhiPlus,
    /// |++⟩
    ProductPlus,
}

impl NamedState {
    pub const ALL: [NamedState; 5] = [
        NamedState::RhoCl,
        NamedState::RhoTilde,
        NamedState::Sigma,
        NamedState::BellPhiPlus,
        NamedState::ProductPlus,
    ];

    pub fn name(self) -> &'static str {
        match self {
            NamedState::RhoCl => "rho_cl",
            NamedState::RhoTilde => "rho_tilde",
            NamedState::Sigma => "sigma",
            NamedState::BellPhiPlus => "bell_phi_plus",
            NamedState::ProductPlus => "product_plus",
        }
    }
}

impl fmt::Display for NamedState {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

impl FromStr for NamedState {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        NamedState::ALL
            .into_iter()
            .find(|n| n.name() == s)
            .ok_or_else(|| Error::UnknownName(s.to_string()))
    }
}

/// Looks a state up by its string name.
pub fn reference_state(name: &str) -> Result<DensityMatrix> {
    Ok(named_state(name.parse()?))
}

pub fn named_state(which: NamedState) -> DensityMatrix {
    let r = |x: f64| C64::new(x, 0.0);
    let h = std::f64::consts::FRAC_1_SQRT_2;
    let m = match which {
        NamedState::RhoCl => ComplexMatrix::diagonal_real(&[0.5, 0.0, 0.0, 0.5]),
        NamedState::RhoTilde => {
            let zero_zero = ComplexMatrix::projector(&[r(1.0), r(0.0), r(0.0), r(0.0)]);
            let plus_plus = ComplexMatrix::projector(&[r(0.5); 4]);
            (&zero_zero + &plus_plus).scale_real(0.5)
        }
        NamedState::Sigma => ComplexMatrix::from_real_rows(&[
            [0.2, 0.1, 0.1, 0.0],
            [0.1, 0.1, 0.0, 0.1],
            [0.1, 0.0, 0.3, 0.1],
            [0.0, 0.1, 0.1, 0.4],
        ])
        .expect("4x4 literal"),
        NamedState::BellPhiPlus => ComplexMatrix::projector(&[r(h), r(0.0), r(0.0), r(h)]),
        NamedState::ProductPlus => ComplexMatrix::projector(&[r(0.5); 4]),
    };
    DensityMatrix::new(m).expect("reference states are valid")
}

/// The four Bell states Φ±, Ψ±.
pub fn bell_states() -> [DensityMatrix; 4] {
    let h = std::f64::consts::FRAC_1_SQRT_2;
    let z = C64::new(0.0, 0.0);
    let p = C64::new(h, 0.0);
    [[p, z, z, p], [p, z, z, -p], [z, p, p, z], [z, p, -p, z]]
        .map(|v| DensityMatrix::pure(&v).expect("Bell vectors are normalized"))
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn names_round_trip() {
        for n in NamedState::ALL {
            assert_eq!(n.name().parse::<NamedState>().unwrap(), n);
        }
        assert!(matches!(reference_state("rho_hat"), Err(Error::UnknownName(_))));
    }

    #[test]
    fn rho_tilde_entries() {
        let m = named_state(NamedState::RhoTilde);
        let m = m.matrix();
        assert!((m[(0, 0)].re - 0.625).abs() < 1e-16);
        for (i, j) in [(0, 1), (1, 1), (2, 3), (3, 3), (1, 2)] {
            assert!((m[(i, j)].re - 0.125).abs() < 1e-16);
        }
    }

    #[test]
    fn rho_cl_is_the_classical_mixture() {
        let m = named_state(NamedState::RhoCl);
        assert_eq!(m.matrix(), &ComplexMatrix::diagonal_real(&[0.5, 0.0, 0.0, 0.5]));
    }
}
