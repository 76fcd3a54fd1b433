//! Local Kraus maps acting on one or both qubits.
//!
//! A product map sends ρ to `Σ_ij (K_i ⊗ L_j) ρ (K_i ⊗ L_j)†`, renormalized by
//! its trace. For trace-preserving channels the renormalization is a no-op;
//! for filtering maps it implements the conditional (post-selected) output.

use std::fmt;
use std::str::FromStr;

use serde::Serialize;

use crate::eigen::hermitian_eigensystem;
use crate::error::{Error, Result};
use crate::linalg::{ComplexMatrix, C64};
use crate::state::{DensityMatrix, Tolerances};

/// Completeness defects below this mark a channel as CPTP.
pub const CPTP_TOL: f64 = 1e-9;

/// Output traces at or below this are treated as annihilated.
pub const ANNIHILATION_TOL: f64 = 1e-12;

#[derive(Clone, Debug, PartialEq)]
pub struct KrausChannel {
    ops: Vec<ComplexMatrix>,
}

#[derive(Clone, Copy, Debug, PartialEq, Serialize)]
pub struct CptpCheck {
    pub cptp: bool,
    /// Operator norm of `Σ K†K − 𝟙`.
    pub defect: f64,
}

impl KrausChannel {
    pub fn new(ops: Vec<ComplexMatrix>) -> Result<Self> {
        if ops.is_empty() {
            return Err(Error::EmptyChannel);
        }
        if let Some(bad) = ops.iter().find(|k| k.rows() != 2 || k.cols() != 2) {
            return Err(Error::Shape(format!(
                "Kraus operator must be 2x2, got {}x{}",
                bad.rows(),
                bad.cols()
            )));
        }
        Ok(Self { ops })
    }

    pub fn identity() -> Self {
        Self {
            ops: vec![ComplexMatrix::identity(2)],
        }
    }

    pub fn ops(&self) -> &[ComplexMatrix] {
        &self.ops
    }

    pub fn validate_cptp(&self) -> CptpCheck {
        let mut sum = ComplexMatrix::zeros(2, 2);
        for k in &self.ops {
            sum = &sum + &(&k.adjoint() * k);
        }
        let diff = &sum - &ComplexMatrix::identity(2);
        let defect = hermitian_eigensystem(&diff)
            .map(|s| s.eigenvalues.iter().map(|l| l.abs()).fold(0.0, f64::max))
            .unwrap_or(f64::INFINITY);
        CptpCheck {
            cptp: defect < CPTP_TOL,
            defect,
        }
    }

    /// Single-qubit action `Σ K X K†`.
    pub fn apply_qubit(&self, x: &ComplexMatrix) -> ComplexMatrix {
        let mut out = ComplexMatrix::zeros(2, 2);
        for k in &self.ops {
            out = &out + &k.conjugate(x);
        }
        out
    }
}

/// Free-function form of [`KrausChannel::validate_cptp`] that also rejects
/// empty operator lists.
pub fn validate_cptp(ops: &[ComplexMatrix]) -> Result<CptpCheck> {
    Ok(KrausChannel::new(ops.to_vec())?.validate_cptp())
}

/// A channel acting independently on A and on B.
#[derive(Clone, Debug, PartialEq)]
pub struct LocalProductMap {
    pub a: KrausChannel,
    pub b: KrausChannel,
}

impl LocalProductMap {
    pub fn new(a: KrausChannel, b: KrausChannel) -> Self {
        Self { a, b }
    }

    pub fn both(c: KrausChannel) -> Self {
        Self { a: c.clone(), b: c }
    }

    pub fn is_cptp(&self) -> bool {
        self.a.validate_cptp().cptp && self.b.validate_cptp().cptp
    }
}

/// Applies the product map without renormalizing.
pub fn apply_local_unnormalized(rho: &DensityMatrix, m: &LocalProductMap) -> ComplexMatrix {
    let mut out = ComplexMatrix::zeros(4, 4);
    for ka in m.a.ops() {
        for kb in m.b.ops() {
            out = &out + &ka.kron(kb).conjugate(rho.matrix());
        }
    }
    out
}

pub fn apply_local(rho: &DensityMatrix, m: &LocalProductMap) -> Result<DensityMatrix> {
    let out = apply_local_unnormalized(rho, m);
    let tr = out.trace().re;
    if tr <= ANNIHILATION_TOL {
        return Err(Error::Annihilated(tr));
    }
    crate::state::validate_density(&out.scale_real(1.0 / tr), &Tolerances::default())
}

/// Stock channels. Parameters live in [0, 1].
#[derive(Clone, Copy, Debug, PartialEq)]
pub enum Builtin {
    Identity,
    /// Φ(X) = |0⟩⟨0|X|0⟩⟨0| + |+⟩⟨1|X|1⟩⟨+|
    Phi,
    /// ρ ↦ (1−p)ρ + p ZρZ
    Dephasing(f64),
    /// ρ ↦ (1−p)ρ + p 𝟙/2
    Depolarizing(f64),
    AmplitudeDamping(f64),
}

impl fmt::Display for Builtin {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Builtin::Identity => write!(f, "identity"),
            Builtin::Phi => write!(f, "phi"),
            Builtin::Dephasing(p) => write!(f, "dephasing:{p}"),
            Builtin::Depolarizing(p) => write!(f, "depolarizing:{p}"),
            Builtin::AmplitudeDamping(g) => write!(f, "amplitude_damping:{g}"),
        }
    }
}

impl FromStr for Builtin {
    type Err = Error;

    /// `name` or `name:param`, e.g. `phi`, `depolarizing:0.3`.
    fn from_str(s: &str) -> Result<Self> {
        let (name, param) = match s.split_once(':') {
            Some((n, p)) => {
                let value = p
                    .trim()
                    .parse::<f64>()
                    .map_err(|e| Error::Parse(format!("channel parameter `{p}`: {e}")))?;
                (n.trim(), Some(value))
            }
            None => (s.trim(), None),
        };
        let need = |p: Option<f64>| p.ok_or_else(|| Error::Parse(format!("channel `{name}` needs a parameter")));
        match name {
            "identity" => Ok(Builtin::Identity),
            "phi" => Ok(Builtin::Phi),
            "dephasing" => Ok(Builtin::Dephasing(need(param)?)),
            "depolarizing" => Ok(Builtin::Depolarizing(need(param)?)),
            "amplitude_damping" => Ok(Builtin::AmplitudeDamping(need(param)?)),
            other => Err(Error::UnknownName(other.to_string())),
        }
    }
}

fn check_param(name: &'static str, value: f64) -> Result<f64> {
    if (0.0..=1.0).contains(&value) {
        Ok(value)
    } else {
        Err(Error::ParamOutOfRange { name, value })
    }
}

pub fn builtin(which: Builtin) -> Result<KrausChannel> {
    let c = |re: f64| C64::new(re, 0.0);
    let z = c(0.0);
    let mat = |rows: [[C64; 2]; 2]| ComplexMatrix::from_rows(&rows).expect("2x2 literal");
    let pauli = crate::bloch::pauli;
    let ops = match which {
        Builtin::Identity => vec![ComplexMatrix::identity(2)],
        Builtin::Phi => {
            let h = std::f64::consts::FRAC_1_SQRT_2;
            // |0⟩⟨0| and |+⟩⟨1|
            vec![mat([[c(1.0), z], [z, z]]), mat([[z, c(h)], [z, c(h)]])]
        }
        Builtin::Dephasing(p) => {
            let p = check_param("p", p)?;
            vec![
                ComplexMatrix::identity(2).scale_real((1.0 - p).sqrt()),
                pauli(3).scale_real(p.sqrt()),
            ]
        }
        Builtin::Depolarizing(p) => {
            let p = check_param("p", p)?;
            let mut ops = vec![ComplexMatrix::identity(2).scale_real((1.0 - 0.75 * p).sqrt())];
            ops.extend((1..=3).map(|k| pauli(k).scale_real((p / 4.0).sqrt())));
            ops
        }
        Builtin::AmplitudeDamping(g) => {
            let g = check_param("gamma", g)?;
            vec![
                mat([[c(1.0), z], [z, c((1.0 - g).sqrt())]]),
                mat([[z, c(g.sqrt())], [z, z]]),
            ]
        }
    };
    KrausChannel::new(ops)
}
