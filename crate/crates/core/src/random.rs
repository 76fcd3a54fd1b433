//! Seeded random states, unitaries and channels for property sweeps.
//!
//! Every generator is driven by a ChaCha stream so results are reproducible
//! across platforms for a given seed.

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rand_distr::StandardNormal;

use crate::bloch::qubit_from_bloch;
use crate::channels::KrausChannel;
use crate::error::{Error, Result};
use crate::linalg::{ComplexMatrix, C64};
use crate::state::{DensityMatrix, Subsystem};

pub type SeededRng = ChaCha8Rng;

pub fn rng_from_seed(seed: u64) -> SeededRng {
    ChaCha8Rng::seed_from_u64(seed)
}

fn gaussian(rng: &mut impl Rng) -> C64 {
    C64::new(rng.sample(StandardNormal), rng.sample(StandardNormal))
}

pub fn ginibre(rng: &mut impl Rng, rows: usize, cols: usize) -> ComplexMatrix {
    ComplexMatrix::from_fn(rows, cols, |_, _| gaussian(rng))
}

/// Ginibre state `G·G†/Tr(G·G†)` with `G` of shape 4×rank.
pub fn random_density(seed: u64, rank: usize) -> Result<DensityMatrix> {
    random_density_with(&mut rng_from_seed(seed), rank)
}

pub fn random_density_with(rng: &mut impl Rng, rank: usize) -> Result<DensityMatrix> {
    if !(1..=4).contains(&rank) {
        return Err(Error::InvalidSettings(format!("rank {rank} not in 1..=4")));
    }
    let g = ginibre(rng, 4, rank);
    let gg = &g * &g.adjoint();
    let tr = gg.trace().re;
    DensityMatrix::new(gg.scale_real(1.0 / tr))
}

/// Columns orthonormalized by modified Gram–Schmidt.
fn orthonormalize_columns(m: &ComplexMatrix) -> ComplexMatrix {
    let mut cols: Vec<Vec<C64>> = Vec::with_capacity(m.cols());
    for j in 0..m.cols() {
        let mut v = m.column(j);
        for u in &cols {
            let proj: C64 = u.iter().zip(&v).map(|(a, b)| a.conj() * b).sum();
            for (x, y) in v.iter_mut().zip(u) {
                *x -= proj * y;
            }
        }
        let nrm = v.iter().map(|z| z.norm_sqr()).sum::<f64>().sqrt();
        cols.push(v.into_iter().map(|z| z / nrm).collect());
    }
    ComplexMatrix::from_fn(m.rows(), m.cols(), |i, j| cols[j][i])
}

/// Haar-random n×n unitary.
pub fn random_unitary(rng: &mut impl Rng, n: usize) -> ComplexMatrix {
    orthonormalize_columns(&ginibre(rng, n, n))
}

/// Single-qubit state with a uniformly random Bloch direction and a length
/// drawn uniformly from [0, 1].
pub fn random_qubit_state(rng: &mut impl Rng) -> ComplexMatrix {
    let dir = random_direction(rng);
    let r: f64 = rng.random();
    qubit_from_bloch(dir.map(|c| c * r))
}

pub fn random_direction(rng: &mut impl Rng) -> [f64; 3] {
    loop {
        let v: [f64; 3] = [
            rng.sample(StandardNormal),
            rng.sample(StandardNormal),
            rng.sample(StandardNormal),
        ];
        let n = (v[0] * v[0] + v[1] * v[1] + v[2] * v[2]).sqrt();
        if n > 1e-8 {
            return v.map(|c| c / n);
        }
    }
}

/// Classical-quantum state `Σ_k p_k ρ_k ⊗ |k⟩⟨k|` with the classical register
/// on `classical` in a random orthonormal basis.
pub fn random_classical_quantum(rng: &mut impl Rng, classical: Subsystem) -> DensityMatrix {
    let u = random_unitary(rng, 2);
    let p: f64 = rng.random();
    let mut m = ComplexMatrix::zeros(4, 4);
    for (k, weight) in [p, 1.0 - p].into_iter().enumerate() {
        let basis = ComplexMatrix::projector(&u.column(k));
        let quantum = random_qubit_state(rng);
        let term = match classical {
            Subsystem::B => quantum.kron(&basis),
            Subsystem::A => basis.kron(&quantum),
        };
        m = &m + &term.scale_real(weight);
    }
    DensityMatrix::new(m).expect("convex mixture of product states")
}

pub fn random_product_state(rng: &mut impl Rng) -> DensityMatrix {
    let a = random_qubit_state(rng);
    let b = random_qubit_state(rng);
    DensityMatrix::product(&a, &b).expect("product of qubit states")
}

/// Haar-random pure two-qubit state.
pub fn random_pure_state(rng: &mut impl Rng) -> DensityMatrix {
    let g = ginibre(rng, 4, 1);
    let v = g.column(0);
    DensityMatrix::pure(&[v[0], v[1], v[2], v[3]]).expect("nonzero Gaussian vector")
}

/// Random CPTP qubit channel with `n_kraus` operators, obtained by slicing a
/// random isometry C² → C^(2·n_kraus).
pub fn random_channel(rng: &mut impl Rng, n_kraus: usize) -> KrausChannel {
    let n_kraus = n_kraus.max(1);
    let iso = orthonormalize_columns(&ginibre(rng, 2 * n_kraus, 2));
    let ops = (0..n_kraus)
        .map(|k| ComplexMatrix::from_fn(2, 2, |i, j| iso[(2 * k + i, j)]))
        .collect();
    KrausChannel::new(ops).expect("nonempty 2x2 operators")
}

/// A state drawn from a mix of families with different correlation ranks:
/// Ginibre states of every rank, classical-quantum states on either side,
/// product states, and classical-quantum states pushed through a random local
/// channel.
pub fn random_varied_state(rng: &mut impl Rng) -> DensityMatrix {
    match rng.random_range(0..5) {
        0 => {
            let rank = rng.random_range(1..=4);
            random_density_with(rng, rank).expect("rank in range")
        }
        1 => random_classical_quantum(rng, Subsystem::B),
        2 => random_classical_quantum(rng, Subsystem::A),
        3 => random_product_state(rng),
        _ => {
            let cq = random_classical_quantum(rng, Subsystem::B);
            let map = crate::channels::LocalProductMap::new(random_channel(rng, 2), random_channel(rng, 2));
            crate::channels::apply_local(&cq, &map).expect("CPTP maps preserve trace")
        }
    }
}

/// `(U_A ⊗ U_B) ρ (U_A ⊗ U_B)†` for Haar-random local unitaries.
pub fn random_local_rotation(rng: &mut impl Rng, rho: &DensityMatrix) -> DensityMatrix {
    let u = random_unitary(rng, 2).kron(&random_unitary(rng, 2));
    DensityMatrix::new(u.conjugate(rho.matrix())).expect("unitary conjugation preserves states")
}
