use qdiscord::bloch::{bloch_decompose, bloch_of_qubit, bloch_reconstruct, qubit_from_bloch, BlochForm};
use qdiscord::channels::{apply_local, builtin, validate_cptp, Builtin, KrausChannel, LocalProductMap};
use qdiscord::correlations::{
    classify, correlation_matrix, correlation_rank, numerical_rank, operator_schmidt, schmidt_reconstruct, tensor_rank,
    VerdictKind, DEFAULT_RANK_TOL,
};
use qdiscord::discord::{
    classical_correlations, conditional_state, discord, discord_oracle, geometric_discord, mutual_information,
    MeasurementDirection,
};
use qdiscord::eigen::{hermitian_eigensystem, real_svd};
use qdiscord::linalg::{ComplexMatrix, RealMatrix, C64};
use qdiscord::named::{named_state, reference_state, NamedState};
use qdiscord::random::{random_density, rng_from_seed};
use qdiscord::rsp::{rsp_efficiency, rsp_fidelity, rsp_protocol_eval, BobCorrection, EquatorialTarget};
use qdiscord::sphere::OptimizerSettings;
use qdiscord::state::{partial_trace, validate_density, von_neumann_entropy, DensityMatrix, Subsystem, Tolerances};
use qdiscord::Error;

fn close(a: &ComplexMatrix, b: &ComplexMatrix, tol: f64) -> bool {
    a.max_abs_diff(b) <= tol
}

fn ket0() -> ComplexMatrix {
    qubit_from_bloch([0.0, 0.0, 1.0])
}

fn zero_zero() -> DensityMatrix {
    DensityMatrix::product(&ket0(), &ket0()).unwrap()
}

fn settings() -> OptimizerSettings {
    OptimizerSettings::default()
}

#[test]
fn validation() {
    let mixed = validate_density(&ComplexMatrix::identity(4).scale_real(0.25), &Tolerances::default()).unwrap();
    let ev = mixed.spectrum().unwrap().eigenvalues;
    assert!(ev.iter().all(|e| (e - 0.25).abs() < 1e-15));
    assert!(validate_density(named_state(NamedState::Sigma).matrix(), &Tolerances::default()).is_ok());
    let bad = ComplexMatrix::diagonal_real(&[1.5, -0.5, 0.0, 0.0]);
    assert!(matches!(
        validate_density(&bad, &Tolerances::default()),
        Err(Error::NotPositive(_))
    ));
}

#[test]
fn eigensystems() {
    let z = hermitian_eigensystem(&qdiscord::bloch::pauli(2)).unwrap();
    assert!((z.eigenvalues[0] - 1.0).abs() < 1e-15 && (z.eigenvalues[1] + 1.0).abs() < 1e-15);
    let bell = hermitian_eigensystem(named_state(NamedState::BellPhiPlus).matrix()).unwrap();
    assert!((bell.eigenvalues[0] - 1.0).abs() < 1e-14);
    assert!(bell.eigenvalues[1..].iter().all(|e| e.abs() < 1e-14));
    let sigma = hermitian_eigensystem(named_state(NamedState::Sigma).matrix()).unwrap();
    assert!(sigma.eigenvalues.iter().all(|&e| e >= 0.0));
    assert!((sigma.eigenvalues.iter().sum::<f64>() - 1.0).abs() < 1e-14);
}

#[test]
fn singular_values() {
    let d = real_svd(&RealMatrix::diagonal(&[1.0, 0.0, 0.0, 1.0])).unwrap();
    assert_eq!(d.singular_values, vec![1.0, 1.0, 0.0, 0.0]);
    let z = real_svd(&RealMatrix::zeros(4, 4)).unwrap();
    assert!(z.singular_values.iter().all(|&s| s == 0.0));
    let r = correlation_matrix(&bloch_decompose(&named_state(NamedState::Sigma))).unwrap();
    assert_eq!(r.singular_values.iter().filter(|&&s| s > 1e-12).count(), 3);
}

#[test]
fn partial_traces() {
    let half = ComplexMatrix::identity(2).scale_real(0.5);
    assert!(close(
        &partial_trace(&named_state(NamedState::RhoCl), Subsystem::A),
        &half,
        1e-15
    ));
    assert!(close(&partial_trace(&zero_zero(), Subsystem::B), &ket0(), 1e-15));
    let a = bloch_of_qubit(&partial_trace(&named_state(NamedState::Sigma), Subsystem::A));
    for (got, want) in a.iter().zip([0.4, 0.0, -0.4]) {
        assert!((got - want).abs() < 1e-15);
    }
}

#[test]
fn entropies() {
    assert!(von_neumann_entropy(zero_zero().matrix()).unwrap().abs() < 1e-12);
    assert!((von_neumann_entropy(&ComplexMatrix::identity(2).scale_real(0.5)).unwrap() - 1.0).abs() < 1e-14);
    assert!((von_neumann_entropy(&ComplexMatrix::identity(4).scale_real(0.25)).unwrap() - 2.0).abs() < 1e-14);
}

#[test]
fn bloch_forms() {
    let b = bloch_decompose(&named_state(NamedState::RhoCl));
    assert_eq!((b.x, b.y), ([0.0; 3], [0.0; 3]));
    assert_eq!(b.t, [[0.0; 3], [0.0; 3], [0.0, 0.0, 1.0]]);
    let b = bloch_decompose(&named_state(NamedState::RhoTilde));
    let t = [[0.5, 0.0, 0.0], [0.0; 3], [0.0, 0.0, 0.5]];
    for k in 0..3 {
        assert!((b.x[k] - [0.5, 0.0, 0.5][k]).abs() < 1e-15);
        assert!((b.y[k] - [0.5, 0.0, 0.5][k]).abs() < 1e-15);
        for (got, want) in b.t[k].iter().zip(t[k]) {
            assert!((got - want).abs() < 1e-15);
        }
    }
    let b = bloch_decompose(&named_state(NamedState::Sigma));
    let want = BlochForm {
        x: [0.4, 0.0, -0.4],
        y: [0.4, 0.0, 0.0],
        t: [[0.0; 3], [0.0; 3], [0.0, 0.0, 0.2]],
    };
    assert!(bloch_reconstruct(&b).max_abs_diff(&bloch_reconstruct(&want)) < 1e-15);

    let mixed = bloch_reconstruct(&BlochForm::zero());
    assert!(close(&mixed, &ComplexMatrix::identity(4).scale_real(0.25), 0.0));
    let bell = BlochForm {
        t: [[1.0, 0.0, 0.0], [0.0, -1.0, 0.0], [0.0, 0.0, 1.0]],
        ..BlochForm::zero()
    };
    assert!(close(
        &bloch_reconstruct(&bell),
        named_state(NamedState::BellPhiPlus).matrix(),
        1e-15
    ));
    let too_long = BlochForm {
        x: [0.0, 0.0, 2.0],
        ..BlochForm::zero()
    };
    let m = bloch_reconstruct(&too_long);
    assert!(m.hermiticity_defect() == 0.0);
    assert!(matches!(DensityMatrix::new(m), Err(Error::NotPositive(_))));
}

#[test]
fn named_states() {
    let k0 = ket0();
    let k1 = qubit_from_bloch([0.0, 0.0, -1.0]);
    let plus = qubit_from_bloch([1.0, 0.0, 0.0]);
    let cl = (&k0.kron(&k0) + &k1.kron(&k1)).scale_real(0.5);
    assert!(close(reference_state("rho_cl").unwrap().matrix(), &cl, 1e-16));
    let tilde = (&k0.kron(&k0) + &plus.kron(&plus)).scale_real(0.5);
    assert!(close(reference_state("rho_tilde").unwrap().matrix(), &tilde, 1e-16));
    let sigma = ComplexMatrix::from_real_rows(&[
        [0.2, 0.1, 0.1, 0.0],
        [0.1, 0.1, 0.0, 0.1],
        [0.1, 0.0, 0.3, 0.1],
        [0.0, 0.1, 0.1, 0.4],
    ])
    .unwrap();
    assert_eq!(reference_state("sigma").unwrap().matrix(), &sigma);
    assert!(matches!(reference_state("nope"), Err(Error::UnknownName(_))));
}

#[test]
fn random_states() {
    assert!(von_neumann_entropy(random_density(3, 1).unwrap().matrix()).unwrap() < 1e-10);
    assert!(random_density(3, 4).unwrap().spectrum().unwrap().eigenvalues[3] > 1e-8);
    assert_eq!(random_density(3, 2).unwrap(), random_density(3, 2).unwrap());
}

#[test]
fn correlation_matrices_and_ranks() {
    let r = correlation_matrix(&bloch_decompose(&named_state(NamedState::RhoCl))).unwrap();
    assert_eq!(r.r, RealMatrix::diagonal(&[1.0, 0.0, 0.0, 1.0]));
    assert_eq!(numerical_rank(&r.r, DEFAULT_RANK_TOL).unwrap(), 2);
    assert_eq!(numerical_rank(&RealMatrix::zeros(3, 3), DEFAULT_RANK_TOL).unwrap(), 0);
    let sigma = correlation_matrix(&bloch_decompose(&named_state(NamedState::Sigma))).unwrap();
    assert_eq!(numerical_rank(&sigma.r, DEFAULT_RANK_TOL).unwrap(), 3);

    assert_eq!(correlation_rank(&zero_zero(), DEFAULT_RANK_TOL).unwrap(), 1);
    assert_eq!(
        correlation_rank(&named_state(NamedState::RhoTilde), DEFAULT_RANK_TOL).unwrap(),
        2
    );
    assert_eq!(
        correlation_rank(&named_state(NamedState::BellPhiPlus), DEFAULT_RANK_TOL).unwrap(),
        4
    );
    assert_eq!(
        tensor_rank(&named_state(NamedState::RhoCl), DEFAULT_RANK_TOL).unwrap(),
        1
    );
    assert_eq!(
        tensor_rank(&named_state(NamedState::RhoTilde), DEFAULT_RANK_TOL).unwrap(),
        2
    );
    assert_eq!(
        tensor_rank(&named_state(NamedState::Sigma), DEFAULT_RANK_TOL).unwrap(),
        1
    );
}

#[test]
fn operator_schmidt_terms() {
    assert_eq!(operator_schmidt(&zero_zero(), DEFAULT_RANK_TOL).unwrap().len(), 1);
    assert_eq!(
        operator_schmidt(&named_state(NamedState::RhoCl), DEFAULT_RANK_TOL)
            .unwrap()
            .len(),
        2
    );
    let sigma = named_state(NamedState::Sigma);
    let terms = operator_schmidt(&sigma, DEFAULT_RANK_TOL).unwrap();
    assert_eq!(terms.len(), 3);
    assert!(close(&schmidt_reconstruct(&terms), sigma.matrix(), 1e-10));
    for t in &terms {
        assert!((t.op_a.hs_inner(&t.op_a).re - 1.0).abs() < 1e-12);
        assert!((t.op_b.hs_inner(&t.op_b).re - 1.0).abs() < 1e-12);
    }
}

#[test]
fn verdicts() {
    assert_eq!(classify(2, 0.0, 1e-8).kind, VerdictKind::Classical);
    assert_eq!(classify(2, 0.05, 1e-8).kind, VerdictKind::LocallyCreatableDiscord);
    assert_eq!(classify(3, 0.026, 1e-8).kind, VerdictKind::GenuinelyQuantum);
}

#[test]
fn conditional_states() {
    let z = MeasurementDirection::z();
    let k1 = qubit_from_bloch([0.0, 0.0, -1.0]);
    for name in [NamedState::RhoCl, NamedState::BellPhiPlus] {
        let [plus, minus] = conditional_state(&named_state(name), &z, Subsystem::B);
        assert!((plus.probability - 0.5).abs() < 1e-15 && (minus.probability - 0.5).abs() < 1e-15);
        assert!(close(&plus.state, &ket0(), 1e-15));
        assert!(close(&minus.state, &k1, 1e-15));
    }
    let a = qubit_from_bloch([0.3, -0.2, 0.5]);
    let product = DensityMatrix::product(&a, &qubit_from_bloch([0.1, 0.6, 0.0])).unwrap();
    let dir = MeasurementDirection::from_angles(1.1, 0.4);
    for o in conditional_state(&product, &dir, Subsystem::B) {
        assert!(close(&o.state, &a, 1e-14));
    }
}

#[test]
fn mutual_information_and_classical_correlations() {
    let product =
        DensityMatrix::product(&qubit_from_bloch([0.3, 0.0, 0.1]), &qubit_from_bloch([0.0, 0.5, 0.0])).unwrap();
    assert!(mutual_information(&product).unwrap().abs() < 1e-12);
    assert!((mutual_information(&named_state(NamedState::RhoCl)).unwrap() - 1.0).abs() < 1e-12);
    assert!((mutual_information(&named_state(NamedState::BellPhiPlus)).unwrap() - 2.0).abs() < 1e-12);

    let (j, n) = classical_correlations(&named_state(NamedState::RhoCl), Subsystem::B, &settings()).unwrap();
    assert!((j - 1.0).abs() < 1e-12);
    assert!((n.vector()[2].abs() - 1.0).abs() < 1e-9);
    let (j, _) = classical_correlations(&product, Subsystem::B, &settings()).unwrap();
    assert!(j.abs() < 1e-12);
    let (j, _) = classical_correlations(&named_state(NamedState::BellPhiPlus), Subsystem::B, &settings()).unwrap();
    assert!((j - 1.0).abs() < 1e-12);
}

#[test]
fn discord_values() {
    let s = settings();
    assert!(
        discord(&named_state(NamedState::RhoCl), Subsystem::B, &s)
            .unwrap()
            .discord
            .abs()
            < 1e-12
    );
    let d = discord(&named_state(NamedState::Sigma), Subsystem::B, &s)
        .unwrap()
        .discord;
    assert!((d - 0.026).abs() <= 3e-3);
    let bell = discord(&named_state(NamedState::BellPhiPlus), Subsystem::B, &s)
        .unwrap()
        .discord;
    assert!((bell - 1.0).abs() < 1e-12);

    let g = geometric_discord(&named_state(NamedState::Sigma), Subsystem::B).unwrap();
    assert!((g - 0.01).abs() < 1e-15);
    assert!(
        geometric_discord(&named_state(NamedState::RhoCl), Subsystem::B)
            .unwrap()
            .abs()
            < 1e-15
    );
    assert!((geometric_discord(&named_state(NamedState::BellPhiPlus), Subsystem::B).unwrap() - 0.5).abs() < 1e-14);
}

#[test]
fn oracle_examples() {
    let grid = (180, 360);
    assert!(
        discord_oracle(&named_state(NamedState::RhoCl), Subsystem::B, grid)
            .unwrap()
            .abs()
            < 1e-6
    );
    let sigma = named_state(NamedState::Sigma);
    let oracle = discord_oracle(&sigma, Subsystem::B, grid).unwrap();
    let d = discord(&sigma, Subsystem::B, &settings()).unwrap().discord;
    assert!((d - oracle).abs() <= 2e-3);
    assert!(d <= oracle + 1e-9);
    let pure = random_density(21, 1).unwrap();
    let s = von_neumann_entropy(&partial_trace(&pure, Subsystem::A)).unwrap();
    assert!((discord_oracle(&pure, Subsystem::B, grid).unwrap() - s).abs() < 1e-4);
    assert!(matches!(
        discord_oracle(&sigma, Subsystem::B, (90, 180)),
        Err(Error::InvalidSettings(_))
    ));
}

#[test]
fn cptp_checks() {
    let id = validate_cptp(KrausChannel::identity().ops()).unwrap();
    assert!(id.cptp && id.defect == 0.0);
    let phi = builtin(Builtin::Phi).unwrap().validate_cptp();
    assert!(phi.cptp && phi.defect < 1e-15);
    let half = validate_cptp(&[ComplexMatrix::identity(2).scale_real(0.5)]).unwrap();
    assert!(!half.cptp);
    assert!((half.defect - 0.75).abs() < 1e-15);
}

#[test]
fn local_maps() {
    let id = LocalProductMap::both(KrausChannel::identity());
    let sigma = named_state(NamedState::Sigma);
    assert!(close(apply_local(&sigma, &id).unwrap().matrix(), sigma.matrix(), 0.0));
    let dep = LocalProductMap::both(builtin(Builtin::Depolarizing(1.0)).unwrap());
    let out = apply_local(&named_state(NamedState::BellPhiPlus), &dep).unwrap();
    assert!(close(out.matrix(), &ComplexMatrix::identity(4).scale_real(0.25), 1e-15));

    assert!(close(
        &builtin(Builtin::Dephasing(0.0))
            .unwrap()
            .apply_qubit(&qubit_from_bloch([0.6, 0.0, 0.8])),
        &qubit_from_bloch([0.6, 0.0, 0.8]),
        1e-15
    ));
    let half = ComplexMatrix::identity(2).scale_real(0.5);
    assert!(close(
        &builtin(Builtin::Depolarizing(0.37)).unwrap().apply_qubit(&half),
        &half,
        1e-15
    ));
    assert!(matches!(
        builtin(Builtin::AmplitudeDamping(1.5)),
        Err(Error::ParamOutOfRange { .. })
    ));
}

#[test]
fn fidelities() {
    let f = |n| rsp_fidelity(&named_state(n)).unwrap().fidelity;
    assert!((f(NamedState::BellPhiPlus) - 1.0).abs() < 1e-12);
    assert!(f(NamedState::Sigma).abs() < 1e-12);
    assert!((f(NamedState::RhoTilde) - 0.125).abs() < 1e-12);
    let t1 = BlochForm {
        t: [[0.7, 0.0, 0.0], [0.0; 3], [0.0; 3]],
        ..BlochForm::zero()
    };
    let rho = DensityMatrix::new(bloch_reconstruct(&t1)).unwrap();
    assert!(rsp_fidelity(&rho).unwrap().fidelity.abs() < 1e-15);

    assert!((rsp_efficiency(1.0).unwrap() - 1.0).abs() < 1e-15);
    assert!(rsp_efficiency(0.5).unwrap().abs() < 1e-15);
    assert!((rsp_efficiency(0.125).unwrap() - 0.5625).abs() < 1e-15);
}

#[test]
fn protocol_examples() {
    let mut rng = rng_from_seed(5);
    use rand::Rng;
    for _ in 0..10 {
        let phase: f64 = rng.random_range(0.0..std::f64::consts::TAU);
        let target = EquatorialTarget::new(phase);
        let alice = MeasurementDirection::new([phase.cos(), -phase.sin(), 0.0]).unwrap();
        let bell = rsp_protocol_eval(
            &named_state(NamedState::BellPhiPlus),
            &target,
            &alice,
            &BobCorrection::pi_about_z(),
        );
        assert!((bell.overlap - 1.0).abs() < 1e-12);

        let any = MeasurementDirection::from_angles(rng.random_range(0.0..3.0), rng.random_range(0.0..6.0));
        let mixed = rsp_protocol_eval(
            &DensityMatrix::maximally_mixed(),
            &target,
            &any,
            &BobCorrection::Identity,
        );
        assert!((mixed.overlap - 0.5).abs() < 1e-12);
        for fix in [BobCorrection::Identity, BobCorrection::pi_about_z()] {
            let cl = rsp_protocol_eval(&named_state(NamedState::RhoCl), &target, &any, &fix);
            assert!((cl.overlap - 0.5).abs() < 1e-12);
        }
    }
}

#[test]
fn complex_entries_survive_bloch_round_trip() {
    let psi = [
        C64::new(0.5, 0.0),
        C64::new(0.0, 0.5),
        C64::new(-0.5, 0.0),
        C64::new(0.0, -0.5),
    ];
    let rho = DensityMatrix::pure(&psi).unwrap();
    assert!(close(&bloch_reconstruct(&bloch_decompose(&rho)), rho.matrix(), 1e-15));
}
