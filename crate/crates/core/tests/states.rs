use entrocrit::criteria::ppt;
use entrocrit::numkernel::{eigvalsh, kron, ComplexMatrix, Spectrum, Tolerances};
use entrocrit::states::random::{random_unitary, rng_for};
use entrocrit::states::{
    assemble, isospectral_separable, isospectral_werner, max_entangled_basis, maximally_mixed,
    monotonicity_counterexample, partial_trace, partial_transpose, phi_plus, random_mixed, random_pure,
    random_separable, schmidt_spectrum, separable_projector, separable_projector_from_basis, werner,
    werner_dimensions, BipartiteDims, DensityMatrix, PureState, SeparableEnsemble, Subsystem,
};
use entrocrit::Error;
use num_complex::Complex64;
use proptest::prelude::*;

fn tol() -> Tolerances {
    Tolerances::default()
}

fn dims(a: usize, b: usize) -> BipartiteDims {
    BipartiteDims::new(a, b).unwrap()
}

fn basis_state(d: usize, n: usize) -> ComplexMatrix {
    let mut m = ComplexMatrix::zeros(d, d);
    m[(n, n)] = Complex64::new(1.0, 0.0);
    m
}

fn flat(d: usize) -> ComplexMatrix {
    ComplexMatrix::identity(d).scale(1.0 / d as f64)
}

#[test]
fn assemble_single_term_is_kron() {
    let a = ComplexMatrix::from_real_diag(&[0.3, 0.7]);
    let b = ComplexMatrix::from_real_diag(&[0.6, 0.1, 0.3]);
    let e = SeparableEnsemble::new(vec![1.0], vec![(a.clone(), b.clone())]).unwrap();
    assert_eq!(assemble(&e).unwrap().matrix(), &kron(&a, &b).unwrap());
}

#[test]
fn assemble_classical_mixture() {
    let e = SeparableEnsemble::new(
        vec![0.5, 0.5],
        vec![(basis_state(2, 0), basis_state(2, 0)), (basis_state(2, 1), basis_state(2, 1))],
    )
    .unwrap();
    let rho = assemble(&e).unwrap();
    assert_eq!(rho.matrix(), &ComplexMatrix::from_real_diag(&[0.5, 0.0, 0.0, 0.5]));
}

#[test]
fn ensemble_validation() {
    let s = basis_state(2, 0);
    assert!(SeparableEnsemble::new(vec![0.6, 0.5], vec![(s.clone(), s.clone()), (s.clone(), s.clone())]).is_err());
    assert!(SeparableEnsemble::new(vec![1.0], vec![]).is_err());
    assert!(SeparableEnsemble::new(vec![1.0], vec![(s.scale(2.0), s.clone())]).is_err());
}

#[test]
fn random_three_term_ensembles_pass_ppt_and_reduction() {
    for seed in 0..50 {
        let (rho, _) = random_separable(dims(2, 3), 3, seed).unwrap();
        assert!(ppt(&rho, &tol()).unwrap().holds);
        for side in Subsystem::BOTH {
            assert!(entrocrit::criteria::reduction(&rho, side, &tol()).unwrap().holds);
        }
    }
}

#[test]
fn density_matrix_validation_messages() {
    let d = dims(2, 2);
    let err = DensityMatrix::new(d, ComplexMatrix::identity(4)).unwrap_err();
    assert!(matches!(err, Error::Trace { .. }));
    let err = DensityMatrix::new(d, ComplexMatrix::from_real_diag(&[1.5, -0.5, 0.0, 0.0])).unwrap_err();
    assert!(matches!(err, Error::NotPositive { .. }));
    let mut m = ComplexMatrix::from_real_diag(&[0.25; 4]);
    m[(0, 1)] = Complex64::new(0.1, 0.0);
    assert!(matches!(DensityMatrix::new(d, m).unwrap_err(), Error::NotHermitian { .. }));
    let err = DensityMatrix::new(dims(3, 2), ComplexMatrix::from_real_diag(&[0.25; 4])).unwrap_err();
    assert!(err.to_string().contains("dims mismatch"));
    assert!(BipartiteDims::new(65, 64).is_err());
    assert!(BipartiteDims::new(0, 2).is_err());
}

#[test]
fn partial_trace_examples() {
    let s = ComplexMatrix::from_real_diag(&[0.2, 0.8]);
    let t = ComplexMatrix::from_real_diag(&[0.1, 0.2, 0.7]);
    let rho = DensityMatrix::new(dims(2, 3), kron(&s, &t).unwrap()).unwrap();
    assert!(partial_trace(&rho, Subsystem::B).max_abs_diff(&s) < 1e-12);
    assert!(partial_trace(&rho, Subsystem::A).max_abs_diff(&t) < 1e-12);

    let phi = phi_plus(2).unwrap().density_matrix().unwrap();
    assert!(partial_trace(&phi, Subsystem::B).max_abs_diff(&flat(2)) < 1e-12);

    let ce = monotonicity_counterexample();
    let ra = partial_trace(&ce, Subsystem::B);
    assert!(ra.max_abs_diff(&ComplexMatrix::from_real_diag(&[0.75, 0.25])) < 1e-12);
}

#[test]
fn partial_transpose_examples() {
    let a = ComplexMatrix::from_rows(&[
        vec![Complex64::new(0.6, 0.0), Complex64::new(0.1, 0.2)],
        vec![Complex64::new(0.1, -0.2), Complex64::new(0.4, 0.0)],
    ])
    .unwrap();
    let b = ComplexMatrix::from_real_diag(&[0.5, 0.5]);
    let rho = DensityMatrix::new(dims(2, 2), kron(&a, &b).unwrap()).unwrap();
    let pt = partial_transpose(&rho, Subsystem::A);
    assert!(pt.max_abs_diff(&kron(&a.transpose(), &b).unwrap()) < 1e-15);
    assert!(eigvalsh(&pt).unwrap().min() >= -1e-12);

    let phi = phi_plus(2).unwrap().density_matrix().unwrap();
    let spec = eigvalsh(&partial_transpose(&phi, Subsystem::A)).unwrap();
    let oracle = [0.5, 0.5, 0.5, -0.5];
    for (x, y) in spec.values().iter().zip(oracle) {
        assert!((x - y).abs() < 1e-12);
    }

    let rho = random_mixed(dims(2, 3), 4, 9).unwrap();
    for side in Subsystem::BOTH {
        let twice = entrocrit::states::partial_transpose_matrix(
            &partial_transpose(&rho, side),
            rho.dims(),
            side,
        );
        assert_eq!(&twice, rho.matrix());
    }
}

#[test]
fn schmidt_examples() {
    let mut v = vec![Complex64::new(0.0, 0.0); 6];
    v[4] = Complex64::new(0.0, 1.0);
    let product = PureState::new(dims(2, 3), v).unwrap();
    let s = schmidt_spectrum(&product);
    assert!((s.values()[0] - 1.0).abs() < 1e-15 && s.values()[1].abs() < 1e-15);

    for d in [2, 3, 4] {
        let s = schmidt_spectrum(&phi_plus(d).unwrap());
        assert!(s.values().iter().all(|&x| (x - 1.0 / d as f64).abs() < 1e-12));
    }
}

#[test]
fn schmidt_matches_singular_values() {
    for seed in 0..20 {
        let psi = random_pure(dims(3, 3), seed);
        let s = schmidt_spectrum(&psi);
        let c = psi.coefficients();
        let gram = eigvalsh(&c.adjoint().matmul(&c).unwrap()).unwrap();
        assert!(s.max_abs_diff(&gram) < 1e-12);
        assert!((s.sum() - 1.0).abs() < 1e-10);
    }
}

#[test]
fn max_entangled_basis_labels() {
    let psi = max_entangled_basis(2, 2, 2).unwrap();
    let overlap = psi.inner(&phi_plus(2).unwrap()).norm();
    assert!((overlap - 1.0).abs() < 1e-12);
    assert!(matches!(max_entangled_basis(3, 0, 1), Err(Error::IndexOutOfRange(_))));
    assert!(matches!(max_entangled_basis(3, 1, 4), Err(Error::IndexOutOfRange(_))));
}

#[test]
fn max_entangled_basis_orthonormal_d3() {
    let d = 3;
    let states: Vec<_> = (1..=d)
        .flat_map(|j| (1..=d).map(move |k| (j, k)))
        .map(|(j, k)| ((j, k), max_entangled_basis(d, j, k).unwrap()))
        .collect();
    assert_eq!(states.len() * states.len(), 81);
    for (a, pa) in &states {
        for (b, pb) in &states {
            let expected = if a == b { 1.0 } else { 0.0 };
            assert!((pa.inner(pb) - Complex64::new(expected, 0.0)).norm() < 1e-12, "{a:?} {b:?}");
        }
        let rho = pa.density_matrix().unwrap();
        for side in Subsystem::BOTH {
            assert!(rho.reduced(side).max_abs_diff(&flat(d)) < 1e-12);
        }
    }
}

#[test]
fn projector_forms_agree() {
    for d in [2, 3, 5] {
        for k in 1..=d {
            let p = separable_projector(d, k).unwrap();
            let from_basis = separable_projector_from_basis(d, k).unwrap();
            assert!(p.matrix.max_abs_diff(&from_basis) < 1e-12);
            assert_eq!(p.matrix.trace().re, d as f64);
            assert!(p.matrix.matmul(&p.matrix).unwrap().max_abs_diff(&p.matrix) < 1e-15);
            let cert = assemble(&p.certificate).unwrap();
            assert!(cert.matrix().max_abs_diff(&p.matrix.scale(1.0 / d as f64)) < 1e-15);
            for k2 in (1..=d).filter(|&k2| k2 != k) {
                let q = separable_projector(d, k2).unwrap().matrix;
                assert_eq!(p.matrix.matmul(&q).unwrap(), ComplexMatrix::zeros(d * d, d * d));
            }
        }
    }
}

#[test]
fn werner_examples() {
    let singlet = werner(2, 1.0).unwrap();
    let s = singlet.spectrum().values();
    assert!((s[0] - 1.0).abs() < 1e-12 && s[1..].iter().all(|x| x.abs() < 1e-12));

    let w = werner(3, 0.7).unwrap();
    let clusters = w.spectrum().clusters(1e-12);
    assert_eq!(clusters.len(), 2);
    assert!((clusters[0].0 - 0.7 / 3.0).abs() < 1e-12 && clusters[0].1 == 3);
    assert!((clusters[1].0 - 0.05).abs() < 1e-12 && clusters[1].1 == 6);

    assert!(matches!(werner(3, 1.2), Err(Error::ParameterRange(_))));
}

#[test]
fn werner_closed_form_spectrum() {
    for d in [2, 3, 4, 5] {
        let (rp, rm) = werner_dimensions(d);
        for p in [0.0, 0.3, 0.5, 0.7, 1.0] {
            let mut expected = vec![(1.0 - p) / rp as f64; rp];
            expected.extend(std::iter::repeat_n(p / rm as f64, rm));
            let rho = werner(d, p).unwrap();
            assert!(rho.spectrum().max_abs_diff(&Spectrum::new(expected)) < 1e-12);
            for side in Subsystem::BOTH {
                assert!(rho.reduced(side).max_abs_diff(&flat(d)) < 1e-12);
            }
        }
    }
}

#[test]
fn werner_unitary_invariance() {
    let mut rng = rng_for(2024, 0);
    for d in [2, 3] {
        let rho = werner(d, 0.35).unwrap();
        for _ in 0..20 {
            let u = random_unitary(&mut rng, d);
            let uu = kron(&u, &u).unwrap();
            let rotated = uu.matmul(rho.matrix()).unwrap().matmul(&uu.adjoint()).unwrap();
            assert!(rotated.distance(rho.matrix()) <= 1e-10);
        }
    }
}

#[test]
fn isospectral_werner_examples() {
    let p = 0.3;
    let (rho, _) = isospectral_werner(3, p).unwrap();
    let expected = separable_projector(3, 1)
        .unwrap()
        .matrix
        .try_add(&separable_projector(3, 2).unwrap().matrix)
        .unwrap()
        .scale((1.0 - p) / 6.0)
        .try_add(&separable_projector(3, 3).unwrap().matrix.scale(p / 3.0))
        .unwrap();
    assert!(rho.matrix().max_abs_diff(&expected) < 1e-16);
    assert!((rho.matrix().trace().re - 1.0).abs() < 1e-15);

    let (iso, _) = isospectral_werner(3, 0.7).unwrap();
    assert!(iso.spectrum().max_abs_diff(werner(3, 0.7).unwrap().spectrum()) < 1e-12);

    for p in [0.0, 0.25, 0.5, 0.75, 1.0] {
        let (iso, _) = isospectral_werner(3, p).unwrap();
        assert!(ppt(&iso, &tol()).unwrap().holds);
    }
    assert!(matches!(isospectral_werner(4, 0.5), Err(Error::EvenDimension(4))));
}

#[test]
fn isospectral_separable_examples() {
    for d in [2, 3, 4] {
        let n = d * d;
        let (rho, _) = isospectral_separable(&[(1.0 / n as f64, n)], d).unwrap();
        assert!(rho.matrix().max_abs_diff(&maximally_mixed(dims(d, d)).into_matrix()) < 1e-15);

        let (rho, cert) = isospectral_separable(&[(1.0 / d as f64, d)], d).unwrap();
        assert!(rho.spectrum().max_abs_diff(&Spectrum::new(
            [vec![1.0 / d as f64; d], vec![0.0; n - d]].concat()
        )) < 1e-12);
        for side in Subsystem::BOTH {
            assert!(rho.reduced(side).max_abs_diff(&flat(d)) < 1e-12);
        }
        assert!(assemble(&cert).unwrap().matrix().distance(rho.matrix()) < 1e-12);
    }
}

#[test]
fn isospectral_separable_reproduces_werner_constructor() {
    for p in [0.0, 0.1, 0.25, 1.0 / 3.0] {
        let (specialized, _) = isospectral_werner(3, p).unwrap();
        let (general, _) = isospectral_separable(&[((1.0 - p) / 6.0, 6), (p / 3.0, 3)], 3).unwrap();
        assert!(general.matrix().max_abs_diff(specialized.matrix()) < 1e-15, "p = {p}");
    }
    // beyond p = 1/3 the descending order swaps blocks; spectra and reductions still agree
    for p in [0.5, 0.7, 1.0] {
        let (specialized, _) = isospectral_werner(3, p).unwrap();
        let (general, _) = isospectral_separable(&[((1.0 - p) / 6.0, 6), (p / 3.0, 3)], 3).unwrap();
        assert!(general.spectrum().max_abs_diff(specialized.spectrum()) < 1e-12);
        for side in Subsystem::BOTH {
            assert!(general.reduced(side).max_abs_diff(&specialized.reduced(side)) < 1e-12);
        }
    }
}

#[test]
fn isospectral_separable_errors() {
    assert!(matches!(
        isospectral_separable(&[(0.25, 2), (0.5, 1)], 2),
        Err(Error::MultiplicityNotDivisible { .. })
    ));
    assert!(matches!(
        isospectral_separable(&[(0.1, 6), (0.1, 6)], 3),
        Err(Error::BudgetExceeded { total: 12, budget: 9 })
    ));
    assert!(matches!(
        isospectral_separable(&[(0.2, 3)], 3),
        Err(Error::NotNormalized { .. })
    ));
}

#[test]
fn counterexample_values() {
    let rho = monotonicity_counterexample();
    let oracle = Spectrum::new(vec![0.5, 0.5, 0.0, 0.0]);
    assert!(rho.spectrum().max_abs_diff(&oracle) < 1e-12);
    let ra = rho.reduced(Subsystem::A);
    assert!(ra.max_abs_diff(&ComplexMatrix::from_real_diag(&[0.75, 0.25])) < 1e-15);
    let rb = rho.reduced(Subsystem::B);
    assert!(rb.max_abs_diff(&ComplexMatrix::from_real_diag(&[0.25, 0.75])) < 1e-15);
    let purity = rho.matrix().trace_product(rho.matrix()).unwrap().re;
    assert!((purity - 0.5).abs() < 1e-15);
    let purity_a = ra.trace_product(&ra).unwrap().re;
    assert!((purity_a - 0.625).abs() < 1e-15);
}

#[test]
fn random_generators_are_deterministic() {
    assert_eq!(random_pure(dims(3, 2), 99), random_pure(dims(3, 2), 99));
    let a = random_mixed(dims(2, 2), 4, 99).unwrap();
    let b = random_mixed(dims(2, 2), 4, 99).unwrap();
    assert_eq!(a.matrix(), b.matrix());
    let (s1, e1) = random_separable(dims(2, 2), 5, 99).unwrap();
    let (s2, e2) = random_separable(dims(2, 2), 5, 99).unwrap();
    assert_eq!(s1.matrix(), s2.matrix());
    assert_eq!(e1.weights(), e2.weights());
}

#[test]
fn full_rank_random_mixed() {
    for seed in 0..50 {
        let rho = random_mixed(dims(2, 3), 6, seed).unwrap();
        assert!(rho.spectrum().min() > tol().rank);
        assert!(rho.is_full_rank(&tol()));
    }
}

#[test]
fn random_separable_passes_ppt() {
    for seed in 0..50 {
        let (rho, _) = random_separable(dims(3, 3), 1 + seed as usize % 6, seed).unwrap();
        assert!(ppt(&rho, &tol()).unwrap().holds);
    }
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(128))]

    #[test]
    fn partial_trace_preserves_trace_and_positivity(seed in any::<u64>(), a in 1usize..=3, b in 1usize..=3) {
        let n = a * b;
        let rho = random_mixed(dims(a, b), 1 + seed as usize % n, seed).unwrap();
        for side in Subsystem::BOTH {
            let r = partial_trace(&rho, side);
            prop_assert!((r.trace().re - 1.0).abs() <= 1e-12);
            prop_assert!(r.hermiticity_defect() <= 1e-12);
            prop_assert!(eigvalsh(&r).unwrap().min() >= -tol().psd);
        }
    }

    #[test]
    fn partial_transpose_is_hermitian_involution(seed in any::<u64>(), a in 1usize..=3, b in 1usize..=3) {
        let rho = random_mixed(dims(a, b), a * b, seed).unwrap();
        for side in Subsystem::BOTH {
            let pt = partial_transpose(&rho, side);
            prop_assert!((pt.trace().re - 1.0).abs() <= 1e-12);
            prop_assert!(pt.hermiticity_defect() <= 1e-12);
            let twice = entrocrit::states::partial_transpose_matrix(&pt, rho.dims(), side);
            prop_assert_eq!(&twice, rho.matrix());
        }
    }

    #[test]
    fn isospectral_pair_shares_spectrum_and_reductions(d in prop::sample::select(vec![3usize, 5, 7]), p in 0.0f64..=1.0) {
        let w = werner(d, p).unwrap();
        let (iso, cert) = isospectral_werner(d, p).unwrap();
        prop_assert!(iso.spectrum().max_abs_diff(w.spectrum()) <= 1e-12);
        for side in Subsystem::BOTH {
            prop_assert!(iso.reduced(side).max_abs_diff(&flat(d)) <= 1e-12);
        }
        prop_assert!(assemble(&cert).unwrap().matrix().distance(iso.matrix()) <= 1e-9);
    }
}
