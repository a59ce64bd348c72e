use entrocrit::numkernel::{
    eigh, eigvalsh, expm, golden_thompson_gap, kron, kron_with_limit, log_monotonicity_margin, logm,
    majorizes, matrix_function, power_decreasing_margin, trace_exp_monotonicity_gap, ComplexMatrix,
    MatrixFunction, Spectrum, Tolerances,
};
use entrocrit::states::random::{ginibre, random_hermitian, random_psd, rng_for};
use entrocrit::Error;
use num_complex::Complex64;
use proptest::prelude::*;

fn tol() -> Tolerances {
    Tolerances::default()
}

fn c(re: f64) -> Complex64 {
    Complex64::new(re, 0.0)
}

/// `A ≥ B > 0` with `B` well conditioned.
fn ordered_pair(seed: u64, n: usize) -> (ComplexMatrix, ComplexMatrix) {
    let mut rng = rng_for(seed, 0);
    let b = random_psd(&mut rng, n, n, 1.0 / n as f64).try_add(&ComplexMatrix::identity(n).scale(0.1)).unwrap();
    let p = random_psd(&mut rng, n, 1 + (seed as usize % n), 1.0 / n as f64);
    (b.try_add(&p).unwrap(), b)
}

#[test]
fn kron_identity_and_diagonal() {
    let i2 = ComplexMatrix::identity(2);
    assert_eq!(kron(&i2, &i2).unwrap(), ComplexMatrix::identity(4));
    let a = ComplexMatrix::from_real_diag(&[1.0, 0.0]);
    let b = ComplexMatrix::from_real_diag(&[0.0, 1.0]);
    assert_eq!(kron(&a, &b).unwrap(), ComplexMatrix::from_real_diag(&[0.0, 1.0, 0.0, 0.0]));
}

#[test]
fn kron_blocks_match_elementwise_oracle() {
    let mut rng = rng_for(17, 0);
    let a = ginibre(&mut rng, 2, 2);
    let b = ginibre(&mut rng, 3, 3);
    let k = kron(&a, &b).unwrap();
    assert_eq!((k.rows(), k.cols()), (6, 6));
    for i in 0..2 {
        for j in 0..2 {
            for p in 0..3 {
                for q in 0..3 {
                    assert_eq!(k[(i * 3 + p, j * 3 + q)], a[(i, j)] * b[(p, q)]);
                }
            }
        }
    }
    assert!((k.trace() - a.trace() * b.trace()).norm() < 1e-12);
}

#[test]
fn kron_respects_size_cap() {
    let a = ComplexMatrix::identity(65);
    let err = kron(&a, &a).unwrap_err();
    assert!(matches!(err, Error::SizeLimit { .. }));
    assert!(kron_with_limit(&ComplexMatrix::identity(3), &ComplexMatrix::identity(3), 8).is_err());
    assert!(kron(&ComplexMatrix::identity(64), &ComplexMatrix::identity(64)).is_ok());
}

#[test]
fn eigh_identity_and_pauli_x() {
    let e = eigh(&ComplexMatrix::identity(3)).unwrap();
    assert_eq!(e.values.values(), &[1.0, 1.0, 1.0]);
    let x = ComplexMatrix::from_rows(&[vec![c(0.0), c(1.0)], vec![c(1.0), c(0.0)]]).unwrap();
    let v = eigvalsh(&x).unwrap();
    assert!((v.values()[0] - 1.0).abs() < 1e-15);
    assert!((v.values()[1] + 1.0).abs() < 1e-15);
}

#[test]
fn eigh_rejects_non_hermitian() {
    let m = ComplexMatrix::from_rows(&[vec![c(0.0), c(1.0)], vec![c(0.0), c(0.0)]]).unwrap();
    assert!(matches!(eigh(&m), Err(Error::NotHermitian { .. })));
    assert!(eigh(&ComplexMatrix::zeros(2, 3)).is_err());
}

#[test]
fn eigh_is_deterministic() {
    let h = random_hermitian(&mut rng_for(5, 0), 9, 1.0);
    let a = eigh(&h).unwrap();
    let b = eigh(&h).unwrap();
    assert_eq!(a.values, b.values);
    assert_eq!(a.vectors, b.vectors);
}

#[test]
fn power_of_identity_and_diagonal() {
    for alpha in [-2.0, -0.5, 0.0, 0.3, 1.0, 2.5] {
        let m = matrix_function(&ComplexMatrix::identity(3), MatrixFunction::Power(alpha), &tol()).unwrap();
        assert!(m.max_abs_diff(&ComplexMatrix::identity(3)) < 1e-14);
    }
    let d = ComplexMatrix::from_real_diag(&[0.25, 0.75]);
    let sq = matrix_function(&d, MatrixFunction::Power(2.0), &tol()).unwrap();
    assert!(sq.max_abs_diff(&ComplexMatrix::from_real_diag(&[1.0 / 16.0, 9.0 / 16.0])) < 1e-15);
}

#[test]
fn power_zero_counts_rank() {
    let d = ComplexMatrix::from_real_diag(&[0.5, 0.5, 0.0, 1e-12]);
    let p0 = matrix_function(&d, MatrixFunction::Power(0.0), &tol()).unwrap();
    assert!((p0.trace().re - 2.0).abs() < 1e-12);
}

#[test]
fn log_and_negative_power_need_full_rank() {
    let d = ComplexMatrix::from_real_diag(&[1.0, 0.0]);
    assert!(matches!(logm(&d, &tol()), Err(Error::Domain(_))));
    assert!(matches!(
        matrix_function(&d, MatrixFunction::Power(-1.0), &tol()),
        Err(Error::Domain(_))
    ));
}

#[test]
fn golden_thompson_trivial_cases() {
    let z = ComplexMatrix::zeros(3, 3);
    assert!(golden_thompson_gap(&z, &z).unwrap().abs() < 1e-15);
    let a = ComplexMatrix::from_real_diag(&[0.3, -1.2, 2.0]);
    let b = ComplexMatrix::from_real_diag(&[1.1, 0.4, -0.7]);
    assert!(golden_thompson_gap(&a, &b).unwrap().abs() < 1e-12);
}

#[test]
fn majorization_examples() {
    let m = majorizes(&Spectrum::new(vec![1.0, 0.0]), &Spectrum::new(vec![1.0, 0.0]), &tol()).unwrap();
    assert!(m.holds && m.margin == 0.0);

    let m = majorizes(&Spectrum::new(vec![0.5, 0.5]), &Spectrum::new(vec![1.0, 0.0, 0.0, 0.0]), &tol()).unwrap();
    assert!(!m.holds);
    assert!((m.margin + 0.5).abs() < 1e-15);

    let m = majorizes(&Spectrum::new(vec![0.75, 0.25]), &Spectrum::new(vec![0.5, 0.5, 0.0, 0.0]), &tol()).unwrap();
    assert!(m.holds);
    assert!((m.margin - 0.25).abs() < 1e-15);
}

#[test]
fn majorization_rejects_bad_inputs() {
    let neg = majorizes(&Spectrum::new(vec![1.1, -0.1]), &Spectrum::new(vec![1.0]), &tol());
    assert!(matches!(neg, Err(Error::NegativeEntry { .. })));
    let sums = majorizes(&Spectrum::new(vec![0.5]), &Spectrum::new(vec![1.0]), &tol());
    assert!(matches!(sums, Err(Error::TotalMismatch { .. })));
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(200))]

    #[test]
    fn eigen_residual(seed in any::<u64>(), n in 2usize..=16, scale in 0.01f64..100.0) {
        let h = random_hermitian(&mut rng_for(seed, 0), n, scale);
        let e = eigh(&h).unwrap();
        let resid = e.reconstruct().distance(&h);
        prop_assert!(resid <= 1e-10 * h.frobenius_norm().max(1.0), "residual {resid}");
        let gram = e.vectors.adjoint().matmul(&e.vectors).unwrap();
        prop_assert!(gram.distance(&ComplexMatrix::identity(n)) <= 1e-10 * (n as f64).sqrt());
        prop_assert!(e.values.values().windows(2).all(|w| w[0] >= w[1]));
    }

    #[test]
    fn exp_log_round_trip(seed in any::<u64>(), n in 1usize..=8) {
        let mut rng = rng_for(seed, 0);
        let h = random_psd(&mut rng, n, n, 1.0).try_add(&ComplexMatrix::identity(n).scale(0.05)).unwrap();
        let back = expm(&logm(&h, &tol()).unwrap()).unwrap();
        prop_assert!(back.max_abs_diff(&h) <= 1e-9);
    }

    #[test]
    fn golden_thompson(seed in any::<u64>(), n in 1usize..=8) {
        let mut rng = rng_for(seed, 0);
        let a = random_hermitian(&mut rng, n, 1.0);
        let b = random_hermitian(&mut rng, n, 1.0);
        prop_assert!(golden_thompson_gap(&a, &b).unwrap() >= -1e-9);
    }

    #[test]
    fn trace_exp_monotone(seed in any::<u64>(), n in 1usize..=8) {
        let mut rng = rng_for(seed, 0);
        let a = random_hermitian(&mut rng, n, 1.0);
        let p = random_psd(&mut rng, n, n, 1.0 / n as f64);
        for eps in [0.1, 1.0] {
            prop_assert!(trace_exp_monotonicity_gap(&a, &p, eps).unwrap() >= -1e-9);
        }
    }

    #[test]
    fn log_operator_monotone(seed in any::<u64>(), n in 1usize..=6) {
        let (a, b) = ordered_pair(seed, n);
        prop_assert!(log_monotonicity_margin(&a, &b, &tol()).unwrap() >= -1e-8);
    }

    #[test]
    fn negative_powers_operator_decreasing(seed in any::<u64>(), n in 1usize..=6) {
        let (a, b) = ordered_pair(seed, n);
        for r in [-1.0, -0.5] {
            prop_assert!(power_decreasing_margin(&a, &b, r, &tol()).unwrap() >= -1e-8);
        }
    }

    #[test]
    fn majorization_implies_convex_sums(
        raw_x in prop::collection::vec(0.0f64..1.0, 1..6),
        raw_y in prop::collection::vec(0.0f64..1.0, 1..9),
    ) {
        let normalize = |v: Vec<f64>| {
            let s: f64 = v.iter().sum();
            if s <= 1e-6 { vec![1.0] } else { v.into_iter().map(|t| t / s).collect() }
        };
        let x = Spectrum::new(normalize(raw_x));
        let y = Spectrum::new(normalize(raw_y));
        let m = majorizes(&x, &y, &tol()).unwrap();
        if m.holds {
            let fs: [fn(f64) -> f64; 3] = [|t| t * t, |t| t * t * t, |t| (t - 1.0 / 3.0).abs()];
            let n = x.len().max(y.len());
            let (xp, yp) = (x.padded(n), y.padded(n));
            for f in fs {
                let fx: f64 = xp.values().iter().map(|&t| f(t)).sum();
                let fy: f64 = yp.values().iter().map(|&t| f(t)).sum();
                prop_assert!(fx >= fy - 1e-9, "{fx} < {fy}");
            }
        }
    }

    #[test]
    fn kron_trace_multiplies(seed in any::<u64>(), n in 1usize..=4, m in 1usize..=4) {
        let mut rng = rng_for(seed, 0);
        let a = ginibre(&mut rng, n, n);
        let b = ginibre(&mut rng, m, m);
        let k = kron(&a, &b).unwrap();
        prop_assert!((k.trace() - a.trace() * b.trace()).norm() <= 1e-12 * (1.0 + k.frobenius_norm()));
    }
}
