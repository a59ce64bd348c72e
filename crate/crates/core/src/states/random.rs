//! Seeded random ensembles.
//!
//! Every generator draws from a ChaCha8 stream (a 64-bit-seeded counter-based
//! generator). Per-trial streams are derived from `(seed, trial)` by selecting the
//! ChaCha stream id, so parallel campaigns never share randomness. Complex Gaussian
//! entries have independent standard normal real and imaginary parts; simplex weights
//! are normalized unit exponentials (the flat Dirichlet law).

use num_complex::Complex64;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rand_distr::{Exp1, StandardNormal};

use crate::error::{Error, Result};
use crate::numkernel::ComplexMatrix;

use super::{BipartiteDims, DensityMatrix, PureState, SeparableEnsemble};

pub type StateRng = ChaCha8Rng;

/// Generator for stream `stream` of master seed `seed`.
pub fn rng_for(seed: u64, stream: u64) -> StateRng {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    rng.set_stream(stream);
    rng
}

pub fn complex_gaussian<R: Rng + ?Sized>(rng: &mut R) -> Complex64 {
    Complex64::new(rng.sample(StandardNormal), rng.sample(StandardNormal))
}

pub fn gaussian_vector<R: Rng + ?Sized>(rng: &mut R, n: usize) -> Vec<Complex64> {
    (0..n).map(|_| complex_gaussian(rng)).collect()
}

/// Ginibre matrix with i.i.d. complex Gaussian entries.
pub fn ginibre<R: Rng + ?Sized>(rng: &mut R, rows: usize, cols: usize) -> ComplexMatrix {
    ComplexMatrix::from_vec(rows, cols, gaussian_vector(rng, rows * cols)).expect("finite samples")
}

/// `(G + G†)/2` for a Ginibre `G`, scaled by `scale`.
pub fn random_hermitian<R: Rng + ?Sized>(rng: &mut R, n: usize, scale: f64) -> ComplexMatrix {
    ginibre(rng, n, n).hermitian_part().scale(scale)
}

/// `G G†` for a Ginibre `G` of shape `n × rank`, scaled by `scale`.
pub fn random_psd<R: Rng + ?Sized>(rng: &mut R, n: usize, rank: usize, scale: f64) -> ComplexMatrix {
    let g = ginibre(rng, n, rank);
    g.matmul(&g.adjoint()).expect("compatible shapes").hermitian_part().scale(scale)
}

/// Haar-distributed unitary via Gram–Schmidt on a Ginibre matrix.
pub fn random_unitary<R: Rng + ?Sized>(rng: &mut R, n: usize) -> ComplexMatrix {
    let g = ginibre(rng, n, n);
    let mut cols: Vec<Vec<Complex64>> = Vec::with_capacity(n);
    for j in 0..n {
        let mut v: Vec<Complex64> = (0..n).map(|i| g[(i, j)]).collect();
        // two passes keep the columns orthonormal to working precision
        for _ in 0..2 {
            for q in &cols {
                let proj: Complex64 = q.iter().zip(&v).map(|(a, b)| a.conj() * b).sum();
                for (vi, qi) in v.iter_mut().zip(q) {
                    *vi -= proj * qi;
                }
            }
        }
        let norm = v.iter().map(|z| z.norm_sqr()).sum::<f64>().sqrt();
        cols.push(v.into_iter().map(|z| z / norm).collect());
    }
    let mut u = ComplexMatrix::zeros(n, n);
    for (j, col) in cols.iter().enumerate() {
        for (i, &z) in col.iter().enumerate() {
            u[(i, j)] = z;
        }
    }
    u
}

pub fn random_pure_with<R: Rng + ?Sized>(rng: &mut R, dims: BipartiteDims) -> PureState {
    PureState::normalized(dims, gaussian_vector(rng, dims.total())).expect("nonzero Gaussian vector")
}

/// `G G† / tr(G G†)` with `G` a `(dA·dB) × rank` Ginibre matrix.
pub fn random_mixed_with<R: Rng + ?Sized>(rng: &mut R, dims: BipartiteDims, rank: usize) -> Result<DensityMatrix> {
    let n = dims.total();
    if rank == 0 || rank > n {
        return Err(Error::ParameterRange(format!("rank {rank} must lie in 1..={n}")));
    }
    let w = random_psd(rng, n, rank, 1.0);
    let tr = w.trace().re;
    DensityMatrix::new(dims, w.scale(1.0 / tr))
}

/// Mixture of `terms` random product pure states with flat-Dirichlet weights.
pub fn random_separable_with<R: Rng + ?Sized>(
    rng: &mut R,
    dims: BipartiteDims,
    terms: usize,
) -> Result<(DensityMatrix, SeparableEnsemble)> {
    if terms == 0 {
        return Err(Error::ParameterRange("at least one term is required".into()));
    }
    let raw: Vec<f64> = (0..terms).map(|_| rng.sample::<f64, _>(Exp1)).collect();
    let total: f64 = raw.iter().sum();
    let weights: Vec<f64> = raw.iter().map(|w| w / total).collect();
    let local = |rng: &mut R, d: usize| {
        let v = gaussian_vector(rng, d);
        let norm = v.iter().map(|z| z.norm_sqr()).sum::<f64>().sqrt();
        let v: Vec<Complex64> = v.into_iter().map(|z| z / norm).collect();
        ComplexMatrix::outer(&v)
    };
    let factors = (0..terms)
        .map(|_| {
            let a = local(rng, dims.a());
            let b = local(rng, dims.b());
            (a, b)
        })
        .collect();
    let ensemble = SeparableEnsemble::new(weights, factors)?;
    let rho = super::assemble(&ensemble)?;
    Ok((rho, ensemble))
}

pub fn random_pure(dims: BipartiteDims, seed: u64) -> PureState {
    random_pure_with(&mut rng_for(seed, 0), dims)
}

pub fn random_mixed(dims: BipartiteDims, rank: usize, seed: u64) -> Result<DensityMatrix> {
    random_mixed_with(&mut rng_for(seed, 0), dims, rank)
}

pub fn random_separable(dims: BipartiteDims, terms: usize, seed: u64) -> Result<(DensityMatrix, SeparableEnsemble)> {
    random_separable_with(&mut rng_for(seed, 0), dims, terms)
}
