use std::f64::consts::PI;

use num_complex::Complex64;

use crate::error::{Error, Result};
use crate::numkernel::ComplexMatrix;

use super::{BipartiteDims, DensityMatrix, PureState, SeparableEnsemble};

fn basis_projector(d: usize, i: usize) -> ComplexMatrix {
    let mut m = ComplexMatrix::zeros(d, d);
    m[(i, i)] = Complex64::new(1.0, 0.0);
    m
}

fn check_label(name: &str, value: usize, d: usize) -> Result<()> {
    if value == 0 || value > d {
        return Err(Error::IndexOutOfRange(format!("{name} = {value} must lie in 1..={d}")));
    }
    Ok(())
}

fn check_local_dim(d: usize) -> Result<()> {
    if d < 2 {
        return Err(Error::ParameterRange(format!("local dimension must be at least 2, got {d}")));
    }
    BipartiteDims::square(d).map(|_| ())
}

fn check_probability(p: f64) -> Result<()> {
    if !(0.0..=1.0).contains(&p) {
        return Err(Error::ParameterRange(format!("p = {p} must lie in [0, 1]")));
    }
    Ok(())
}

/// `(|00⟩ + … + |d−1,d−1⟩)/√d`.
pub fn phi_plus(d: usize) -> Result<PureState> {
    let dims = BipartiteDims::square(d)?;
    let amp = Complex64::new(1.0 / (d as f64).sqrt(), 0.0);
    let mut v = vec![Complex64::new(0.0, 0.0); d * d];
    for n in 0..d {
        v[n * d + n] = amp;
    }
    PureState::normalized(dims, v)
}

pub fn maximally_mixed(dims: BipartiteDims) -> DensityMatrix {
    let n = dims.total();
    DensityMatrix::new(dims, ComplexMatrix::identity(n).scale(1.0 / n as f64)).expect("valid state")
}

/// `|Ψ_jk⟩ = d^{-1/2} Σ_n exp(2πi·j·n/d) |n, n⊕k⟩` with 1-based labels `j, k, n ∈ 1..=d`.
///
/// Kets are stored 0-based, so label `n` is basis index `n − 1` and `n ⊕ k` becomes
/// `(n − 1 + k) mod d`.
pub fn max_entangled_basis(d: usize, j: usize, k: usize) -> Result<PureState> {
    check_local_dim(d)?;
    check_label("j", j, d)?;
    check_label("k", k, d)?;
    let dims = BipartiteDims::square(d)?;
    let norm = 1.0 / (d as f64).sqrt();
    let mut v = vec![Complex64::new(0.0, 0.0); d * d];
    for n in 1..=d {
        let phase = 2.0 * PI * ((j * n) % d) as f64 / d as f64;
        let first = n - 1;
        let second = (n - 1 + k) % d;
        v[first * d + second] = Complex64::from_polar(norm, phase);
    }
    PureState::normalized(dims, v)
}

/// `P_k` together with the product-basis certificate for `P_k / d`.
#[derive(Debug, Clone)]
pub struct SeparableProjector {
    pub matrix: ComplexMatrix,
    pub certificate: SeparableEnsemble,
}

/// `P_k = Σ_n |n⟩⟨n| ⊗ |n⊕k⟩⟨n⊕k|` (1-based `k`).
pub fn separable_projector(d: usize, k: usize) -> Result<SeparableProjector> {
    check_local_dim(d)?;
    check_label("k", k, d)?;
    let shift = k % d;
    let mut matrix = ComplexMatrix::zeros(d * d, d * d);
    let mut factors = Vec::with_capacity(d);
    for n in 0..d {
        let m = (n + shift) % d;
        matrix[(n * d + m, n * d + m)] = Complex64::new(1.0, 0.0);
        factors.push((basis_projector(d, n), basis_projector(d, m)));
    }
    let certificate = SeparableEnsemble::new(vec![1.0 / d as f64; d], factors)?;
    Ok(SeparableProjector { matrix, certificate })
}

/// `Σ_j |Ψ_jk⟩⟨Ψ_jk|`, the maximally-entangled-basis form of `P_k`.
pub fn separable_projector_from_basis(d: usize, k: usize) -> Result<ComplexMatrix> {
    let mut acc = ComplexMatrix::zeros(d * d, d * d);
    for j in 1..=d {
        acc = acc.try_add(&max_entangled_basis(d, j, k)?.projector())?;
    }
    Ok(acc)
}

/// Swap operator `F|ab⟩ = |ba⟩` on `C^d ⊗ C^d`.
pub fn flip_operator(d: usize) -> ComplexMatrix {
    let mut f = ComplexMatrix::zeros(d * d, d * d);
    for a in 0..d {
        for b in 0..d {
            f[(a * d + b, b * d + a)] = Complex64::new(1.0, 0.0);
        }
    }
    f
}

/// `(1 + F)/2`.
pub fn symmetric_projector(d: usize) -> ComplexMatrix {
    (&ComplexMatrix::identity(d * d) + &flip_operator(d)).scale(0.5)
}

/// `(1 − F)/2`.
pub fn antisymmetric_projector(d: usize) -> ComplexMatrix {
    (&ComplexMatrix::identity(d * d) - &flip_operator(d)).scale(0.5)
}

/// `(r₊, r₋) = ((d² + d)/2, (d² − d)/2)`.
pub fn werner_dimensions(d: usize) -> (usize, usize) {
    ((d * d + d) / 2, (d * d - d) / 2)
}

/// `ρ(p) = (1 − p) P₊/r₊ + p P₋/r₋`.
pub fn werner(d: usize, p: f64) -> Result<DensityMatrix> {
    check_local_dim(d)?;
    check_probability(p)?;
    let (rp, rm) = werner_dimensions(d);
    let sym = symmetric_projector(d).scale((1.0 - p) / rp as f64);
    let anti = antisymmetric_projector(d).scale(p / rm as f64);
    DensityMatrix::new(BipartiteDims::square(d)?, sym.try_add(&anti)?)
}

/// Diagonal state `Σ_blocks λ Σ_{k ∈ block} P_k` plus its product-basis certificate.
/// `shifts` are 0-based cyclic shifts (`k mod d`).
fn projector_mixture(d: usize, blocks: &[(f64, Vec<usize>)]) -> Result<(DensityMatrix, SeparableEnsemble)> {
    let dims = BipartiteDims::square(d)?;
    let mut matrix = ComplexMatrix::zeros(d * d, d * d);
    let mut weights = Vec::new();
    let mut factors = Vec::new();
    for (lambda, shifts) in blocks {
        for &shift in shifts {
            for n in 0..d {
                let m = (n + shift) % d;
                matrix[(n * d + m, n * d + m)] = Complex64::new(*lambda, 0.0);
                if *lambda > 0.0 {
                    weights.push(*lambda);
                    factors.push((basis_projector(d, n), basis_projector(d, m)));
                }
            }
        }
    }
    let total: f64 = weights.iter().sum();
    let weights = weights.into_iter().map(|w| w / total).collect();
    let certificate = SeparableEnsemble::new(weights, factors)?;
    Ok((DensityMatrix::new(dims, matrix)?, certificate))
}

/// Separable counterpart of the odd-dimensional Werner state with identical spectrum
/// and reductions: `(1−p)/r₊ Σ_{k=1}^{r₊/d} P_k + p/r₋ Σ_{l=1}^{r₋/d} P_{l + r₊/d}`.
pub fn isospectral_werner(d: usize, p: f64) -> Result<(DensityMatrix, SeparableEnsemble)> {
    if d.is_multiple_of(2) {
        return Err(Error::EvenDimension(d));
    }
    check_local_dim(d)?;
    check_probability(p)?;
    let (rp, rm) = werner_dimensions(d);
    let (np, nm) = (rp / d, rm / d);
    let sym: Vec<usize> = (1..=np).map(|k| k % d).collect();
    let anti: Vec<usize> = (1..=nm).map(|l| (l + np) % d).collect();
    projector_mixture(d, &[((1.0 - p) / rp as f64, sym), (p / rm as f64, anti)])
}

/// Separable state with the given `(eigenvalue, multiplicity)` spectrum and maximally
/// mixed reductions. Blocks sorted by descending eigenvalue consume `P_1, P_2, …` in order;
/// any multiplicity left below `d²` is filled with zeros.
pub fn isospectral_separable(spec: &[(f64, usize)], d: usize) -> Result<(DensityMatrix, SeparableEnsemble)> {
    check_local_dim(d)?;
    if spec.is_empty() {
        return Err(Error::ParameterRange("empty spectrum".into()));
    }
    for &(lambda, _) in spec {
        if !(lambda.is_finite() && lambda >= 0.0) {
            return Err(Error::ParameterRange(format!("eigenvalue {lambda} must be nonnegative")));
        }
    }
    for &(_, multiplicity) in spec {
        if multiplicity == 0 || multiplicity % d != 0 {
            return Err(Error::MultiplicityNotDivisible { multiplicity, d });
        }
    }
    let total: usize = spec.iter().map(|&(_, m)| m).sum();
    if total > d * d {
        return Err(Error::BudgetExceeded { total, budget: d * d });
    }
    let mass: f64 = spec.iter().map(|&(l, m)| l * m as f64).sum();
    if (mass - 1.0).abs() > 1e-10 {
        return Err(Error::NotNormalized { norm: mass });
    }

    let mut sorted = spec.to_vec();
    sorted.sort_by(|a, b| b.0.total_cmp(&a.0));
    let mut next_k = 1;
    let blocks: Vec<(f64, Vec<usize>)> = sorted
        .into_iter()
        .map(|(lambda, m)| {
            let shifts = (next_k..next_k + m / d).map(|k| k % d).collect();
            next_k += m / d;
            (lambda, shifts)
        })
        .collect();
    projector_mixture(d, &blocks)
}

/// `½(|Φ₊⟩⟨Φ₊| + |01⟩⟨01|)` on two qubits; its reduction has eigenvalues 3/4 and 1/4.
pub fn monotonicity_counterexample() -> DensityMatrix {
    let q = Complex64::new(0.25, 0.0);
    let mut m = ComplexMatrix::zeros(4, 4);
    m[(0, 0)] = q;
    m[(0, 3)] = q;
    m[(3, 0)] = q;
    m[(3, 3)] = q;
    m[(1, 1)] = Complex64::new(0.5, 0.0);
    DensityMatrix::new(BipartiteDims::square(2).expect("2x2"), m).expect("valid state")
}
