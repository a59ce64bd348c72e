use crate::error::{Error, Result};
use crate::numkernel::{eigvalsh, kron, ComplexMatrix, Tolerances};

use super::{BipartiteDims, DensityMatrix, HERMITIAN_TOL, TRACE_TOL};

/// Weight tolerance on `Σ p_j = 1`.
pub const WEIGHT_SUM_TOL: f64 = 1e-12;

/// Explicit convex decomposition `ρ = Σ_j p_j ρ_j^A ⊗ ρ_j^B`; a separability certificate.
#[derive(Debug, Clone)]
pub struct SeparableEnsemble {
    weights: Vec<f64>,
    factors: Vec<(ComplexMatrix, ComplexMatrix)>,
}

fn check_local_state(m: &ComplexMatrix, what: &str, tol: &Tolerances) -> Result<()> {
    if !m.is_square() {
        return Err(Error::Ensemble(format!("{what} is not square")));
    }
    let defect = m.hermiticity_defect();
    if defect > HERMITIAN_TOL * m.frobenius_norm().max(1.0) {
        return Err(Error::Ensemble(format!("{what} is not Hermitian")));
    }
    let trace = m.trace().re;
    if (trace - 1.0).abs() > TRACE_TOL {
        return Err(Error::Ensemble(format!("{what} has trace {trace}")));
    }
    let min = eigvalsh(m)?.min();
    if min < -tol.psd {
        return Err(Error::Ensemble(format!("{what} has eigenvalue {min:.3e}")));
    }
    Ok(())
}

impl SeparableEnsemble {
    pub fn new(weights: Vec<f64>, factors: Vec<(ComplexMatrix, ComplexMatrix)>) -> Result<Self> {
        if factors.is_empty() {
            return Err(Error::Ensemble("no terms".into()));
        }
        if weights.len() != factors.len() {
            return Err(Error::Ensemble(format!(
                "{} weights for {} factor pairs",
                weights.len(),
                factors.len()
            )));
        }
        if let Some(w) = weights.iter().find(|w| !(w.is_finite() && **w >= 0.0)) {
            return Err(Error::Ensemble(format!("weight {w} is not a nonnegative number")));
        }
        let total: f64 = weights.iter().sum();
        if (total - 1.0).abs() > WEIGHT_SUM_TOL {
            return Err(Error::Ensemble(format!("weights sum to {total}")));
        }
        let (da, db) = (factors[0].0.rows(), factors[0].1.rows());
        let tol = Tolerances::default();
        for (j, (a, b)) in factors.iter().enumerate() {
            if a.rows() != da || b.rows() != db {
                return Err(Error::Ensemble(format!("factor {j} has inconsistent dimensions")));
            }
            check_local_state(a, &format!("factor {j} (A)"), &tol)?;
            check_local_state(b, &format!("factor {j} (B)"), &tol)?;
        }
        BipartiteDims::new(da, db)?;
        Ok(Self { weights, factors })
    }

    pub fn weights(&self) -> &[f64] {
        &self.weights
    }

    pub fn factors(&self) -> &[(ComplexMatrix, ComplexMatrix)] {
        &self.factors
    }

    pub fn len(&self) -> usize {
        self.weights.len()
    }

    pub fn is_empty(&self) -> bool {
        self.weights.is_empty()
    }

    pub fn dims(&self) -> BipartiteDims {
        BipartiteDims::new(self.factors[0].0.rows(), self.factors[0].1.rows()).expect("validated on construction")
    }

    /// `Σ_j p_j ρ_j^A ⊗ ρ_j^B` as a raw matrix.
    pub fn matrix(&self) -> ComplexMatrix {
        let n = self.dims().total();
        let mut acc = ComplexMatrix::zeros(n, n);
        for (&w, (a, b)) in self.weights.iter().zip(&self.factors) {
            if w == 0.0 {
                continue;
            }
            let term = kron(a, b).expect("dims validated");
            acc = acc.try_add(&term.scale(w)).expect("same shape");
        }
        acc
    }
}

/// Builds the state represented by a separable ensemble.
pub fn assemble(e: &SeparableEnsemble) -> Result<DensityMatrix> {
    DensityMatrix::new(e.dims(), e.matrix())
}
