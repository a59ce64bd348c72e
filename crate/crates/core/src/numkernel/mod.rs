//! Dense complex linear algebra: Hermitian eigendecomposition, spectral calculus,
//! Kronecker products, majorization, and sampled operator-inequality checks.

mod eigen;
mod funcs;
mod inequalities;
mod matrix;
mod spectrum;

use serde::{Deserialize, Serialize};

pub use eigen::{eigh, eigvalsh, HermitianEigen, MAX_SWEEPS};
pub use funcs::{expm, logm, matrix_function, powm, MatrixFunction};
pub use inequalities::{
    golden_thompson_gap, log_monotonicity_margin, power_decreasing_margin, trace_exp_monotonicity_gap,
};
pub use matrix::{kron, kron_with_limit, ComplexMatrix, MAX_SIDE};
pub use spectrum::{majorizes, Majorization, Spectrum};

/// Numerical slack shared by the kernel, entropies and criteria.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct Tolerances {
    /// Slack on positive semidefiniteness.
    pub psd: f64,
    /// Eigenvalues at or below this count as zero.
    pub rank: f64,
    /// Slack on majorization partial sums.
    pub major: f64,
}

impl Default for Tolerances {
    fn default() -> Self {
        Self {
            psd: 1e-9,
            rank: 1e-10,
            major: 1e-10,
        }
    }
}
