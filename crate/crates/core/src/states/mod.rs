//! Bipartite density matrices, reductions, partial transposes, the special state
//! families (Werner, maximally entangled basis, separable projectors, isospectral
//! counterparts) and seeded random ensembles.

mod ensemble;
mod families;
pub mod json;
mod ops;
pub mod random;

use num_complex::Complex64;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::numkernel::{eigvalsh, ComplexMatrix, Spectrum, Tolerances, MAX_SIDE};

pub use ensemble::{assemble, SeparableEnsemble};
pub use families::{
    antisymmetric_projector, flip_operator, isospectral_separable, isospectral_werner, max_entangled_basis,
    maximally_mixed, monotonicity_counterexample, phi_plus, separable_projector, separable_projector_from_basis,
    symmetric_projector, werner, werner_dimensions, SeparableProjector,
};
pub use ops::{partial_trace, partial_trace_matrix, partial_transpose, partial_transpose_matrix, schmidt_spectrum};
pub use random::{random_mixed, random_pure, random_separable};

/// Relative Hermiticity slack for density matrices.
pub const HERMITIAN_TOL: f64 = 1e-9;
/// Allowed deviation of the trace from 1.
pub const TRACE_TOL: f64 = 1e-9;
/// Allowed deviation of a pure state's norm from 1.
pub const NORM_TOL: f64 = 1e-12;

/// One side of the bipartition.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize, PartialOrd, Ord)]
pub enum Subsystem {
    A,
    B,
}

impl Subsystem {
    pub fn other(self) -> Self {
        match self {
            Subsystem::A => Subsystem::B,
            Subsystem::B => Subsystem::A,
        }
    }

    pub const BOTH: [Subsystem; 2] = [Subsystem::A, Subsystem::B];
}

impl std::fmt::Display for Subsystem {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        f.write_str(match self {
            Subsystem::A => "A",
            Subsystem::B => "B",
        })
    }
}

/// Local dimensions `(dA, dB)`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(try_from = "[usize; 2]", into = "[usize; 2]")]
pub struct BipartiteDims {
    a: usize,
    b: usize,
}

impl BipartiteDims {
    pub fn new(a: usize, b: usize) -> Result<Self> {
        if a == 0 || b == 0 {
            return Err(Error::ParameterRange(format!("dims must be positive, got [{a}, {b}]")));
        }
        match a.checked_mul(b) {
            Some(n) if n <= MAX_SIDE => Ok(Self { a, b }),
            _ => Err(Error::SizeLimit {
                rows: a.saturating_mul(b),
                cols: a.saturating_mul(b),
                limit: MAX_SIDE,
            }),
        }
    }

    pub fn square(d: usize) -> Result<Self> {
        Self::new(d, d)
    }

    pub fn a(&self) -> usize {
        self.a
    }

    pub fn b(&self) -> usize {
        self.b
    }

    pub fn local(&self, side: Subsystem) -> usize {
        match side {
            Subsystem::A => self.a,
            Subsystem::B => self.b,
        }
    }

    pub fn total(&self) -> usize {
        self.a * self.b
    }
}

impl TryFrom<[usize; 2]> for BipartiteDims {
    type Error = Error;

    fn try_from([a, b]: [usize; 2]) -> Result<Self> {
        Self::new(a, b)
    }
}

impl From<BipartiteDims> for [usize; 2] {
    fn from(d: BipartiteDims) -> Self {
        [d.a, d.b]
    }
}

/// Validated bipartite density matrix. The spectrum is computed once at construction.
#[derive(Debug, Clone)]
pub struct DensityMatrix {
    dims: BipartiteDims,
    mat: ComplexMatrix,
    spectrum: Spectrum,
}

impl DensityMatrix {
    pub fn new(dims: BipartiteDims, mat: ComplexMatrix) -> Result<Self> {
        Self::with_tolerances(dims, mat, &Tolerances::default())
    }

    /// Checks, in order: dims, Hermiticity, trace, positivity.
    pub fn with_tolerances(dims: BipartiteDims, mat: ComplexMatrix, tol: &Tolerances) -> Result<Self> {
        let n = dims.total();
        if mat.rows() != n || mat.cols() != n {
            return Err(Error::DimsMismatch {
                d_a: dims.a,
                d_b: dims.b,
                expected: n,
                rows: mat.rows(),
                cols: mat.cols(),
            });
        }
        let defect = mat.hermiticity_defect();
        let allowed = HERMITIAN_TOL * mat.frobenius_norm().max(1.0);
        if defect > allowed {
            return Err(Error::NotHermitian { defect, allowed });
        }
        let trace = mat.trace().re;
        if (trace - 1.0).abs() > TRACE_TOL {
            return Err(Error::Trace { trace });
        }
        let spectrum = eigvalsh(&mat)?;
        if spectrum.min() < -tol.psd {
            return Err(Error::NotPositive {
                min_eigenvalue: spectrum.min(),
            });
        }
        Ok(Self { dims, mat, spectrum })
    }

    pub fn dims(&self) -> BipartiteDims {
        self.dims
    }

    pub fn matrix(&self) -> &ComplexMatrix {
        &self.mat
    }

    pub fn into_matrix(self) -> ComplexMatrix {
        self.mat
    }

    /// Eigenvalues of the state, descending.
    pub fn spectrum(&self) -> &Spectrum {
        &self.spectrum
    }

    /// Reduced state on `keep` (the other factor is traced out).
    pub fn reduced(&self, keep: Subsystem) -> ComplexMatrix {
        partial_trace_matrix(&self.mat, self.dims, keep.other())
    }

    pub fn rank(&self, tol: &Tolerances) -> usize {
        self.spectrum.rank(tol.rank)
    }

    pub fn is_full_rank(&self, tol: &Tolerances) -> bool {
        self.spectrum.min() > tol.rank
    }
}

/// Unit vector in `C^dA ⊗ C^dB`, index `i·dB + j` for `|i⟩⊗|j⟩`.
#[derive(Debug, Clone, PartialEq)]
pub struct PureState {
    dims: BipartiteDims,
    vec: Vec<Complex64>,
}

impl PureState {
    pub fn new(dims: BipartiteDims, vec: Vec<Complex64>) -> Result<Self> {
        if vec.len() != dims.total() {
            return Err(Error::Shape(format!(
                "vector of length {} for dims [{}, {}]",
                vec.len(),
                dims.a,
                dims.b
            )));
        }
        let norm = vec.iter().map(|z| z.norm_sqr()).sum::<f64>().sqrt();
        if (norm - 1.0).abs() > NORM_TOL {
            return Err(Error::NotNormalized { norm });
        }
        Ok(Self { dims, vec })
    }

    /// Normalizes `vec` first; fails only on a zero or mis-sized vector.
    pub fn normalized(dims: BipartiteDims, vec: Vec<Complex64>) -> Result<Self> {
        let norm = vec.iter().map(|z| z.norm_sqr()).sum::<f64>().sqrt();
        if norm == 0.0 || !norm.is_finite() {
            return Err(Error::NotNormalized { norm });
        }
        Self::new(dims, vec.into_iter().map(|z| z / norm).collect())
    }

    pub fn dims(&self) -> BipartiteDims {
        self.dims
    }

    pub fn amplitudes(&self) -> &[Complex64] {
        &self.vec
    }

    /// `⟨self|other⟩`.
    pub fn inner(&self, other: &PureState) -> Complex64 {
        self.vec.iter().zip(&other.vec).map(|(a, b)| a.conj() * b).sum()
    }

    /// Coefficient matrix `C[i, j] = ⟨ij|ψ⟩` of shape `dA × dB`.
    pub fn coefficients(&self) -> ComplexMatrix {
        ComplexMatrix::from_vec(self.dims.a, self.dims.b, self.vec.clone()).expect("finite amplitudes")
    }

    pub fn projector(&self) -> ComplexMatrix {
        ComplexMatrix::outer(&self.vec)
    }

    pub fn density_matrix(&self) -> Result<DensityMatrix> {
        DensityMatrix::new(self.dims, self.projector())
    }
}
