use thiserror::Error;

/// Errors raised by the numerical kernel, state constructors and criteria.
#[derive(Debug, Error, Clone, PartialEq)]
pub enum Error {
    #[error("matrix dimensions overflow the size limit: {rows}x{cols} exceeds {limit}x{limit}")]
    SizeLimit { rows: usize, cols: usize, limit: usize },

    #[error("shape mismatch: {0}")]
    Shape(String),

    #[error("non-finite matrix entry at ({row}, {col})")]
    NonFinite { row: usize, col: usize },

    #[error("matrix is not Hermitian (defect {defect:.3e}, allowed {allowed:.3e})")]
    NotHermitian { defect: f64, allowed: f64 },

    #[error("eigensolver did not converge within {sweeps} sweeps (off-diagonal mass {off_diagonal:.3e})")]
    NoConvergence { sweeps: usize, off_diagonal: f64 },

    #[error("domain error: {0}")]
    Domain(String),

    #[error("negative spectrum entry {value:.3e} at index {index}")]
    NegativeEntry { index: usize, value: f64 },

    #[error("spectra have different totals ({left} vs {right})")]
    TotalMismatch { left: f64, right: f64 },

    #[error("dims mismatch: dims {d_a}x{d_b} require a {expected}x{expected} matrix, got {rows}x{cols}")]
    DimsMismatch { d_a: usize, d_b: usize, expected: usize, rows: usize, cols: usize },

    #[error("trace is {trace}, expected 1")]
    Trace { trace: f64 },

    #[error("not positive semidefinite (min eigenvalue {min_eigenvalue:.3e})")]
    NotPositive { min_eigenvalue: f64 },

    #[error("state vector norm is {norm}, expected 1")]
    NotNormalized { norm: f64 },

    #[error("index out of range: {0}")]
    IndexOutOfRange(String),

    #[error("parameter out of range: {0}")]
    ParameterRange(String),

    #[error("dimension {0} is even; the construction requires odd d")]
    EvenDimension(usize),

    #[error("multiplicity {multiplicity} is not a positive multiple of d = {d}")]
    MultiplicityNotDivisible { multiplicity: usize, d: usize },

    #[error("total multiplicity {total} exceeds d^2 = {budget}")]
    BudgetExceeded { total: usize, budget: usize },

    #[error("state is not full rank (min eigenvalue {min_eigenvalue:.3e})")]
    NotFullRank { min_eigenvalue: f64 },

    #[error("certificate reassembles to a state at distance {distance:.3e} from the input")]
    CertificateMismatch { distance: f64 },

    #[error("invalid ensemble: {0}")]
    Ensemble(String),

    #[error("state JSON: {0}")]
    Json(String),
}

pub type Result<T> = std::result::Result<T, Error>;
