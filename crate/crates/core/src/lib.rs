//! Spectral separability criteria for finite-dimensional bipartite quantum states.
//!
//! The crate is organised bottom-up:
//!
//! - [`numkernel`]: dense complex Hermitian linear algebra and majorization.
//! - [`states`]: density matrices, partial operations, state families and random ensembles.
//! - [`entropy`]: Rényi, Tsallis and von Neumann entropies and their conditional forms.
//! - [`criteria`]: PPT, reduction, rank, majorization and entropic criteria, and the
//!   implication-chain report that cross-checks them.
//!
//! ```
//! use entrocrit::{chain_report, default_grid, werner, Criterion, Tolerances};
//!
//! let rho = werner(3, 0.7).unwrap();
//! let report = chain_report(&rho, None, &default_grid(), &Tolerances::default()).unwrap();
//! assert!(!report.holds(Criterion::Ppt));
//! assert!(report.holds(Criterion::Entropic));
//! ```

pub mod criteria;
pub mod entropy;
pub mod error;
pub mod numkernel;
pub mod states;

pub use criteria::{chain_report, ChainReport, Criterion, CriterionVerdict};
pub use entropy::{default_grid, full_grid, AlphaValue, EntropyValue, Sign};
pub use error::{Error, Result};
pub use numkernel::{ComplexMatrix, Spectrum, Tolerances};
pub use states::{
    isospectral_separable, isospectral_werner, monotonicity_counterexample, werner, BipartiteDims, DensityMatrix,
    PureState, SeparableEnsemble, Subsystem,
};
