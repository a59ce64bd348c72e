//! Spectral separability criteria and the implication-chain consistency report.
//!
//! ```text
//! separable ⇒ PPT ⇒ undistillable ⇒ reduction (A and B) ⇒ rank
//!                                    reduction_X ⇒ entropic_X (every α ≥ 0)
//! majorization_X ⇒ entropic_X (every α ≥ 0)
//! full rank ⇒ entropic (every α < 0)
//! ```

mod chain;
mod explore;

use std::fmt;

use serde::Serialize;

use crate::entropy::{alpha_sweep_spectra, AlphaSweep, AlphaValue, BipartiteSpectra, Sides, SIGN_DEAD_BAND};
use crate::error::Result;
use crate::numkernel::{eigh, kron, majorizes, ComplexMatrix, Tolerances};
use crate::states::{partial_transpose, werner, DensityMatrix, Subsystem};

pub use chain::{chain_report, chain_report_with, Arrow, ChainReport, UndistillableNode, ARROW_TOL};
pub use explore::{explore_reduction_majorization, Exploration};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, PartialOrd, Ord)]
#[serde(rename_all = "snake_case")]
pub enum Criterion {
    Ppt,
    #[serde(rename = "reduction_A")]
    ReductionA,
    #[serde(rename = "reduction_B")]
    ReductionB,
    Rank,
    #[serde(rename = "majorization_A")]
    MajorizationA,
    #[serde(rename = "majorization_B")]
    MajorizationB,
    Entropic,
}

impl Criterion {
    pub const ALL: [Criterion; 7] = [
        Criterion::Ppt,
        Criterion::ReductionA,
        Criterion::ReductionB,
        Criterion::Rank,
        Criterion::MajorizationA,
        Criterion::MajorizationB,
        Criterion::Entropic,
    ];

    pub fn reduction(side: Subsystem) -> Self {
        match side {
            Subsystem::A => Criterion::ReductionA,
            Subsystem::B => Criterion::ReductionB,
        }
    }

    pub fn majorization(side: Subsystem) -> Self {
        match side {
            Subsystem::A => Criterion::MajorizationA,
            Subsystem::B => Criterion::MajorizationB,
        }
    }

    /// Slack below zero that still counts as satisfied.
    pub fn tolerance(self, tol: &Tolerances) -> f64 {
        match self {
            Criterion::Ppt | Criterion::ReductionA | Criterion::ReductionB => tol.psd,
            Criterion::Rank => 0.0,
            Criterion::MajorizationA | Criterion::MajorizationB => tol.major,
            Criterion::Entropic => SIGN_DEAD_BAND,
        }
    }

    pub fn name(self) -> &'static str {
        match self {
            Criterion::Ppt => "ppt",
            Criterion::ReductionA => "reduction_A",
            Criterion::ReductionB => "reduction_B",
            Criterion::Rank => "rank",
            Criterion::MajorizationA => "majorization_A",
            Criterion::MajorizationB => "majorization_B",
            Criterion::Entropic => "entropic",
        }
    }
}

impl fmt::Display for Criterion {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

/// Pass/fail with a signed margin; `witness` explains every failure.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct CriterionVerdict {
    pub criterion: Criterion,
    pub holds: bool,
    pub margin: f64,
    pub witness: Option<String>,
}

impl CriterionVerdict {
    fn from_margin(criterion: Criterion, margin: f64, tol: &Tolerances, witness: impl FnOnce() -> String) -> Self {
        let holds = margin >= -criterion.tolerance(tol);
        Self {
            criterion,
            holds,
            margin,
            witness: (!holds).then(witness),
        }
    }
}

fn min_eigen_witness(op: &ComplexMatrix, what: &str) -> Result<(f64, String)> {
    let eig = eigh(op)?;
    let n = eig.values.len();
    let margin = eig.values.min();
    let v = eig.vector(n - 1);
    let (peak, amp) = v
        .iter()
        .enumerate()
        .max_by(|a, b| a.1.norm().total_cmp(&b.1.norm()))
        .map(|(i, z)| (i, z.norm()))
        .unwrap_or((0, 0.0));
    let witness = format!(
        "{what} has eigenvalue {margin:.6e}; its eigenvector peaks on basis index {peak} (|amplitude| {amp:.4})"
    );
    Ok((margin, witness))
}

/// Positivity of the partial transpose (on A; the B transpose has the same spectrum).
pub fn ppt(rho: &DensityMatrix, tol: &Tolerances) -> Result<CriterionVerdict> {
    let pt = partial_transpose(rho, Subsystem::A);
    let (margin, witness) = min_eigen_witness(&pt, "partial transpose")?;
    Ok(CriterionVerdict::from_margin(Criterion::Ppt, margin, tol, || witness))
}

/// `ρ_A ⊗ 1 − ρ ≥ 0` (side A) or `1 ⊗ ρ_B − ρ ≥ 0` (side B).
pub fn reduction(rho: &DensityMatrix, side: Subsystem, tol: &Tolerances) -> Result<CriterionVerdict> {
    let dims = rho.dims();
    let red = rho.reduced(side);
    let lifted = match side {
        Subsystem::A => kron(&red, &ComplexMatrix::identity(dims.b()))?,
        Subsystem::B => kron(&ComplexMatrix::identity(dims.a()), &red)?,
    };
    let op = lifted.try_sub(rho.matrix())?;
    let what = match side {
        Subsystem::A => "rho_A (x) 1 - rho",
        Subsystem::B => "1 (x) rho_B - rho",
    };
    let (margin, witness) = min_eigen_witness(&op, what)?;
    Ok(CriterionVerdict::from_margin(Criterion::reduction(side), margin, tol, || witness))
}

fn rank_with(spectra: &BipartiteSpectra, tol: &Tolerances) -> CriterionVerdict {
    let r = spectra.joint.rank(tol.rank);
    let ra = spectra.a.rank(tol.rank);
    let rb = spectra.b.rank(tol.rank);
    let margin = r as f64 - ra.max(rb) as f64;
    CriterionVerdict::from_margin(Criterion::Rank, margin, tol, || {
        format!("rank(rho) = {r} < max(rank rho_A = {ra}, rank rho_B = {rb})")
    })
}

/// `max(rank ρ_A, rank ρ_B) ≤ rank ρ`.
pub fn rank_criterion(rho: &DensityMatrix, tol: &Tolerances) -> Result<CriterionVerdict> {
    Ok(rank_with(&BipartiteSpectra::new(rho)?, tol))
}

fn majorization_with(spectra: &BipartiteSpectra, side: Subsystem, tol: &Tolerances) -> Result<CriterionVerdict> {
    let m = majorizes(spectra.reduced(side), &spectra.joint, tol)?;
    Ok(CriterionVerdict::from_margin(Criterion::majorization(side), m.margin, tol, || {
        format!(
            "partial sum k = {} of the reduction spectrum falls short by {:.6e}",
            m.worst_k.unwrap_or(0),
            -m.margin
        )
    }))
}

/// `ρ_side ≻ ρ` on the zero-padded spectra.
pub fn majorization(rho: &DensityMatrix, side: Subsystem, tol: &Tolerances) -> Result<CriterionVerdict> {
    majorization_with(&BipartiteSpectra::new(rho)?, side, tol)
}

fn entropic_from_sweep(sweep: &AlphaSweep, tol: &Tolerances) -> CriterionVerdict {
    match sweep.min_margin_where(|r| r.alpha.is_nonnegative()) {
        Some((margin, alpha, side)) => CriterionVerdict::from_margin(Criterion::Entropic, margin, tol, || {
            format!("conditional entropy conditioned on {side} is negative at alpha = {alpha} (margin {margin:.6e})")
        }),
        None => CriterionVerdict {
            criterion: Criterion::Entropic,
            holds: true,
            margin: 0.0,
            witness: None,
        },
    }
}

/// Nonnegativity of the conditional entropies on both sides for every grid `α ≥ 0`.
pub fn entropic(rho: &DensityMatrix, grid: &[AlphaValue], tol: &Tolerances) -> Result<CriterionVerdict> {
    let spectra = BipartiteSpectra::new(rho)?;
    let sweep = alpha_sweep_spectra(&spectra, grid, Sides::Both, tol);
    Ok(entropic_from_sweep(&sweep, tol))
}

/// Bisects the PPT margin of `werner(d, p)` for its sign change on `[0, 1]`.
pub fn werner_ppt_boundary(d: usize, resolution: f64, tol: &Tolerances) -> Result<f64> {
    werner_ppt_crossing(d, 0.0, 1.0, resolution, tol)?.ok_or_else(|| {
        crate::error::Error::Domain(format!(
            "PPT margin of the d = {d} Werner family does not change sign on [0, 1]"
        ))
    })
}

/// Sign change of the Werner PPT margin inside `[lo, hi]`, if the margin is
/// nonnegative at `lo` and negative at `hi`.
pub fn werner_ppt_crossing(d: usize, lo: f64, hi: f64, resolution: f64, tol: &Tolerances) -> Result<Option<f64>> {
    let margin = |p: f64| -> Result<f64> { Ok(ppt(&werner(d, p)?, tol)?.margin) };
    if resolution.is_nan() || resolution <= 0.0 {
        return Err(crate::error::Error::ParameterRange(format!("resolution {resolution} must be positive")));
    }
    let (mut lo, mut hi) = (lo, hi);
    if margin(lo)? < 0.0 || margin(hi)? >= 0.0 {
        return Ok(None);
    }
    while hi - lo > resolution {
        let mid = 0.5 * (lo + hi);
        if margin(mid)? >= 0.0 {
            lo = mid;
        } else {
            hi = mid;
        }
    }
    Ok(Some(0.5 * (lo + hi)))
}
