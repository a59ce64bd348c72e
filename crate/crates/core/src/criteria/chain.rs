use std::fmt;

use serde::{Serialize, Serializer};

use crate::entropy::{alpha_sweep_spectra, AlphaSweep, AlphaValue, BipartiteSpectra, Sides};
use crate::error::{Error, Result};
use crate::numkernel::{ComplexMatrix, Tolerances};
use crate::states::json::{ensemble_to_json, EnsembleJson};
use crate::states::{DensityMatrix, SeparableEnsemble, Subsystem};

use super::{entropic_from_sweep, majorization_with, ppt, rank_with, reduction, Criterion, CriterionVerdict};

/// Slack for entropic conclusions of an implication arrow.
pub const ARROW_TOL: f64 = 1e-10;

/// Frobenius distance within which a certificate must reproduce the state.
const CERTIFICATE_TOL: f64 = 1e-9;

/// Distance from `1/d` for a reduction to count as maximally mixed.
const MIXED_TOL: f64 = 1e-9;

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Arrow {
    CertificateImplies(Criterion),
    PptImpliesReduction(Subsystem),
    ReductionImpliesRank(Subsystem),
    ReductionImpliesEntropic(Subsystem),
    MajorizationImpliesEntropic(Subsystem),
    FullRankImpliesNegativeAlpha(Subsystem),
}

impl fmt::Display for Arrow {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Arrow::CertificateImplies(c) => write!(f, "separable=>{c}"),
            Arrow::PptImpliesReduction(s) => write!(f, "ppt=>reduction_{s}"),
            Arrow::ReductionImpliesRank(s) => write!(f, "reduction_{s}=>rank"),
            Arrow::ReductionImpliesEntropic(s) => write!(f, "reduction_{s}=>entropic_{s}"),
            Arrow::MajorizationImpliesEntropic(s) => write!(f, "majorization_{s}=>entropic_{s}"),
            Arrow::FullRankImpliesNegativeAlpha(s) => write!(f, "full_rank=>entropic_negative_alpha_{s}"),
        }
    }
}

impl Serialize for Arrow {
    fn serialize<S: Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        s.collect_str(self)
    }
}

/// The undistillability node is bracketed rather than computed.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum UndistillableNode {
    /// PPT holds, so the state is undistillable.
    Implied,
    /// A reduction criterion fails, so the state is distillable.
    Excluded,
    Undetermined,
}

#[derive(Debug, Clone, Serialize)]
pub struct ChainReport {
    pub verdicts: Vec<CriterionVerdict>,
    pub certificate: Option<EnsembleJson>,
    pub consistency_violations: Vec<Arrow>,
    pub undistillable: UndistillableNode,
    pub notes: Vec<String>,
    pub alpha_sweep: AlphaSweep,
}

impl ChainReport {
    pub fn verdict(&self, c: Criterion) -> &CriterionVerdict {
        self.verdicts
            .iter()
            .find(|v| v.criterion == c)
            .expect("every criterion is evaluated")
    }

    pub fn holds(&self, c: Criterion) -> bool {
        self.verdict(c).holds
    }
}

pub fn chain_report(
    rho: &DensityMatrix,
    certificate: Option<&SeparableEnsemble>,
    grid: &[AlphaValue],
    tol: &Tolerances,
) -> Result<ChainReport> {
    let spectra = BipartiteSpectra::new(rho)?;
    chain_report_with(rho, &spectra, certificate, grid, tol)
}

/// As [`chain_report`] with precomputed spectra.
pub fn chain_report_with(
    rho: &DensityMatrix,
    spectra: &BipartiteSpectra,
    certificate: Option<&SeparableEnsemble>,
    grid: &[AlphaValue],
    tol: &Tolerances,
) -> Result<ChainReport> {
    if grid.is_empty() {
        return Err(Error::ParameterRange("alpha grid is empty".into()));
    }
    if let Some(cert) = certificate {
        let distance = if cert.dims() == rho.dims() {
            cert.matrix().distance(rho.matrix())
        } else {
            f64::INFINITY
        };
        if distance.is_nan() || distance > CERTIFICATE_TOL {
            return Err(Error::CertificateMismatch { distance });
        }
    }

    let sweep = alpha_sweep_spectra(spectra, grid, Sides::Both, tol);
    let verdicts = vec![
        ppt(rho, tol)?,
        reduction(rho, Subsystem::A, tol)?,
        reduction(rho, Subsystem::B, tol)?,
        rank_with(spectra, tol),
        majorization_with(spectra, Subsystem::A, tol)?,
        majorization_with(spectra, Subsystem::B, tol)?,
        entropic_from_sweep(&sweep, tol),
    ];
    let holds = |c: Criterion| verdicts.iter().any(|v| v.criterion == c && v.holds);
    let entropic_ok = |side: Subsystem, negative: bool| {
        sweep
            .rows
            .iter()
            .filter(|r| r.side == side && r.alpha.is_negative() == negative)
            .all(|r| r.margin.is_some_and(|m| m >= -ARROW_TOL))
    };

    let mut violations = Vec::new();
    if certificate.is_some() {
        for c in Criterion::ALL {
            let ok = match c {
                Criterion::Entropic => Subsystem::BOTH.iter().all(|&s| entropic_ok(s, false)),
                _ => holds(c),
            };
            if !ok {
                violations.push(Arrow::CertificateImplies(c));
            }
        }
    }
    for side in Subsystem::BOTH {
        let red = holds(Criterion::reduction(side));
        if holds(Criterion::Ppt) && !red {
            violations.push(Arrow::PptImpliesReduction(side));
        }
        if red && !holds(Criterion::Rank) {
            violations.push(Arrow::ReductionImpliesRank(side));
        }
        if red && !entropic_ok(side, false) {
            violations.push(Arrow::ReductionImpliesEntropic(side));
        }
        if holds(Criterion::majorization(side)) && !entropic_ok(side, false) {
            violations.push(Arrow::MajorizationImpliesEntropic(side));
        }
    }
    if rho.is_full_rank(tol) {
        for side in Subsystem::BOTH {
            if !entropic_ok(side, true) {
                violations.push(Arrow::FullRankImpliesNegativeAlpha(side));
            }
        }
    }

    let reduction_fails = !holds(Criterion::ReductionA) || !holds(Criterion::ReductionB);
    let undistillable = if holds(Criterion::Ppt) {
        UndistillableNode::Implied
    } else if reduction_fails {
        UndistillableNode::Excluded
    } else {
        UndistillableNode::Undetermined
    };

    let mut notes = Vec::new();
    if reduction_fails {
        notes.push("reduction criterion violated: the state is distillable".to_string());
    }
    let spectral_pass = verdicts.iter().filter(|v| v.criterion != Criterion::Ppt).all(|v| v.holds);
    if !holds(Criterion::Ppt) && spectral_pass {
        notes.push(
            "entangled (NPT) yet every spectral criterion holds: undetectable from spectra alone".to_string(),
        );
    }
    if let Some(note) = isospectral_hint(rho, spectra) {
        notes.push(note);
    }
    for v in &violations {
        notes.push(format!("consistency violation: {v}"));
    }

    Ok(ChainReport {
        verdicts,
        certificate: certificate.map(ensemble_to_json),
        consistency_violations: violations,
        undistillable,
        notes,
        alpha_sweep: sweep,
    })
}

/// Reports when a separable state with the same spectrum and reductions exists by
/// construction: square dims, maximally mixed reductions, multiplicities divisible by d.
fn isospectral_hint(rho: &DensityMatrix, spectra: &BipartiteSpectra) -> Option<String> {
    let dims = rho.dims();
    let d = dims.a();
    if dims.b() != d {
        return None;
    }
    let mixed = ComplexMatrix::identity(d).scale(1.0 / d as f64);
    let both_mixed = Subsystem::BOTH
        .iter()
        .all(|&s| rho.reduced(s).distance(&mixed) <= MIXED_TOL);
    if !both_mixed {
        return None;
    }
    let clusters = spectra.joint.clusters(MIXED_TOL);
    if clusters.iter().any(|&(_, m)| m % d != 0) {
        return None;
    }
    Some(format!(
        "a separable state with identical spectrum and reductions exists (multiplicities {:?} are multiples of {d})",
        clusters.iter().map(|c| c.1).collect::<Vec<_>>()
    ))
}
