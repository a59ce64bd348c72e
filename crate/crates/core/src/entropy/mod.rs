//! Rényi, Tsallis and von Neumann entropies, their conditional variants, and the
//! sign predicate that decides nonnegativity of the conditional entropies.
//!
//! All logarithms are natural. Eigenvalues at or below `τ_rank` are treated as zero
//! for `α ≥ 0`; negative `α` requires full rank.

mod alpha;

use std::borrow::Cow;

use serde::{Serialize, Serializer};

use crate::error::{Error, Result};
use crate::numkernel::{eigvalsh, ComplexMatrix, Spectrum, Tolerances};
use crate::states::{DensityMatrix, Subsystem};

pub use alpha::{default_grid, full_grid, negative_grid, parse_alpha_list, AlphaValue, NEAR_ONE};

/// Dead band around zero for sign decisions.
pub const SIGN_DEAD_BAND: f64 = 1e-12;

/// Anything with a Hermitian spectrum.
pub trait SpectralSource {
    fn eigenvalues(&self) -> Result<Cow<'_, Spectrum>>;
}

impl SpectralSource for Spectrum {
    fn eigenvalues(&self) -> Result<Cow<'_, Spectrum>> {
        Ok(Cow::Borrowed(self))
    }
}

impl SpectralSource for DensityMatrix {
    fn eigenvalues(&self) -> Result<Cow<'_, Spectrum>> {
        Ok(Cow::Borrowed(self.spectrum()))
    }
}

impl SpectralSource for ComplexMatrix {
    fn eigenvalues(&self) -> Result<Cow<'_, Spectrum>> {
        eigvalsh(self).map(Cow::Owned)
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum EntropyKind {
    Renyi,
    Tsallis,
    VonNeumann,
}

/// Entropy value; never a NaN.
#[derive(Debug, Clone, Copy, PartialEq)]
pub enum EntropyValue {
    Finite(f64),
    NegativeInfinity,
    Undefined,
}

impl EntropyValue {
    pub fn finite(self) -> Option<f64> {
        match self {
            EntropyValue::Finite(v) => Some(v),
            _ => None,
        }
    }

    fn checked(v: f64) -> Self {
        if v.is_finite() {
            // + 0.0 folds -0.0 into 0.0
            EntropyValue::Finite(v + 0.0)
        } else if v == f64::NEG_INFINITY {
            EntropyValue::NegativeInfinity
        } else {
            EntropyValue::Undefined
        }
    }

    /// Sign with the [`SIGN_DEAD_BAND`]; `None` when undefined.
    pub fn sign(self) -> Option<Sign> {
        match self {
            EntropyValue::Finite(v) => Some(Sign::from_margin(v)),
            EntropyValue::NegativeInfinity => Some(Sign::Negative),
            EntropyValue::Undefined => None,
        }
    }
}

impl Serialize for EntropyValue {
    fn serialize<S: Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        match self {
            EntropyValue::Finite(v) => s.serialize_f64(*v),
            EntropyValue::NegativeInfinity => s.serialize_str("-inf"),
            EntropyValue::Undefined => s.serialize_str("undefined"),
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct EntropyResult {
    pub alpha: AlphaValue,
    pub value: EntropyValue,
    pub kind: EntropyKind,
    /// Conditioning system; `None` for unconditional entropies.
    pub conditional: Option<Subsystem>,
    /// A limiting formula (α → 1 or α → ∞) produced the value.
    pub limit: bool,
}

/// `tr(ρ^α)` from a spectrum. `α = 0` yields the rank.
pub fn trace_power(spec: &Spectrum, alpha: f64, tol: &Tolerances) -> Result<f64> {
    if alpha < 0.0 {
        if spec.min() <= tol.rank {
            return Err(Error::NotFullRank {
                min_eigenvalue: spec.min(),
            });
        }
        return Ok(spec.values().iter().map(|v| v.powf(alpha)).sum());
    }
    let support = spec.values().iter().filter(|&&v| v > tol.rank);
    if alpha == 0.0 {
        Ok(support.count() as f64)
    } else {
        Ok(support.map(|v| v.powf(alpha)).sum())
    }
}

/// `−Σ λ ln λ` over eigenvalues above `τ_rank`.
pub fn von_neumann_of(spec: &Spectrum, tol: &Tolerances) -> f64 {
    -spec
        .values()
        .iter()
        .filter(|&&v| v > tol.rank)
        .map(|v| v * v.ln())
        .sum::<f64>()
}

fn renyi_of(spec: &Spectrum, alpha: AlphaValue, tol: &Tolerances) -> Result<f64> {
    match alpha {
        AlphaValue::PositiveInfinity => Ok(-spec.max().ln()),
        a if a.is_near_one() => Ok(von_neumann_of(spec, tol)),
        AlphaValue::Finite(a) => Ok(trace_power(spec, a, tol)?.ln() / (1.0 - a)),
    }
}

fn tsallis_of(spec: &Spectrum, alpha: AlphaValue, tol: &Tolerances) -> Result<f64> {
    match alpha {
        AlphaValue::PositiveInfinity => Ok(0.0),
        a if a.is_near_one() => Ok(von_neumann_of(spec, tol)),
        AlphaValue::Finite(a) => Ok((1.0 - trace_power(spec, a, tol)?) / (a - 1.0)),
    }
}

fn is_limit(alpha: AlphaValue) -> bool {
    alpha == AlphaValue::PositiveInfinity || alpha.is_near_one()
}

/// `S_α = ln tr(ρ^α) / (1 − α)`; `α = 0` gives `ln rank`, `α = 1` the von Neumann
/// entropy and `α = ∞` gives `−ln ‖ρ‖`.
pub fn renyi(state: &impl SpectralSource, alpha: AlphaValue, tol: &Tolerances) -> Result<EntropyResult> {
    let spec = state.eigenvalues()?;
    Ok(EntropyResult {
        alpha,
        value: EntropyValue::checked(renyi_of(&spec, alpha, tol)?),
        kind: EntropyKind::Renyi,
        conditional: None,
        limit: is_limit(alpha),
    })
}

/// `T_α = (1 − tr ρ^α) / (α − 1)`; the `α = ∞` limit is 0 and flagged as such.
pub fn tsallis(state: &impl SpectralSource, alpha: AlphaValue, tol: &Tolerances) -> Result<EntropyResult> {
    let spec = state.eigenvalues()?;
    Ok(EntropyResult {
        alpha,
        value: EntropyValue::checked(tsallis_of(&spec, alpha, tol)?),
        kind: EntropyKind::Tsallis,
        conditional: None,
        limit: is_limit(alpha),
    })
}

pub fn von_neumann(state: &impl SpectralSource, tol: &Tolerances) -> Result<EntropyResult> {
    let spec = state.eigenvalues()?;
    Ok(EntropyResult {
        alpha: AlphaValue::Finite(1.0),
        value: EntropyValue::checked(von_neumann_of(&spec, tol)),
        kind: EntropyKind::VonNeumann,
        conditional: None,
        limit: false,
    })
}

/// Spectra of a bipartite state and both of its reductions.
#[derive(Debug, Clone)]
pub struct BipartiteSpectra {
    pub joint: Spectrum,
    pub a: Spectrum,
    pub b: Spectrum,
}

impl BipartiteSpectra {
    pub fn new(rho: &DensityMatrix) -> Result<Self> {
        Ok(Self {
            joint: rho.spectrum().clone(),
            a: eigvalsh(&rho.reduced(Subsystem::A))?,
            b: eigvalsh(&rho.reduced(Subsystem::B))?,
        })
    }

    pub fn reduced(&self, side: Subsystem) -> &Spectrum {
        match side {
            Subsystem::A => &self.a,
            Subsystem::B => &self.b,
        }
    }

    /// `S_α(ρ) − S_α(ρ_side)`.
    pub fn conditional_renyi(&self, alpha: AlphaValue, side: Subsystem, tol: &Tolerances) -> Result<EntropyResult> {
        let red = self.reduced(side);
        let value = match alpha {
            AlphaValue::PositiveInfinity => red.max().ln() - self.joint.max().ln(),
            _ => renyi_of(&self.joint, alpha, tol)? - renyi_of(red, alpha, tol)?,
        };
        Ok(EntropyResult {
            alpha,
            value: EntropyValue::checked(value),
            kind: EntropyKind::Renyi,
            conditional: Some(side),
            limit: is_limit(alpha),
        })
    }

    /// `(tr ρ_side^α − tr ρ^α) / ((α − 1) tr ρ_side^α)`.
    ///
    /// At `α = ∞` the limit is 0 when `‖ρ_side‖ ≥ ‖ρ‖` and `−∞` otherwise; at `α ≈ 1`
    /// the conditional von Neumann entropy is returned.
    pub fn conditional_tsallis(&self, alpha: AlphaValue, side: Subsystem, tol: &Tolerances) -> Result<EntropyResult> {
        let red = self.reduced(side);
        let value = match alpha {
            AlphaValue::PositiveInfinity => {
                if red.max() >= self.joint.max() - SIGN_DEAD_BAND {
                    EntropyValue::Finite(0.0)
                } else {
                    EntropyValue::NegativeInfinity
                }
            }
            a if a.is_near_one() => {
                EntropyValue::checked(von_neumann_of(&self.joint, tol) - von_neumann_of(red, tol))
            }
            AlphaValue::Finite(a) => {
                let tr_red = trace_power(red, a, tol)?;
                let tr_joint = trace_power(&self.joint, a, tol)?;
                EntropyValue::checked((tr_red - tr_joint) / ((a - 1.0) * tr_red))
            }
        };
        Ok(EntropyResult {
            alpha,
            value,
            kind: EntropyKind::Tsallis,
            conditional: Some(side),
            limit: is_limit(alpha),
        })
    }

    /// Oriented, normalized margin whose sign decides nonnegativity of both
    /// conditional entropies.
    ///
    /// * `α > 1`: `tr ρ_side^α − tr ρ^α`
    /// * `α < 1` (including negative α): `tr ρ^α − tr ρ_side^α`
    /// * `α ≈ 1`: `S₁(ρ) − S₁(ρ_side)`, unnormalized
    /// * `α = ∞`: `‖ρ_side‖ − ‖ρ‖`
    ///
    /// Trace differences are divided by the larger of the two traces.
    pub fn positivity_sign(&self, alpha: AlphaValue, side: Subsystem, tol: &Tolerances) -> Result<SignedMargin> {
        let red = self.reduced(side);
        let margin = match alpha {
            AlphaValue::PositiveInfinity => {
                let (r, j) = (red.max(), self.joint.max());
                (r - j) / r.max(j)
            }
            a if a.is_near_one() => von_neumann_of(&self.joint, tol) - von_neumann_of(red, tol),
            AlphaValue::Finite(a) => {
                let tr_red = trace_power(red, a, tol)?;
                let tr_joint = trace_power(&self.joint, a, tol)?;
                let diff = if a > 1.0 { tr_red - tr_joint } else { tr_joint - tr_red };
                diff / tr_red.max(tr_joint)
            }
        };
        Ok(SignedMargin {
            sign: Sign::from_margin(margin),
            margin,
        })
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum Sign {
    Negative,
    Zero,
    Positive,
}

impl Sign {
    pub fn from_margin(m: f64) -> Self {
        if m > SIGN_DEAD_BAND {
            Sign::Positive
        } else if m < -SIGN_DEAD_BAND {
            Sign::Negative
        } else {
            Sign::Zero
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct SignedMargin {
    pub sign: Sign,
    pub margin: f64,
}

pub fn conditional_renyi(
    rho: &DensityMatrix,
    alpha: AlphaValue,
    conditioned_on: Subsystem,
    tol: &Tolerances,
) -> Result<EntropyResult> {
    BipartiteSpectra::new(rho)?.conditional_renyi(alpha, conditioned_on, tol)
}

pub fn conditional_tsallis(
    rho: &DensityMatrix,
    alpha: AlphaValue,
    conditioned_on: Subsystem,
    tol: &Tolerances,
) -> Result<EntropyResult> {
    BipartiteSpectra::new(rho)?.conditional_tsallis(alpha, conditioned_on, tol)
}

pub fn positivity_sign(
    rho: &DensityMatrix,
    alpha: AlphaValue,
    conditioned_on: Subsystem,
    tol: &Tolerances,
) -> Result<SignedMargin> {
    BipartiteSpectra::new(rho)?.positivity_sign(alpha, conditioned_on, tol)
}

/// Which conditioning sides a sweep covers.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum Sides {
    A,
    B,
    Both,
}

impl Sides {
    pub fn list(self) -> &'static [Subsystem] {
        match self {
            Sides::A => &[Subsystem::A],
            Sides::B => &[Subsystem::B],
            Sides::Both => &Subsystem::BOTH,
        }
    }
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct SweepRow {
    pub alpha: AlphaValue,
    pub side: Subsystem,
    pub conditional_renyi: EntropyValue,
    pub conditional_tsallis: EntropyValue,
    pub sign: Option<Sign>,
    pub margin: Option<f64>,
    /// α lies where separable states provably have nonnegative conditional entropy.
    pub proven_range: bool,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub error: Option<String>,
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct AlphaSweep {
    pub rows: Vec<SweepRow>,
    /// Minimum sign margin over rows where it is defined.
    pub min_margin: Option<f64>,
    /// Some row has a negative sign.
    pub detected: bool,
}

impl AlphaSweep {
    /// Minimum margin over rows matching `filter`.
    pub fn min_margin_where(&self, filter: impl Fn(&SweepRow) -> bool) -> Option<(f64, AlphaValue, Subsystem)> {
        self.rows
            .iter()
            .filter(|r| filter(r))
            .filter_map(|r| r.margin.map(|m| (m, r.alpha, r.side)))
            .min_by(|a, b| a.0.total_cmp(&b.0))
    }
}

/// Evaluates conditional entropies and signs for every `(α, side)` pair. Rows that
/// cannot be evaluated (negative α on a rank-deficient state) carry an error marker.
pub fn alpha_sweep_spectra(spectra: &BipartiteSpectra, grid: &[AlphaValue], sides: Sides, tol: &Tolerances) -> AlphaSweep {
    let mut rows = Vec::with_capacity(grid.len() * sides.list().len());
    for &alpha in grid {
        for &side in sides.list() {
            let evaluated = spectra.conditional_renyi(alpha, side, tol).and_then(|r| {
                let t = spectra.conditional_tsallis(alpha, side, tol)?;
                let s = spectra.positivity_sign(alpha, side, tol)?;
                Ok((r, t, s))
            });
            rows.push(match evaluated {
                Ok((r, t, s)) => SweepRow {
                    alpha,
                    side,
                    conditional_renyi: r.value,
                    conditional_tsallis: t.value,
                    sign: Some(s.sign),
                    margin: Some(s.margin),
                    proven_range: alpha.in_proven_range(),
                    error: None,
                },
                Err(e) => SweepRow {
                    alpha,
                    side,
                    conditional_renyi: EntropyValue::Undefined,
                    conditional_tsallis: EntropyValue::Undefined,
                    sign: None,
                    margin: None,
                    proven_range: alpha.in_proven_range(),
                    error: Some(e.to_string()),
                },
            });
        }
    }
    let min_margin = rows.iter().filter_map(|r| r.margin).min_by(f64::total_cmp);
    let detected = rows.iter().any(|r| r.sign == Some(Sign::Negative));
    AlphaSweep {
        rows,
        min_margin,
        detected,
    }
}

pub fn alpha_sweep(rho: &DensityMatrix, grid: &[AlphaValue], sides: Sides, tol: &Tolerances) -> Result<AlphaSweep> {
    if grid.is_empty() {
        return Err(Error::ParameterRange("alpha grid is empty".into()));
    }
    Ok(alpha_sweep_spectra(&BipartiteSpectra::new(rho)?, grid, sides, tol))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::states::{maximally_mixed, monotonicity_counterexample, phi_plus, BipartiteDims};

    const INF: AlphaValue = AlphaValue::PositiveInfinity;

    fn fin(a: f64) -> AlphaValue {
        AlphaValue::Finite(a)
    }

    fn val(r: EntropyResult) -> f64 {
        r.value.finite().expect("finite entropy")
    }

    fn tol() -> Tolerances {
        Tolerances::default()
    }

    #[test]
    fn flat_spectrum_gives_log_d_for_every_alpha() {
        let d = 3usize;
        let m = ComplexMatrix::identity(d).scale(1.0 / d as f64);
        for a in full_grid() {
            let s = val(renyi(&m, a, &tol()).unwrap());
            assert!((s - (d as f64).ln()).abs() < 1e-12, "alpha {a}");
        }
    }

    #[test]
    fn pure_state_entropies_vanish() {
        let rho = phi_plus(2).unwrap().density_matrix().unwrap();
        assert!(val(renyi(&rho, fin(2.0), &tol()).unwrap()).abs() < 1e-14);
        assert!(val(tsallis(&rho, fin(2.0), &tol()).unwrap()).abs() < 1e-14);
        assert!(val(von_neumann(&rho, &tol()).unwrap()).abs() < 1e-14);
    }

    #[test]
    fn reduced_counterexample_values() {
        let m = ComplexMatrix::from_real_diag(&[0.75, 0.25]);
        // S_2 = -ln(9/16 + 1/16)
        let s2 = val(renyi(&m, fin(2.0), &tol()).unwrap());
        assert!((s2 - (8.0f64 / 5.0).ln()).abs() < 1e-14);
        assert!((s2 - 0.4700036292457356).abs() < 1e-12);
        let s1 = val(von_neumann(&m, &tol()).unwrap());
        let expected = 0.75 * (4.0f64 / 3.0).ln() + 0.25 * 4.0f64.ln();
        assert!((s1 - expected).abs() < 1e-14);
        assert!((s1 - 0.5623351446188083).abs() < 1e-12);
    }

    #[test]
    fn tsallis_of_maximally_mixed_qubit() {
        let m = ComplexMatrix::identity(2).scale(0.5);
        assert!((val(tsallis(&m, fin(2.0), &tol()).unwrap()) - 0.5).abs() < 1e-15);
        let r = tsallis(&m, INF, &tol()).unwrap();
        assert_eq!(r.value, EntropyValue::Finite(0.0));
        assert!(r.limit);
    }

    #[test]
    fn special_alpha_limits() {
        let m = ComplexMatrix::from_real_diag(&[0.5, 0.3, 0.2, 0.0]);
        assert!((val(renyi(&m, fin(0.0), &tol()).unwrap()) - 3.0f64.ln()).abs() < 1e-15);
        assert!((val(renyi(&m, INF, &tol()).unwrap()) + 0.5f64.ln()).abs() < 1e-15);
        let vn = val(von_neumann(&m, &tol()).unwrap());
        assert!((val(renyi(&m, fin(1.0 + 1e-12), &tol()).unwrap()) - vn).abs() < 1e-15);
    }

    #[test]
    fn negative_alpha_needs_full_rank() {
        let m = ComplexMatrix::from_real_diag(&[0.5, 0.5, 0.0]);
        assert!(matches!(renyi(&m, fin(-1.0), &tol()), Err(Error::NotFullRank { .. })));
        assert!(matches!(tsallis(&m, fin(-0.5), &tol()), Err(Error::NotFullRank { .. })));
    }

    #[test]
    fn conditional_entropies_of_phi_plus() {
        for d in [2, 3] {
            let rho = phi_plus(d).unwrap().density_matrix().unwrap();
            for a in [0.25, 0.5, 2.0, 3.0] {
                let s = val(conditional_renyi(&rho, fin(a), Subsystem::A, &tol()).unwrap());
                assert!((s + (d as f64).ln()).abs() < 1e-12);
            }
        }
        let rho = phi_plus(2).unwrap().density_matrix().unwrap();
        let t = val(conditional_tsallis(&rho, fin(2.0), Subsystem::A, &tol()).unwrap());
        assert!((t + 1.0).abs() < 1e-12);
    }

    #[test]
    fn conditional_entropy_of_maximally_mixed() {
        let rho = maximally_mixed(BipartiteDims::square(3).unwrap());
        for a in default_grid() {
            let s = val(conditional_renyi(&rho, a, Subsystem::B, &tol()).unwrap());
            assert!((s - 3.0f64.ln()).abs() < 1e-12);
        }
    }

    #[test]
    fn counterexample_tsallis_values() {
        let rho = monotonicity_counterexample();
        let t = |a| val(conditional_tsallis(&rho, a, Subsystem::A, &tol()).unwrap());
        assert!(t(fin(0.0)).abs() < 1e-12);
        assert!((t(fin(2.0)) - 0.2).abs() < 1e-12);
        assert!(t(INF).abs() < 1e-12);
        assert!(val(conditional_renyi(&rho, fin(0.0), Subsystem::A, &tol()).unwrap()).abs() < 1e-12);
    }

    #[test]
    fn counterexample_signs() {
        let rho = monotonicity_counterexample();
        let sign = |a| positivity_sign(&rho, a, Subsystem::A, &tol()).unwrap().sign;
        assert_eq!(sign(fin(0.0)), Sign::Zero);
        assert_eq!(sign(fin(2.0)), Sign::Positive);
        // operator norms 3/4 against 1/2
        assert_eq!(sign(INF), Sign::Positive);
    }

    #[test]
    fn infinite_alpha_tsallis_diverges_when_joint_norm_dominates() {
        let rho = phi_plus(2).unwrap().density_matrix().unwrap();
        let r = conditional_tsallis(&rho, INF, Subsystem::A, &tol()).unwrap();
        assert_eq!(r.value, EntropyValue::NegativeInfinity);
        assert_eq!(positivity_sign(&rho, INF, Subsystem::A, &tol()).unwrap().sign, Sign::Negative);
    }

    #[test]
    fn sweep_marks_rank_deficient_negative_rows() {
        let rho = phi_plus(2).unwrap().density_matrix().unwrap();
        let sweep = alpha_sweep(&rho, &full_grid(), Sides::Both, &tol()).unwrap();
        assert!(sweep.detected);
        for row in &sweep.rows {
            if row.alpha.is_negative() {
                assert!(row.error.is_some() && row.sign.is_none());
            } else if row.alpha != fin(0.0) {
                assert_eq!(row.sign, Some(Sign::Negative), "alpha {}", row.alpha);
            }
        }
        assert!(alpha_sweep(&rho, &[], Sides::A, &tol()).is_err());
    }

    #[test]
    fn sweep_of_maximally_mixed_is_positive() {
        let rho = maximally_mixed(BipartiteDims::new(2, 3).unwrap());
        let sweep = alpha_sweep(&rho, &full_grid(), Sides::Both, &tol()).unwrap();
        assert!(!sweep.detected);
        assert!(sweep.rows.iter().all(|r| r.sign == Some(Sign::Positive)));
    }
}
