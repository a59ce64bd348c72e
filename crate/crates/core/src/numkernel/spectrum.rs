use serde::Serialize;

use crate::error::{Error, Result};

use super::Tolerances;

/// Real eigenvalues in descending order.
#[derive(Debug, Clone, PartialEq, Serialize)]
#[serde(transparent)]
pub struct Spectrum(Vec<f64>);

impl Spectrum {
    /// Sorts the values descending. Panics on non-finite input.
    pub fn new(mut values: Vec<f64>) -> Self {
        assert!(values.iter().all(|v| v.is_finite()), "spectrum must be finite");
        values.sort_by(|a, b| b.total_cmp(a));
        Self(values)
    }

    pub fn values(&self) -> &[f64] {
        &self.0
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    pub fn max(&self) -> f64 {
        self.0.first().copied().unwrap_or(0.0)
    }

    pub fn min(&self) -> f64 {
        self.0.last().copied().unwrap_or(0.0)
    }

    pub fn sum(&self) -> f64 {
        self.0.iter().sum()
    }

    /// Number of eigenvalues strictly above `threshold`.
    pub fn rank(&self, threshold: f64) -> usize {
        self.0.iter().take_while(|&&v| v > threshold).count()
    }

    /// Copy padded with trailing zeros up to `len`.
    pub fn padded(&self, len: usize) -> Self {
        let mut v = self.0.clone();
        if v.len() < len {
            v.resize(len, 0.0);
        }
        Self::new(v)
    }

    /// Groups values within `tol` of the cluster head into `(value, multiplicity)` pairs,
    /// descending. The reported value is the cluster mean.
    pub fn clusters(&self, tol: f64) -> Vec<(f64, usize)> {
        let mut out: Vec<(f64, usize, f64)> = Vec::new();
        for &v in &self.0 {
            match out.last_mut() {
                Some((head, count, sum)) if (*head - v).abs() <= tol => {
                    *count += 1;
                    *sum += v;
                }
                _ => out.push((v, 1, v)),
            }
        }
        out.into_iter().map(|(_, n, s)| (s / n as f64, n)).collect()
    }

    /// Largest elementwise difference after zero-padding both to the same length.
    pub fn max_abs_diff(&self, other: &Spectrum) -> f64 {
        let n = self.len().max(other.len());
        let (a, b) = (self.padded(n), other.padded(n));
        a.0.iter().zip(&b.0).map(|(x, y)| (x - y).abs()).fold(0.0, f64::max)
    }
}

/// Outcome of a majorization test.
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct Majorization {
    pub holds: bool,
    /// Worst partial-sum difference `Σ_{i≤k} x_i − Σ_{i≤k} y_i`.
    pub margin: f64,
    /// 1-based `k` attaining the margin; `None` when no informative comparison exists.
    pub worst_k: Option<usize>,
}

/// Tests `x ≻ y`: every leading partial sum of `x` dominates that of `y`.
///
/// The shorter spectrum is zero-padded. Comparisons at `k` where both partial
/// sums have already reached their totals only restate normalization and are
/// skipped; if no comparison remains the margin is 0.
pub fn majorizes(x: &Spectrum, y: &Spectrum, tol: &Tolerances) -> Result<Majorization> {
    for s in [x, y] {
        if let Some((index, &value)) = s.values().iter().enumerate().find(|(_, &v)| v < -tol.psd) {
            return Err(Error::NegativeEntry { index, value });
        }
    }
    let (sx, sy) = (x.sum(), y.sum());
    if (sx - sy).abs() > 1e-8 {
        return Err(Error::TotalMismatch { left: sx, right: sy });
    }

    let n = x.len().max(y.len());
    let (xp, yp) = (x.padded(n), y.padded(n));
    let support = |s: &Spectrum| s.values().iter().rposition(|&v| v > tol.rank).map_or(0, |p| p + 1);
    let informative = support(&xp).max(support(&yp)).saturating_sub(1);

    let mut margin = 0.0;
    let mut worst_k = None;
    let (mut px, mut py) = (0.0, 0.0);
    for k in 0..informative {
        px += xp.values()[k];
        py += yp.values()[k];
        let diff = px - py;
        if worst_k.is_none() || diff < margin {
            margin = diff;
            worst_k = Some(k + 1);
        }
    }
    Ok(Majorization {
        holds: margin >= -tol.major,
        margin,
        worst_k,
    })
}
