//! Numerical checks of the operator inequalities used to relate the reduction
//! criterion to conditional entropies. These sample instances; they do not prove
//! anything.

use crate::error::{Error, Result};

use super::{eigvalsh, expm, logm, powm, ComplexMatrix, Tolerances};

fn same_square_shape(a: &ComplexMatrix, b: &ComplexMatrix) -> Result<()> {
    if !a.is_square() || a.rows() != b.rows() || a.cols() != b.cols() {
        return Err(Error::Shape(format!(
            "expected two square matrices of equal size, got {}x{} and {}x{}",
            a.rows(),
            a.cols(),
            b.rows(),
            b.cols()
        )));
    }
    Ok(())
}

/// `tr(e^a e^b) − tr(e^{a+b})`, nonnegative by the Golden–Thompson inequality.
pub fn golden_thompson_gap(a: &ComplexMatrix, b: &ComplexMatrix) -> Result<f64> {
    same_square_shape(a, b)?;
    let ea = expm(a)?;
    let eb = expm(b)?;
    let lhs = ea.trace_product(&eb)?;
    if lhs.im.abs() > 1e-10 * lhs.re.abs().max(1.0) {
        return Err(Error::Domain(format!(
            "tr(e^a e^b) has imaginary part {:.3e}",
            lhs.im
        )));
    }
    let rhs = expm(&a.try_add(b)?)?.trace().re;
    Ok(lhs.re - rhs)
}

/// `tr(e^{a + εp}) − tr(e^a)`, nonnegative whenever `p ≥ 0` and `ε ≥ 0`.
pub fn trace_exp_monotonicity_gap(a: &ComplexMatrix, p: &ComplexMatrix, eps: f64) -> Result<f64> {
    same_square_shape(a, p)?;
    let shifted = a.try_add(&p.scale(eps))?;
    Ok(expm(&shifted)?.trace().re - expm(a)?.trace().re)
}

/// Smallest eigenvalue of `log a − log b`; nonnegative for `a ≥ b > 0`.
pub fn log_monotonicity_margin(a: &ComplexMatrix, b: &ComplexMatrix, tol: &Tolerances) -> Result<f64> {
    same_square_shape(a, b)?;
    let diff = logm(a, tol)?.try_sub(&logm(b, tol)?)?;
    Ok(eigvalsh(&diff.hermitian_part())?.min())
}

/// Smallest eigenvalue of `b^r − a^r`; nonnegative for `a ≥ b > 0` and `r ∈ [−1, 0]`.
pub fn power_decreasing_margin(a: &ComplexMatrix, b: &ComplexMatrix, r: f64, tol: &Tolerances) -> Result<f64> {
    same_square_shape(a, b)?;
    let diff = powm(b, r, tol)?.try_sub(&powm(a, r, tol)?)?;
    Ok(eigvalsh(&diff.hermitian_part())?.min())
}
