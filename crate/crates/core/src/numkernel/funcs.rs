use crate::error::{Error, Result};

use super::{eigh, ComplexMatrix, Tolerances};

/// Scalar function applied through the spectral calculus.
#[derive(Debug, Clone, Copy, PartialEq)]
pub enum MatrixFunction {
    Power(f64),
    Log,
    Exp,
}

impl MatrixFunction {
    /// Applies the function to one eigenvalue under the clipping and rank conventions.
    ///
    /// `power(0)` maps eigenvalues within `τ_rank` of zero to 0, so `tr(ρ⁰)` is the rank.
    /// Powers in `(0, 1)` treat eigenvalues in `[−τ_psd, τ_rank]` as zero; powers `≥ 1`
    /// clip `[−τ_psd, 0)` to zero. Log and negative powers need eigenvalues above `τ_rank`.
    pub fn eval(self, lambda: f64, tol: &Tolerances) -> Result<f64> {
        match self {
            MatrixFunction::Exp => Ok(lambda.exp()),
            MatrixFunction::Log => {
                if lambda <= tol.rank {
                    return Err(Error::Domain(format!("log of eigenvalue {lambda:.3e}")));
                }
                Ok(lambda.ln())
            }
            MatrixFunction::Power(alpha) => {
                if alpha < 0.0 {
                    if lambda <= tol.rank {
                        return Err(Error::Domain(format!(
                            "power {alpha} of eigenvalue {lambda:.3e}"
                        )));
                    }
                    Ok(lambda.powf(alpha))
                } else if alpha == 0.0 {
                    Ok(if lambda.abs() > tol.rank { 1.0 } else { 0.0 })
                } else if alpha < 1.0 {
                    if lambda < -tol.psd {
                        return Err(Error::Domain(format!(
                            "power {alpha} of negative eigenvalue {lambda:.3e}"
                        )));
                    }
                    Ok(if lambda <= tol.rank { 0.0 } else { lambda.powf(alpha) })
                } else if lambda >= 0.0 {
                    Ok(lambda.powf(alpha))
                } else if lambda >= -tol.psd {
                    Ok(0.0)
                } else if alpha.fract() == 0.0 && alpha <= i32::MAX as f64 {
                    Ok(lambda.powi(alpha as i32))
                } else {
                    Err(Error::Domain(format!(
                        "non-integer power {alpha} of negative eigenvalue {lambda:.3e}"
                    )))
                }
            }
        }
    }
}

/// `V f(Λ) V†` for Hermitian `h`.
pub fn matrix_function(h: &ComplexMatrix, f: MatrixFunction, tol: &Tolerances) -> Result<ComplexMatrix> {
    let eig = eigh(h)?;
    let mapped = eig
        .values
        .values()
        .iter()
        .map(|&v| f.eval(v, tol))
        .collect::<Result<Vec<_>>>()?;
    Ok(eig.recompose(&mapped))
}

pub fn expm(h: &ComplexMatrix) -> Result<ComplexMatrix> {
    matrix_function(h, MatrixFunction::Exp, &Tolerances::default())
}

pub fn logm(h: &ComplexMatrix, tol: &Tolerances) -> Result<ComplexMatrix> {
    matrix_function(h, MatrixFunction::Log, tol)
}

pub fn powm(h: &ComplexMatrix, alpha: f64, tol: &Tolerances) -> Result<ComplexMatrix> {
    matrix_function(h, MatrixFunction::Power(alpha), tol)
}
