//! State-JSON encoding.
//!
//! ```json
//! {
//!   "dims": [2, 2],
//!   "matrix": [[[0.5, 0.0], [0.0, 0.0], ...], ...],
//!   "ensemble": { "weights": [...], "factors": [[matA, matB], ...] }
//! }
//! ```
//!
//! Rows are arrays of `[re, im]` pairs; `ensemble` is optional and uses the same
//! matrix encoding for each factor.

use num_complex::Complex64;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::numkernel::{ComplexMatrix, Tolerances};

use super::{BipartiteDims, DensityMatrix, SeparableEnsemble};

pub type MatrixJson = Vec<Vec<[f64; 2]>>;

#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct EnsembleJson {
    pub weights: Vec<f64>,
    pub factors: Vec<[MatrixJson; 2]>,
}

#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct StateJson {
    pub dims: [usize; 2],
    pub matrix: MatrixJson,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub ensemble: Option<EnsembleJson>,
}

pub fn matrix_to_json(m: &ComplexMatrix) -> MatrixJson {
    (0..m.rows())
        .map(|i| m.row(i).iter().map(|z| [z.re, z.im]).collect())
        .collect()
}

pub fn matrix_from_json(rows: &MatrixJson) -> Result<ComplexMatrix> {
    let rows: Vec<Vec<Complex64>> = rows
        .iter()
        .map(|r| r.iter().map(|&[re, im]| Complex64::new(re, im)).collect())
        .collect();
    ComplexMatrix::from_rows(&rows)
}

pub fn ensemble_to_json(e: &SeparableEnsemble) -> EnsembleJson {
    EnsembleJson {
        weights: e.weights().to_vec(),
        factors: e
            .factors()
            .iter()
            .map(|(a, b)| [matrix_to_json(a), matrix_to_json(b)])
            .collect(),
    }
}

pub fn ensemble_from_json(e: &EnsembleJson) -> Result<SeparableEnsemble> {
    let factors = e
        .factors
        .iter()
        .map(|[a, b]| Ok((matrix_from_json(a)?, matrix_from_json(b)?)))
        .collect::<Result<Vec<_>>>()?;
    SeparableEnsemble::new(e.weights.clone(), factors)
}

impl StateJson {
    pub fn from_state(rho: &DensityMatrix, certificate: Option<&SeparableEnsemble>) -> Self {
        Self {
            dims: rho.dims().into(),
            matrix: matrix_to_json(rho.matrix()),
            ensemble: certificate.map(ensemble_to_json),
        }
    }

    /// Validates into a density matrix and optional certificate.
    pub fn into_state(self, tol: &Tolerances) -> Result<(DensityMatrix, Option<SeparableEnsemble>)> {
        let dims = BipartiteDims::new(self.dims[0], self.dims[1])?;
        let mat = matrix_from_json(&self.matrix)?;
        let rho = DensityMatrix::with_tolerances(dims, mat, tol)?;
        let cert = self.ensemble.as_ref().map(ensemble_from_json).transpose()?;
        Ok((rho, cert))
    }
}

pub fn parse_state(text: &str, tol: &Tolerances) -> Result<(DensityMatrix, Option<SeparableEnsemble>)> {
    let parsed: StateJson = serde_json::from_str(text).map_err(|e| Error::Json(e.to_string()))?;
    parsed.into_state(tol)
}

pub fn state_to_string(rho: &DensityMatrix, certificate: Option<&SeparableEnsemble>) -> String {
    serde_json::to_string_pretty(&StateJson::from_state(rho, certificate)).expect("finite state serializes")
}
