use std::path::{Path, PathBuf};

use entrocrit::criteria::{ppt, CriterionVerdict};
use entrocrit::numkernel::ComplexMatrix;
use entrocrit::states::json::{ensemble_to_json, state_to_string, EnsembleJson};
use entrocrit::states::{assemble, isospectral_werner, werner};
use entrocrit::{DensityMatrix, Spectrum, Subsystem};
use serde::Serialize;

use crate::config::RunConfig;
use crate::error::{CliError, CliResult};
use crate::output::{num, Report, Tabular};

/// Distances of the two reductions from `1/d`, Frobenius norm.
#[derive(Debug, Clone, Copy, Serialize)]
pub struct ReductionDistances {
    #[serde(rename = "A")]
    pub a: f64,
    #[serde(rename = "B")]
    pub b: f64,
}

#[derive(Debug, Clone, Serialize)]
pub struct IsospectralReport {
    pub d: usize,
    pub p: f64,
    pub werner_spectrum: Spectrum,
    pub counterpart_spectrum: Spectrum,
    pub spectrum_max_diff: f64,
    pub werner_reductions: ReductionDistances,
    pub counterpart_reductions: ReductionDistances,
    pub werner_ppt: CriterionVerdict,
    pub counterpart_ppt: CriterionVerdict,
    /// `(eigenvalue, multiplicity)` of the shared spectrum.
    pub multiplicities: Vec<(f64, usize)>,
    pub certificate: EnsembleJson,
    /// Frobenius distance between the reassembled certificate and the counterpart.
    pub certificate_distance: f64,
    pub notes: Vec<String>,
    pub emitted: Vec<PathBuf>,
}

fn reduction_distances(rho: &DensityMatrix, d: usize) -> ReductionDistances {
    let flat = ComplexMatrix::identity(d).scale(1.0 / d as f64);
    ReductionDistances {
        a: rho.reduced(Subsystem::A).distance(&flat),
        b: rho.reduced(Subsystem::B).distance(&flat),
    }
}

pub fn cmd_isospectral(d: usize, p: f64, emit_states: Option<&Path>, config: &RunConfig) -> CliResult<Report<IsospectralReport>> {
    let tol = &config.tolerances;
    let (counterpart, cert) = isospectral_werner(d, p)?;
    let rho = werner(d, p)?;
    let multiplicities = rho.spectrum().clusters(1e-12);

    let mut notes = Vec::new();
    let mults: Vec<String> = multiplicities.iter().map(|m| m.1.to_string()).collect();
    if multiplicities.iter().all(|m| m.1 % d == 0) {
        notes.push(format!("multiplicities {} are all multiples of d = {d}", mults.join(" and ")));
    }

    let mut emitted = Vec::new();
    if let Some(dir) = emit_states {
        std::fs::create_dir_all(dir).map_err(|e| CliError::io(dir, e))?;
        let files = [
            (format!("werner_d{d}_p{p}.json"), state_to_string(&rho, None)),
            (format!("isospectral_d{d}_p{p}.json"), state_to_string(&counterpart, Some(&cert))),
        ];
        for (name, text) in files {
            let path = dir.join(name);
            std::fs::write(&path, text + "\n").map_err(|e| CliError::io(&path, e))?;
            emitted.push(path);
        }
    }

    let report = IsospectralReport {
        d,
        p,
        spectrum_max_diff: rho.spectrum().max_abs_diff(counterpart.spectrum()),
        werner_spectrum: rho.spectrum().clone(),
        counterpart_spectrum: counterpart.spectrum().clone(),
        werner_reductions: reduction_distances(&rho, d),
        counterpart_reductions: reduction_distances(&counterpart, d),
        werner_ppt: ppt(&rho, tol)?,
        counterpart_ppt: ppt(&counterpart, tol)?,
        multiplicities,
        certificate_distance: assemble(&cert)?.matrix().distance(counterpart.matrix()),
        certificate: ensemble_to_json(&cert),
        notes,
        emitted,
    };
    Ok(Report::new("isospectral", config, report))
}

impl Tabular for IsospectralReport {
    fn header(&self) -> Vec<&'static str> {
        vec!["index", "werner_eigenvalue", "counterpart_eigenvalue"]
    }

    fn records(&self) -> Vec<Vec<String>> {
        let mut out: Vec<Vec<String>> = self
            .werner_spectrum
            .values()
            .iter()
            .zip(self.counterpart_spectrum.values())
            .enumerate()
            .map(|(i, (a, b))| vec![i.to_string(), num(*a), num(*b)])
            .collect();
        let summary = [
            ("ppt_margin", self.werner_ppt.margin, self.counterpart_ppt.margin),
            ("reduction_distance_A", self.werner_reductions.a, self.counterpart_reductions.a),
            ("reduction_distance_B", self.werner_reductions.b, self.counterpart_reductions.b),
        ];
        out.extend(summary.iter().map(|(k, a, b)| vec![k.to_string(), num(*a), num(*b)]));
        out
    }
}
