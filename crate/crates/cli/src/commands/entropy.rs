use std::path::Path;

use entrocrit::entropy::{renyi, tsallis, AlphaValue, BipartiteSpectra, EntropyValue, Sign};
use entrocrit::{monotonicity_counterexample, DensityMatrix, Subsystem};
use serde::Serialize;

use crate::commands::analyze::load_state;
use crate::config::RunConfig;
use crate::error::CliResult;
use crate::output::{entropy_cell, opt_num, sign_cell, Report, Tabular};

pub enum EntropySource<'a> {
    File(&'a Path),
    Counterexample,
}

#[derive(Debug, Clone, Serialize)]
pub struct SideEntry {
    pub conditional_renyi: EntropyValue,
    pub conditional_tsallis: EntropyValue,
    pub sign: Option<Sign>,
    pub margin: Option<f64>,
}

#[derive(Debug, Clone, Serialize)]
pub struct EntropyRow {
    pub alpha: AlphaValue,
    pub renyi: EntropyValue,
    pub tsallis: EntropyValue,
    #[serde(rename = "A")]
    pub a: SideEntry,
    #[serde(rename = "B")]
    pub b: SideEntry,
    pub proven_range: bool,
}

#[derive(Debug, Clone, Serialize)]
pub struct EntropyReport {
    pub source: String,
    pub rows: Vec<EntropyRow>,
}

fn value_or_undefined(r: entrocrit::Result<entrocrit::entropy::EntropyResult>) -> EntropyValue {
    r.map(|e| e.value).unwrap_or(EntropyValue::Undefined)
}

pub fn entropy_table(rho: &DensityMatrix, alphas: &[AlphaValue], config: &RunConfig) -> CliResult<Vec<EntropyRow>> {
    let tol = &config.tolerances;
    let spectra = BipartiteSpectra::new(rho)?;
    let side = |alpha, s| {
        let sign = spectra.positivity_sign(alpha, s, tol).ok();
        SideEntry {
            conditional_renyi: value_or_undefined(spectra.conditional_renyi(alpha, s, tol)),
            conditional_tsallis: value_or_undefined(spectra.conditional_tsallis(alpha, s, tol)),
            sign: sign.map(|x| x.sign),
            margin: sign.map(|x| x.margin),
        }
    };
    Ok(alphas
        .iter()
        .map(|&alpha| EntropyRow {
            alpha,
            renyi: value_or_undefined(renyi(rho, alpha, tol)),
            tsallis: value_or_undefined(tsallis(rho, alpha, tol)),
            a: side(alpha, Subsystem::A),
            b: side(alpha, Subsystem::B),
            proven_range: alpha.in_proven_range(),
        })
        .collect())
}

pub fn cmd_entropy(source: EntropySource<'_>, config: &RunConfig) -> CliResult<Report<EntropyReport>> {
    let (rho, label) = match source {
        EntropySource::File(path) => (load_state(path, &config.tolerances)?.0, path.display().to_string()),
        EntropySource::Counterexample => (monotonicity_counterexample(), "counterexample".to_string()),
    };
    let rows = entropy_table(&rho, &config.alpha_grid, config)?;
    Ok(Report::new("entropy", config, EntropyReport { source: label, rows }))
}

impl Tabular for EntropyReport {
    fn header(&self) -> Vec<&'static str> {
        vec![
            "alpha",
            "renyi",
            "tsallis",
            "conditional_renyi_A",
            "conditional_tsallis_A",
            "sign_A",
            "margin_A",
            "conditional_renyi_B",
            "conditional_tsallis_B",
            "sign_B",
            "margin_B",
            "proven_range",
        ]
    }

    fn records(&self) -> Vec<Vec<String>> {
        self.rows
            .iter()
            .map(|r| {
                vec![
                    r.alpha.to_string(),
                    entropy_cell(r.renyi),
                    entropy_cell(r.tsallis),
                    entropy_cell(r.a.conditional_renyi),
                    entropy_cell(r.a.conditional_tsallis),
                    sign_cell(r.a.sign),
                    opt_num(r.a.margin),
                    entropy_cell(r.b.conditional_renyi),
                    entropy_cell(r.b.conditional_tsallis),
                    sign_cell(r.b.sign),
                    opt_num(r.b.margin),
                    r.proven_range.to_string(),
                ]
            })
            .collect()
    }
}
