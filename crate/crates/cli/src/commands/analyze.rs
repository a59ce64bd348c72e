use std::path::Path;

use entrocrit::criteria::{chain_report, ChainReport};
use entrocrit::states::json::parse_state;
use entrocrit::{BipartiteDims, DensityMatrix, SeparableEnsemble, Spectrum, Tolerances};
use serde::Serialize;

use crate::config::RunConfig;
use crate::error::{CliError, CliResult};
use crate::output::{entropy_cell, num, opt_num, sign_cell, Report, Tabular};

#[derive(Debug, Clone, Serialize)]
pub struct AnalyzeReport {
    pub dims: BipartiteDims,
    pub rank: usize,
    pub full_rank: bool,
    pub spectrum: Spectrum,
    pub chain: ChainReport,
}

pub fn load_state(path: &Path, tol: &Tolerances) -> CliResult<(DensityMatrix, Option<SeparableEnsemble>)> {
    let text = std::fs::read_to_string(path).map_err(|e| CliError::io(path, e))?;
    parse_state(&text, tol).map_err(|e| CliError::Invalid(format!("{}: {e}", path.display())))
}

pub fn analyze_state(
    rho: &DensityMatrix,
    certificate: Option<&SeparableEnsemble>,
    config: &RunConfig,
) -> CliResult<AnalyzeReport> {
    let tol = &config.tolerances;
    let chain = chain_report(rho, certificate, &config.alpha_grid, tol)?;
    Ok(AnalyzeReport {
        dims: rho.dims(),
        rank: rho.rank(tol),
        full_rank: rho.is_full_rank(tol),
        spectrum: rho.spectrum().clone(),
        chain,
    })
}

pub fn cmd_analyze(input: &Path, config: &RunConfig) -> CliResult<Report<AnalyzeReport>> {
    let (rho, cert) = load_state(input, &config.tolerances)?;
    Ok(Report::new("analyze", config, analyze_state(&rho, cert.as_ref(), config)?))
}

impl Tabular for AnalyzeReport {
    fn header(&self) -> Vec<&'static str> {
        vec![
            "record",
            "name",
            "alpha",
            "side",
            "holds",
            "margin",
            "conditional_renyi",
            "conditional_tsallis",
            "sign",
            "detail",
        ]
    }

    fn records(&self) -> Vec<Vec<String>> {
        let mut out: Vec<Vec<String>> = self
            .chain
            .verdicts
            .iter()
            .map(|v| {
                vec![
                    "criterion".into(),
                    v.criterion.to_string(),
                    String::new(),
                    String::new(),
                    v.holds.to_string(),
                    num(v.margin),
                    String::new(),
                    String::new(),
                    String::new(),
                    v.witness.clone().unwrap_or_default(),
                ]
            })
            .collect();
        out.extend(self.chain.alpha_sweep.rows.iter().map(|r| {
            vec![
                "alpha_sweep".into(),
                if r.proven_range { "proven_range" } else { "" }.into(),
                r.alpha.to_string(),
                r.side.to_string(),
                String::new(),
                opt_num(r.margin),
                entropy_cell(r.conditional_renyi),
                entropy_cell(r.conditional_tsallis),
                sign_cell(r.sign),
                r.error.clone().unwrap_or_default(),
            ]
        }));
        out.extend(self.chain.consistency_violations.iter().map(|a| {
            let mut row = vec![String::new(); 10];
            row[0] = "violation".into();
            row[1] = a.to_string();
            row
        }));
        out.extend(self.chain.notes.iter().map(|n| {
            let mut row = vec![String::new(); 10];
            row[0] = "note".into();
            row[9] = n.clone();
            row
        }));
        out
    }
}
