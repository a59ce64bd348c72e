use entrocrit::criteria::{chain_report, werner_ppt_crossing, Arrow, Criterion};
use entrocrit::states::werner;
use entrocrit::Error;
use serde::Serialize;

use crate::config::RunConfig;
use crate::error::CliResult;
use crate::output::{num, opt_num, Report, Tabular};

/// Resolution of the refined PPT sign change.
pub const BOUNDARY_RESOLUTION: f64 = 1e-7;

#[derive(Debug, Clone, Serialize)]
pub struct WernerRow {
    pub p: f64,
    pub ppt: f64,
    #[serde(rename = "reduction_A")]
    pub reduction_a: f64,
    #[serde(rename = "reduction_B")]
    pub reduction_b: f64,
    pub rank: f64,
    #[serde(rename = "majorization_A")]
    pub majorization_a: f64,
    #[serde(rename = "majorization_B")]
    pub majorization_b: f64,
    /// Minimum sign margin over grid `α ≥ 0`, both sides.
    pub entropic: f64,
    /// Minimum sign margin over grid `α < 0`, both sides; absent when undefined.
    pub entropic_negative_alpha: Option<f64>,
    pub failing: Vec<Criterion>,
    pub consistency_violations: Vec<Arrow>,
}

#[derive(Debug, Clone, Serialize)]
pub struct WernerReport {
    pub d: usize,
    pub rows: Vec<WernerRow>,
    /// Refined PPT sign change between the last passing and first failing row.
    pub ppt_boundary: Option<f64>,
}

fn p_grid(start: f64, end: f64, step: f64) -> Result<Vec<f64>, Error> {
    let ok = start.is_finite() && end.is_finite() && (0.0..=1.0).contains(&start) && start <= end && end <= 1.0;
    if !ok {
        return Err(Error::ParameterRange(format!(
            "need 0 <= p-start <= p-end <= 1, got {start}..{end}"
        )));
    }
    if !(step > 0.0 && step.is_finite()) {
        return Err(Error::ParameterRange(format!("p-step {step} must be positive")));
    }
    let n = ((end - start) / step + 1e-9).floor() as usize;
    Ok((0..=n).map(|i| (start + i as f64 * step).min(end)).collect())
}

pub fn cmd_werner(d: usize, p_start: f64, p_end: f64, p_step: f64, config: &RunConfig) -> CliResult<Report<WernerReport>> {
    if d < 2 {
        return Err(Error::ParameterRange(format!("d = {d} must be at least 2")).into());
    }
    let tol = &config.tolerances;
    let mut rows = Vec::new();
    for p in p_grid(p_start, p_end, p_step)? {
        let chain = chain_report(&werner(d, p)?, None, &config.alpha_grid, tol)?;
        let m = |c| chain.verdict(c).margin;
        rows.push(WernerRow {
            p,
            ppt: m(Criterion::Ppt),
            reduction_a: m(Criterion::ReductionA),
            reduction_b: m(Criterion::ReductionB),
            rank: m(Criterion::Rank),
            majorization_a: m(Criterion::MajorizationA),
            majorization_b: m(Criterion::MajorizationB),
            entropic: m(Criterion::Entropic),
            entropic_negative_alpha: chain.alpha_sweep.min_margin_where(|r| r.alpha.is_negative()).map(|x| x.0),
            failing: chain.verdicts.iter().filter(|v| !v.holds).map(|v| v.criterion).collect(),
            consistency_violations: chain.consistency_violations.clone(),
        });
    }
    let crossing = rows.windows(2).find(|w| w[0].ppt >= 0.0 && w[1].ppt < 0.0);
    let ppt_boundary = match crossing {
        Some(w) => werner_ppt_crossing(d, w[0].p, w[1].p, BOUNDARY_RESOLUTION, tol)?,
        None => None,
    };
    Ok(Report::new("werner", config, WernerReport { d, rows, ppt_boundary }))
}

impl Tabular for WernerReport {
    fn header(&self) -> Vec<&'static str> {
        vec![
            "d",
            "p",
            "ppt",
            "reduction_A",
            "reduction_B",
            "rank",
            "majorization_A",
            "majorization_B",
            "entropic",
            "entropic_negative_alpha",
            "failing",
            "ppt_boundary",
        ]
    }

    fn records(&self) -> Vec<Vec<String>> {
        self.rows
            .iter()
            .map(|r| {
                let failing: Vec<String> = r.failing.iter().map(|c| c.to_string()).collect();
                vec![
                    self.d.to_string(),
                    num(r.p),
                    num(r.ppt),
                    num(r.reduction_a),
                    num(r.reduction_b),
                    num(r.rank),
                    num(r.majorization_a),
                    num(r.majorization_b),
                    num(r.entropic),
                    opt_num(r.entropic_negative_alpha),
                    failing.join(";"),
                    opt_num(self.ppt_boundary),
                ]
            })
            .collect()
    }
}
