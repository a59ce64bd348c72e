use std::fmt;
use std::str::FromStr;

use entrocrit::criteria::{chain_report_with, Arrow, Criterion};
use entrocrit::entropy::{AlphaValue, BipartiteSpectra, Sign};
use entrocrit::states::random::{random_mixed_with, random_pure_with, random_separable_with, rng_for};
use entrocrit::states::schmidt_spectrum;
use entrocrit::{BipartiteDims, Error, Subsystem};
use rayon::prelude::*;
use serde::Serialize;

use crate::config::RunConfig;
use crate::error::CliResult;
use crate::output::{num, opt_num, Report, Tabular};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, clap::ValueEnum)]
#[serde(rename_all = "lowercase")]
pub enum Ensemble {
    Pure,
    Mixed,
    Separable,
}

impl fmt::Display for Ensemble {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Ensemble::Pure => "pure",
            Ensemble::Mixed => "mixed",
            Ensemble::Separable => "separable",
        })
    }
}

/// `dA,dB` on the command line.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct DimsArg(pub BipartiteDims);

impl FromStr for DimsArg {
    type Err = String;

    fn from_str(s: &str) -> Result<Self, String> {
        let parts: Vec<&str> = s.split(',').map(str::trim).collect();
        let [a, b] = parts[..] else {
            return Err(format!("expected dA,dB, got '{s}'"));
        };
        let parse = |t: &str| t.parse::<usize>().map_err(|e| format!("'{t}': {e}"));
        BipartiteDims::new(parse(a)?, parse(b)?)
            .map(DimsArg)
            .map_err(|e| e.to_string())
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub struct SampleSpec {
    pub ensemble: Ensemble,
    pub dims: BipartiteDims,
    pub trials: usize,
    /// Rank of mixed states; defaults to full rank.
    pub rank: Option<usize>,
    /// Number of product terms of separable states; defaults to dA·dB.
    pub terms: Option<usize>,
}

#[derive(Debug, Clone, Serialize)]
pub struct TrialSummary {
    pub trial: usize,
    pub full_rank: bool,
    pub failing: Vec<Criterion>,
    pub entropic_margin: f64,
    pub consistency_violations: Vec<Arrow>,
    /// Pure ensembles only: Schmidt rank and the α = 2 sign on side A.
    #[serde(skip_serializing_if = "Option::is_none")]
    pub schmidt_rank: Option<usize>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub negative_at_two: Option<bool>,
}

#[derive(Debug, Clone, Serialize)]
pub struct CriterionTally {
    pub criterion: Criterion,
    pub holds: usize,
    pub fails: usize,
    pub min_margin: f64,
}

#[derive(Debug, Clone, Serialize)]
pub struct TrialViolation {
    pub trial: usize,
    pub arrow: Arrow,
}

#[derive(Debug, Clone, Serialize)]
pub struct SampleReport {
    pub spec: SampleSpec,
    pub criteria: Vec<CriterionTally>,
    pub consistency_violations: Vec<TrialViolation>,
    pub full_rank_trials: usize,
    /// Minimum sign margin at negative grid α over full-rank trials.
    pub negative_alpha_min_margin: Option<f64>,
    /// Pure ensembles: trials where "negative at α = 2" and "Schmidt rank ≥ 2" disagree.
    #[serde(skip_serializing_if = "Option::is_none")]
    pub pure_state_exceptions: Option<Vec<usize>>,
    pub trials: Vec<TrialSummary>,
}

struct TrialOutcome {
    summary: TrialSummary,
    margins: Vec<(Criterion, bool, f64)>,
    negative_alpha: Option<f64>,
}

fn run_trial(spec: &SampleSpec, trial: usize, config: &RunConfig) -> Result<TrialOutcome, Error> {
    let tol = &config.tolerances;
    let mut rng = rng_for(config.seed, trial as u64);
    let n = spec.dims.total();
    let mut schmidt_rank = None;
    let (rho, cert) = match spec.ensemble {
        Ensemble::Pure => {
            let psi = random_pure_with(&mut rng, spec.dims);
            schmidt_rank = Some(schmidt_spectrum(&psi).rank(tol.rank));
            (psi.density_matrix()?, None)
        }
        Ensemble::Mixed => (random_mixed_with(&mut rng, spec.dims, spec.rank.unwrap_or(n))?, None),
        Ensemble::Separable => {
            let (rho, cert) = random_separable_with(&mut rng, spec.dims, spec.terms.unwrap_or(n))?;
            (rho, Some(cert))
        }
    };
    let spectra = BipartiteSpectra::new(&rho)?;
    let chain = chain_report_with(&rho, &spectra, cert.as_ref(), &config.alpha_grid, tol)?;
    let negative_at_two = match schmidt_rank {
        Some(_) => Some(spectra.positivity_sign(AlphaValue::Finite(2.0), Subsystem::A, tol)?.sign == Sign::Negative),
        None => None,
    };
    let full_rank = rho.is_full_rank(tol);
    let negative_alpha = full_rank
        .then(|| chain.alpha_sweep.min_margin_where(|r| r.alpha.is_negative()).map(|m| m.0))
        .flatten();
    Ok(TrialOutcome {
        summary: TrialSummary {
            trial,
            full_rank,
            failing: chain.verdicts.iter().filter(|v| !v.holds).map(|v| v.criterion).collect(),
            entropic_margin: chain.verdict(Criterion::Entropic).margin,
            consistency_violations: chain.consistency_violations.clone(),
            schmidt_rank,
            negative_at_two,
        },
        margins: chain.verdicts.iter().map(|v| (v.criterion, v.holds, v.margin)).collect(),
        negative_alpha,
    })
}

pub fn cmd_sample(spec: SampleSpec, config: &RunConfig) -> CliResult<Report<SampleReport>> {
    if spec.trials == 0 {
        return Err(Error::ParameterRange("trials must be at least 1".into()).into());
    }
    let outcomes = (0..spec.trials)
        .into_par_iter()
        .map(|t| run_trial(&spec, t, config))
        .collect::<Result<Vec<_>, _>>()?;

    let criteria = Criterion::ALL
        .iter()
        .map(|&c| {
            let of_c = outcomes.iter().flat_map(|o| o.margins.iter().filter(move |m| m.0 == c));
            let (mut holds, mut fails, mut min_margin) = (0, 0, f64::INFINITY);
            for &(_, h, m) in of_c {
                if h {
                    holds += 1;
                } else {
                    fails += 1;
                }
                min_margin = min_margin.min(m);
            }
            CriterionTally {
                criterion: c,
                holds,
                fails,
                min_margin,
            }
        })
        .collect();
    let consistency_violations = outcomes
        .iter()
        .flat_map(|o| {
            o.summary
                .consistency_violations
                .iter()
                .map(|&arrow| TrialViolation { trial: o.summary.trial, arrow })
        })
        .collect();
    let pure_state_exceptions = (spec.ensemble == Ensemble::Pure).then(|| {
        outcomes
            .iter()
            .filter(|o| o.summary.negative_at_two != o.summary.schmidt_rank.map(|r| r >= 2))
            .map(|o| o.summary.trial)
            .collect()
    });
    let report = SampleReport {
        spec,
        criteria,
        consistency_violations,
        full_rank_trials: outcomes.iter().filter(|o| o.summary.full_rank).count(),
        negative_alpha_min_margin: outcomes.iter().filter_map(|o| o.negative_alpha).min_by(f64::total_cmp),
        pure_state_exceptions,
        trials: outcomes.into_iter().map(|o| o.summary).collect(),
    };
    Ok(Report::new("sample", config, report))
}

impl Tabular for SampleReport {
    fn header(&self) -> Vec<&'static str> {
        vec![
            "trial",
            "full_rank",
            "failing",
            "entropic_margin",
            "consistency_violations",
            "schmidt_rank",
            "negative_at_two",
        ]
    }

    fn records(&self) -> Vec<Vec<String>> {
        self.trials
            .iter()
            .map(|t| {
                let failing: Vec<String> = t.failing.iter().map(|c| c.to_string()).collect();
                let violations: Vec<String> = t.consistency_violations.iter().map(|a| a.to_string()).collect();
                vec![
                    t.trial.to_string(),
                    t.full_rank.to_string(),
                    failing.join(";"),
                    num(t.entropic_margin),
                    violations.join(";"),
                    t.schmidt_rank.map(|r| r.to_string()).unwrap_or_default(),
                    t.negative_at_two.map(|b| b.to_string()).unwrap_or_default(),
                ]
            })
            .chain(std::iter::once({
                let mut row = vec![String::new(); 7];
                row[0] = "min_negative_alpha_margin".into();
                row[3] = opt_num(self.negative_alpha_min_margin);
                row
            }))
            .collect()
    }
}
