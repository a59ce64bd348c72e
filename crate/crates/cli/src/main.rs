use std::path::PathBuf;
use std::process::ExitCode;

use clap::{ArgGroup, Args, Parser, Subcommand};
use entrocrit::entropy::{parse_alpha_list, AlphaValue};
use entrocrit::Tolerances;
use serde::Serialize;

use entrocrit_cli::output::{emit, Tabular};
use entrocrit_cli::{
    cmd_analyze, cmd_entropy, cmd_isospectral, cmd_sample, cmd_werner, render, CliResult, DimsArg, Ensemble,
    EntropySource, OutputFormat, Report, RunConfig, SampleSpec,
};

/// Spectral entanglement criteria for bipartite quantum states.
#[derive(Parser, Debug)]
#[command(name = "entrocrit", version, about)]
struct Cli {
    #[command(flatten)]
    global: GlobalOpts,

    #[command(subcommand)]
    command: Command,
}

#[derive(Args, Debug)]
struct GlobalOpts {
    /// Output encoding.
    #[arg(long, global = true, value_enum, default_value_t = OutputFormat::Json)]
    format: OutputFormat,

    /// Write the report here instead of stdout.
    #[arg(long, global = true)]
    out: Option<PathBuf>,

    /// Master seed for random ensembles.
    #[arg(long, global = true, env = "ENTROCRIT_SEED", default_value_t = 0)]
    seed: u64,

    /// Comma-separated α grid, e.g. `0,0.5,1,2,inf,-1` (default: standard grid plus -0.5,-1,-2).
    #[arg(long, global = true, allow_hyphen_values = true, value_parser = parse_alphas)]
    alphas: Option<AlphaList>,

    /// PSD slack on eigenvalue margins.
    #[arg(long, global = true)]
    tol_psd: Option<f64>,

    /// Eigenvalues at or below this count as zero.
    #[arg(long, global = true)]
    tol_rank: Option<f64>,

    /// Slack on majorization partial sums.
    #[arg(long, global = true)]
    tol_major: Option<f64>,
}

#[derive(Subcommand, Debug)]
enum Command {
    /// Full criteria chain and α sweep for a state file.
    Analyze {
        #[arg(long)]
        input: PathBuf,
    },
    /// Criterion margins across a Werner family sweep.
    Werner {
        #[arg(long)]
        d: usize,
        #[arg(long, default_value_t = 0.0)]
        p_start: f64,
        #[arg(long, default_value_t = 1.0)]
        p_end: f64,
        #[arg(long, default_value_t = 0.1)]
        p_step: f64,
    },
    /// Werner state next to its separable isospectral counterpart.
    Isospectral {
        #[arg(long)]
        d: usize,
        #[arg(long)]
        p: f64,
        /// Directory for both states as state-JSON files.
        #[arg(long)]
        emit_states: Option<PathBuf>,
    },
    /// Seeded campaign over a random ensemble.
    Sample {
        #[arg(long, value_enum)]
        ensemble: Ensemble,
        /// Local dimensions as `dA,dB`.
        #[arg(long)]
        dims: DimsArg,
        #[arg(long, default_value_t = 1000)]
        trials: usize,
        /// Rank of mixed states (default: full rank).
        #[arg(long)]
        rank: Option<usize>,
        /// Product terms per separable state (default: dA·dB).
        #[arg(long)]
        terms: Option<usize>,
    },
    /// Entropy table over the α grid.
    #[command(group(ArgGroup::new("source").required(true).args(["input", "counterexample"])))]
    Entropy {
        #[arg(long)]
        input: Option<PathBuf>,
        /// Use the built-in two-qubit counterexample state.
        #[arg(long)]
        counterexample: bool,
    },
}

#[derive(Debug, Clone)]
struct AlphaList(Vec<AlphaValue>);

fn parse_alphas(s: &str) -> Result<AlphaList, String> {
    parse_alpha_list(s).map(AlphaList).map_err(|e| e.to_string())
}

fn resolve(g: GlobalOpts) -> RunConfig {
    let d = Tolerances::default();
    let defaults = RunConfig::default();
    RunConfig {
        seed: g.seed,
        alpha_grid: g.alphas.map(|a| a.0).unwrap_or(defaults.alpha_grid),
        tolerances: Tolerances {
            psd: g.tol_psd.unwrap_or(d.psd),
            rank: g.tol_rank.unwrap_or(d.rank),
            major: g.tol_major.unwrap_or(d.major),
        },
        output_format: g.format,
        output_path: g.out,
    }
}

fn finish<T: Serialize + Tabular>(report: CliResult<Report<T>>, config: &RunConfig) -> CliResult<()> {
    let text = render(&report?, config.output_format)?;
    emit(&text, config)
}

fn run(cli: Cli) -> CliResult<()> {
    let config = resolve(cli.global);
    let tol = config.tolerances;
    for (name, v) in [("tol-psd", tol.psd), ("tol-rank", tol.rank), ("tol-major", tol.major)] {
        if !(v.is_finite() && v >= 0.0) {
            return Err(entrocrit_cli::CliError::Invalid(format!("--{name} must be a nonnegative number")));
        }
    }
    match cli.command {
        Command::Analyze { input } => finish(cmd_analyze(&input, &config), &config),
        Command::Werner {
            d,
            p_start,
            p_end,
            p_step,
        } => finish(cmd_werner(d, p_start, p_end, p_step, &config), &config),
        Command::Isospectral { d, p, emit_states } => {
            finish(cmd_isospectral(d, p, emit_states.as_deref(), &config), &config)
        }
        Command::Sample {
            ensemble,
            dims,
            trials,
            rank,
            terms,
        } => {
            let spec = SampleSpec {
                ensemble,
                dims: dims.0,
                trials,
                rank,
                terms,
            };
            finish(cmd_sample(spec, &config), &config)
        }
        Command::Entropy { input, counterexample } => {
            let source = match (&input, counterexample) {
                (Some(path), false) => EntropySource::File(path),
                _ => EntropySource::Counterexample,
            };
            finish(cmd_entropy(source, &config), &config)
        }
    }
}

fn main() -> ExitCode {
    match run(Cli::parse()) {
        Ok(()) => ExitCode::SUCCESS,
        Err(e) => {
            eprintln!("error: {e}");
            e.exit_code()
        }
    }
}
