use std::io::Write;

use entrocrit::entropy::{EntropyValue, Sign};
use serde::Serialize;

use crate::config::{OutputFormat, RunConfig};
use crate::error::{CliError, CliResult};

pub const TOOL: &str = "entrocrit";
pub const VERSION: &str = env!("CARGO_PKG_VERSION");

/// Envelope shared by every command.
#[derive(Debug, Clone, Serialize)]
pub struct Report<T> {
    pub tool: &'static str,
    pub version: &'static str,
    pub command: &'static str,
    /// Entropies use natural logarithms.
    pub log_base: &'static str,
    pub config: RunConfig,
    pub result: T,
}

impl<T> Report<T> {
    pub fn new(command: &'static str, config: &RunConfig, result: T) -> Self {
        Self {
            tool: TOOL,
            version: VERSION,
            command,
            log_base: "e",
            config: config.clone(),
            result,
        }
    }
}

/// Flat table view for CSV output.
pub trait Tabular {
    fn header(&self) -> Vec<&'static str>;
    fn records(&self) -> Vec<Vec<String>>;
}

/// 17 significant digits, enough to round-trip any double.
pub fn num(x: f64) -> String {
    if x.is_finite() {
        format!("{x:.16e}")
    } else if x.is_nan() {
        "nan".into()
    } else if x > 0.0 {
        "inf".into()
    } else {
        "-inf".into()
    }
}

pub fn opt_num(x: Option<f64>) -> String {
    x.map(num).unwrap_or_default()
}

pub fn entropy_cell(v: EntropyValue) -> String {
    match v {
        EntropyValue::Finite(x) => num(x),
        EntropyValue::NegativeInfinity => "-inf".into(),
        EntropyValue::Undefined => "undefined".into(),
    }
}

pub fn sign_cell(s: Option<Sign>) -> String {
    match s {
        Some(Sign::Negative) => "negative",
        Some(Sign::Zero) => "zero",
        Some(Sign::Positive) => "positive",
        None => "",
    }
    .into()
}

pub fn render<T: Serialize + Tabular>(report: &Report<T>, format: OutputFormat) -> CliResult<String> {
    match format {
        OutputFormat::Json => {
            let mut s = serde_json::to_string_pretty(report).map_err(|e| CliError::Invalid(e.to_string()))?;
            s.push('\n');
            Ok(s)
        }
        OutputFormat::Csv => render_csv(report),
    }
}

fn render_csv<T: Tabular>(report: &Report<T>) -> CliResult<String> {
    let config = serde_json::to_string(&report.config).map_err(|e| CliError::Invalid(e.to_string()))?;
    let mut out = format!(
        "# {} {} {}\n# log_base {}\n# config {}\n",
        report.tool, report.version, report.command, report.log_base, config
    );
    let mut w = csv::Writer::from_writer(Vec::new());
    let csv_err = |e: csv::Error| CliError::Io(e.to_string());
    w.write_record(report.result.header()).map_err(csv_err)?;
    for rec in report.result.records() {
        w.write_record(&rec).map_err(csv_err)?;
    }
    let bytes = w.into_inner().map_err(|e| CliError::Io(e.to_string()))?;
    out.push_str(&String::from_utf8(bytes).expect("csv output is UTF-8"));
    Ok(out)
}

/// Writes to `--out` when given, stdout otherwise.
pub fn emit(text: &str, config: &RunConfig) -> CliResult<()> {
    match &config.output_path {
        Some(path) => std::fs::write(path, text).map_err(|e| CliError::io(path, e)),
        None => {
            let mut stdout = std::io::stdout().lock();
            stdout
                .write_all(text.as_bytes())
                .and_then(|_| stdout.flush())
                .map_err(|e| CliError::Io(format!("stdout: {e}")))
        }
    }
}
