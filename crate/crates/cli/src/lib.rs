//! Library side of the `entrocrit` command-line tool. Each `cmd_*` function returns a
//! serializable [`Report`](output::Report); the binary only parses flags, renders and writes.

pub mod commands;
pub mod config;
pub mod error;
pub mod output;

pub use commands::*;
pub use config::{OutputFormat, RunConfig};
pub use error::{CliError, CliResult};
pub use output::{render, Report};
