pub mod analyze;
pub mod entropy;
pub mod isospectral;
pub mod sample;
pub mod werner;

pub use analyze::{analyze_state, cmd_analyze, load_state, AnalyzeReport};
pub use entropy::{cmd_entropy, entropy_table, EntropyReport, EntropyRow, EntropySource};
pub use isospectral::{cmd_isospectral, IsospectralReport};
pub use sample::{cmd_sample, DimsArg, Ensemble, SampleReport, SampleSpec};
pub use werner::{cmd_werner, WernerReport, WernerRow};
