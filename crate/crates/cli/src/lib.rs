//! Single-set analysis reports and exhaustive corpus experiments on top of
//! [`spectile`].

pub mod config;
pub mod enumerate;
pub mod error;
pub mod experiment;
pub mod report;

pub use enumerate::enumerate_sets;
pub use error::CliError;
pub use experiment::{run_experiment, Experiment, ExperimentConfig, ExperimentReport, SetRow, Violation};
pub use report::{analyze, analyze_set, parse_set, AnalysisReport, AnalyzeConfig, Check, SearchOutcome};
