//! Experiment runner around `dhj-core`: TOML configs, CSV series, JSON
//! reports, parallel sweeps over `M`, and the `dhj` command line.

pub mod commands;
pub mod config;
pub mod run;
pub mod series;
pub mod sweep;

pub use config::ExperimentConfig;
pub use run::{execute, run_in, RunOutput};
pub use sweep::{sweep, SweepRecord, SweepSpec, SweepSummary};
