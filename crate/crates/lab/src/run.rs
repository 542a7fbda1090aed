//! One experiment from config to report.

use std::fs;
use std::path::{Path, PathBuf};

use anyhow::{Context, Result};
use dhj_core::{classify, solve, RunReport, Trajectory};

use crate::config::ExperimentConfig;
use crate::series;

/// Environment variable naming the output root.
pub const OUTPUT_ROOT_ENV: &str = "DHJ_OUTPUT_ROOT";

pub const DEFAULT_OUTPUT_ROOT: &str = "runs";

/// Solves and classifies without touching the filesystem.
pub fn execute(cfg: &ExperimentConfig) -> Result<(RunReport, Trajectory)> {
    let params = cfg.validate()?;
    let traj = solve(&params, &cfg.u0, &cfg.solve)?;
    let mut report = classify(&traj, &cfg.monitor)?;
    report.config_hash = Some(cfg.config_hash());
    Ok((report, traj))
}

/// Files produced by [`run_in`].
#[derive(Debug, Clone)]
pub struct RunOutput {
    pub report: RunReport,
    pub dir: PathBuf,
    pub report_path: PathBuf,
    pub series_path: PathBuf,
}

/// Directory of a run below `root`: the first 16 hex digits of the hash.
pub fn run_dir(root: &Path, hash: &str) -> PathBuf {
    root.join(&hash[..16])
}

/// Executes `cfg` and writes `config.toml`, `series.csv` and `report.json`
/// into the run directory below `root`.
pub fn run_in(cfg: &ExperimentConfig, root: &Path) -> Result<RunOutput> {
    let (mut report, traj) = execute(cfg)?;
    let hash = report.config_hash.clone().expect("set by execute");
    let dir = run_dir(root, &hash);
    fs::create_dir_all(&dir).with_context(|| format!("creating {}", dir.display()))?;
    fs::write(dir.join("config.toml"), cfg.to_toml()?)?;
    let series_path = dir.join("series.csv");
    series::write(&series_path, &series::rows(&traj, cfg.output.lyapunov))?;
    report.series_path = Some(series_path.display().to_string());
    let report_path = dir.join("report.json");
    fs::write(&report_path, serde_json::to_string_pretty(&report)?)?;
    Ok(RunOutput { report, dir, report_path, series_path })
}

/// Output root with precedence flag (or environment) > config file > default.
pub fn output_root(flag: Option<&Path>, cfg: &ExperimentConfig) -> PathBuf {
    flag.map(Path::to_path_buf)
        .or_else(|| cfg.output.dir.as_ref().map(PathBuf::from))
        .unwrap_or_else(|| PathBuf::from(DEFAULT_OUTPUT_ROOT))
}
