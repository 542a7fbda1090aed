//! Sweeps over the boundary value `M`.
//!
//! Layout of a sweep directory:
//!
//! - `index.jsonl`: one [`SweepRecord`] per completed run, appended in
//!   completion order;
//! - `records/<hash>.json`: the same record, one file per run;
//! - `runs/<hash16>/`: config, series and report of each run.
//!
//! Any run can be repeated with `dhj run <dir>/runs/<hash16>/config.toml`.

use std::fs::{self, OpenOptions};
use std::io::{BufRead, BufReader, Write};
use std::path::{Path, PathBuf};
use std::sync::mpsc;
use std::time::Instant;

use anyhow::{Context, Result};
use dhj_core::{critical_mass, Outcome, RunReport};
use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::config::ExperimentConfig;
use crate::run::{run_in, RunOutput};

pub const INDEX_FILE: &str = "index.jsonl";

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct SweepRecord {
    pub config_hash: String,
    pub p: f64,
    pub q: f64,
    pub m: f64,
    pub eps: f64,
    /// `converged`, `gradient-blow-up` or `undetermined`.
    pub outcome: String,
    pub exit_code: i32,
    pub t_star: Option<f64>,
    pub k: Option<f64>,
    pub violations: usize,
    /// Seconds.
    pub wall_time: f64,
}

impl SweepRecord {
    fn new(cfg: &ExperimentConfig, report: &RunReport, wall_time: f64) -> Self {
        Self {
            config_hash: report.config_hash.clone().unwrap_or_default(),
            p: cfg.params.p,
            q: cfg.params.q,
            m: cfg.params.m,
            eps: cfg.params.eps,
            outcome: outcome_name(&report.outcome).to_owned(),
            exit_code: report.outcome.exit_code(),
            t_star: report.t_star,
            k: report.k,
            violations: report.violations.len(),
            wall_time,
        }
    }
}

pub fn outcome_name(o: &Outcome) -> &'static str {
    match o {
        Outcome::Converged { .. } => "converged",
        Outcome::GradientBlowUp { .. } => "gradient-blow-up",
        Outcome::Undetermined { .. } => "undetermined",
    }
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct SweepSpec {
    pub p: f64,
    pub q: f64,
    pub m_from: f64,
    pub m_to: f64,
    pub steps: usize,
}

impl SweepSpec {
    pub fn validate(&self) -> Result<()> {
        anyhow::ensure!(self.m_from < self.m_to, "sweep needs m_from < m_to");
        anyhow::ensure!(self.steps >= 2, "sweep needs steps >= 2");
        anyhow::ensure!(self.m_from >= 0.0, "sweep needs m_from >= 0");
        Ok(())
    }

    pub fn spacing(&self) -> f64 {
        (self.m_to - self.m_from) / (self.steps - 1) as f64
    }

    pub fn masses(&self) -> Vec<f64> {
        let h = self.spacing();
        (0..self.steps).map(|i| if i + 1 == self.steps { self.m_to } else { self.m_from + i as f64 * h }).collect()
    }

    /// Config of the run at boundary value `m`, derived from `base`.
    pub fn member(&self, base: &ExperimentConfig, m: f64) -> ExperimentConfig {
        let mut cfg = base.clone();
        cfg.params.p = self.p;
        cfg.params.q = self.q;
        cfg.params.m = m;
        cfg.params.k_bound = cfg.params.k_bound.map(|k| k.max(m + 1.0));
        cfg
    }
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct SweepSummary {
    pub dir: PathBuf,
    pub m_b: f64,
    pub spacing: f64,
    /// Records sorted by `m`.
    pub records: Vec<SweepRecord>,
    /// `(m, message)` of runs that failed.
    pub errors: Vec<(f64, String)>,
    /// Largest `m` classified as converged.
    pub last_converged: Option<f64>,
    /// Smallest `m` classified as gradient blow-up.
    pub first_blow_up: Option<f64>,
    /// Midpoint of the two, when both exist.
    pub m_hat: Option<f64>,
    /// `|m_hat - M_b| <= 2 * spacing` and every converged sample lies below
    /// every blow-up sample. `None` when the range has no flip.
    pub threshold_ok: Option<bool>,
}

impl SweepSummary {
    /// Zero when every run completed and the threshold check did not fail.
    pub fn exit_code(&self) -> i32 {
        if !self.errors.is_empty() || self.threshold_ok == Some(false) {
            1
        } else {
            0
        }
    }
}

/// Runs the sweep in parallel. Workers write only their own run directory;
/// records go through a single writer that appends to the index.
pub fn sweep(spec: &SweepSpec, base: &ExperimentConfig, dir: &Path) -> Result<SweepSummary> {
    spec.validate()?;
    let m_b = critical_mass(spec.p, spec.q)?;
    fs::create_dir_all(dir.join("records")).with_context(|| format!("creating {}", dir.display()))?;
    let runs_root = dir.join("runs");

    let (tx, rx) = mpsc::channel::<SweepRecord>();
    let index_path = dir.join(INDEX_FILE);
    let records_dir = dir.join("records");
    let writer = std::thread::spawn(move || -> Result<Vec<SweepRecord>> {
        let mut index = OpenOptions::new().create(true).append(true).open(&index_path)?;
        let mut written = Vec::new();
        for rec in rx {
            fs::write(records_dir.join(format!("{}.json", rec.config_hash)), serde_json::to_string_pretty(&rec)?)?;
            writeln!(index, "{}", serde_json::to_string(&rec)?)?;
            index.flush()?;
            written.push(rec);
        }
        Ok(written)
    });

    let failures: Vec<(f64, String)> = spec
        .masses()
        .into_par_iter()
        .map_with(tx, |tx, m| {
            let cfg = spec.member(base, m);
            let start = Instant::now();
            match run_in(&cfg, &runs_root) {
                Ok(RunOutput { report, .. }) => {
                    let rec = SweepRecord::new(&cfg, &report, start.elapsed().as_secs_f64());
                    tx.send(rec).map_err(|e| (m, e.to_string())).err()
                }
                Err(e) => Some((m, format!("{e:#}"))),
            }
        })
        .flatten()
        .collect();

    let mut records = writer.join().expect("writer thread panicked")?;
    records.sort_by(|a, b| a.m.total_cmp(&b.m));
    let mut errors = failures;
    errors.sort_by(|a, b| a.0.total_cmp(&b.0));

    let last_converged = records.iter().filter(|r| r.exit_code == 0).map(|r| r.m).reduce(f64::max);
    let first_blow_up = records.iter().filter(|r| r.exit_code == 2).map(|r| r.m).reduce(f64::min);
    let spacing = spec.spacing();
    let (m_hat, threshold_ok) = match (last_converged, first_blow_up) {
        (Some(lo), Some(hi)) => {
            let m_hat = 0.5 * (lo + hi);
            (Some(m_hat), Some(lo < hi && (m_hat - m_b).abs() <= 2.0 * spacing))
        }
        _ => (None, None),
    };
    Ok(SweepSummary {
        dir: dir.to_path_buf(),
        m_b,
        spacing,
        records,
        errors,
        last_converged,
        first_blow_up,
        m_hat,
        threshold_ok,
    })
}

/// Reads every record of a sweep index, in file order.
pub fn read_index(dir: &Path) -> Result<Vec<SweepRecord>> {
    let path = dir.join(INDEX_FILE);
    let file = fs::File::open(&path).with_context(|| format!("opening {}", path.display()))?;
    let mut out = Vec::new();
    for (i, line) in BufReader::new(file).lines().enumerate() {
        let line = line?;
        if line.trim().is_empty() {
            continue;
        }
        out.push(serde_json::from_str(&line).with_context(|| format!("{}:{}", path.display(), i + 1))?);
    }
    Ok(out)
}

/// Fixed-width classification table, one row per record, sorted by `m`.
pub fn table(records: &[SweepRecord]) -> String {
    let mut rows: Vec<&SweepRecord> = records.iter().collect();
    rows.sort_by(|a, b| a.m.total_cmp(&b.m).then_with(|| a.config_hash.cmp(&b.config_hash)));
    let mut s = format!(
        "{:>10} {:>8} {:>8} {:<17} {:>12} {:>12} {:>5} {:>9}  {}\n",
        "m", "p", "q", "outcome", "t_star", "k", "viol", "wall_s", "config_hash"
    );
    let opt = |v: Option<f64>| v.map_or_else(|| "-".to_owned(), |v| format!("{v:.6}"));
    for r in rows {
        s.push_str(&format!(
            "{:>10.6} {:>8} {:>8} {:<17} {:>12} {:>12} {:>5} {:>9.3}  {}\n",
            r.m,
            r.p,
            r.q,
            r.outcome,
            opt(r.t_star),
            opt(r.k),
            r.violations,
            r.wall_time,
            &r.config_hash[..16.min(r.config_hash.len())]
        ));
    }
    s
}

/// Directory name of a sweep below the output root.
pub fn sweep_dir(root: &Path, spec: &SweepSpec, base: &ExperimentConfig) -> PathBuf {
    let tag = format!("{}|{}|{}|{}|{}|{}", spec.p, spec.q, spec.m_from, spec.m_to, spec.steps, base.config_hash());
    root.join(format!("sweep-{}", short_hash(&tag)))
}

fn short_hash(s: &str) -> String {
    use sha2::{Digest, Sha256};
    Sha256::digest(s.as_bytes()).iter().take(8).map(|b| format!("{b:02x}")).collect()
}
