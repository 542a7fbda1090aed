//! Per-step CSV time series.
//!
//! The first line is always [`SCHEMA_LINE`]; the CSV header follows. One row
//! is written for the initial state and one per accepted step. `lyapunov` is
//! filled only at snapshot rows and left empty elsewhere.

use std::fs::File;
use std::io::{BufRead, BufReader, BufWriter, Write};
use std::path::Path;

use anyhow::{Context, Result};
use dhj_core::solver::StepStats;
use dhj_core::{LyapunovEvaluator, Trajectory};
use serde::{Deserialize, Serialize};

pub const SCHEMA_LINE: &str = "# dhj-series v1";

pub const COLUMNS: [&str; 8] = ["t", "sup_u", "min_u", "sup_ux", "min_ux", "lyapunov", "sup_ut", "dt"];

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct SeriesRow {
    pub t: f64,
    pub sup_u: f64,
    pub min_u: f64,
    pub sup_ux: f64,
    pub min_ux: f64,
    pub lyapunov: Option<f64>,
    pub sup_ut: f64,
    pub dt: f64,
}

impl SeriesRow {
    fn new(s: &StepStats, lyapunov: Option<f64>) -> Self {
        Self {
            t: s.t,
            sup_u: s.sup_u,
            min_u: s.min_u,
            sup_ux: s.sup_ux,
            min_ux: s.min_ux,
            lyapunov,
            sup_ut: s.sup_ut,
            dt: s.dt,
        }
    }
}

/// Rows for a trajectory. `L` is evaluated at snapshot rows when `lyapunov`
/// is set; states outside the evaluator's domain leave the cell empty.
pub fn rows(traj: &Trajectory, lyapunov: bool) -> Vec<SeriesRow> {
    let ev = lyapunov.then(|| LyapunovEvaluator::new(&traj.params));
    let mut snaps = traj.snapshots.iter().peekable();
    let mut value_at = |t: f64| -> Option<f64> {
        while snaps.peek().is_some_and(|s| s.t < t) {
            snaps.next();
        }
        let s = snaps.peek().filter(|s| s.t == t)?;
        ev.as_ref()?.lyapunov_value(s).ok()
    };
    let first = StepStats::of(&traj.snapshots[0]);
    let mut out = Vec::with_capacity(traj.stats.len() + 1);
    out.push(SeriesRow::new(&first, value_at(first.t)));
    for s in &traj.stats {
        out.push(SeriesRow::new(s, value_at(s.t)));
    }
    out
}

pub fn write(path: &Path, rows: &[SeriesRow]) -> Result<()> {
    let file = File::create(path).with_context(|| format!("creating {}", path.display()))?;
    let mut out = BufWriter::new(file);
    writeln!(out, "{SCHEMA_LINE}")?;
    let mut w = csv::Writer::from_writer(out);
    for r in rows {
        w.serialize(r)?;
    }
    w.flush()?;
    Ok(())
}

/// Reads a series written by [`write`], rejecting other schema versions.
pub fn read(path: &Path) -> Result<Vec<SeriesRow>> {
    let mut reader = BufReader::new(File::open(path).with_context(|| format!("opening {}", path.display()))?);
    let mut first = String::new();
    reader.read_line(&mut first)?;
    anyhow::ensure!(first.trim_end() == SCHEMA_LINE, "{}: unsupported series schema {first:?}", path.display());
    let mut r = csv::Reader::from_reader(reader);
    let header: Vec<String> = r.headers()?.iter().map(str::to_owned).collect();
    anyhow::ensure!(header == COLUMNS, "{}: unexpected columns {header:?}", path.display());
    r.deserialize().map(|row| row.map_err(Into::into)).collect()
}
