//! On-disk experiment description.
//!
//! A config is a TOML file with five tables:
//!
//! ```toml
//! [params]
//! p = 3.0
//! q = 4.0
//! m = 1.0
//! eps = 0.1
//!
//! [u0]
//! kind = "linear"
//!
//! [solve]
//! nodes = 400
//! t_end = 50.0
//!
//! [monitor]
//! sup = 1e-2
//!
//! [output]
//! dir = "runs"
//! ```
//!
//! Every table except `params` may be omitted. `solve` and `monitor` take the
//! field names of [`SolveConfig`] and [`Tolerances`]. The config hash is the
//! SHA-256 of the canonical JSON of `params`, `u0`, `solve` and `monitor`;
//! `output` does not change what is computed and is left out.

use std::fs;
use std::path::Path;

use anyhow::{Context, Result};
use dhj_core::{InitialProfile, ProblemParams, SolveConfig, Tolerances};
use serde::{Deserialize, Serialize};
use sha2::{Digest, Sha256};

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct ParamsSection {
    pub p: f64,
    pub q: f64,
    pub m: f64,
    #[serde(default = "default_eps")]
    pub eps: f64,
    /// `K`; defaults to `max(sup|u0|, M) + 1`.
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub k_bound: Option<f64>,
}

fn default_eps() -> f64 {
    0.1
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(default, deny_unknown_fields)]
pub struct OutputSection {
    /// Output root; run directories are created below it.
    #[serde(skip_serializing_if = "Option::is_none")]
    pub dir: Option<String>,
    /// Fill the `lyapunov` column at snapshot rows.
    pub lyapunov: bool,
}

impl Default for OutputSection {
    fn default() -> Self {
        Self { dir: None, lyapunov: true }
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct ExperimentConfig {
    pub params: ParamsSection,
    #[serde(default = "linear")]
    pub u0: InitialProfile,
    #[serde(default)]
    pub solve: SolveConfig,
    #[serde(default)]
    pub monitor: Tolerances,
    #[serde(default)]
    pub output: OutputSection,
}

fn linear() -> InitialProfile {
    InitialProfile::Linear
}

#[derive(Serialize)]
struct Hashed<'a> {
    params: &'a ParamsSection,
    u0: &'a InitialProfile,
    solve: &'a SolveConfig,
    monitor: &'a Tolerances,
}

impl ExperimentConfig {
    /// Default solver and monitor settings with `u0 = M x`.
    pub fn new(p: f64, q: f64, m: f64, eps: f64) -> Self {
        Self {
            params: ParamsSection { p, q, m, eps, k_bound: None },
            u0: InitialProfile::Linear,
            solve: SolveConfig::default(),
            monitor: Tolerances::default(),
            output: OutputSection::default(),
        }
    }

    /// Reads a TOML config, or JSON when the extension is `.json`.
    pub fn load(path: &Path) -> Result<Self> {
        let text = fs::read_to_string(path).with_context(|| format!("reading {}", path.display()))?;
        let cfg = if path.extension().is_some_and(|e| e == "json") {
            serde_json::from_str(&text).with_context(|| format!("parsing {}", path.display()))?
        } else {
            Self::from_toml(&text).with_context(|| format!("parsing {}", path.display()))?
        };
        Ok(cfg)
    }

    pub fn from_toml(text: &str) -> Result<Self> {
        Ok(toml::from_str(text)?)
    }

    pub fn to_toml(&self) -> Result<String> {
        Ok(toml::to_string(self)?)
    }

    pub fn canonical_json(&self) -> String {
        let h = Hashed { params: &self.params, u0: &self.u0, solve: &self.solve, monitor: &self.monitor };
        // Value maps are ordered by key, which makes the text canonical.
        let v = serde_json::to_value(h).expect("config serializes");
        serde_json::to_string(&v).expect("value serializes")
    }

    /// Hex SHA-256 of [`Self::canonical_json`].
    pub fn config_hash(&self) -> String {
        let digest = Sha256::digest(self.canonical_json().as_bytes());
        digest.iter().map(|b| format!("{b:02x}")).collect()
    }

    /// Validated problem parameters, with `K` filled in from the sampled `u0`.
    pub fn problem(&self) -> Result<ProblemParams> {
        let s = &self.params;
        let k_bound = match s.k_bound {
            Some(k) => k,
            None => {
                let probe = ProblemParams { p: s.p, q: s.q, m: s.m, eps: s.eps, k_bound: f64::MAX };
                let sampled = self.u0.sample(&probe, self.solve.nodes).context("invalid [u0]")?;
                dhj_core::params::default_bound(sampled.sup_abs(), s.m)
            }
        };
        ProblemParams::new(s.p, s.q, s.m, s.eps, k_bound).context("invalid [params]")
    }

    /// Checks every section and returns the problem parameters.
    pub fn validate(&self) -> Result<ProblemParams> {
        self.solve.validate().context("invalid [solve]")?;
        let params = self.problem()?;
        self.u0.validate(&params).context("invalid [u0]")?;
        let t = &self.monitor;
        let positive = [("sup", t.sup), ("c1", t.c1), ("t0", t.t0), ("nu", t.nu), ("slack_c", t.slack_c)];
        for (name, v) in positive {
            anyhow::ensure!(v > 0.0 && v.is_finite(), "invalid [monitor]: {name} must be positive");
        }
        anyhow::ensure!(t.delta > 0.0 && t.delta < 0.5, "invalid [monitor]: delta must lie in (0, 1/2)");
        anyhow::ensure!(
            t.tail_fraction > 0.0 && t.tail_fraction <= 1.0,
            "invalid [monitor]: tail_fraction must lie in (0, 1]"
        );
        Ok(params)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn minimal_file_takes_defaults() {
        let cfg = ExperimentConfig::from_toml("[params]\np = 3.0\nq = 4.0\nm = 1.0\n").unwrap();
        assert_eq!(cfg, ExperimentConfig::new(3.0, 4.0, 1.0, 0.1));
        assert_eq!(cfg.problem().unwrap().k_bound, 2.0);
    }

    #[test]
    fn hash_ignores_output() {
        let a = ExperimentConfig::new(3.0, 4.0, 1.0, 0.1);
        let mut b = a.clone();
        b.output.dir = Some("elsewhere".into());
        assert_eq!(a.config_hash(), b.config_hash());
        b.solve.nodes = 200;
        assert_ne!(a.config_hash(), b.config_hash());
        assert_eq!(a.config_hash().len(), 64);
    }

    #[test]
    fn unknown_field_is_named() {
        let err = ExperimentConfig::from_toml("[params]\np = 3.0\nq = 4.0\nm = 1.0\n[solve]\nnodez = 3\n")
            .unwrap_err()
            .to_string();
        assert!(err.contains("nodez"), "{err}");
        assert!(err.contains("line 6"), "{err}");
    }
}
