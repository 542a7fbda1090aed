use std::path::{Path, PathBuf};
use std::process::ExitCode;

use anyhow::{Context, Result};
use clap::{Args, Parser, Subcommand, ValueEnum};
use dhj_core::solver::Stepper;
use dhj_core::Outcome;
use dhj_lab::run::{output_root, run_in, OUTPUT_ROOT_ENV};
use dhj_lab::sweep::{read_index, sweep, sweep_dir, table, SweepSpec};
use dhj_lab::{commands, ExperimentConfig};

#[derive(Parser)]
#[command(name = "dhj", version, about = "Gradient blow-up versus convergence for u_t = (|u_x|^{p-2} u_x)_x + |u_x|^q")]
struct Cli {
    #[command(subcommand)]
    cmd: Cmd,
}

#[derive(Subcommand)]
enum Cmd {
    /// Solve one configuration, write series.csv and report.json.
    ///
    /// Exit status: 0 converged, 2 gradient blow-up, 3 undetermined, 1 error.
    Run {
        /// TOML (or .json) config; without it --p, --q and --m are required.
        config: Option<PathBuf>,
        #[command(flatten)]
        over: Overrides,
        /// Output root.
        #[arg(long, env = OUTPUT_ROOT_ENV)]
        out: Option<PathBuf>,
    },
    /// Solve for equally spaced M in [m_from, m_to] and locate the threshold.
    Sweep {
        #[arg(long)]
        m_from: f64,
        #[arg(long)]
        m_to: f64,
        #[arg(long)]
        steps: usize,
        /// Base config; M is replaced per run.
        #[arg(long)]
        config: Option<PathBuf>,
        #[command(flatten)]
        over: Overrides,
        #[arg(long, env = OUTPUT_ROOT_ENV)]
        out: Option<PathBuf>,
        /// Worker threads; defaults to the number of cores.
        #[arg(long)]
        jobs: Option<usize>,
    },
    /// Print k, M_b, alpha and the sampled steady profile.
    Steady {
        #[arg(long)]
        p: f64,
        #[arg(long)]
        q: f64,
        #[arg(long)]
        m: f64,
        #[arg(long, default_value_t = 11)]
        samples: usize,
    },
    /// Residual report of the Lyapunov density as JSON. Exit 1 if a residual
    /// exceeds its tolerance.
    LyapunovCheck {
        #[arg(long)]
        p: f64,
        #[arg(long)]
        q: f64,
        /// Bound K on |u|.
        #[arg(long)]
        k: f64,
        #[arg(long)]
        eps: f64,
    },
    /// Classification table of a sweep directory.
    Report { dir: PathBuf },
}

#[derive(Clone, Copy, ValueEnum)]
enum StepperArg {
    Explicit,
    SemiImplicit,
}

/// Command-line values that replace config fields.
#[derive(Args, Default)]
struct Overrides {
    #[arg(long)]
    p: Option<f64>,
    #[arg(long)]
    q: Option<f64>,
    #[arg(long)]
    m: Option<f64>,
    #[arg(long)]
    eps: Option<f64>,
    #[arg(long)]
    k_bound: Option<f64>,
    #[arg(long)]
    nodes: Option<usize>,
    #[arg(long)]
    t_end: Option<f64>,
    #[arg(long)]
    dt_init: Option<f64>,
    #[arg(long)]
    dt_max: Option<f64>,
    #[arg(long, value_enum)]
    stepper: Option<StepperArg>,
    #[arg(long)]
    snapshot_interval: Option<f64>,
    #[arg(long)]
    blowup_grad_threshold: Option<f64>,
    /// Skip the dt/2 and dx/2 reruns after a threshold crossing.
    #[arg(long)]
    no_certify: bool,
    /// Leave the lyapunov column of the series empty.
    #[arg(long)]
    no_lyapunov: bool,
}

impl Overrides {
    fn base(&self, path: Option<&Path>) -> Result<ExperimentConfig> {
        match path {
            Some(path) => ExperimentConfig::load(path),
            None => {
                let (Some(p), Some(q)) = (self.p, self.q) else {
                    anyhow::bail!("without a config file --p and --q are required");
                };
                Ok(ExperimentConfig::new(p, q, self.m.unwrap_or(0.0), 0.1))
            }
        }
    }

    fn apply(&self, cfg: &mut ExperimentConfig) {
        let set = |dst: &mut f64, v: Option<f64>| {
            if let Some(v) = v {
                *dst = v;
            }
        };
        set(&mut cfg.params.p, self.p);
        set(&mut cfg.params.q, self.q);
        set(&mut cfg.params.m, self.m);
        set(&mut cfg.params.eps, self.eps);
        if self.k_bound.is_some() {
            cfg.params.k_bound = self.k_bound;
        }
        if let Some(n) = self.nodes {
            cfg.solve.nodes = n;
        }
        set(&mut cfg.solve.t_end, self.t_end);
        set(&mut cfg.solve.dt_init, self.dt_init);
        set(&mut cfg.solve.dt_max, self.dt_max);
        set(&mut cfg.solve.snapshot_interval, self.snapshot_interval);
        set(&mut cfg.solve.blowup_grad_threshold, self.blowup_grad_threshold);
        if let Some(s) = self.stepper {
            cfg.solve.stepper = match s {
                StepperArg::Explicit => Stepper::Explicit,
                StepperArg::SemiImplicit => Stepper::SemiImplicit,
            };
        }
        if self.no_certify {
            cfg.solve.certify_blowup = false;
        }
        if self.no_lyapunov {
            cfg.output.lyapunov = false;
        }
    }
}

fn main() -> ExitCode {
    match dispatch(Cli::parse()) {
        Ok(code) => ExitCode::from(code as u8),
        Err(e) => {
            eprintln!("error: {e:#}");
            ExitCode::from(1)
        }
    }
}

fn dispatch(cli: Cli) -> Result<i32> {
    match cli.cmd {
        Cmd::Run { config, over, out } => {
            if config.is_none() && over.m.is_none() {
                anyhow::bail!("without a config file --m is required");
            }
            let mut cfg = over.base(config.as_deref())?;
            over.apply(&mut cfg);
            let root = output_root(out.as_deref(), &cfg);
            let res = run_in(&cfg, &root)?;
            let r = &res.report;
            let detail = match &r.outcome {
                Outcome::Converged { k, distance, .. } => format!("k={k} distance={distance:e}"),
                Outcome::GradientBlowUp { t_star, side } => format!("t_star={t_star} side={side:?}"),
                Outcome::Undetermined { reason } => format!("reason={reason:?}"),
            };
            println!("outcome={} {detail}", dhj_lab::sweep::outcome_name(&r.outcome));
            println!("violations={}", r.violations.len());
            println!("report={}", res.report_path.display());
            println!("series={}", res.series_path.display());
            Ok(r.outcome.exit_code())
        }
        Cmd::Sweep { m_from, m_to, steps, config, over, out, jobs } => {
            let mut base = over.base(config.as_deref())?;
            over.apply(&mut base);
            let spec = SweepSpec { p: base.params.p, q: base.params.q, m_from, m_to, steps };
            let root = output_root(out.as_deref(), &base);
            let dir = sweep_dir(&root, &spec, &base);
            let pool = rayon::ThreadPoolBuilder::new().num_threads(jobs.unwrap_or(0)).build()?;
            let summary = pool.install(|| sweep(&spec, &base, &dir))?;
            print!("{}", table(&summary.records));
            for (m, e) in &summary.errors {
                println!("error m={m}: {e}");
            }
            let opt = |v: Option<f64>| v.map_or_else(|| "none".to_owned(), |v| v.to_string());
            println!("m_b={} spacing={}", summary.m_b, summary.spacing);
            println!(
                "last_converged={} first_blow_up={} m_hat={}",
                opt(summary.last_converged),
                opt(summary.first_blow_up),
                opt(summary.m_hat)
            );
            match summary.threshold_ok {
                Some(true) => println!("threshold=consistent"),
                Some(false) => println!("threshold=inconsistent"),
                None => println!("threshold=no-flip"),
            }
            println!("completed={} failed={}", summary.records.len(), summary.errors.len());
            println!("dir={}", summary.dir.display());
            Ok(summary.exit_code())
        }
        Cmd::Steady { p, q, m, samples } => {
            print!("{}", commands::steady_text(p, q, m, samples)?);
            Ok(0)
        }
        Cmd::LyapunovCheck { p, q, k, eps } => {
            let report = commands::lyapunov_check(p, q, k, eps)?;
            println!("{}", serde_json::to_string_pretty(&report)?);
            Ok(if report.pass { 0 } else { 1 })
        }
        Cmd::Report { dir } => {
            let records = read_index(&dir).with_context(|| format!("reading sweep {}", dir.display()))?;
            print!("{}", table(&records));
            println!("{} records", records.len());
            Ok(0)
        }
    }
}
