//! Text and JSON output of the `steady` and `lyapunov-check` subcommands.

use std::fmt::Write;

use anyhow::Result;
use dhj_core::{LyapunovEvaluator, ProblemParams, SampleGrid, SteadyState};
use serde::Serialize;

/// `k`, `M_b`, `alpha` as `key=value` lines, then `x,v,dv` CSV with
/// `samples` equally spaced points on `[0, 1]`. `dv` is empty where it is
/// infinite.
pub fn steady_text(p: f64, q: f64, m: f64, samples: usize) -> Result<String> {
    anyhow::ensure!(samples >= 2, "samples >= 2");
    let s = SteadyState::for_mass(p, q, m)?;
    let mut out = String::new();
    match s.k() {
        Some(k) => writeln!(out, "k={k}")?,
        None => writeln!(out, "k=none")?,
    }
    writeln!(out, "m_b={}", s.m_b)?;
    writeln!(out, "alpha={}", s.alpha)?;
    writeln!(out, "x,v,dv")?;
    for i in 0..samples {
        let x = i as f64 / (samples - 1) as f64;
        let v = s.value(x)?;
        match s.derivative(x) {
            Ok(d) => writeln!(out, "{x},{v},{d}")?,
            Err(_) => writeln!(out, "{x},{v},")?,
        }
    }
    Ok(out)
}

pub const EQDIF_TOL: f64 = 1e-4;
pub const TOU_TOL: f64 = 1e-5;
pub const EQDIF_H: f64 = 1e-3;
pub const TOU_H: f64 = 1e-4;

#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct GridSpec {
    pub u_min: f64,
    pub u_max: f64,
    pub nu: usize,
    pub v_min: f64,
    pub v_max: f64,
    pub nv: usize,
}

impl From<GridSpec> for SampleGrid {
    fn from(g: GridSpec) -> Self {
        SampleGrid { u_min: g.u_min, u_max: g.u_max, nu: g.nu, v_min: g.v_min, v_max: g.v_max, nv: g.nv }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct ResidualCheck {
    pub grid: GridSpec,
    pub h: f64,
    pub max_residual: f64,
    pub tolerance: f64,
    pub pass: bool,
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct LyapunovCheckReport {
    pub p: f64,
    pub q: f64,
    pub k_bound: f64,
    pub eps: f64,
    pub quad_tol: f64,
    pub eqdif: ResidualCheck,
    pub tou: ResidualCheck,
    pub pass: bool,
}

/// Residuals of the two defining equations on a 21 x 21 grid with
/// `|u| <= K/2`; `v` spans `[-3, 3]`, or `[0.1, 3]` for the
/// characteristic equation, which is singular at `v = 0`.
pub fn lyapunov_check(p: f64, q: f64, k_bound: f64, eps: f64) -> Result<LyapunovCheckReport> {
    let params = ProblemParams::new(p, q, 0.0, eps, k_bound)?;
    let ev = LyapunovEvaluator::new(&params);
    let half = 0.5 * k_bound;
    let eq_grid = GridSpec { u_min: -half, u_max: half, nu: 21, v_min: -3.0, v_max: 3.0, nv: 21 };
    let tou_grid = GridSpec { v_min: 0.1, ..eq_grid };
    let r_eq = ev.check_eqdif(&eq_grid.into(), EQDIF_H)?;
    let r_tou = ev.check_tou(&tou_grid.into(), TOU_H)?;
    let eqdif =
        ResidualCheck { grid: eq_grid, h: EQDIF_H, max_residual: r_eq, tolerance: EQDIF_TOL, pass: r_eq < EQDIF_TOL };
    let tou =
        ResidualCheck { grid: tou_grid, h: TOU_H, max_residual: r_tou, tolerance: TOU_TOL, pass: r_tou < TOU_TOL };
    Ok(LyapunovCheckReport {
        p,
        q,
        k_bound,
        eps,
        quad_tol: ev.quad().tol.min(dhj_core::lyapunov::CHECK_QUAD_TOL),
        eqdif,
        tou,
        pass: eqdif.pass && tou.pass,
    })
}
