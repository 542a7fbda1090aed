//! Finite-difference integration of the regularized problem
//!
//! `u_t = (p-1) (u_x^2 + eps^2)^{(p-2)/2} u_xx + (u_x^2 + eps^2)^{q/2}`
//!
//! on `(0, 1)` with `u(t, 0) = 0`, `u(t, 1) = M`. Second-order centered
//! differences in space; explicit Euler under a CFL bound or a semi-implicit
//! step that treats the frozen-coefficient diffusion implicitly and the
//! gradient source explicitly.

use alloc::vec;
use alloc::vec::Vec;

// Unused when a dependency links std.
#[allow(unused_imports)]
use num_traits::Float;

use crate::error::{Error, Result};
use crate::grid::GridState;
use crate::params::{epsilon_bound, ProblemParams};
use crate::steady::SteadyState;

/// Relative change of the blow-up time tolerated under refinement.
pub const CERTIFY_SHIFT: f64 = 0.10;

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
#[cfg_attr(feature = "serde", derive(serde::Serialize, serde::Deserialize))]
#[cfg_attr(feature = "serde", serde(rename_all = "kebab-case"))]
pub enum Stepper {
    Explicit,
    SemiImplicit,
}

#[derive(Debug, Clone, PartialEq)]
#[cfg_attr(feature = "serde", derive(serde::Serialize, serde::Deserialize))]
#[cfg_attr(feature = "serde", serde(default, deny_unknown_fields))]
pub struct SolveConfig {
    /// Interior node count.
    pub nodes: usize,
    /// Decreasing regularization levels for [`eps_continuation`].
    pub eps_schedule: Vec<f64>,
    pub dt_init: f64,
    pub dt_min: f64,
    pub dt_max: f64,
    pub cfl_safety: f64,
    /// Largest nodal change accepted in one step.
    pub max_change: f64,
    pub t_end: f64,
    pub blowup_grad_threshold: f64,
    pub stepper: Stepper,
    /// Time between stored snapshots; `0` stores every accepted step.
    pub snapshot_interval: f64,
    /// Re-run under `dt/2` and `dx/2` when the gradient threshold is crossed.
    pub certify_blowup: bool,
}

impl Default for SolveConfig {
    fn default() -> Self {
        Self {
            nodes: 400,
            eps_schedule: vec![0.2, 0.1, 0.05],
            dt_init: 1e-4,
            dt_min: 1e-12,
            dt_max: 1e-2,
            cfl_safety: 0.45,
            max_change: 1e-2,
            t_end: 50.0,
            blowup_grad_threshold: 50.0,
            stepper: Stepper::SemiImplicit,
            snapshot_interval: 0.5,
            certify_blowup: true,
        }
    }
}

impl SolveConfig {
    pub fn validate(&self) -> Result<()> {
        if self.nodes < 2 {
            return Err(Error::Range("nodes >= 2"));
        }
        if !(self.dt_min > 0.0) || !(self.dt_max >= self.dt_min) || !(self.dt_init > 0.0) {
            return Err(Error::Range("0 < dt_min <= dt_max, dt_init > 0"));
        }
        if !(self.cfl_safety > 0.0 && self.cfl_safety < 1.0) {
            return Err(Error::Range("0 < cfl_safety < 1"));
        }
        if !(self.max_change > 0.0) {
            return Err(Error::Range("max_change > 0"));
        }
        if !(self.t_end > 0.0) || !self.t_end.is_finite() {
            return Err(Error::Range("t_end > 0"));
        }
        if !(self.blowup_grad_threshold > 0.0) {
            return Err(Error::Range("blowup_grad_threshold > 0"));
        }
        if !(self.snapshot_interval >= 0.0) {
            return Err(Error::Range("snapshot_interval >= 0"));
        }
        if self.eps_schedule.windows(2).any(|w| !(w[1] < w[0])) {
            return Err(Error::Range("eps_schedule strictly decreasing"));
        }
        Ok(())
    }

    /// Same run with every step-size knob halved.
    pub fn halved_dt(&self) -> Self {
        Self {
            dt_init: 0.5 * self.dt_init,
            dt_max: 0.5 * self.dt_max,
            dt_min: 0.5 * self.dt_min,
            max_change: 0.5 * self.max_change,
            ..self.clone()
        }
    }

    /// Same run on the nested grid with half the spacing.
    pub fn halved_dx(&self) -> Self {
        Self { nodes: 2 * self.nodes + 1, ..self.clone() }
    }
}

/// Initial data `u0` with `u0(0) = 0`, `u0(1) = M`.
#[derive(Debug, Clone, PartialEq)]
#[cfg_attr(feature = "serde", derive(serde::Serialize, serde::Deserialize))]
#[cfg_attr(feature = "serde", serde(tag = "kind", rename_all = "kebab-case"))]
pub enum InitialProfile {
    /// `u0 = M x`.
    Linear,
    /// `u0 = sum_j c_j x^j`.
    Polynomial { coeffs: Vec<f64> },
    /// Piecewise-linear interpolation of samples on increasing `xs` from 0 to 1.
    Table { xs: Vec<f64>, us: Vec<f64> },
    /// The steady state `V_{k(M)}`.
    Steady,
}

/// Tolerance on the boundary pins of an initial profile.
pub const PIN_TOL: f64 = 1e-12;

impl InitialProfile {
    /// Checks the boundary pins against `m` and the table shape.
    pub fn validate(&self, p: &ProblemParams) -> Result<()> {
        if let InitialProfile::Table { xs, us } = self {
            if xs.len() != us.len() || xs.len() < 2 {
                return Err(Error::Invalid("table needs matching xs/us with >= 2 samples".into()));
            }
            if xs.windows(2).any(|w| !(w[1] > w[0])) {
                return Err(Error::Invalid("table xs must be strictly increasing".into()));
            }
            if xs[0] != 0.0 || xs[xs.len() - 1] != 1.0 {
                return Err(Error::Invalid("table xs must span [0, 1]".into()));
            }
        }
        if let InitialProfile::Steady = self {
            SteadyState::for_mass(p.p, p.q, p.m)?;
        }
        let (a, b) = (self.eval(p, 0.0)?, self.eval(p, 1.0)?);
        if a.abs() > PIN_TOL {
            return Err(Error::Invalid("initial profile must vanish at x = 0".into()));
        }
        if (b - p.m).abs() > PIN_TOL * p.m.max(1.0) {
            return Err(Error::Invalid("initial profile must equal M at x = 1".into()));
        }
        Ok(())
    }

    pub fn eval(&self, p: &ProblemParams, x: f64) -> Result<f64> {
        Ok(match self {
            InitialProfile::Linear => p.m * x,
            InitialProfile::Polynomial { coeffs } => coeffs.iter().rev().fold(0.0, |acc, c| acc * x + c),
            InitialProfile::Table { xs, us } => {
                let j = xs.partition_point(|&s| s <= x).clamp(1, xs.len() - 1);
                let w = (x - xs[j - 1]) / (xs[j] - xs[j - 1]);
                us[j - 1] + w * (us[j] - us[j - 1])
            }
            InitialProfile::Steady => SteadyState::for_mass(p.p, p.q, p.m)?.value(x)?,
        })
    }

    /// Validated grid state on `nodes` interior nodes.
    pub fn sample(&self, p: &ProblemParams, nodes: usize) -> Result<GridState> {
        self.validate(p)?;
        let mut err = None;
        let s = GridState::from_fn(nodes, p.m, |x| {
            self.eval(p, x).unwrap_or_else(|e| {
                err = Some(e);
                f64::NAN
            })
        });
        match err {
            Some(e) => Err(e),
            None => s,
        }
    }
}

fn source_and_diffusivity(p: f64, q: f64, eps: f64, ux: f64) -> (f64, f64) {
    let s = ux * ux + eps * eps;
    ((p - 1.0) * s.powf(0.5 * (p - 2.0)), s.powf(0.5 * q))
}

/// Nodal right-hand side of the regularized equation; zero at the pins.
pub fn rhs(state: &GridState, params: &ProblemParams, eps: f64) -> Vec<f64> {
    let n = state.n();
    let dx = state.dx();
    let mut out = vec![0.0; n + 2];
    for i in 1..=n {
        let u = &state.u;
        let ux = (u[i + 1] - u[i - 1]) / (2.0 * dx);
        let uxx = (u[i + 1] - 2.0 * u[i] + u[i - 1]) / (dx * dx);
        let (diff, src) = source_and_diffusivity(params.p, params.q, eps, ux);
        out[i] = diff * uxx + src;
    }
    out
}

/// Largest explicit step allowed by the diffusion CFL bound.
pub fn explicit_dt_limit(state: &GridState, params: &ProblemParams, eps: f64, safety: f64) -> f64 {
    let dx = state.dx();
    let n = state.n();
    let worst =
        (1..=n).map(|i| source_and_diffusivity(params.p, params.q, eps, state.node_gradient(i)).0).fold(0.0, f64::max);
    safety * dx * dx / worst.max(f64::MIN_POSITIVE)
}

/// Optional source `g(t, x)` added to the right-hand side.
pub type Forcing<'a> = &'a dyn Fn(f64, f64) -> f64;

/// Advances one step of size `dt` with the given regularization.
///
/// The explicit stepper refuses steps above the CFL bound; both steppers
/// refuse steps that produce non-finite values.
pub fn step(
    state: &GridState,
    params: &ProblemParams,
    eps: f64,
    dt: f64,
    stepper: Stepper,
    cfl_safety: f64,
    forcing: Option<Forcing<'_>>,
) -> Result<GridState> {
    let n = state.n();
    let dx = state.dx();
    let u = &state.u;
    let g = |i: usize| forcing.map_or(0.0, |f| f(state.t, state.x(i)));
    let mut next = u.clone();
    match stepper {
        Stepper::Explicit => {
            if dt > explicit_dt_limit(state, params, eps, cfl_safety) {
                return Err(Error::StepRejected { reason: "CFL bound" });
            }
            let r = rhs(state, params, eps);
            for i in 1..=n {
                next[i] = u[i] + dt * (r[i] + g(i));
            }
        }
        Stepper::SemiImplicit => {
            let mut lower = vec![0.0; n];
            let mut diag = vec![0.0; n];
            let mut upper = vec![0.0; n];
            let mut b = vec![0.0; n];
            for i in 1..=n {
                let ux = state.node_gradient(i);
                let (diff, src) = source_and_diffusivity(params.p, params.q, eps, ux);
                let r = dt * diff / (dx * dx);
                lower[i - 1] = -r;
                diag[i - 1] = 1.0 + 2.0 * r;
                upper[i - 1] = -r;
                b[i - 1] = u[i] + dt * (src + g(i));
            }
            b[0] += -lower[0] * u[0];
            b[n - 1] += -upper[n - 1] * u[n + 1];
            solve_tridiagonal(&lower, &mut diag, &upper, &mut b);
            next[1..=n].copy_from_slice(&b);
        }
    }
    if next.iter().any(|v| !v.is_finite()) {
        return Err(Error::StepRejected { reason: "non-finite value" });
    }
    let inv = 1.0 / dt;
    let u_t = next.iter().zip(u).map(|(a, b)| (a - b) * inv).collect();
    Ok(GridState { t: state.t + dt, u: next, u_t, dt_last: dt })
}

/// Thomas algorithm; `diag` and `rhs` are overwritten, the solution lands in `rhs`.
fn solve_tridiagonal(lower: &[f64], diag: &mut [f64], upper: &[f64], rhs: &mut [f64]) {
    let n = diag.len();
    for i in 1..n {
        let w = lower[i] / diag[i - 1];
        diag[i] -= w * upper[i - 1];
        rhs[i] -= w * rhs[i - 1];
    }
    rhs[n - 1] /= diag[n - 1];
    for i in (0..n - 1).rev() {
        rhs[i] = (rhs[i] - upper[i] * rhs[i + 1]) / diag[i];
    }
}

/// `sup|u0| + M + 2 - cosh(eps x)`, an upper barrier for the regularized problem.
pub fn supersolution(params: &ProblemParams, sup_u0: f64, x: f64) -> f64 {
    sup_u0 + params.m + 2.0 - (params.eps * x).cosh()
}

/// Checks `u(t, x) <= sup|u0| + M + 2 - cosh(eps x) + tol` at every node.
pub fn supersolution_guard(state: &GridState, params: &ProblemParams, sup_u0: f64, tol: f64) -> Result<()> {
    for (i, &u) in state.u.iter().enumerate() {
        let excess = u - supersolution(params, sup_u0, state.x(i));
        if excess > tol {
            return Err(Error::GuardViolation { node: i, t: state.t, excess });
        }
    }
    Ok(())
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
#[cfg_attr(feature = "serde", derive(serde::Serialize, serde::Deserialize))]
#[cfg_attr(feature = "serde", serde(rename_all = "lowercase"))]
pub enum Side {
    Left,
    Right,
}

#[derive(Debug, Clone, Copy, PartialEq)]
#[cfg_attr(feature = "serde", derive(serde::Serialize, serde::Deserialize))]
#[cfg_attr(feature = "serde", serde(tag = "kind", rename_all = "kebab-case"))]
pub enum Termination {
    /// Reached `t_end`.
    Completed,
    /// `max |u_x|` crossed the blow-up threshold.
    GradientThreshold { t_star: f64, max_gradient: f64, cell: usize, side: Side },
    /// Step rejections drove `dt` below `dt_min`.
    StepCollapse { t: f64 },
}

/// Time-series row for one accepted step.
#[derive(Debug, Clone, Copy, PartialEq)]
#[cfg_attr(feature = "serde", derive(serde::Serialize, serde::Deserialize))]
pub struct StepStats {
    pub t: f64,
    pub dt: f64,
    pub sup_u: f64,
    pub min_u: f64,
    pub sup_ux: f64,
    pub min_ux: f64,
    pub sup_ut: f64,
    pub sup_abs_ut: f64,
}

impl StepStats {
    pub fn of(state: &GridState) -> Self {
        let g = state.cell_gradients();
        Self {
            t: state.t,
            dt: state.dt_last,
            sup_u: state.sup(),
            min_u: state.min(),
            sup_ux: g.iter().copied().fold(f64::NEG_INFINITY, f64::max),
            min_ux: g.iter().copied().fold(f64::INFINITY, f64::min),
            sup_ut: state.u_t.iter().copied().fold(f64::NEG_INFINITY, f64::max),
            sup_abs_ut: state.sup_abs_ut(),
        }
    }

    pub fn max_abs_gradient(&self) -> f64 {
        self.sup_ux.abs().max(self.min_ux.abs())
    }
}

/// Refinement evidence for a gradient blow-up.
#[derive(Debug, Clone, Copy, PartialEq)]
#[cfg_attr(feature = "serde", derive(serde::Serialize, serde::Deserialize))]
pub struct BlowUpCertificate {
    pub t_star: f64,
    pub side: Side,
    /// Crossing time with every step-size knob halved, if it crossed.
    pub t_star_dt_half: Option<f64>,
    /// Crossing time on the grid with half the spacing, if it crossed.
    pub t_star_dx_half: Option<f64>,
}

impl BlowUpCertificate {
    pub fn shifts(&self) -> (Option<f64>, Option<f64>) {
        let rel = |t: Option<f64>| t.map(|t| (t - self.t_star).abs() / self.t_star);
        (rel(self.t_star_dt_half), rel(self.t_star_dx_half))
    }

    /// Both refinements crossed within [`CERTIFY_SHIFT`].
    pub fn is_certified(&self) -> bool {
        matches!(self.shifts(), (Some(a), Some(b)) if a < CERTIFY_SHIFT && b < CERTIFY_SHIFT)
    }
}

/// Nodal record of a guard failure during a run.
#[derive(Debug, Clone, Copy, PartialEq)]
#[cfg_attr(feature = "serde", derive(serde::Serialize, serde::Deserialize))]
pub struct GuardRecord {
    pub t: f64,
    pub node: usize,
    pub excess: f64,
}

#[derive(Debug, Clone, PartialEq)]
#[cfg_attr(feature = "serde", derive(serde::Serialize, serde::Deserialize))]
pub struct Trajectory {
    pub params: ProblemParams,
    pub snapshots: Vec<GridState>,
    pub stats: Vec<StepStats>,
    pub termination: Termination,
    /// `int_0^T int_0^1 u_t^2 dx dt` over accepted steps.
    pub ut_l2: f64,
    pub sup_abs_u0: f64,
    pub min_u0: f64,
    pub max_u0: f64,
    /// `|u0|_inf + |u0'|_inf` on the grid.
    pub w1inf_u0: f64,
    pub rejected_steps: usize,
    pub guard_violations: Vec<GuardRecord>,
    pub certificate: Option<BlowUpCertificate>,
}

impl Trajectory {
    pub fn final_state(&self) -> &GridState {
        self.snapshots.last().expect("trajectory holds the initial state")
    }

    pub fn t_final(&self) -> f64 {
        self.final_state().t
    }

    /// `max_t max_x |u_x|` over accepted steps.
    pub fn max_abs_gradient(&self) -> f64 {
        self.stats.iter().map(StepStats::max_abs_gradient).fold(0.0, f64::max)
    }
}

/// Integrator for one parameter set.
pub struct Solver<'a> {
    params: ProblemParams,
    config: SolveConfig,
    forcing: Option<Forcing<'a>>,
}

impl<'a> Solver<'a> {
    pub fn new(params: ProblemParams, config: SolveConfig) -> Result<Self> {
        config.validate()?;
        Ok(Self { params: params.validate()?, config, forcing: None })
    }

    /// Adds `g(t, x)` to the right-hand side (manufactured solutions).
    pub fn with_forcing(mut self, forcing: Forcing<'a>) -> Self {
        self.forcing = Some(forcing);
        self
    }

    pub fn config(&self) -> &SolveConfig {
        &self.config
    }

    pub fn run(&self, initial: GridState) -> Result<Trajectory> {
        self.run_observed(initial, &mut |_| {})
    }

    /// Integrates from `initial` to `t_end` or the blow-up threshold, calling
    /// `observe` after every accepted step.
    pub fn run_observed(&self, initial: GridState, observe: &mut dyn FnMut(&GridState)) -> Result<Trajectory> {
        let cfg = &self.config;
        let params = &self.params;
        if initial.u.iter().any(|v| v.abs() > params.k_bound) {
            return Err(Error::Range("K >= max(|u0|, M) and K > 0"));
        }
        let sup_u0 = initial.sup_abs();
        let grad0 = initial.max_abs_gradient().0;
        let mut traj = Trajectory {
            params: *params,
            snapshots: vec![initial.clone()],
            stats: Vec::new(),
            termination: Termination::Completed,
            ut_l2: 0.0,
            sup_abs_u0: sup_u0,
            min_u0: initial.min(),
            max_u0: initial.sup(),
            w1inf_u0: sup_u0 + grad0,
            rejected_steps: 0,
            guard_violations: Vec::new(),
            certificate: None,
        };
        let guard_tol = 1e-9 * (1.0 + sup_u0);
        let mut state = initial;
        let mut dt = cfg.dt_init.min(cfg.dt_max);
        let mut accepted_run = 0usize;
        let every_step = cfg.snapshot_interval == 0.0;
        let mut next_snap = state.t + cfg.snapshot_interval;
        let t_end = state.t + cfg.t_end;
        let mut prev_grad = grad0;
        let land = 1e-12 * t_end.max(1.0);

        while state.t < t_end - land {
            let mut h = dt.min(t_end - state.t);
            if !every_step {
                h = h.min(next_snap - state.t);
            }
            let candidate = step(&state, params, params.eps, h, cfg.stepper, cfg.cfl_safety, self.forcing);
            let accepted = match candidate {
                Ok(next) if next.sup_distance(&state) <= cfg.max_change => Some(next),
                Ok(_) | Err(Error::StepRejected { .. }) => None,
                Err(e) => return Err(e),
            };
            let Some(next) = accepted else {
                traj.rejected_steps += 1;
                accepted_run = 0;
                if 0.5 * h < cfg.dt_min {
                    if !state.is_finite() {
                        return Err(Error::NonFiniteValue { t: state.t });
                    }
                    traj.termination = Termination::StepCollapse { t: state.t };
                    break;
                }
                dt = 0.5 * h;
                continue;
            };

            let dx = next.dx();
            traj.ut_l2 += h * next.u_t.iter().map(|v| v * v).sum::<f64>() * dx;
            state = next;
            let stats = StepStats::of(&state);
            traj.stats.push(stats);
            observe(&state);

            accepted_run += 1;
            if accepted_run >= 20 {
                dt = (dt * 1.2).min(cfg.dt_max);
                accepted_run = 0;
            }

            let (grad, cell) = state.max_abs_gradient();
            if grad >= cfg.blowup_grad_threshold {
                let w = (cfg.blowup_grad_threshold - prev_grad) / (grad - prev_grad);
                let t_star = state.t - h + w.clamp(0.0, 1.0) * h;
                let side = if 2 * cell < state.n() + 1 { Side::Left } else { Side::Right };
                traj.termination = Termination::GradientThreshold { t_star, max_gradient: grad, cell, side };
                self.snapshot(&mut traj, &state, sup_u0, guard_tol);
                return Ok(traj);
            }
            prev_grad = grad;

            if every_step || state.t >= next_snap - land {
                self.snapshot(&mut traj, &state, sup_u0, guard_tol);
                while next_snap <= state.t + land {
                    next_snap += cfg.snapshot_interval;
                }
            }
        }
        if traj.final_state().t != state.t {
            self.snapshot(&mut traj, &state, sup_u0, guard_tol);
        }
        Ok(traj)
    }

    fn snapshot(&self, traj: &mut Trajectory, state: &GridState, sup_u0: f64, tol: f64) {
        if let Err(Error::GuardViolation { node, t, excess }) = supersolution_guard(state, &self.params, sup_u0, tol) {
            traj.guard_violations.push(GuardRecord { t, node, excess });
        }
        traj.snapshots.push(state.clone());
    }
}

/// Samples `u0`, integrates, and certifies a threshold crossing by refinement
/// when `config.certify_blowup` is set.
pub fn solve(params: &ProblemParams, u0: &InitialProfile, config: &SolveConfig) -> Result<Trajectory> {
    let initial = u0.sample(params, config.nodes)?;
    let mut traj = Solver::new(*params, config.clone())?.run(initial)?;
    if let Termination::GradientThreshold { t_star, side, .. } = traj.termination {
        if config.certify_blowup {
            let crossing = |cfg: SolveConfig| -> Result<Option<f64>> {
                let cfg = SolveConfig { certify_blowup: false, snapshot_interval: cfg.t_end, ..cfg };
                let t = Solver::new(*params, cfg.clone())?.run(u0.sample(params, cfg.nodes)?)?;
                Ok(match t.termination {
                    Termination::GradientThreshold { t_star, .. } => Some(t_star),
                    _ => None,
                })
            };
            traj.certificate = Some(BlowUpCertificate {
                t_star,
                side,
                t_star_dt_half: crossing(config.halved_dt())?,
                t_star_dx_half: crossing(config.halved_dx())?,
            });
        }
    }
    Ok(traj)
}

/// Outcome of integrating the same data over decreasing `eps`.
#[derive(Debug, Clone, PartialEq)]
#[cfg_attr(feature = "serde", derive(serde::Serialize, serde::Deserialize))]
pub struct ContinuationReport {
    pub eps: Vec<f64>,
    /// Max over shared snapshot times of `|u_{eps_i} - u_{eps_{i+1}}|_inf`.
    pub distances: Vec<f64>,
    /// `max |u_x|` per level.
    pub gradient_sup: Vec<f64>,
    /// `max_i gradient_sup[i]`, the measured uniform constant `C`.
    pub gradient_bound: f64,
    /// `int int u_t^2` per level.
    pub ut_l2: Vec<f64>,
    /// `|u0|_{W^{1,inf}}^p + 1 + T C^{2q}`.
    pub ut_l2_majorant: f64,
    pub horizon: f64,
    pub terminations: Vec<Termination>,
}

/// Runs [`Solver`] for each `eps` in the schedule and measures how the
/// regularized solutions contract as `eps` decreases.
pub fn eps_continuation(
    params: &ProblemParams,
    u0: &InitialProfile,
    config: &SolveConfig,
) -> Result<ContinuationReport> {
    config.validate()?;
    let sched = &config.eps_schedule;
    if sched.len() < 3 {
        return Err(Error::Range("eps_schedule with >= 3 levels"));
    }
    let bound = epsilon_bound(params.p, params.q)?;
    if sched.iter().any(|&e| !(e > 0.0 && e < bound)) {
        return Err(Error::Range("eps below cosh bound"));
    }
    let cfg = SolveConfig { certify_blowup: false, ..config.clone() };
    let mut runs = Vec::with_capacity(sched.len());
    for &eps in sched {
        let p = params.with_eps(eps)?;
        runs.push(Solver::new(p, cfg.clone())?.run(u0.sample(&p, cfg.nodes)?)?);
    }
    let horizon = runs.iter().map(Trajectory::t_final).fold(f64::INFINITY, f64::min);
    let distances: Vec<f64> = runs
        .windows(2)
        .map(|w| {
            let mut worst = 0.0f64;
            for a in &w[0].snapshots {
                if a.t > horizon {
                    break;
                }
                if let Some(b) = w[1].snapshots.iter().find(|b| (b.t - a.t).abs() <= 1e-9 * a.t.max(1.0)) {
                    worst = worst.max(a.sup_distance(b));
                }
            }
            worst
        })
        .collect();
    let gradient_sup: Vec<f64> = runs.iter().map(Trajectory::max_abs_gradient).collect();
    let gradient_bound = gradient_sup.iter().copied().fold(0.0, f64::max);
    let w1 = runs[0].w1inf_u0;
    let ut_l2_majorant = w1.powf(params.p) + 1.0 + horizon * gradient_bound.powf(2.0 * params.q);
    if distances.windows(2).any(|w| !(w[1] < w[0])) {
        return Err(Error::NotCauchy { distances });
    }
    Ok(ContinuationReport {
        eps: sched.clone(),
        distances,
        gradient_sup,
        gradient_bound,
        ut_l2: runs.iter().map(|r| r.ut_l2).collect(),
        ut_l2_majorant,
        horizon,
        terminations: runs.iter().map(|r| r.termination).collect(),
    })
}
