//! Zelenyak Lyapunov pair for the regularized problem.
//!
//! With `a = q - p` and `s = v^2 + eps^2`:
//!
//! * `f(u, v) = [1 + (a/(p-1)) s^{a/2} (K+1-u)]^{-(a+2)/a}` solves the
//!   characteristic equation
//!   `f_u - ((a+2)/(p-1)) s^{a/2} f - (s^{(a+2)/2}/((p-1) v)) f_v = 0`.
//! * `rho(u, v) = int_0^v int_0^z f(u, s) ds dz = int_0^v (v - s) f(u, s) ds`.
//! * `H(u) = eps^{a+2} f(u, 0)/(p-1)` and
//!   `Phi = rho - int_0^u H + K + 1`, which satisfies
//!   `Phi_u - v Phi_uv + (s^{(a+2)/2}/(p-1)) Phi_vv = 0`.
//! * `Psi = s^{(2-p)/2} f/(p-1)` is the dissipation weight, and
//!   `A(u, v)` is `Psi` with `eps` replaced by 1, a lower bound for
//!   `eps <= 1/2`.
//!
//! Along a regularized trajectory `L(t) = int_0^1 Phi(u, u_x) dx` satisfies
//! `dL/dt = -int_0^1 Psi(u, u_x) u_t^2 dx`.

use alloc::vec::Vec;

// Unused when a dependency links std.
#[allow(unused_imports)]
use num_traits::Float;

use crate::error::{Error, Result};
use crate::grid::GridState;
use crate::params::ProblemParams;
use crate::quad::{simpson, QuadConfig};

/// Quadrature tolerance used for `rho` inside [`LyapunovEvaluator::check_eqdif`].
pub const CHECK_QUAD_TOL: f64 = 1e-12;

/// Evaluates `f`, `rho`, `H`, `Phi`, `Psi` and `A` at fixed `(p, q, K, eps)`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct LyapunovEvaluator {
    p: f64,
    q: f64,
    k_bound: f64,
    eps: f64,
    quad: QuadConfig,
}

impl LyapunovEvaluator {
    pub fn new(params: &ProblemParams) -> Self {
        Self::with_quad(params, QuadConfig::default())
    }

    pub fn with_quad(params: &ProblemParams, quad: QuadConfig) -> Self {
        Self { p: params.p, q: params.q, k_bound: params.k_bound, eps: params.eps, quad }
    }

    pub fn k_bound(&self) -> f64 {
        self.k_bound
    }

    pub fn eps(&self) -> f64 {
        self.eps
    }

    pub fn quad(&self) -> QuadConfig {
        self.quad
    }

    fn fine(&self) -> Self {
        Self { quad: QuadConfig { tol: self.quad.tol.min(CHECK_QUAD_TOL), ..self.quad }, ..*self }
    }

    fn check_u(&self, u: f64) -> Result<()> {
        if u.abs() <= self.k_bound {
            Ok(())
        } else {
            Err(Error::Domain { what: "|u| > K", value: u })
        }
    }

    /// `f` with `eps` replaced by an arbitrary `scale`; `scale = 1` gives the
    /// second factor of `A`.
    fn f_with(&self, u: f64, v: f64, scale: f64) -> f64 {
        let a = self.q - self.p;
        let s = v * v + scale * scale;
        let bracket = 1.0 + a / (self.p - 1.0) * s.powf(0.5 * a) * (self.k_bound + 1.0 - u);
        bracket.powf(-(a + 2.0) / a)
    }

    pub fn f_eps(&self, u: f64, v: f64) -> Result<f64> {
        self.check_u(u)?;
        Ok(self.f_with(u, v, self.eps))
    }

    /// `rho(u, v)`, computed as the single integral `int_0^|v| (|v| - s) f(u, s) ds`.
    pub fn rho_eps(&self, u: f64, v: f64) -> Result<f64> {
        self.check_u(u)?;
        let w = v.abs();
        simpson(|s| (w - s) * self.f_with(u, s, self.eps), 0.0, w, self.quad)
    }

    /// `rho_v(u, v) = int_0^v f(u, s) ds`.
    pub fn rho_v(&self, u: f64, v: f64) -> Result<f64> {
        self.check_u(u)?;
        simpson(|s| self.f_with(u, s, self.eps), 0.0, v, self.quad)
    }

    /// `H(u) = eps^{q-p+2} f(u, 0)/(p-1)`, using `rho_u(u, 0) = 0`.
    pub fn h_eps(&self, u: f64) -> Result<f64> {
        self.check_u(u)?;
        let a = self.q - self.p;
        Ok(self.eps.powf(a + 2.0) * self.f_with(u, 0.0, self.eps) / (self.p - 1.0))
    }

    /// `int_0^u H(s) ds` in closed form.
    ///
    /// With `w(s) = 1 + c (K+1-s)` and `c = (a/(p-1)) eps^a`, the antiderivative
    /// of `w^{-(a+2)/a}` is `(a/(2c)) w^{-2/a}`.
    pub fn h_integral(&self, u: f64) -> Result<f64> {
        self.check_u(u)?;
        let a = self.q - self.p;
        let c = a / (self.p - 1.0) * self.eps.powf(a);
        let w = |s: f64| 1.0 + c * (self.k_bound + 1.0 - s);
        let prim = |s: f64| a / (2.0 * c) * w(s).powf(-2.0 / a);
        Ok(self.eps.powf(a + 2.0) / (self.p - 1.0) * (prim(u) - prim(0.0)))
    }

    /// `C = K + 1`.
    pub fn phi_constant(&self) -> f64 {
        self.k_bound + 1.0
    }

    pub fn phi_eps(&self, u: f64, v: f64) -> Result<f64> {
        Ok(self.rho_eps(u, v)? - self.h_integral(u)? + self.phi_constant())
    }

    pub fn psi_eps(&self, u: f64, v: f64) -> Result<f64> {
        self.check_u(u)?;
        let s = v * v + self.eps * self.eps;
        Ok(s.powf(0.5 * (2.0 - self.p)) * self.f_with(u, v, self.eps) / (self.p - 1.0))
    }

    /// `A(u, v)`, the `eps`-free lower bound of `Psi`.
    pub fn cal_a(&self, u: f64, v: f64) -> Result<f64> {
        self.check_u(u)?;
        Ok((v * v + 1.0).powf(0.5 * (2.0 - self.p)) * self.f_with(u, v, 1.0) / (self.p - 1.0))
    }

    /// `inf { A(u, v) : |u| <= K, |v| <= r }`, attained at `u = -K`, `|v| = r`.
    pub fn theta_inf(&self, r: f64) -> Result<f64> {
        if !(r >= 0.0) {
            return Err(Error::Range("R >= 0"));
        }
        self.cal_a(-self.k_bound, r)
    }

    /// Max residual of `Phi_u - v Phi_uv + (s^{(a+2)/2}/(p-1)) Phi_vv = 0`
    /// over `grid`, all derivatives by centered differences of step `h`.
    ///
    /// Second differences divide quadrature error by `h^2`, so `rho` is
    /// evaluated here at tolerance at most [`CHECK_QUAD_TOL`].
    pub fn check_eqdif(&self, grid: &SampleGrid, h: f64) -> Result<f64> {
        let fine = self.fine();
        let lim = self.k_bound - h;
        if grid.u_min < -lim || grid.u_max > lim {
            return Err(Error::Range("sample grid inside [-K+h, K-h]"));
        }
        let a = self.q - self.p;
        let mut worst = 0.0f64;
        for (u, v) in grid.points() {
            let phi = |du: f64, dv: f64| fine.phi_eps(u + du, v + dv);
            let c = phi(0.0, 0.0)?;
            let phi_u = (phi(h, 0.0)? - phi(-h, 0.0)?) / (2.0 * h);
            let phi_vv = (phi(0.0, h)? - 2.0 * c + phi(0.0, -h)?) / (h * h);
            let phi_uv = (phi(h, h)? - phi(h, -h)? - phi(-h, h)? + phi(-h, -h)?) / (4.0 * h * h);
            let s = v * v + self.eps * self.eps;
            let r = phi_u - v * phi_uv + s.powf(0.5 * (a + 2.0)) / (self.p - 1.0) * phi_vv;
            worst = worst.max(r.abs());
        }
        Ok(worst)
    }

    /// Max residual of the characteristic equation for `f` over the grid
    /// points with `v != 0`, derivatives by centered differences of step `h`.
    pub fn check_tou(&self, grid: &SampleGrid, h: f64) -> Result<f64> {
        let lim = self.k_bound - h;
        if grid.u_min < -lim || grid.u_max > lim {
            return Err(Error::Range("sample grid inside [-K+h, K-h]"));
        }
        let a = self.q - self.p;
        let mut worst = 0.0f64;
        for (u, v) in grid.points().filter(|&(_, v)| v != 0.0) {
            let f = |du: f64, dv: f64| self.f_with(u + du, v + dv, self.eps);
            let f_u = (f(h, 0.0) - f(-h, 0.0)) / (2.0 * h);
            let f_v = (f(0.0, h) - f(0.0, -h)) / (2.0 * h);
            let s = v * v + self.eps * self.eps;
            let r = f_u
                - (a + 2.0) / (self.p - 1.0) * s.powf(0.5 * a) * f(0.0, 0.0)
                - s.powf(0.5 * (a + 2.0)) / ((self.p - 1.0) * v) * f_v;
            worst = worst.max(r.abs());
        }
        Ok(worst)
    }

    /// Midpoint-rule `L = sum_cells Phi(u_mid, (u_{i+1}-u_i)/dx) dx`.
    pub fn lyapunov_value(&self, state: &GridState) -> Result<f64> {
        lyapunov_of(self, &state.u)
    }

    /// Checks `dL/dt = -int Psi u_t^2` along consecutive accepted steps.
    ///
    /// `states` must be successive solver outputs (each one step after the
    /// previous). Step `j` of the report compares `L(states[j+1]) - L(states[j])`
    /// with `dt int Psi(u_mid, u_x,mid) u_t^2 dx`, `u_mid` the average of the two
    /// states and `u_t` the discrete time derivative stored in `states[j+1]`.
    /// Step differences of `L` are tiny next to `L`, so `Phi` is evaluated
    /// here at tolerance at most [`CHECK_QUAD_TOL`].
    pub fn dissipation_check(&self, states: &[GridState]) -> Result<DissipationReport> {
        let fine = self.fine();
        let mut steps = Vec::with_capacity(states.len().saturating_sub(1));
        let mut l_prev = match states.first() {
            Some(s) => fine.lyapunov_value(s)?,
            None => return Ok(DissipationReport { l0: 0.0, steps }),
        };
        let l0 = l_prev;
        for pair in states.windows(2) {
            let (s0, s1) = (&pair[0], &pair[1]);
            let dt = s1.t - s0.t;
            if s1.u.len() != s0.u.len() || (dt - s1.dt_last).abs() > 1e-9 * dt.max(1e-300) {
                return Err(Error::Invalid("dissipation check needs consecutive steps".into()));
            }
            let l1 = fine.lyapunov_value(s1)?;
            let dx = s0.dx();
            let mut psi_sum = 0.0;
            let mut a_sum = 0.0;
            let n = s0.n();
            for i in 1..=n {
                let um = 0.5 * (s0.u[i] + s1.u[i]);
                let vm = 0.5 * (s0.node_gradient(i) + s1.node_gradient(i));
                let ut2 = s1.u_t[i] * s1.u_t[i];
                psi_sum += self.psi_eps(um, vm)? * ut2;
                a_sum += self.cal_a(um, vm)? * ut2;
            }
            steps.push(StepDissipation {
                t: s1.t,
                dt,
                dl: l1 - l_prev,
                dissipation: dt * psi_sum * dx,
                weighted_a: dt * a_sum * dx,
                l: l1,
            });
            l_prev = l1;
        }
        Ok(DissipationReport { l0, steps })
    }
}

fn lyapunov_of(ev: &LyapunovEvaluator, u: &[f64]) -> Result<f64> {
    let dx = 1.0 / (u.len() - 1) as f64;
    let mut sum = 0.0;
    for w in u.windows(2) {
        sum += ev.phi_eps(0.5 * (w[0] + w[1]), (w[1] - w[0]) / dx)?;
    }
    Ok(sum * dx)
}

/// Tensor grid of `(u, v)` sample points, endpoints included.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct SampleGrid {
    pub u_min: f64,
    pub u_max: f64,
    pub nu: usize,
    pub v_min: f64,
    pub v_max: f64,
    pub nv: usize,
}

impl SampleGrid {
    pub fn points(&self) -> impl Iterator<Item = (f64, f64)> + '_ {
        let lin = |a: f64, b: f64, n: usize, i: usize| {
            if n <= 1 {
                a
            } else {
                a + (b - a) * i as f64 / (n - 1) as f64
            }
        };
        (0..self.nu).flat_map(move |i| {
            (0..self.nv)
                .map(move |j| (lin(self.u_min, self.u_max, self.nu, i), lin(self.v_min, self.v_max, self.nv, j)))
        })
    }
}

/// Per-step Lyapunov bookkeeping.
#[derive(Debug, Clone, Copy, PartialEq)]
#[cfg_attr(feature = "serde", derive(serde::Serialize, serde::Deserialize))]
pub struct StepDissipation {
    pub t: f64,
    pub dt: f64,
    /// `L(t_{n+1}) - L(t_n)`.
    pub dl: f64,
    /// `dt int Psi u_t^2 dx`.
    pub dissipation: f64,
    /// `dt int A u_t^2 dx`.
    pub weighted_a: f64,
    /// `L(t_{n+1})`.
    pub l: f64,
}

#[derive(Debug, Clone, PartialEq)]
#[cfg_attr(feature = "serde", derive(serde::Serialize, serde::Deserialize))]
pub struct DissipationReport {
    /// `L` at the first state.
    pub l0: f64,
    pub steps: Vec<StepDissipation>,
}

impl DissipationReport {
    /// Indices of steps with
    /// `dL > -(1 - rel) dt int Psi u_t^2 + abs + abs_per_dt * dt`.
    pub fn violations(&self, abs: f64, abs_per_dt: f64, rel: f64) -> Vec<usize> {
        self.steps
            .iter()
            .enumerate()
            .filter(|(_, s)| s.dl > -(1.0 - rel) * s.dissipation + abs + abs_per_dt * s.dt)
            .map(|(i, _)| i)
            .collect()
    }

    /// Fails at the first step where `L` increases by more than the tolerance.
    pub fn ensure_monotone(&self, abs: f64, abs_per_dt: f64) -> Result<()> {
        match self.violations(abs, abs_per_dt, 1.0).first() {
            None => Ok(()),
            Some(&i) => Err(Error::MonotonicityViolation { step: i, increase: self.steps[i].dl }),
        }
    }

    /// `int_0^T int_0^1 A u_t^2 dx dt`.
    pub fn a_weighted_total(&self) -> f64 {
        self.steps.iter().map(|s| s.weighted_a).sum()
    }

    /// `int_0^T int_0^1 Psi u_t^2 dx dt`.
    pub fn psi_weighted_total(&self) -> f64 {
        self.steps.iter().map(|s| s.dissipation).sum()
    }

    /// Size of `D` below which `dL` is dominated by rounding in `L`.
    pub fn noise_floor(&self) -> f64 {
        let scale = self.steps.iter().map(|s| s.l.abs()).fold(self.l0.abs(), f64::max);
        1e4 * f64::EPSILON * scale
    }

    /// Worst `|dL + D| / D` over steps with `t` in `[t_from, t_to]` and
    /// `D > d_min`.
    pub fn worst_relative_mismatch(&self, t_from: f64, t_to: f64, d_min: f64) -> Option<f64> {
        self.steps
            .iter()
            .filter(|s| s.t >= t_from && s.t <= t_to && s.dissipation > d_min.max(0.0))
            .map(|s| (s.dl + s.dissipation).abs() / s.dissipation)
            .fold(None, |acc: Option<f64>, r| Some(acc.map_or(r, |a| a.max(r))))
    }
}
