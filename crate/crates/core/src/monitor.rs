//! A-priori bounds along trajectories and the convergence / blow-up verdict.
//!
//! Every check is one-sided in the direction the underlying estimate is
//! stated. Nodal comparisons carry an additive slack `c * dx`.

use alloc::string::String;
use alloc::vec::Vec;

// Unused when a dependency links std.
#[allow(unused_imports)]
use num_traits::Float;

use crate::error::{Error, Result};
use crate::grid::GridState;
use crate::params::{c1_constant, critical_mass, ProblemParams};
use crate::solver::{supersolution, Side, Termination, Trajectory};
use crate::steady::SteadyState;

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
#[cfg_attr(feature = "serde", derive(serde::Serialize, serde::Deserialize))]
#[cfg_attr(feature = "serde", serde(rename_all = "kebab-case"))]
pub enum Bound {
    /// `min u0 <= u <= max u0 + eps^q t`.
    Comparison,
    /// `u_t <= |u0|_inf / ((p-2) t)`.
    UtUpper,
    /// Upper gradient envelope away from `x = 0`.
    EnvelopeLeft,
    /// Mirrored lower gradient envelope away from `x = 1`.
    EnvelopeRight,
    /// `u <= |u0|_inf + M + 2 - cosh(eps x)`.
    Supersolution,
    /// Lower bound on the blow-up profile of `|u_x|^{p-2} u_x`.
    BlowUpProfile,
}

/// One failed nodal comparison. `margin` is `bound - value` and negative.
#[derive(Debug, Clone, Copy, PartialEq)]
#[cfg_attr(feature = "serde", derive(serde::Serialize, serde::Deserialize))]
pub struct Violation {
    pub bound: Bound,
    pub t: f64,
    pub x: f64,
    pub margin: f64,
}

#[derive(Debug, Clone, PartialEq)]
#[cfg_attr(feature = "serde", derive(serde::Serialize, serde::Deserialize))]
pub struct BoundReport {
    pub bound: Bound,
    /// Number of nodal comparisons made.
    pub checked: usize,
    /// Smallest `bound + slack - value` seen; `+inf` if nothing was checked.
    pub worst_margin: f64,
    pub violations: Vec<Violation>,
}

impl BoundReport {
    fn new(bound: Bound) -> Self {
        Self { bound, checked: 0, worst_margin: f64::INFINITY, violations: Vec::new() }
    }

    fn record(&mut self, t: f64, x: f64, margin: f64) {
        self.checked += 1;
        if margin < self.worst_margin || margin.is_nan() {
            self.worst_margin = margin;
        }
        if !(margin >= 0.0) {
            self.violations.push(Violation { bound: self.bound, t, x, margin });
        }
    }

    pub fn ok(&self) -> bool {
        self.violations.is_empty()
    }
}

/// `|u0|_inf / ((p-2) t)`.
pub fn ut_upper_bound(sup_u0: f64, p: f64, t: f64) -> f64 {
    sup_u0 / ((p - 2.0) * t)
}

/// Checks `max_x u_t <= |u0|_inf/((p-2) t) + slack` on snapshots with `t >= t0`.
///
/// The stored `u_t` is the difference quotient of the step ending at `t`, so
/// the bound is taken at the start of that step.
pub fn ut_upper_bound_check(traj: &Trajectory, t0: f64, slack: f64) -> Result<BoundReport> {
    if !(t0 > 0.0) {
        return Err(Error::Range("t0 > 0"));
    }
    let p = traj.params.p;
    let mut rep = BoundReport::new(Bound::UtUpper);
    for s in traj.snapshots.iter().filter(|s| s.t >= t0 && s.dt_last > 0.0) {
        let t_start = (s.t - s.dt_last).max(t0);
        let bound = ut_upper_bound(traj.sup_abs_u0, p, t_start) + slack;
        for i in 1..=s.n() {
            rep.record(s.t, s.x(i), bound - s.u_t[i]);
        }
    }
    Ok(rep)
}

/// `[((q-p+1)/(p-1) x)^{(1-p)/(q-p+1)} + C1 x]^{1/(p-1)}`.
pub fn gradient_envelope(p: f64, q: f64, c1: f64, x: f64) -> f64 {
    let c5 = (q - p + 1.0) / (p - 1.0);
    ((c5 * x).powf((1.0 - p) / (q - p + 1.0)) + c1 * x).powf(1.0 / (p - 1.0))
}

/// Checks both gradient envelopes on snapshots with `t >= t0`.
///
/// Each cell gradient is the mean of `u_x` over the cell, so it is compared
/// with the largest value the envelope takes on that cell. The boundary cell
/// of each side is skipped since the envelope is infinite there.
pub fn gradient_envelope_check(traj: &Trajectory, t0: f64, slack_c: f64) -> Result<(BoundReport, BoundReport)> {
    let ProblemParams { p, q, .. } = traj.params;
    let c1 = c1_constant(traj.sup_abs_u0, t0, p)?;
    let env = |x0: f64, x1: f64| {
        let e = 1.0 / (p - 1.0);
        let c5 = (q - p + 1.0) / (p - 1.0);
        ((c5 * x0).powf((1.0 - p) / (q - p + 1.0)) + c1 * x1).powf(e)
    };
    let mut left = BoundReport::new(Bound::EnvelopeLeft);
    let mut right = BoundReport::new(Bound::EnvelopeRight);
    for s in traj.snapshots.iter().filter(|s| s.t >= t0) {
        let dx = s.dx();
        let slack = slack_c * dx;
        let g = s.cell_gradients();
        let cells = g.len();
        for (j, &gj) in g.iter().enumerate() {
            let (xa, xb) = (j as f64 * dx, (j + 1) as f64 * dx);
            let mid = xa + 0.5 * dx;
            if j > 0 {
                left.record(s.t, mid, env(xa, xb) + slack - gj);
            }
            if j + 1 < cells {
                right.record(s.t, mid, gj + env(1.0 - xb, 1.0 - xa) + slack);
            }
        }
    }
    Ok((left, right))
}

/// Checks `min u0 - tol <= u <= max u0 + eps^q t + tol` at every snapshot.
///
/// The `eps^q t` term is the drift of the regularized source, which is
/// `eps^q` even where `u_x = 0`.
pub fn comparison_check(traj: &Trajectory, tol: f64) -> BoundReport {
    let mut rep = BoundReport::new(Bound::Comparison);
    let drift = traj.params.eps.powf(traj.params.q);
    for s in &traj.snapshots {
        let hi = traj.max_u0 + drift * s.t + tol;
        let lo = traj.min_u0 - tol;
        for (i, &u) in s.u.iter().enumerate() {
            rep.record(s.t, s.x(i), (hi - u).min(u - lo));
        }
    }
    rep
}

/// Re-checks the supersolution barrier at every snapshot.
pub fn supersolution_check(traj: &Trajectory, tol: f64) -> BoundReport {
    let mut rep = BoundReport::new(Bound::Supersolution);
    for s in &traj.snapshots {
        for (i, &u) in s.u.iter().enumerate() {
            let x = s.x(i);
            rep.record(s.t, x, supersolution(&traj.params, traj.sup_abs_u0, x) + tol - u);
        }
    }
    rep
}

/// Windowed sup of `|u_t|` after `t1`.
#[derive(Debug, Clone, PartialEq)]
#[cfg_attr(feature = "serde", derive(serde::Serialize, serde::Deserialize))]
pub struct UtSupReport {
    pub t1: f64,
    /// `sup |u_t|` over accepted steps with `t >= t1`.
    pub c3: f64,
    /// `(t_from, t_to, sup |u_t|)` per window.
    pub windows: Vec<(f64, f64, f64)>,
    /// Every window sup is within the growth allowance of the one before.
    pub non_expanding: bool,
    /// Largest `|u(t+h) - u(t)|_inf / (c3 h)` over snapshot pairs after `t1`.
    pub shift_ratio: f64,
}

/// Measures `C3 = sup_{t >= t1} |u_t|` and how it evolves over `windows`
/// equal windows of `[t1, T]`. A window may exceed its predecessor by the
/// factor `1 + growth` plus `floor`.
pub fn ut_sup_estimate(traj: &Trajectory, t1: f64, windows: usize, growth: f64, floor: f64) -> UtSupReport {
    let tail: Vec<_> = traj.stats.iter().filter(|s| s.t >= t1).collect();
    let c3 = tail.iter().map(|s| s.sup_abs_ut).fold(0.0, f64::max);
    let t_end = traj.t_final();
    let nw = windows.max(1);
    let width = (t_end - t1) / nw as f64;
    let mut ws = Vec::with_capacity(nw);
    if width > 0.0 {
        for w in 0..nw {
            let (a, b) = (t1 + w as f64 * width, t1 + (w + 1) as f64 * width);
            let sup =
                tail.iter().filter(|s| s.t >= a && (s.t < b || w + 1 == nw)).map(|s| s.sup_abs_ut).fold(0.0, f64::max);
            ws.push((a, b, sup));
        }
    }
    let non_expanding = ws.windows(2).all(|w| w[1].2 <= (1.0 + growth) * w[0].2 + floor);
    let snaps: Vec<&GridState> = traj.snapshots.iter().filter(|s| s.t >= t1).collect();
    let mut shift_ratio = 0.0f64;
    for (i, a) in snaps.iter().enumerate() {
        for b in &snaps[i + 1..] {
            let h = b.t - a.t;
            let d = a.sup_distance(b);
            if h > 0.0 && d > 0.0 {
                shift_ratio = shift_ratio.max(d / (c3 * h));
            }
        }
    }
    UtSupReport { t1, c3, windows: ws, non_expanding, shift_ratio }
}

/// Parameters and outcome of the blow-up profile inequality check.
#[derive(Debug, Clone, PartialEq)]
#[cfg_attr(feature = "serde", derive(serde::Serialize, serde::Deserialize))]
pub struct ProfileReport {
    pub nu: f64,
    pub eta: f64,
    pub c3: f64,
    pub c4: f64,
    pub c5: f64,
    pub bound: BoundReport,
    /// `(x, |u_x|^{p-2} u_x, (C5 x)^{(1-p)/(q-p+1)} - C4)` on the last
    /// snapshot, at cells within `eta` of the side where `|u_x|` is largest.
    pub profile: Vec<(f64, f64, f64)>,
}

/// Largest window `eta` for which `u_x >= nu` at `y` keeps `u_x >= nu/2` on
/// `[y, y + eta]`, capped at `0.1`.
pub fn default_eta(p: f64, q: f64, nu: f64, c3: f64) -> f64 {
    let c4 = c3.powf((p - 1.0) / q);
    let c5 = (q - p + 1.0) / (p - 1.0);
    let e = (p - 1.0 - q) / (p - 1.0);
    let gap = ((0.5 * nu).powf(p - 1.0) + c4).powf(e) - (nu.powf(p - 1.0) + c4).powf(e);
    (gap / c5).min(0.1)
}

/// Checks
/// `[w(x) + C4]^e <= [w(y) + C4]^e + C5 (x - y)`, `w = |u_x|^{p-2} u_x`,
/// `e = (p-1-q)/(p-1)`, `C4 = C3^{(p-1)/q}`, `C5 = (q-p+1)/(p-1)`,
/// for every snapshot with `t >= t1`, every cell `y < 1/2` with `u_x >= nu`
/// and every cell `x` in `[y, y + eta]`; mirrored at `x = 1`.
pub fn blowup_profile_check(
    traj: &Trajectory,
    t1: f64,
    nu: f64,
    eta: Option<f64>,
    c3: f64,
    slack_c: f64,
) -> Result<ProfileReport> {
    if !(nu > 0.0) || !(c3 >= 0.0) {
        return Err(Error::Range("nu > 0, C3 >= 0"));
    }
    let ProblemParams { p, q, .. } = traj.params;
    let c4 = c3.powf((p - 1.0) / q);
    let c5 = (q - p + 1.0) / (p - 1.0);
    let e = (p - 1.0 - q) / (p - 1.0);
    let eta = eta.unwrap_or_else(|| default_eta(p, q, nu, c3));
    if !(eta > 0.0) {
        return Err(Error::Range("eta > 0"));
    }
    let flux = |g: f64| g.abs().powf(p - 2.0) * g;
    let lhs = |w: f64| if w + c4 > 0.0 { (w + c4).powf(e) } else { f64::INFINITY };
    let mut rep = BoundReport::new(Bound::BlowUpProfile);
    for s in traj.snapshots.iter().filter(|s| s.t >= t1) {
        let dx = s.dx();
        let g = s.cell_gradients();
        let cells = g.len();
        for mirrored in [false, true] {
            // Mirrored side: w(x) = -flux(u_x(1 - x)).
            let w = |j: usize| if mirrored { -flux(g[cells - 1 - j]) } else { flux(g[j]) };
            for j in 0..cells {
                let y = (j as f64 + 0.5) * dx;
                if y >= 0.5 || w(j) < nu.powf(p - 1.0) {
                    continue;
                }
                let base = (w(j) + c4).powf(e);
                for i in j..cells {
                    let x = (i as f64 + 0.5) * dx;
                    if x - y > eta {
                        break;
                    }
                    let at = if mirrored { 1.0 - x } else { x };
                    rep.record(s.t, at, base + c5 * (x - y) + slack_c * dx - lhs(w(i)));
                }
            }
        }
    }
    let mut profile = Vec::new();
    if let Some(s) = traj.snapshots.last() {
        let g = s.cell_gradients();
        let dx = s.dx();
        let (_, cell) = s.max_abs_gradient();
        let left = 2 * cell < g.len();
        for j in 0..g.len() {
            let x = (j as f64 + 0.5) * dx;
            if x > eta {
                break;
            }
            let gj = if left { g[j] } else { -g[g.len() - 1 - j] };
            profile.push((x, flux(gj), (c5 * x).powf((1.0 - p) / (q - p + 1.0)) - c4));
        }
    }
    Ok(ProfileReport { nu, eta, c3, c4, c5, bound: rep, profile })
}

/// `(|u - V|_inf on [0, 1], |u_x - V'|_inf on [delta, 1 - delta])`.
///
/// Cell gradients are compared with `V'` at cell midpoints, for cells that
/// lie inside `[delta, 1 - delta]`.
pub fn w1inf_distance(state: &GridState, target: &SteadyState, delta: f64) -> Result<(f64, f64)> {
    if !(delta > 0.0 && delta < 0.5) {
        return Err(Error::Range("0 < delta < 1/2"));
    }
    let mut sup = 0.0f64;
    for (i, &u) in state.u.iter().enumerate() {
        sup = sup.max((u - target.value(state.x(i).min(1.0))?).abs());
    }
    let dx = state.dx();
    let mut c1 = 0.0f64;
    for (j, g) in state.cell_gradients().into_iter().enumerate() {
        let (a, b) = (j as f64 * dx, (j + 1) as f64 * dx);
        if a < delta - 1e-12 || b > 1.0 - delta + 1e-12 {
            continue;
        }
        c1 = c1.max((g - target.derivative(0.5 * (a + b))?).abs());
    }
    Ok((sup, c1))
}

/// Thresholds used by [`classify`].
#[derive(Debug, Clone, PartialEq)]
#[cfg_attr(feature = "serde", derive(serde::Serialize, serde::Deserialize))]
#[cfg_attr(feature = "serde", serde(default, deny_unknown_fields))]
pub struct Tolerances {
    /// Sup-norm distance to the steady state.
    pub sup: f64,
    /// `C^1` distance on `[delta, 1 - delta]`.
    pub c1: f64,
    pub delta: f64,
    /// Fraction of the snapshots, counted from the end, whose sup distance
    /// must be non-increasing.
    pub tail_fraction: f64,
    /// Increase tolerated between consecutive tail distances.
    pub tail_abs: f64,
    /// Relative band around `M_b` treated as critical.
    pub critical_rel: f64,
    /// Start of the `u_t` and gradient envelope checks.
    pub t0: f64,
    /// Start of the `|u_t|` measurement; `None` uses half the final time.
    pub t1: Option<f64>,
    pub nu: f64,
    /// `None` picks [`default_eta`].
    pub eta: Option<f64>,
    /// Slack `c` in the additive `c * dx` allowed on nodal bounds.
    pub slack_c: f64,
    pub ut_windows: usize,
    pub ut_growth: f64,
    /// Run the `|u_t|` measurement when `M = 0`.
    pub check_m0_ut: bool,
}

impl Default for Tolerances {
    fn default() -> Self {
        Self {
            sup: 1e-2,
            c1: 5e-2,
            delta: 0.1,
            tail_fraction: 0.2,
            tail_abs: 1e-10,
            critical_rel: 1e-9,
            t0: 0.1,
            t1: None,
            nu: 1.0,
            eta: None,
            slack_c: 1.0,
            ut_windows: 5,
            ut_growth: 0.05,
            check_m0_ut: false,
        }
    }
}

#[derive(Debug, Clone, PartialEq)]
#[cfg_attr(feature = "serde", derive(serde::Serialize, serde::Deserialize))]
#[cfg_attr(feature = "serde", serde(tag = "kind", rename_all = "kebab-case"))]
pub enum Outcome {
    Converged { k: f64, distance: f64, c1_distance: f64 },
    GradientBlowUp { t_star: f64, side: Side },
    Undetermined { reason: String },
}

impl Outcome {
    /// Process exit code for this outcome.
    pub fn exit_code(&self) -> i32 {
        match self {
            Outcome::Converged { .. } => 0,
            Outcome::GradientBlowUp { .. } => 2,
            Outcome::Undetermined { .. } => 3,
        }
    }
}

#[derive(Debug, Clone, PartialEq)]
#[cfg_attr(feature = "serde", derive(serde::Serialize, serde::Deserialize))]
pub struct Diagnostics {
    pub t_final: f64,
    pub accepted_steps: usize,
    pub rejected_steps: usize,
    /// `(t, max |u_x|)` at each snapshot.
    pub max_gradient: Vec<(f64, f64)>,
    /// `max |u_x|` never decreased across snapshots.
    pub gradient_monotone: bool,
    /// Sup distance to the steady state over the checked tail.
    pub tail_distances: Vec<f64>,
    pub ut: Option<UtSupReport>,
    pub profile: Option<ProfileReport>,
    pub certificate: Option<crate::solver::BlowUpCertificate>,
}

#[derive(Debug, Clone, PartialEq)]
#[cfg_attr(feature = "serde", derive(serde::Serialize, serde::Deserialize))]
pub struct RunReport {
    pub outcome: Outcome,
    pub m: f64,
    pub m_b: f64,
    pub k: Option<f64>,
    pub t_star: Option<f64>,
    pub violations: Vec<Violation>,
    pub bounds: Vec<BoundReport>,
    pub diagnostics: Diagnostics,
    pub series_path: Option<String>,
    pub config_hash: Option<String>,
}

/// Runs the a-priori bound suite used by [`classify`].
pub fn bound_suite(traj: &Trajectory, tol: &Tolerances) -> Result<Vec<BoundReport>> {
    let dx = traj.final_state().dx();
    let scale = traj.sup_abs_u0.max(traj.params.m).max(1.0);
    let mut out = Vec::with_capacity(5);
    out.push(comparison_check(traj, 10.0 * f64::EPSILON * scale));
    out.push(ut_upper_bound_check(traj, tol.t0, tol.slack_c * dx)?);
    let (l, r) = gradient_envelope_check(traj, tol.t0, tol.slack_c)?;
    out.push(l);
    out.push(r);
    out.push(supersolution_check(traj, 1e-9 * scale));
    Ok(out)
}

/// Deterministic verdict on a finished trajectory.
pub fn classify(traj: &Trajectory, tol: &Tolerances) -> Result<RunReport> {
    let params = traj.params;
    let m_b = critical_mass(params.p, params.q)?;
    let mut bounds = bound_suite(traj, tol)?;

    let max_gradient: Vec<(f64, f64)> = traj.snapshots.iter().map(|s| (s.t, s.max_abs_gradient().0)).collect();
    let gradient_monotone = max_gradient.windows(2).all(|w| w[1].1 >= w[0].1);
    let t_final = traj.t_final();
    let t1 = tol.t1.unwrap_or(0.5 * t_final);
    let ut =
        (params.m > 0.0 || tol.check_m0_ut).then(|| ut_sup_estimate(traj, t1, tol.ut_windows, tol.ut_growth, 1e-9));
    let mut diagnostics = Diagnostics {
        t_final,
        accepted_steps: traj.stats.len(),
        rejected_steps: traj.rejected_steps,
        max_gradient,
        gradient_monotone,
        tail_distances: Vec::new(),
        ut,
        profile: None,
        certificate: traj.certificate,
    };
    let mut k = None;
    let mut t_star = None;

    let outcome = if (params.m - m_b).abs() <= tol.critical_rel * m_b {
        Outcome::Undetermined { reason: "critical mass".into() }
    } else {
        match traj.termination {
            Termination::GradientThreshold { t_star: ts, side, .. } => {
                t_star = Some(ts);
                if let Some(ut) = &diagnostics.ut {
                    let profile = blowup_profile_check(traj, t1, tol.nu, tol.eta, ut.c3, tol.slack_c)?;
                    bounds.push(profile.bound.clone());
                    diagnostics.profile = Some(profile);
                }
                match traj.certificate {
                    Some(c) if c.is_certified() => Outcome::GradientBlowUp { t_star: ts, side },
                    Some(_) => Outcome::Undetermined { reason: "threshold crossing not refinement-stable".into() },
                    None => Outcome::Undetermined { reason: "threshold crossing not certified".into() },
                }
            }
            Termination::StepCollapse { .. } => Outcome::Undetermined { reason: "step size collapsed".into() },
            Termination::Completed if params.m > m_b => {
                Outcome::Undetermined { reason: "no steady state above critical mass".into() }
            }
            Termination::Completed => {
                let target = SteadyState::for_mass(params.p, params.q, params.m)?;
                k = Some(target.k().unwrap_or(f64::INFINITY));
                let n = traj.snapshots.len();
                let from = n - ((tol.tail_fraction * n as f64).ceil() as usize).clamp(1, n);
                diagnostics.tail_distances = traj.snapshots[from..]
                    .iter()
                    .map(|s| w1inf_distance(s, &target, tol.delta).map(|d| d.0))
                    .collect::<Result<_>>()?;
                let tail_ok = diagnostics.tail_distances.windows(2).all(|w| w[1] <= w[0] + tol.tail_abs);
                let (sup, c1) = w1inf_distance(traj.final_state(), &target, tol.delta)?;
                if sup < tol.sup && c1 < tol.c1 && tail_ok {
                    Outcome::Converged { k: k.unwrap_or(f64::INFINITY), distance: sup, c1_distance: c1 }
                } else {
                    Outcome::Undetermined { reason: "not converged within budget".into() }
                }
            }
        }
    };
    let violations = bounds.iter().flat_map(|b| b.violations.iter().copied()).collect();
    Ok(RunReport {
        outcome,
        m: params.m,
        m_b,
        k,
        t_star,
        violations,
        bounds,
        diagnostics,
        series_path: None,
        config_hash: None,
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn ut_bound_arithmetic() {
        assert_eq!(ut_upper_bound(2.0, 3.0, 4.0), 0.5);
        assert_eq!(ut_upper_bound(2.0, 3.0, 8.0), 0.25);
    }

    #[test]
    fn envelope_values() {
        assert!((gradient_envelope(3.0, 4.0, 1.0, 1.0) - 2f64.sqrt()).abs() < 1e-15);
        assert!(gradient_envelope(3.0, 4.0, 1.0, 1e-12) > 1e5);
        assert_eq!(gradient_envelope(3.0, 4.0, 1.0, 0.0), f64::INFINITY);
    }

    #[test]
    fn eta_margin() {
        // (3,4), nu = 1, C3 = 1: 1/1.25 - 1/2 = 0.3, capped at 0.1.
        assert_eq!(default_eta(3.0, 4.0, 1.0, 1.0), 0.1);
        let c4 = 10.0;
        let want = 1.0 / (0.25 + c4) - 1.0 / (1.0 + c4);
        assert!((default_eta(3.0, 4.0, 1.0, 100.0) - want).abs() < 1e-15);
    }

    #[test]
    fn self_distance_vanishes() {
        let v = SteadyState::from_k(3.0, 4.0, 0.5625).unwrap();
        let s = GridState::from_fn(200, 1.0, |x| v.value(x).unwrap()).unwrap();
        let (a, b) = w1inf_distance(&s, &v, 0.1).unwrap();
        assert!(a < 1e-15);
        assert!(b < 1e-5, "{b}");
        let w = SteadyState::from_k(3.0, 4.0, 0.25).unwrap();
        let (a, _) = w1inf_distance(&s, &w, 0.1).unwrap();
        assert!(a >= (w.value(1.0).unwrap() - 1.0).abs() - 1e-15);
        assert!(w1inf_distance(&s, &v, 0.5).is_err());
    }

    #[test]
    fn exit_codes() {
        assert_eq!(Outcome::Converged { k: 0.5, distance: 0.0, c1_distance: 0.0 }.exit_code(), 0);
        assert_eq!(Outcome::GradientBlowUp { t_star: 1.0, side: Side::Left }.exit_code(), 2);
        assert_eq!(Outcome::Undetermined { reason: String::new() }.exit_code(), 3);
    }
}
