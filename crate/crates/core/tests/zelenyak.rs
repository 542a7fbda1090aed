use dhj_core::lyapunov::{LyapunovEvaluator, SampleGrid};
use dhj_core::quad::{simpson, QuadConfig};
use dhj_core::{GridState, InitialProfile, ProblemParams, SolveConfig, Solver, SteadyState};
use proptest::prelude::*;

fn ev(k: f64, eps: f64) -> LyapunovEvaluator {
    LyapunovEvaluator::new(&ProblemParams { p: 3.0, q: 4.0, m: 1.0, eps, k_bound: k })
}

const EQDIF_GRID: SampleGrid = SampleGrid { u_min: -1.0, u_max: 1.0, nu: 21, v_min: -3.0, v_max: 3.0, nv: 21 };
const TOU_GRID: SampleGrid = SampleGrid { u_min: -1.0, u_max: 1.0, nu: 21, v_min: 0.1, v_max: 3.0, nv: 21 };

#[test]
fn rho_matches_nested_quadrature() {
    let e = ev(2.0, 0.25);
    let cfg = QuadConfig { tol: 1e-12, max_depth: 40 };
    for &(u, v) in &[(0.0, 0.5), (1.5, 2.0), (-1.9, 3.0), (0.7, -1.2)] {
        let inner = |z: f64| simpson(|s| e.f_eps(u, s).unwrap(), 0.0, z, cfg).unwrap();
        let nested = simpson(inner, 0.0, v, cfg).unwrap();
        assert!((e.rho_eps(u, v).unwrap() - nested).abs() < 1e-9, "{u} {v}");
    }
}

#[test]
fn rho_second_derivative_is_f() {
    let e = ev(2.0, 0.25);
    let h = 1e-3;
    for (u, v) in (SampleGrid { u_min: -1.9, u_max: 1.9, nu: 7, v_min: -3.0, v_max: 3.0, nv: 9 }).points() {
        let d2 =
            (e.rho_eps(u, v + h).unwrap() - 2.0 * e.rho_eps(u, v).unwrap() + e.rho_eps(u, v - h).unwrap()) / (h * h);
        assert!((d2 - e.f_eps(u, v).unwrap()).abs() < 1e-4, "{u} {v} {d2}");
    }
}

#[test]
fn rho_vanishes_on_axis_and_is_below_quadratic() {
    let e = ev(2.0, 0.25);
    for u in [-2.0, 0.0, 2.0] {
        assert_eq!(e.rho_eps(u, 0.0).unwrap(), 0.0);
        for v in [0.3, 1.0, 5.0] {
            let r = e.rho_eps(u, v).unwrap();
            assert!(r >= 0.0 && r <= 0.5 * v * v);
            assert!((r - e.rho_eps(u, -v).unwrap()).abs() < 1e-14);
        }
    }
}

#[test]
fn eqdif_residual_small() {
    let r = ev(2.0, 0.25).check_eqdif(&EQDIF_GRID, 1e-3).unwrap();
    assert!(r < 1e-4, "{r}");
}

#[test]
fn eqdif_residual_second_order() {
    let e = ev(2.0, 0.25);
    let r: Vec<f64> = [0.05, 0.025, 0.0125].iter().map(|&h| e.check_eqdif(&EQDIF_GRID, h).unwrap()).collect();
    for w in r.windows(2) {
        let ratio = w[0] / w[1];
        assert!(ratio > 3.0 && ratio < 5.0, "{r:?}");
    }
}

#[test]
fn tou_residual_small_and_second_order() {
    let e = ev(2.0, 0.25);
    assert!(e.check_tou(&TOU_GRID, 1e-4).unwrap() < 1e-5);
    let r: Vec<f64> = [0.02, 0.01, 0.005].iter().map(|&h| e.check_tou(&TOU_GRID, h).unwrap()).collect();
    for w in r.windows(2) {
        let ratio = w[0] / w[1];
        assert!(ratio > 3.5 && ratio < 4.5, "{r:?}");
    }
}

#[test]
fn f_is_flat_in_v_on_axis() {
    let e = ev(2.0, 0.25);
    let h = 1e-4;
    for u in [-2.0, -0.5, 0.0, 1.0, 2.0] {
        let d = (e.f_eps(u, h).unwrap() - e.f_eps(u, -h).unwrap()) / (2.0 * h);
        assert!(d.abs() < 1e-8);
    }
}

#[test]
fn theta_matches_grid_minimum() {
    let e = ev(2.0, 0.25);
    for r in [0.0, 0.5, 2.0, 7.0] {
        let mut best = f64::INFINITY;
        for i in 0..=400 {
            let u = -2.0 + 4.0 * i as f64 / 400.0;
            for j in 0..=400 {
                let v = -r + 2.0 * r * j as f64 / 400.0;
                best = best.min(e.cal_a(u, v).unwrap());
            }
        }
        assert!((e.theta_inf(r).unwrap() - best).abs() < 1e-6, "{r}");
    }
    assert!((e.theta_inf(0.0).unwrap() - 0.5 * (2.0f64 / 7.0).powi(3)).abs() < 1e-15);
}

#[test]
fn lyapunov_value_of_linear_data_matches_fine_quadrature() {
    let params = ProblemParams::with_default_bound(3.0, 4.0, 1.0, 0.1, 1.0).unwrap();
    let e = LyapunovEvaluator::new(&params);
    let s = InitialProfile::Linear.sample(&params, 400).unwrap();
    let cfg = QuadConfig { tol: 1e-12, max_depth: 40 };
    let fine = simpson(|x| e.phi_eps(x, 1.0).unwrap(), 0.0, 1.0, cfg).unwrap();
    assert!((e.lyapunov_value(&s).unwrap() - fine).abs() < 1e-8);
}

#[test]
fn lyapunov_value_refines_at_second_order() {
    let params = ProblemParams::with_default_bound(3.0, 4.0, 1.0, 0.1, 1.0).unwrap();
    let e = LyapunovEvaluator::new(&params);
    let v = SteadyState::from_k(3.0, 4.0, 0.5625).unwrap();
    let l: Vec<f64> = [49, 99, 199]
        .iter()
        .map(|&n| e.lyapunov_value(&GridState::from_fn(n, 1.0, |x| v.value(x).unwrap()).unwrap()).unwrap())
        .collect();
    let (d1, d2) = ((l[0] - l[1]).abs(), (l[1] - l[2]).abs());
    assert!(d1 < 1e-3 && d2 < d1 / 3.0, "{l:?}");
}

#[test]
fn lyapunov_rejects_states_beyond_k() {
    let params = ProblemParams::new(3.0, 4.0, 1.0, 0.1, 1.0).unwrap();
    let e = LyapunovEvaluator::new(&params);
    let s = GridState::from_fn(10, 1.0, |x| 3.0 * x * (1.0 - x) + x).unwrap();
    assert!(e.lyapunov_value(&s).is_err());
}

fn subcritical_states(dt_max: f64) -> Vec<GridState> {
    let params = ProblemParams::with_default_bound(3.0, 4.0, 1.0, 0.1, 1.0).unwrap();
    let cfg = SolveConfig {
        nodes: 100,
        dt_max,
        t_end: 1.0,
        snapshot_interval: 1.0,
        certify_blowup: false,
        ..SolveConfig::default()
    };
    let init = InitialProfile::Linear.sample(&params, cfg.nodes).unwrap();
    let mut states = vec![init.clone()];
    Solver::new(params, cfg).unwrap().run_observed(init, &mut |s| states.push(s.clone())).unwrap();
    states
}

#[test]
fn a_weighted_dissipation_stable_under_dt_halving() {
    let params = ProblemParams::with_default_bound(3.0, 4.0, 1.0, 0.1, 1.0).unwrap();
    let e = LyapunovEvaluator::new(&params);
    let a = e.dissipation_check(&subcritical_states(2e-3)).unwrap();
    let b = e.dissipation_check(&subcritical_states(1e-3)).unwrap();
    a.ensure_monotone(1e-8, 1e-3).unwrap();
    b.ensure_monotone(1e-8, 1e-3).unwrap();
    let (ta, tb) = (a.a_weighted_total(), b.a_weighted_total());
    assert!(ta > 0.0 && ta.is_finite());
    assert!((ta - tb).abs() <= 0.05 * tb, "{ta} {tb}");
    assert!(a.a_weighted_total() <= a.psi_weighted_total());
}

#[test]
fn stationary_data_keeps_lyapunov_constant() {
    let params = ProblemParams::with_default_bound(3.0, 4.0, 1.0, 0.01, 1.0).unwrap();
    let e = LyapunovEvaluator::new(&params);
    let cfg =
        SolveConfig { nodes: 100, t_end: 0.5, snapshot_interval: 1.0, certify_blowup: false, ..SolveConfig::default() };
    let init = InitialProfile::Steady.sample(&params, cfg.nodes).unwrap();
    let mut states = vec![init.clone()];
    Solver::new(params, cfg).unwrap().run_observed(init, &mut |s| states.push(s.clone())).unwrap();
    let rep = e.dissipation_check(&states).unwrap();
    rep.ensure_monotone(1e-8, 1e-3).unwrap();
    let l_end = rep.steps.last().unwrap().l;
    assert!((l_end - rep.l0).abs() < 1e-6, "{}", l_end - rep.l0);
    assert!(rep.psi_weighted_total() < 1e-6);
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]
    #[test]
    fn pointwise_invariants(u in -2.0f64..2.0, v in -10.0f64..10.0, eps in 0.01f64..0.5) {
        let e = ev(2.0, eps);
        let f = e.f_eps(u, v).unwrap();
        prop_assert!(f > 0.0 && f <= 1.0);
        let phi = e.phi_eps(u, v).unwrap();
        prop_assert!(phi >= 0.0);
        prop_assert!(phi <= v * v + u.abs() + 3.0);
        let (psi, a) = (e.psi_eps(u, v).unwrap(), e.cal_a(u, v).unwrap());
        prop_assert!(a > 0.0 && a <= 1.0);
        prop_assert!(psi >= a);
        let h = e.h_eps(u).unwrap();
        prop_assert!((0.0..=1.0).contains(&h));
    }

    #[test]
    fn cal_a_decreasing_in_abs_v(u in -2.0f64..2.0, v in 0.0f64..10.0, dv in 0.01f64..5.0) {
        let e = ev(2.0, 0.25);
        prop_assert!(e.cal_a(u, v + dv).unwrap() < e.cal_a(u, v).unwrap());
        prop_assert_eq!(e.cal_a(u, v).unwrap(), e.cal_a(u, -v).unwrap());
    }
}
