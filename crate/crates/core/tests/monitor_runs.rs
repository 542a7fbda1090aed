use dhj_core::monitor::{
    blowup_profile_check, bound_suite, comparison_check, gradient_envelope_check, ut_sup_estimate,
    ut_upper_bound_check, w1inf_distance, Bound, Outcome, Tolerances,
};
use dhj_core::solver::{Side, Termination, Trajectory};
use dhj_core::{classify, solve, InitialProfile, ProblemParams, SolveConfig, SteadyState};
use std::sync::OnceLock;

fn run(m: f64) -> Trajectory {
    let p = ProblemParams::with_default_bound(3.0, 4.0, m, 0.1, m).unwrap();
    solve(&p, &InitialProfile::Linear, &SolveConfig::default()).unwrap()
}

fn subcritical() -> &'static Trajectory {
    static T: OnceLock<Trajectory> = OnceLock::new();
    T.get_or_init(|| run(1.0))
}

fn supercritical() -> &'static Trajectory {
    static T: OnceLock<Trajectory> = OnceLock::new();
    T.get_or_init(|| run(3.0))
}

#[test]
fn subcritical_converges_without_violations() {
    let tol = Tolerances::default();
    let rep = classify(subcritical(), &tol).unwrap();
    match rep.outcome {
        Outcome::Converged { k, distance, c1_distance } => {
            assert!((k - 0.5625).abs() < 1e-6);
            assert!(distance < 1e-2 && c1_distance < 5e-2);
        }
        o => panic!("{o:?}"),
    }
    assert!(rep.violations.is_empty(), "{:?}", &rep.violations[..rep.violations.len().min(5)]);
    assert!(rep.bounds.iter().all(|b| b.checked > 0));
    assert_eq!(rep.m_b, 2.0);
}

#[test]
fn final_gradient_inside_both_envelopes() {
    let traj = subcritical();
    let (l, r) = gradient_envelope_check(traj, 0.1, 0.0).unwrap();
    assert!(l.ok() && r.ok());
    assert!(l.worst_margin > 0.0 && r.worst_margin > 0.0);
}

#[test]
fn subcritical_distances_decrease() {
    let traj = subcritical();
    let v = SteadyState::for_mass(3.0, 4.0, 1.0).unwrap();
    let snaps: Vec<_> = traj.snapshots.iter().filter(|s| s.t <= 2.0).collect();
    let d: Vec<(f64, f64)> = snaps.iter().map(|s| w1inf_distance(s, &v, 0.1).unwrap()).collect();
    // The regularized limit sits about 1e-3 from V; the approach may dip
    // slightly below that level before settling on it.
    let plateau = w1inf_distance(traj.final_state(), &v, 0.1).unwrap();
    for w in d.windows(2) {
        assert!(w[1].0 <= w[0].0 + 1e-2 * plateau.0 && w[1].1 <= w[0].1 + 1e-2 * plateau.1, "{d:?}");
    }
    // Against the run's own limit the decrease is strict.
    let last = traj.final_state();
    let own: Vec<f64> = snaps.iter().map(|s| s.sup_distance(last)).collect();
    for w in own.windows(2) {
        assert!(w[1] < w[0] || w[1] < 1e-12, "{own:?}");
    }
}

#[test]
fn ut_sup_windows_shrink_on_subcritical_run() {
    let traj = subcritical();
    let rep = ut_sup_estimate(traj, 0.5, 5, 0.05, 1e-9);
    assert!(rep.non_expanding, "{:?}", rep.windows);
    assert!(rep.shift_ratio <= 1.0 + 1e-9);
    // Sampled shifts against the measured C3 from an earlier start.
    let early = ut_sup_estimate(traj, 0.01, 5, 0.05, 1e-9);
    assert!(early.shift_ratio <= 1.0 + 1e-9);
    assert!(early.c3 >= rep.c3);
}

#[test]
fn stationary_data_has_tiny_time_derivative() {
    let p = ProblemParams::with_default_bound(3.0, 4.0, 1.0, 1e-3, 1.0).unwrap();
    let cfg = SolveConfig { t_end: 2.0, ..SolveConfig::default() };
    let traj = solve(&p, &InitialProfile::Steady, &cfg).unwrap();
    let rep = ut_sup_estimate(&traj, 0.1, 4, 0.05, 1e-9);
    assert!(rep.c3 < 1e-4, "{}", rep.c3);
    assert!(ut_upper_bound_check(&traj, 0.1, 0.0).unwrap().ok());
}

#[test]
fn supercritical_blows_up_left_with_profile_bound() {
    let traj = supercritical();
    let rep = classify(traj, &Tolerances::default()).unwrap();
    match rep.outcome {
        Outcome::GradientBlowUp { t_star, side } => {
            assert_eq!(side, Side::Left);
            assert_eq!(rep.t_star, Some(t_star));
        }
        o => panic!("{o:?}"),
    }
    assert!(rep.violations.is_empty(), "{:?}", rep.violations);
    let prof = rep.diagnostics.profile.as_ref().unwrap();
    assert!(prof.bound.checked > 0);
    // Implied divergence near the blow-up point.
    assert!(!prof.profile.is_empty());
    assert!(prof.profile.iter().all(|&(_, w, floor)| w >= floor), "{:?}", prof.profile);
}

#[test]
fn profile_constants_for_unit_c3() {
    let traj = supercritical();
    let rep = blowup_profile_check(traj, 0.0, 1.0, None, 1.0, 1.0).unwrap();
    assert_eq!(rep.c4, 1.0);
    assert_eq!(rep.c5, 1.0);
    assert_eq!(rep.eta, 0.1);
    // With C4 = 1 the floor is 1/x - 1.
    for &(x, _, floor) in &rep.profile {
        assert!((floor - (1.0 / x - 1.0)).abs() < 1e-9 * floor.abs().max(1.0));
    }
}

#[test]
fn critical_mass_is_undetermined_with_growing_gradient() {
    let rep = classify(&run(2.0), &Tolerances::default()).unwrap();
    assert_eq!(rep.outcome, Outcome::Undetermined { reason: "critical mass".into() });
    assert!(rep.diagnostics.gradient_monotone);
    let g = &rep.diagnostics.max_gradient;
    assert!(g.last().unwrap().1 > 5.0 * g[0].1);
}

#[test]
fn classify_is_deterministic() {
    let a = classify(subcritical(), &Tolerances::default()).unwrap();
    let b = classify(subcritical(), &Tolerances::default()).unwrap();
    assert_eq!(a, b);
    let again = run(1.0);
    assert_eq!(&again, subcritical());
}

#[test]
fn checks_fire_on_tampered_trajectories() {
    let mut traj = subcritical().clone();
    let last = traj.snapshots.len() - 1;
    traj.snapshots[last].u[5] = -0.5;
    let c = comparison_check(&traj, 1e-12);
    assert_eq!(c.violations.len(), 1);
    assert_eq!(c.violations[0].bound, Bound::Comparison);
    assert!(c.violations[0].margin < 0.0);
    traj.snapshots[last].u_t[5] = 1e3;
    assert!(!ut_upper_bound_check(&traj, 0.1, 0.0).unwrap().ok());
    let suite = bound_suite(&traj, &Tolerances::default()).unwrap();
    assert!(suite.iter().any(|b| !b.ok()));
}

#[test]
fn uncertified_crossing_is_undetermined() {
    let mut traj = supercritical().clone();
    traj.certificate = None;
    let rep = classify(&traj, &Tolerances::default()).unwrap();
    assert!(matches!(rep.outcome, Outcome::Undetermined { .. }));
    assert!(matches!(traj.termination, Termination::GradientThreshold { .. }));
}
