use dhj_core::params::{c1_constant, critical_mass, epsilon_bound, steady_exponent, ProblemParams};
use proptest::prelude::*;

// 40-digit reference values.
const MB_35: f64 = 1.310_370_697_104_448_303_570_830_640_220_998;
const MB_25_37: f64 = 1.540_409_694_110_534_505_217_629_017_508_803;
const MB_33_71: f64 = 1.083_658_267_820_842_650_326_079_073_520_373;
const COSH1_POW_M2: f64 = 0.419_974_341_614_026_069_394_496_739_041_701;
const EPS_25_37: f64 = 0.451_461_646_812_225_660_727_813_884_917_294;

#[test]
fn critical_mass_exact_case() {
    assert_eq!(critical_mass(3.0, 4.0).unwrap(), 2.0);
    assert_eq!(critical_mass(4.0, 6.0).unwrap(), 1.5);
}

#[test]
fn critical_mass_against_reference() {
    assert!((critical_mass(3.0, 5.0).unwrap() - MB_35).abs() < 1e-12);
    assert!((critical_mass(2.5, 3.7).unwrap() - MB_25_37).abs() < 1e-12);
    assert!((critical_mass(3.3, 7.1).unwrap() - MB_33_71).abs() < 1e-12);
}

#[test]
fn critical_mass_35_is_cube_root() {
    // 1.5^{2/3} is the real root of x^3 = 2.25; Newton from above.
    let mut x = 2.0f64;
    for _ in 0..60 {
        x -= (x * x * x - 2.25) / (3.0 * x * x);
    }
    assert!((critical_mass(3.0, 5.0).unwrap() - x).abs() < 1e-14);
}

#[test]
fn epsilon_bound_against_reference() {
    assert!((epsilon_bound(3.0, 4.0).unwrap() - COSH1_POW_M2).abs() < 1e-14);
    assert!((epsilon_bound(2.5, 3.7).unwrap() - EPS_25_37).abs() < 1e-14);
    assert_eq!(epsilon_bound(3.0, 5.0).unwrap(), 0.5);
    assert_eq!(epsilon_bound(4.0, 6.0).unwrap(), 0.5);
}

#[test]
fn eps_just_below_and_above_bound() {
    let b = epsilon_bound(3.0, 4.0).unwrap();
    assert!(ProblemParams::new(3.0, 4.0, 1.0, b * (1.0 - 1e-12), 2.0).is_ok());
    assert!(ProblemParams::new(3.0, 4.0, 1.0, b, 2.0).is_err());
    assert!(ProblemParams::new(3.0, 5.0, 1.0, 0.5, 2.0).is_err());
}

fn exponents() -> impl Strategy<Value = (f64, f64)> {
    (2.05f64..6.0, 0.05f64..5.0).prop_map(|(p, d)| (p, p + d))
}

proptest! {
    #[test]
    fn critical_mass_positive_and_formula((p, q) in exponents()) {
        let m = critical_mass(p, q).unwrap();
        prop_assert!(m > 0.0 && m.is_finite());
        // Same quantity through exp/ln.
        let r = q - p + 1.0;
        let alt = (r / (q - p)) * ((r / (p - 1.0)).ln() / (p - 1.0 - q)).exp();
        prop_assert!((m - alt).abs() <= 1e-12 * alt);
    }

    #[test]
    fn critical_mass_continuous_in_q(p in 2.1f64..5.0, q0 in 0.1f64..3.0) {
        let q = p + q0;
        let h = 1e-7;
        let a = critical_mass(p, q).unwrap();
        let b = critical_mass(p, q + h).unwrap();
        prop_assert!((a - b).abs() < 1e-4);
    }

    #[test]
    fn alpha_in_unit_interval((p, q) in exponents()) {
        let a = steady_exponent(p, q).unwrap();
        prop_assert!(a > 0.0 && a < 1.0);
    }

    #[test]
    fn epsilon_bound_capped((p, q) in exponents()) {
        let b = epsilon_bound(p, q).unwrap();
        prop_assert!(b > 0.0 && b <= 0.5);
    }

    #[test]
    fn validate_is_idempotent((p, q) in exponents(), m in 0.0f64..5.0, e in 0.01f64..0.4, extra in 0.0f64..3.0) {
        if let Ok(v) = ProblemParams::new(p, q, m, e, m + extra + 0.1) {
            prop_assert_eq!(v.validate().unwrap(), v);
        }
    }

    #[test]
    fn c1_is_linear_and_inverse(s in 0.0f64..10.0, t in 0.01f64..10.0, p in 2.1f64..6.0, lam in 0.1f64..10.0) {
        let c = c1_constant(s, t, p).unwrap();
        prop_assert!((c1_constant(lam * s, t, p).unwrap() - lam * c).abs() <= 1e-12 * (1.0 + lam * c));
        prop_assert!((c1_constant(s, lam * t, p).unwrap() - c / lam).abs() <= 1e-12 * (1.0 + c / lam));
    }
}
