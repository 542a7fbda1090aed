//! Explicit steady states `V_k(x) = M_b [(x + k)^a - k^a]`, `a = (q-p)/(q-p+1)`.
//!
//! `k = 0` is the singular profile `U(x) = M_b x^a` whose slope is infinite at
//! `x = 0`; `M = 0` gives the zero profile. For `0 < M < M_b` the parameter
//! `k(M)` is the unique root of `M_b [(1+k)^a - k^a] = M`, and no steady
//! state exists above `M_b`.

// Unused when a dependency links std.
#[allow(unused_imports)]
use num_traits::Float;

use crate::error::{Error, Result};
use crate::params::{check_exponents, critical_mass, steady_exponent};

/// Relative band around `M_b` that is classified as the critical case.
pub const CRITICAL_BAND: f64 = 1e-12;

const MAX_ITER: usize = 200;

/// Which member of the stationary family a boundary value selects.
#[derive(Debug, Clone, Copy, PartialEq)]
#[cfg_attr(feature = "serde", derive(serde::Serialize, serde::Deserialize))]
pub enum Branch {
    /// `M = 0`, `V = 0`.
    Zero,
    /// `V_k` with `k >= 0`.
    Family { k: f64 },
}

/// A member of the steady-state family for fixed exponents.
#[derive(Debug, Clone, Copy, PartialEq)]
#[cfg_attr(feature = "serde", derive(serde::Serialize, serde::Deserialize))]
pub struct SteadyState {
    pub p: f64,
    pub q: f64,
    pub alpha: f64,
    pub m_b: f64,
    pub branch: Branch,
    /// Value at `x = 1`.
    pub mass: f64,
}

impl SteadyState {
    pub fn zero(p: f64, q: f64) -> Result<Self> {
        Ok(Self { p, q, alpha: steady_exponent(p, q)?, m_b: critical_mass(p, q)?, branch: Branch::Zero, mass: 0.0 })
    }

    pub fn from_k(p: f64, q: f64, k: f64) -> Result<Self> {
        if !(k >= 0.0) || !k.is_finite() {
            return Err(Error::Range("k >= 0"));
        }
        let alpha = steady_exponent(p, q)?;
        let m_b = critical_mass(p, q)?;
        Ok(Self { p, q, alpha, m_b, branch: Branch::Family { k }, mass: mass_of_k(m_b, alpha, k) })
    }

    /// The unique steady state with `V(1) = m`.
    pub fn for_mass(p: f64, q: f64, m: f64) -> Result<Self> {
        match solve_k(m, p, q)? {
            Branch::Zero => Self::zero(p, q),
            Branch::Family { k } => {
                let mut s = Self::from_k(p, q, k)?;
                s.mass = m;
                Ok(s)
            }
        }
    }

    pub fn k(&self) -> Option<f64> {
        match self.branch {
            Branch::Zero => None,
            Branch::Family { k } => Some(k),
        }
    }

    pub fn is_singular(&self) -> bool {
        self.k() == Some(0.0)
    }

    pub fn value(&self, x: f64) -> Result<f64> {
        check_unit(x)?;
        Ok(match self.branch {
            Branch::Zero => 0.0,
            Branch::Family { k: 0.0 } => self.m_b * x.powf(self.alpha),
            Branch::Family { k } => self.m_b * ((x + k).powf(self.alpha) - k.powf(self.alpha)),
        })
    }

    pub fn derivative(&self, x: f64) -> Result<f64> {
        check_unit(x)?;
        match self.branch {
            Branch::Zero => Ok(0.0),
            Branch::Family { k } => {
                if k == 0.0 && x == 0.0 {
                    return Err(Error::Singularity { x });
                }
                Ok(self.m_b * self.alpha * (x + k).powf(self.alpha - 1.0))
            }
        }
    }

    /// `|V'|^{p-2} V'`.
    pub fn flux(&self, x: f64) -> Result<f64> {
        Ok(self.derivative(x)?.powf(self.p - 1.0))
    }

    /// Max stationary residual over interior nodes of a `grid_n`-interval grid,
    /// skipping `x < 2/grid_n` on the singular profile.
    pub fn residual(&self, grid_n: usize) -> Result<f64> {
        let x_min = if self.is_singular() { 2.0 / grid_n as f64 } else { 0.0 };
        self.residual_from(grid_n, x_min)
    }

    /// Max of `|(F(x+h/2) - F(x-h/2))/h + |V'(x)|^q|` over interior nodes
    /// with `x >= x_min`, where `F` is the exact flux.
    pub fn residual_from(&self, grid_n: usize, x_min: f64) -> Result<f64> {
        if grid_n < 16 {
            return Err(Error::Range("grid_n >= 16"));
        }
        if self.branch == Branch::Zero {
            return Ok(0.0);
        }
        let h = 1.0 / grid_n as f64;
        let mut worst = 0.0f64;
        for i in 1..grid_n {
            let x = i as f64 * h;
            if x < x_min {
                continue;
            }
            let div = (self.flux(x + 0.5 * h)? - self.flux(x - 0.5 * h)?) / h;
            let r = div + self.derivative(x)?.powf(self.q);
            worst = worst.max(r.abs());
        }
        Ok(worst)
    }
}

fn check_unit(x: f64) -> Result<()> {
    if (0.0..=1.0).contains(&x) {
        Ok(())
    } else {
        Err(Error::Domain { what: "x", value: x })
    }
}

/// `g(k) = M_b [(1+k)^a - k^a]`, evaluated without cancellation for large `k`.
pub fn mass_of_k(m_b: f64, alpha: f64, k: f64) -> f64 {
    if k == 0.0 {
        return m_b;
    }
    m_b * k.powf(alpha) * (alpha * (1.0 / k).ln_1p()).exp_m1()
}

/// Solves `g(k) = m` for the family parameter.
///
/// Brackets the root by geometric growth of the upper end, bisects to a
/// narrow bracket and finishes with safeguarded secant steps.
pub fn solve_k(m: f64, p: f64, q: f64) -> Result<Branch> {
    check_exponents(p, q)?;
    if !(m >= 0.0) || !m.is_finite() {
        return Err(Error::Range("M >= 0"));
    }
    let m_b = critical_mass(p, q)?;
    let alpha = steady_exponent(p, q)?;
    if m == 0.0 {
        return Ok(Branch::Zero);
    }
    if (m - m_b).abs() <= CRITICAL_BAND * m_b {
        return Ok(Branch::Family { k: 0.0 });
    }
    if m > m_b {
        return Err(Error::NoSteadyState { mass: m, critical: m_b });
    }
    // g is decreasing: g(lo) > m > g(hi).
    let resid = |k: f64| mass_of_k(m_b, alpha, k) - m;
    let (mut lo, mut hi) = (0.0f64, 1.0f64);
    let mut iter = 0;
    while resid(hi) > 0.0 {
        lo = hi;
        hi *= 4.0;
        iter += 1;
        if iter > MAX_ITER || !hi.is_finite() {
            return Err(Error::Convergence { iterations: iter });
        }
    }
    let (mut r_lo, mut r_hi) = (resid(lo), resid(hi));
    while hi - lo > 1e-3 * hi {
        let mid = 0.5 * (lo + hi);
        let r = resid(mid);
        if r > 0.0 {
            lo = mid;
            r_lo = r;
        } else {
            hi = mid;
            r_hi = r;
        }
        iter += 1;
        if iter > MAX_ITER {
            return Err(Error::Convergence { iterations: iter });
        }
    }
    let (mut a, mut ra, mut b, mut rb) = (lo, r_lo, hi, r_hi);
    while iter <= MAX_ITER {
        iter += 1;
        let mut k = b - rb * (b - a) / (rb - ra);
        if !(k > lo && k < hi) {
            k = 0.5 * (lo + hi);
        }
        let r = resid(k);
        if r == 0.0 || (hi - lo) <= 4.0 * f64::EPSILON * hi || r.abs() <= 1e-15 * m {
            return Ok(Branch::Family { k });
        }
        if r > 0.0 {
            lo = k;
        } else {
            hi = k;
        }
        a = b;
        ra = rb;
        b = k;
        rb = r;
    }
    Err(Error::Convergence { iterations: iter })
}

#[cfg(test)]
mod tests {
    use super::*;

    fn s34(k: f64) -> SteadyState {
        SteadyState::from_k(3.0, 4.0, k).unwrap()
    }

    #[test]
    fn singular_profile_values() {
        let u = s34(0.0);
        assert_eq!(u.value(1.0).unwrap(), 2.0);
        assert_eq!(u.value(0.0).unwrap(), 0.0);
        assert!(u.derivative(1e-8).unwrap() > 1e3);
        assert_eq!(u.derivative(0.0), Err(Error::Singularity { x: 0.0 }));
        assert!(u.value(1.5).is_err());
        assert!(u.value(-0.1).is_err());
    }

    #[test]
    fn regular_member_values() {
        // 2 (sqrt(25/16) - sqrt(9/16)) = 1, V'(0) = 2 (1/2) (9/16)^{-1/2} = 4/3.
        let v = s34(9.0 / 16.0);
        assert!((v.value(1.0).unwrap() - 1.0).abs() < 1e-15);
        assert!((v.derivative(0.0).unwrap() - 4.0 / 3.0).abs() < 1e-15);
        assert!((v.mass - 1.0).abs() < 1e-15);
    }

    #[test]
    fn solve_k_cases() {
        assert_eq!(solve_k(2.0, 3.0, 4.0).unwrap(), Branch::Family { k: 0.0 });
        assert_eq!(solve_k(0.0, 3.0, 4.0).unwrap(), Branch::Zero);
        assert!(matches!(solve_k(3.0, 3.0, 4.0), Err(Error::NoSteadyState { .. })));
        match solve_k(1.0, 3.0, 4.0).unwrap() {
            Branch::Family { k } => assert!((k - 0.5625).abs() < 1e-12),
            b => panic!("{b:?}"),
        }
        assert!(solve_k(-1.0, 3.0, 4.0).is_err());
    }

    #[test]
    fn near_critical_maps_to_singular() {
        let m = 2.0 * (1.0 - 5e-13);
        assert_eq!(solve_k(m, 3.0, 4.0).unwrap(), Branch::Family { k: 0.0 });
    }

    #[test]
    fn tiny_mass_gives_huge_k() {
        let Branch::Family { k } = solve_k(1e-3, 3.0, 4.0).unwrap() else { panic!() };
        let g = mass_of_k(2.0, 0.5, k);
        assert!((g - 1e-3).abs() < 1e-15);
        assert!(k > 1e5);
    }

    #[test]
    fn residuals() {
        assert!(s34(0.5625).residual(256).unwrap() < 1e-4);
        assert!(s34(0.0).residual_from(256, 0.25).unwrap() < 1e-2);
        assert_eq!(SteadyState::zero(3.0, 4.0).unwrap().residual(256).unwrap(), 0.0);
        assert!(s34(0.5).residual(8).is_err());
    }
}
