//! Problem parameters and the closed-form constants derived from them.
//!
//! The equation is `u_t = (|u_x|^{p-2} u_x)_x + |u_x|^q` on `(0, 1)` with
//! `u(t, 0) = 0`, `u(t, 1) = M`, together with its regularization of
//! strength `eps`. `k_bound` is the uniform bound `K` on `|u|` that the
//! Lyapunov construction is built on.

// Unused when a dependency links std.
#[allow(unused_imports)]
use num_traits::Float;

use crate::error::{Error, Result};

/// Exponents, boundary value and regularization of one problem instance.
#[derive(Debug, Clone, Copy, PartialEq)]
#[cfg_attr(feature = "serde", derive(serde::Serialize, serde::Deserialize))]
pub struct ProblemParams {
    pub p: f64,
    pub q: f64,
    /// Dirichlet value at `x = 1`.
    pub m: f64,
    pub eps: f64,
    /// Uniform bound `K` on `|u|`.
    pub k_bound: f64,
}

impl ProblemParams {
    /// Builds and validates a parameter set.
    pub fn new(p: f64, q: f64, m: f64, eps: f64, k_bound: f64) -> Result<Self> {
        Self { p, q, m, eps, k_bound }.validate()
    }

    /// Builds a parameter set with `K = max(sup|u0|, M) + 1`.
    pub fn with_default_bound(p: f64, q: f64, m: f64, eps: f64, sup_u0: f64) -> Result<Self> {
        Self::new(p, q, m, eps, default_bound(sup_u0, m))
    }

    /// Checks every invariant and returns the parameters unchanged.
    pub fn validate(self) -> Result<Self> {
        check_exponents(self.p, self.q)?;
        if !self.m.is_finite() || self.m < 0.0 {
            return Err(Error::Range("M >= 0"));
        }
        if !self.eps.is_finite() || self.eps <= 0.0 || self.eps >= 0.5 {
            return Err(Error::Range("0 < eps < 1/2"));
        }
        if self.eps >= epsilon_bound(self.p, self.q)? {
            return Err(Error::Range("eps below cosh bound"));
        }
        if !self.k_bound.is_finite() || self.k_bound <= 0.0 || self.k_bound < self.m {
            return Err(Error::Range("K >= max(|u0|, M) and K > 0"));
        }
        Ok(self)
    }

    /// Same parameters with a different regularization.
    pub fn with_eps(self, eps: f64) -> Result<Self> {
        Self { eps, ..self }.validate()
    }

    /// Same parameters with a different boundary value; `K` is raised if needed.
    pub fn with_mass(self, m: f64) -> Result<Self> {
        let k_bound = self.k_bound.max(m + 1.0);
        Self { m, k_bound, ..self }.validate()
    }

    pub fn derived(&self) -> DerivedConstants {
        DerivedConstants::new(self.p, self.q).expect("validated exponents")
    }
}

/// `max(sup|u0|, M) + 1`.
pub fn default_bound(sup_u0: f64, m: f64) -> f64 {
    sup_u0.max(m) + 1.0
}

pub(crate) fn check_exponents(p: f64, q: f64) -> Result<()> {
    if p.is_finite() && q.is_finite() && p > 2.0 && q > p {
        Ok(())
    } else {
        Err(Error::Range("q > p > 2"))
    }
}

/// Critical boundary value separating global convergence from gradient blow-up:
/// `((q-p+1)/(q-p)) * ((q-p+1)/(p-1))^{1/(p-1-q)}`.
pub fn critical_mass(p: f64, q: f64) -> Result<f64> {
    check_exponents(p, q)?;
    let d = q - p;
    Ok((d + 1.0) / d * ((d + 1.0) / (p - 1.0)).powf(1.0 / (p - 1.0 - q)))
}

/// Exponent `(q-p)/(q-p+1)` of the steady-state family.
pub fn steady_exponent(p: f64, q: f64) -> Result<f64> {
    check_exponents(p, q)?;
    Ok((q - p) / (q - p + 1.0))
}

/// Strict upper bound for admissible `eps`: `min(1/2, cosh(1)^{(p-1-q)/(q-p)})`.
///
/// Below it, `|u0|_inf + M + 2 - cosh(eps x)` is a supersolution of the
/// regularized problem.
pub fn epsilon_bound(p: f64, q: f64) -> Result<f64> {
    check_exponents(p, q)?;
    let cosh_bound = 1.0f64.cosh().powf((p - 1.0 - q) / (q - p));
    Ok(cosh_bound.min(0.5))
}

/// `C1(t0) = sup|u0| / ((p-2) t0)`, the gradient-envelope constant.
pub fn c1_constant(sup_u0: f64, t0: f64, p: f64) -> Result<f64> {
    if !(t0 > 0.0) || !t0.is_finite() {
        return Err(Error::Range("t0 > 0"));
    }
    if !(p > 2.0) {
        return Err(Error::Range("q > p > 2"));
    }
    if !(sup_u0 >= 0.0) {
        return Err(Error::Range("sup|u0| >= 0"));
    }
    Ok(sup_u0 / ((p - 2.0) * t0))
}

/// Constants that depend only on the problem, plus the ones measured from a run.
#[derive(Debug, Clone, Copy, PartialEq)]
#[cfg_attr(feature = "serde", derive(serde::Serialize, serde::Deserialize))]
pub struct DerivedConstants {
    pub m_b: f64,
    pub alpha: f64,
    /// `(q-p+1)/(p-1)`, slope of the blow-up profile bound.
    pub c5: f64,
    pub c1: Option<f64>,
    /// Observed sup of `|u_t|` after the transient.
    pub c3: Option<f64>,
    /// `c3^{(p-1)/q}`.
    pub c4: Option<f64>,
    p: f64,
    q: f64,
}

impl DerivedConstants {
    pub fn new(p: f64, q: f64) -> Result<Self> {
        Ok(Self {
            m_b: critical_mass(p, q)?,
            alpha: steady_exponent(p, q)?,
            c5: (q - p + 1.0) / (p - 1.0),
            c1: None,
            c3: None,
            c4: None,
            p,
            q,
        })
    }

    pub fn with_c1(mut self, sup_u0: f64, t0: f64) -> Result<Self> {
        self.c1 = Some(c1_constant(sup_u0, t0, self.p)?);
        Ok(self)
    }

    pub fn with_c3(mut self, c3: f64) -> Result<Self> {
        if !(c3 >= 0.0) || !c3.is_finite() {
            return Err(Error::Range("C3 >= 0"));
        }
        self.c3 = Some(c3);
        self.c4 = Some(c3.powf((self.p - 1.0) / self.q));
        Ok(self)
    }
}
