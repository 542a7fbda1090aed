//! Adaptive composite Simpson quadrature.

use crate::error::{Error, Result};

/// Tolerance and depth limit for [`simpson`].
#[derive(Debug, Clone, Copy, PartialEq)]
#[cfg_attr(feature = "serde", derive(serde::Serialize, serde::Deserialize))]
pub struct QuadConfig {
    /// Absolute error target for the whole interval.
    pub tol: f64,
    pub max_depth: u32,
}

impl Default for QuadConfig {
    fn default() -> Self {
        Self { tol: 1e-10, max_depth: 40 }
    }
}

struct Panel {
    a: f64,
    b: f64,
    fa: f64,
    fm: f64,
    fb: f64,
    whole: f64,
}

/// Integrates `f` over `[a, b]` by adaptive Simpson with Richardson correction.
///
/// `a > b` flips the sign; `a == b` returns 0 without evaluating `f`.
pub fn simpson<F: Fn(f64) -> f64>(f: F, a: f64, b: f64, cfg: QuadConfig) -> Result<f64> {
    if a == b {
        return Ok(0.0);
    }
    if b < a {
        return simpson(f, b, a, cfg).map(|v| -v);
    }
    let m = 0.5 * (a + b);
    let (fa, fm, fb) = (f(a), f(m), f(b));
    let whole = (b - a) / 6.0 * (fa + 4.0 * fm + fb);
    recurse(&f, Panel { a, b, fa, fm, fb, whole }, cfg.tol, cfg.max_depth)
}

fn recurse<F: Fn(f64) -> f64>(f: &F, p: Panel, tol: f64, depth: u32) -> Result<f64> {
    let m = 0.5 * (p.a + p.b);
    let lm = 0.5 * (p.a + m);
    let rm = 0.5 * (m + p.b);
    let (flm, frm) = (f(lm), f(rm));
    let h = p.b - p.a;
    let left = h / 12.0 * (p.fa + 4.0 * flm + p.fm);
    let right = h / 12.0 * (p.fm + 4.0 * frm + p.fb);
    let delta = left + right - p.whole;
    if !delta.is_finite() {
        return Err(Error::Quadrature { a: p.a, b: p.b });
    }
    if delta.abs() <= 15.0 * tol {
        return Ok(left + right + delta / 15.0);
    }
    if depth == 0 {
        return Err(Error::Quadrature { a: p.a, b: p.b });
    }
    let l = Panel { a: p.a, b: m, fa: p.fa, fm: flm, fb: p.fm, whole: left };
    let r = Panel { a: m, b: p.b, fa: p.fm, fm: frm, fb: p.fb, whole: right };
    Ok(recurse(f, l, 0.5 * tol, depth - 1)? + recurse(f, r, 0.5 * tol, depth - 1)?)
}
