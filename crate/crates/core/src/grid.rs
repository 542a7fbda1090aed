use alloc::vec::Vec;

use crate::error::{Error, Result};

/// Nodal values on the uniform grid `x_i = i/(n+1)`, `i = 0..=n+1`.
///
/// `u[0] = 0` and `u[n+1] = M` are the Dirichlet pins. `u_t` holds the
/// discrete time derivative of the step that produced this state (zero at
/// the pins and before the first step).
#[derive(Debug, Clone, PartialEq)]
#[cfg_attr(feature = "serde", derive(serde::Serialize, serde::Deserialize))]
pub struct GridState {
    pub t: f64,
    pub u: Vec<f64>,
    pub u_t: Vec<f64>,
    /// Step size of the step that produced this state, 0 initially.
    pub dt_last: f64,
}

impl GridState {
    /// Samples `f` on `n` interior nodes and pins the boundary to `(0, m)`.
    pub fn from_fn<F: FnMut(f64) -> f64>(n: usize, m: f64, mut f: F) -> Result<Self> {
        if n < 2 {
            return Err(Error::Range("n >= 2 interior nodes"));
        }
        let dx = 1.0 / (n + 1) as f64;
        let mut u: Vec<f64> = (0..n + 2).map(|i| f(i as f64 * dx)).collect();
        if u.iter().any(|v| !v.is_finite()) {
            return Err(Error::Invalid("initial profile is not finite".into()));
        }
        u[0] = 0.0;
        u[n + 1] = m;
        Ok(Self { t: 0.0, u_t: alloc::vec![0.0; n + 2], u, dt_last: 0.0 })
    }

    /// Interior node count.
    pub fn n(&self) -> usize {
        self.u.len() - 2
    }

    pub fn dx(&self) -> f64 {
        1.0 / (self.u.len() - 1) as f64
    }

    pub fn x(&self, i: usize) -> f64 {
        i as f64 * self.dx()
    }

    pub fn mass(&self) -> f64 {
        self.u[self.u.len() - 1]
    }

    /// `(u_{i+1} - u_i)/dx` for each of the `n+1` cells.
    pub fn cell_gradients(&self) -> Vec<f64> {
        let inv = 1.0 / self.dx();
        self.u.windows(2).map(|w| (w[1] - w[0]) * inv).collect()
    }

    /// Centered gradient at interior node `i`.
    pub fn node_gradient(&self, i: usize) -> f64 {
        (self.u[i + 1] - self.u[i - 1]) / (2.0 * self.dx())
    }

    /// Largest `|u_x|` over cells and the cell index where it occurs.
    pub fn max_abs_gradient(&self) -> (f64, usize) {
        self.cell_gradients().into_iter().enumerate().fold((0.0, 0), |(best, at), (i, g)| {
            if g.abs() > best {
                (g.abs(), i)
            } else {
                (best, at)
            }
        })
    }

    pub fn sup(&self) -> f64 {
        self.u.iter().copied().fold(f64::NEG_INFINITY, f64::max)
    }

    pub fn min(&self) -> f64 {
        self.u.iter().copied().fold(f64::INFINITY, f64::min)
    }

    pub fn sup_abs(&self) -> f64 {
        self.u.iter().fold(0.0, |a, v| a.max(v.abs()))
    }

    pub fn sup_abs_ut(&self) -> f64 {
        self.u_t.iter().fold(0.0, |a, v| a.max(v.abs()))
    }

    pub fn is_finite(&self) -> bool {
        self.u.iter().all(|v| v.is_finite())
    }

    /// `max_i |u_i - w_i|` for states on the same grid.
    pub fn sup_distance(&self, other: &GridState) -> f64 {
        debug_assert_eq!(self.u.len(), other.u.len());
        self.u.iter().zip(&other.u).fold(0.0, |a, (x, y)| a.max((x - y).abs()))
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn pins_and_gradients() {
        let s = GridState::from_fn(3, 2.0, |x| 2.0 * x + 0.5).unwrap();
        assert_eq!(s.u[0], 0.0);
        assert_eq!(s.u[4], 2.0);
        assert_eq!(s.dx(), 0.25);
        let g = s.cell_gradients();
        assert_eq!(g.len(), 4);
        assert!((g[1] - 2.0).abs() < 1e-15);
        assert!((g[0] - 4.0).abs() < 1e-15);
        assert_eq!(s.max_abs_gradient(), (4.0, 0));
        assert!(GridState::from_fn(1, 1.0, |x| x).is_err());
        assert!(GridState::from_fn(4, 1.0, |_| f64::NAN).is_err());
    }
}
