//! Numerical core for the degenerate diffusive Hamilton-Jacobi equation
//!
//! `u_t = (|u_x|^{p-2} u_x)_x + |u_x|^q`, `q > p > 2`, on `(0, 1)` with
//! `u(t, 0) = 0` and `u(t, 1) = M`.
//!
//! The crate is `no_std` and only needs `alloc`. It provides the explicit
//! steady-state family, the Lyapunov functional of the regularized problem,
//! a finite-difference solver and monitors that classify trajectories as
//! convergent or gradient blow-up.

#![no_std]
// Negated comparisons also reject NaN.
#![allow(clippy::neg_cmp_op_on_partial_ord)]

extern crate alloc;

pub mod error;
pub mod grid;
pub mod lyapunov;
pub mod monitor;
pub mod params;
pub mod quad;
pub mod solver;
pub mod steady;

pub use error::{Error, Result};
pub use grid::GridState;
pub use lyapunov::{DissipationReport, LyapunovEvaluator, SampleGrid};

pub use monitor::{classify, Outcome, RunReport, Tolerances};
pub use params::{critical_mass, epsilon_bound, DerivedConstants, ProblemParams};
pub use quad::QuadConfig;
pub use solver::{eps_continuation, solve, InitialProfile, SolveConfig, Solver, Stepper, Termination, Trajectory};
pub use steady::{solve_k, Branch, SteadyState};
