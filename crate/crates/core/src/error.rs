use alloc::string::String;
use core::fmt;

pub type Result<T> = core::result::Result<T, Error>;

/// Failures raised by the numerical core.
#[derive(Debug, Clone, PartialEq)]
pub enum Error {
    /// A parameter invariant does not hold. The payload names the invariant.
    Range(&'static str),
    /// A point lies outside the domain of the evaluated function.
    Domain { what: &'static str, value: f64 },
    /// The steady-state derivative is infinite at this point.
    Singularity { x: f64 },
    /// No nonnegative steady state exists for this boundary value.
    NoSteadyState { mass: f64, critical: f64 },
    /// A root finder ran out of iterations.
    Convergence { iterations: usize },
    /// Adaptive quadrature reached its depth limit without meeting tolerance.
    Quadrature { a: f64, b: f64 },
    /// A time step was refused; the driver should retry with a smaller step.
    StepRejected { reason: &'static str },
    /// The state produced NaN or infinity at the minimum step size.
    NonFiniteValue { t: f64 },
    /// The supersolution barrier was crossed.
    GuardViolation { node: usize, t: f64, excess: f64 },
    /// The Lyapunov functional increased along a trajectory.
    MonotonicityViolation { step: usize, increase: f64 },
    /// Successive regularization levels did not contract.
    NotCauchy { distances: alloc::vec::Vec<f64> },
    /// Malformed input that is not a numeric range problem.
    Invalid(String),
}

impl fmt::Display for Error {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Error::Range(inv) => write!(f, "parameter out of range: {inv}"),
            Error::Domain { what, value } => write!(f, "{what} outside domain: {value}"),
            Error::Singularity { x } => write!(f, "singular derivative at x = {x}"),
            Error::NoSteadyState { mass, critical } => {
                write!(f, "no steady state for M = {mass} > M_b = {critical}")
            }
            Error::Convergence { iterations } => {
                write!(f, "root finder did not converge in {iterations} iterations")
            }
            Error::Quadrature { a, b } => {
                write!(f, "adaptive quadrature failed on [{a}, {b}]")
            }
            Error::StepRejected { reason } => write!(f, "step rejected: {reason}"),
            Error::NonFiniteValue { t } => write!(f, "non-finite value at t = {t}"),
            Error::GuardViolation { node, t, excess } => {
                write!(f, "supersolution barrier exceeded by {excess:e} at node {node}, t = {t}")
            }
            Error::MonotonicityViolation { step, increase } => {
                write!(f, "Lyapunov functional increased by {increase:e} at step {step}")
            }
            Error::NotCauchy { distances } => {
                write!(f, "regularization levels do not contract: {distances:?}")
            }
            Error::Invalid(msg) => f.write_str(msg),
        }
    }
}

impl core::error::Error for Error {}
