//! Error type shared by all modules of the crate.

/// Errors produced by the numerical routines in this crate.
#[derive(Debug, thiserror::Error)]
pub enum Error {
    /// The ODE integrator could not take a step without underflowing the
    /// step size (stiff or singular right-hand side).
    #[error("ode step size underflow at t = {t:.6e}")]
    StepSizeUnderflow { t: f64 },

    /// The integrator produced a non-finite state (blow-up).
    #[error("ode integration failure at t = {t:.6e}: {msg}")]
    Integration { t: f64, msg: String },

    /// Adaptive quadrature could not reach the requested tolerance.
    #[error(
        "quadrature accuracy failure: error estimate {err_est:.3e} > tolerance {tol:.3e} \
         after {intervals} subdivisions"
    )]
    QuadratureAccuracy {
        tol: f64,
        err_est: f64,
        intervals: usize,
    },

    /// An argument lies outside the mathematical domain of the operation.
    #[error("domain error: {0}")]
    Domain(String),

    /// A documented precondition was violated by the caller.
    #[error("contract violation: {0}")]
    Contract(String),

    /// A text input could not be parsed.
    #[error("parse error at line {line}: {msg}")]
    Parse { line: usize, msg: String },

    /// An input held no usable data.
    #[error("empty data: {0}")]
    EmptyData(String),

    /// Parsed data violated a structural requirement (e.g. ordering).
    #[error("data integrity error: {0}")]
    DataIntegrity(String),
}

pub type Result<T, E = Error> = std::result::Result<T, E>;
