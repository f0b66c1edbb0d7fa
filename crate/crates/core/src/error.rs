//! Error type shared by all modules of the crate.

use thiserror::Error;

/// Errors surfaced by enumeration and numeric evaluation.
#[derive(Debug, Clone, PartialEq, Error)]
pub enum Error {
    /// Exhaustive generation was requested for a weight above the configured
    /// ceiling. The ceiling exists because the number of plane partitions
    /// grows faster than any polynomial; raise it explicitly if you really
    /// want the run.
    #[error("weight n = {n} exceeds the generator ceiling {ceiling}")]
    CeilingExceeded { n: u64, ceiling: u64 },

    /// The linear-space partition-function recurrence left the f64 range.
    /// The log-space recurrence covers these inputs.
    #[error("Z_N overflowed the f64 range at N = {n}; use the log-space recurrence")]
    Overflow { n: usize },

    /// The series for ln Z_inf did not meet its truncation bound within the
    /// term limit. Happens only for x extremely close to 1.
    #[error("ln Z_inf series did not converge within {terms} terms at x = {x}")]
    Convergence { x: f64, terms: usize },

    /// An operation defined only in one dimension was called with the other.
    #[error("operation requires D = {required}, point has D = {actual}")]
    DimensionMismatch { required: u8, actual: u8 },

    /// A parameter was outside its documented domain.
    #[error("invalid argument: {0}")]
    InvalidArgument(String),

    /// The entropy derivative does not change sign on the supplied bracket,
    /// so there is no stationary point to find.
    #[error("S' has no sign change on [{lo}, {hi}]")]
    NoSignChange { lo: f64, hi: f64 },

    /// A stationary point was found but the curvature there is not positive,
    /// so the Gaussian saddle approximation does not apply.
    #[error("stationary point beta0 = {beta0} has non-positive curvature {curvature}")]
    NonConvex { beta0: f64, curvature: f64 },
}

pub type Result<T> = std::result::Result<T, Error>;
