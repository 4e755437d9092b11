use thiserror::Error;

/// Errors raised by the numerical routines.
#[derive(Debug, Clone, PartialEq, Error)]
pub enum Error {
    #[error("domain error: {what} (got {value})")]
    Domain { what: &'static str, value: f64 },

    #[error("parameter {field} must be > 0 and finite (got {value})")]
    Parameter { field: &'static str, value: f64 },

    #[error("unsupported order {order} (supported: {min}..={max})")]
    UnsupportedOrder {
        order: usize,
        min: usize,
        max: usize,
    },

    #[error("overflow evaluating {0}")]
    Overflow(&'static str),

    #[error("{what} did not converge after {iterations} iterations")]
    NonConvergence {
        what: &'static str,
        iterations: usize,
    },

    #[error("s = {s} lies outside the analyticity strip ({lower}, {upper})")]
    OutsideStrip { s: f64, lower: f64, upper: f64 },

    #[error("moment diverges (n ≥ M): n = {n}, largest finite order < {limit}")]
    MomentDiverges { n: usize, limit: f64 },

    #[error("{0} is not a compound model")]
    NotCompound(&'static str),

    #[error("infeasible cumulants: {0}")]
    InfeasibleCumulants(String),

    #[error("sample set is empty")]
    EmptySample,

    #[error("sample {index} is not a positive finite value (got {value})")]
    InvalidSample { index: usize, value: f64 },

    #[error("invalid input: {0}")]
    Invalid(String),
}

pub type Result<T> = std::result::Result<T, Error>;
