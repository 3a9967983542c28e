use thiserror::Error;

/// Errors shared across the toolkit.
///
/// Anything that can be reported as a structured value (an equitability
/// violation, a formula that does not apply at some index) is a value, not
/// an `Error`; this enum covers genuinely invalid inputs and numerical
/// failures only.
#[derive(Debug, Error)]
pub enum Error {
    #[error("invalid parameter: {0}")]
    InvalidParameter(String),

    #[error("index {index} out of range {min}..={max}")]
    IndexOutOfRange { index: i64, min: i64, max: i64 },

    #[error("operands do not match: {0}")]
    MismatchedOperands(String),

    #[error("parse error: {0}")]
    Parse(String),

    #[error("graph order {order} exceeds vertex cap {cap}")]
    SizeCapExceeded { order: u128, cap: u128 },

    #[error("matrix is not symmetric at ({row},{col})")]
    NotSymmetric { row: usize, col: usize },

    #[error("eigenvalue iteration did not converge within {sweeps} sweeps")]
    NonConvergence { sweeps: usize },

    #[error("operation requires an undirected graph")]
    DirectedUnsupported,

    #[error("{0}")]
    Unsupported(String),
}

pub type Result<T> = std::result::Result<T, Error>;
