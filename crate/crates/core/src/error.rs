use thiserror::Error;

#[derive(Debug, Clone, PartialEq, Error)]
pub enum Error {
    #[error("law must have a nonzero step")]
    ZeroLaw,

    #[error("invalid edge spec: need 0 <= n1 < n2 <= n, got ({n1}, {n2}, {n})")]
    InvalidEdgeSpec { n1: usize, n2: usize, n: usize },

    #[error("time index {index} out of range for a path with {steps} steps")]
    IndexOutOfRange { index: usize, steps: usize },

    #[error("chord is degenerate: both endpoints coincide")]
    DegenerateChord,

    #[error("invalid path: {0}")]
    InvalidPath(String),

    #[error("no bridge of length {steps} exists for law ({k}, {m})")]
    NullBridge { k: u64, m: u64, steps: usize },

    #[error("{what} = {value} exceeds the supported maximum {max}")]
    TooLarge { what: &'static str, value: usize, max: usize },

    #[error("invalid argument: {0}")]
    InvalidArgument(String),

    #[error("tolerance {tolerance:e} not reached (error estimate {estimate:e})")]
    Tolerance { tolerance: f64, estimate: f64 },

    #[error("convex hull of an empty point set")]
    EmptyInput,
}

pub type Result<T> = std::result::Result<T, Error>;
