use thiserror::Error;

/// Errors produced by the library.
#[derive(Debug, Clone, PartialEq, Error)]
pub enum Error {
    /// A bit string or problem dimension of zero was requested.
    #[error("dimension must be at least 1")]
    InvalidDimension,

    /// A mutation strength outside `[1, n]`.
    #[error("mutation strength {strength} outside [1, {n}]")]
    InvalidStrength { strength: usize, n: usize },

    /// Two bit strings of different lengths were combined.
    #[error("bit string lengths differ: {left} vs {right}")]
    LengthMismatch { left: usize, right: usize },

    /// A mutation rate that is not strictly positive.
    #[error("mutation rate must be strictly positive, got {0}")]
    InvalidRate(f64),

    /// A negative (or non-finite) variance.
    #[error("variance must be finite and non-negative, got {0}")]
    InvalidVariance(f64),

    /// An invalid algorithm or experiment configuration. The message names
    /// the offending field.
    #[error("invalid configuration: {0}")]
    Config(String),

    /// An argument outside the domain of an exact computation.
    #[error("domain error: {0}")]
    Domain(String),

    /// A strength table that assigns zero improvement probability to a
    /// reachable fitness level, so the expected hitting time diverges.
    #[error("expected time diverges: zero improvement probability at fitness {0}")]
    DivergentTable(usize),
}

pub type Result<T> = std::result::Result<T, Error>;
