use thiserror::Error;

/// Errors raised by the library.
#[derive(Debug, Clone, PartialEq, Error)]
pub enum Error {
    #[error("invalid parameter: {0}")]
    InvalidParameter(String),

    #[error("kappa = {0} outside the open interval (0, pi)")]
    KappaDomain(f64),

    #[error("plane waves with different lambda ({0} vs {1}) cannot be compared")]
    LambdaMismatch(f64, f64),

    #[error("operators live on different Fock bases (cutoff {0} vs {1})")]
    BasisMismatch(usize, usize),

    #[error("state has weight on the cutoff block {0}; extend the cutoff by one block")]
    TruncationBuffer(usize),

    #[error("cutoff {cutoff} too small for R = {r}: tail mass {tail:e}")]
    InsufficientCutoff { cutoff: usize, r: f64, tail: f64 },

    #[error("invalid quantum numbers l = {l}, m = {m}")]
    QuantumNumbers { l: i64, m: i64 },

    #[error("hypergeometric parameters do not terminate the series")]
    NonTerminating,

    #[error("radial index n = 0 excluded for the irregular solution")]
    OriginExcluded,

    #[error("touchard degree {0} exceeds the supported maximum {1}")]
    DegreeRange(usize, usize),

    #[error("series did not converge after {terms} terms (partial sum {partial_re} + {partial_im}i)")]
    Convergence { terms: usize, partial_re: f64, partial_im: f64 },

    #[error("fringe visibility needs at least {needed} samples, got {got}")]
    InsufficientSampling { needed: usize, got: usize },
}

pub type Result<T> = std::result::Result<T, Error>;
