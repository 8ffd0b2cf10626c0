use thiserror::Error;

/// Errors raised by the numerical core.
#[derive(Debug, Clone, PartialEq, Error)]
pub enum EosError {
    #[error("invalid sequence at index {index}: {reason}")]
    InvalidSequence { index: usize, reason: String },

    #[error("unsupported size {n}: binomial tables stop at n = {max}")]
    UnsupportedSize { n: usize, max: usize },

    #[error("negative mass {value} at index {index}")]
    NegativeMass { index: usize, value: f64 },

    #[error("masses sum to {total}, expected 1")]
    MassNotOne { total: f64 },

    #[error("epsilon {0} outside [0, 1/2)")]
    EpsilonOutOfRange(f64),

    #[error("need at least {needed} moments, got {got}")]
    TooFewMoments { needed: usize, got: usize },

    #[error("matrix is not symmetric at ({row}, {col})")]
    NonSymmetric { row: usize, col: usize },

    #[error("expected length {expected}, got {got}")]
    WrongLength { expected: usize, got: usize },

    #[error("invalid moment vector: {0}")]
    InvalidMoments(String),

    #[error("moments are not representable: {0}")]
    NotRepresentable(String),

    #[error("numerical rank is ambiguous: eigenvalue ratio {ratio:e} falls inside the ambiguity band")]
    RankDetectionAmbiguous { ratio: f64 },

    #[error("certificate recovery failed: {0}")]
    RecoveryFailed(String),

    #[error("integration failed: estimated error {error:e} exceeds tolerance {tolerance:e}")]
    IntegrationFailure { error: f64, tolerance: f64 },

    #[error("degenerate input: {0}")]
    DegenerateInput(String),

    #[error("invalid distribution: {0}")]
    InvalidDistribution(String),
}

pub type Result<T> = std::result::Result<T, EosError>;
