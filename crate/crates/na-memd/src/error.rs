use thiserror::Error;

pub type Result<T> = std::result::Result<T, MemdError>;

#[derive(Debug, Error)]
pub enum MemdError {
    #[error("need at least {needed} direction vectors for dimension {dim}, got {got}")]
    TooFewDirections { needed: usize, dim: usize, got: usize },

    #[error("direction dimension {direction} does not match channel count {channels}")]
    DimensionMismatch { direction: usize, channels: usize },

    #[error("signal is residue-like: fewer than half the projections have two maxima")]
    ResidueLike,

    #[error("series too short for multivariate decomposition: need {needed}, got {got}")]
    TooShort { needed: usize, got: usize },

    #[error("invalid configuration: {0}")]
    InvalidConfig(String),

    #[error("inputs must have equal length and non-zero variance: {0}")]
    DegenerateInput(String),

    #[error(transparent)]
    Emd(#[from] emd_univariate::EmdError),

    #[error(transparent)]
    Series(#[from] series_core::SeriesError),
}
