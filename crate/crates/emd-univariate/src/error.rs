use thiserror::Error;

pub type Result<T> = std::result::Result<T, EmdError>;

#[derive(Debug, Error, PartialEq, Eq)]
pub enum EmdError {
    #[error("signal too short: need at least {needed} samples, got {got}")]
    TooShort { needed: usize, got: usize },

    /// The signal has too few extrema to carry an oscillation and must be
    /// treated as a residue (trend) instead.
    #[error("signal is residue-like: fewer than 2 {0} after boundary extension")]
    ResidueLike(&'static str),
}
