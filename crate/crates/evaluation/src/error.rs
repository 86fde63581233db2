use thiserror::Error;

pub type Result<T> = std::result::Result<T, EvalError>;

#[derive(Debug, Error, PartialEq)]
pub enum EvalError {
    #[error("length mismatch: {left} vs {right}")]
    LengthMismatch { left: usize, right: usize },

    #[error("empty input")]
    Empty,

    #[error("actual value at index {0} is zero; MAPE is undefined")]
    ZeroActual(usize),

    #[error("need at least {needed} observations for the DM test, got {got}")]
    TooShort { needed: usize, got: usize },

    #[error("forecasts are identical: loss differential has zero variance, DM statistic undefined")]
    IdenticalForecasts,
}
