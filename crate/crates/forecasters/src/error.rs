use thiserror::Error;

pub type Result<T> = std::result::Result<T, ForecastError>;

#[derive(Debug, Error)]
pub enum ForecastError {
    #[error("not enough training rows: need {needed}, got {got}")]
    TooFewRows { needed: usize, got: usize },

    #[error("training diverged at learning rate {learning_rate}")]
    Diverged { learning_rate: f64 },

    #[error("input window has {got} values but the model expects {expected}")]
    WindowMismatch { expected: usize, got: usize },

    #[error("non-finite value in {0}")]
    NonFinite(&'static str),

    #[error("invalid model configuration: {0}")]
    InvalidSpec(String),

    #[error("series too short for seasonal naive: need {needed}, got {got}")]
    SeriesTooShort { needed: usize, got: usize },

    #[error("model blob could not be decoded: {0}")]
    Decode(String),
}
