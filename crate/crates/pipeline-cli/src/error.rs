use thiserror::Error;

pub type Result<T> = std::result::Result<T, PipelineError>;

#[derive(Debug, Error)]
pub enum PipelineError {
    #[error("config: {message}{}", line.map(|l| format!(" (line {l})")).unwrap_or_default())]
    Config { line: Option<usize>, message: String },

    #[error("io error on {path}: {source}")]
    Io {
        path: String,
        #[source]
        source: std::io::Error,
    },

    #[error("training window does not cover the test period: need at least {needed} training observations, got {got}")]
    InsufficientHistory { needed: usize, got: usize },

    #[error("cell {model}/h{horizon}/{variant} failed: {source}")]
    Cell {
        model: String,
        horizon: usize,
        variant: &'static str,
        #[source]
        source: Box<PipelineError>,
    },

    #[error(transparent)]
    Series(#[from] series_core::SeriesError),

    #[error(transparent)]
    Memd(#[from] na_memd::MemdError),

    #[error(transparent)]
    Forecast(#[from] forecasters::ForecastError),

    #[error(transparent)]
    Eval(#[from] evaluation::EvalError),
}

impl PipelineError {
    pub(crate) fn in_cell(
        model: &str,
        horizon: usize,
        variant: &'static str,
    ) -> impl FnOnce(PipelineError) -> PipelineError {
        let model = model.to_string();
        move |source| PipelineError::Cell { model, horizon, variant, source: Box::new(source) }
    }
}
