use thiserror::Error;

pub type Result<T> = std::result::Result<T, SeriesError>;

/// Errors raised while building or transforming multichannel series.
#[derive(Debug, Error)]
pub enum SeriesError {
    #[error("io error reading {path}: {source}")]
    Io {
        path: String,
        #[source]
        source: std::io::Error,
    },

    #[error("invalid date `{0}` (expected YYYY-MM)")]
    InvalidDate(String),

    #[error("non-consecutive index: expected {expected}, found {found} (row {row})")]
    NonConsecutiveIndex {
        expected: String,
        found: String,
        row: usize,
    },

    #[error("non-numeric cell `{cell}` in column `{column}` (row {row})")]
    NonNumericCell {
        cell: String,
        column: String,
        row: usize,
    },

    #[error("channel `{channel}` has a missing value at the series boundary (row {row}); only interior gaps can be repaired")]
    BoundaryGap { channel: String, row: usize },

    #[error("series too short: need at least {needed} observations, got {got}")]
    TooShort { needed: usize, got: usize },

    #[error("channel `{0}` is constant and cannot be normalized")]
    ConstantChannel(String),

    #[error("unknown channel `{0}`")]
    UnknownChannel(String),

    #[error("channel count mismatch: {names} names for {columns} value columns")]
    ChannelCountMismatch { names: usize, columns: usize },

    #[error("train fraction {0} outside (0, 1)")]
    InvalidFraction(f64),

    #[error("empty input: {0}")]
    EmptyInput(String),

    #[error("{0}")]
    InvalidArgument(String),
}
