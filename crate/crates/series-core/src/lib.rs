//! Data model for multichannel monthly time series: validated ingestion,
//! min-max normalization, supervised lag embedding and chronological
//! train/test splitting. All values are immutable after construction and the
//! operations are pure, so everything here is safe to share across threads.

mod error;
mod ingest;
mod month;
mod normalize;
mod series;
mod supervised;

pub use error::{Result, SeriesError};
pub use ingest::{ingest_csv, parse_csv};
pub use month::YearMonth;
pub use normalize::{denormalize, min_max_normalize, NormalizationParams, UnitScaler};
pub use series::{
    chronological_split, concat, split_index, MultichannelSeries, MIN_PIPELINE_LEN,
};
pub use supervised::{make_lag_matrix, SupervisedSet};
