//! Forecast evaluation: MAPE and RMSE for level accuracy, the directional
//! statistic for sign accuracy, and the Diebold-Mariano test for whether two
//! forecast sequences differ significantly under squared-error loss. All
//! functions are pure.

mod dm;
mod error;
mod metrics;
mod report;

pub use dm::{dm_test, DmTestResult};
pub use error::{EvalError, Result};
pub use metrics::{anchors_from, dstat, mape, rmse};
pub use report::{ForecastReport, Variant};
