use series_core::SupervisedSet;

use crate::error::{ForecastError, Result};
use crate::model::{ModelParams, TrainedModel};
use crate::spec::ModelSpec;

const SEASON: usize = 12;

/// ŷ_{T+horizon} = y_{T+horizon−12}: repeats the matching month of the last
/// seasonal cycle.
pub fn seasonal_naive_forecast(series: &[f64], horizon: usize) -> Result<f64> {
    let t = series.len();
    if horizon == 0 {
        return Err(ForecastError::InvalidSpec("horizon must be at least 1".into()));
    }
    if t < SEASON + horizon {
        return Err(ForecastError::SeriesTooShort { needed: SEASON + horizon, got: t });
    }
    Ok(series[t + horizon - SEASON - 1])
}

/// Window-based seasonal naive so the baseline runs through the same lag
/// machinery as the trained models: with a window ending `horizon` steps
/// before the target, the value one season before the target sits at offset
/// `lag_count + horizon − 13`.
pub fn train_seasonal_naive(data: &SupervisedSet, spec: &ModelSpec) -> Result<TrainedModel> {
    let (lag, horizon) = (data.lag_count(), data.horizon());
    if horizon > SEASON {
        return Err(ForecastError::InvalidSpec(format!(
            "seasonal naive supports horizons up to {SEASON}, got {horizon}"
        )));
    }
    if lag + horizon < SEASON + 1 {
        return Err(ForecastError::InvalidSpec(format!(
            "seasonal naive needs lag_count + horizon ≥ {}, got {} + {horizon}",
            SEASON + 1,
            lag
        )));
    }
    Ok(TrainedModel {
        spec: *spec,
        lag_count: lag,
        normalization: None,
        params: ModelParams::SeasonalNaive { window_offset: lag + horizon - SEASON - 1 },
    })
}
