use serde::{Deserialize, Serialize};

use crate::error::Result;
use crate::metrics::{dstat, mape, rmse};

/// Whether a forecast came from the raw series or from recombined
/// decomposition components.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Variant {
    Single,
    Decomposed,
}

impl Variant {
    pub fn label(&self) -> &'static str {
        match self {
            Variant::Single => "single",
            Variant::Decomposed => "decomposed",
        }
    }
}

/// Scores for one (model, variant, horizon) cell: level accuracy (MAPE,
/// RMSE), directional accuracy (Dstat) and the pointwise forecasts.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct ForecastReport {
    pub model: String,
    pub variant: Variant,
    pub horizon: usize,
    pub mape: f64,
    pub rmse: f64,
    pub dstat: f64,
    pub forecasts: Vec<f64>,
}

impl ForecastReport {
    /// Scores a forecast vector against the test actuals. `previous` anchors
    /// the directional statistic (see [`dstat`]).
    pub fn from_forecasts(
        model: &str,
        variant: Variant,
        horizon: usize,
        actual: &[f64],
        forecasts: Vec<f64>,
        previous: &[f64],
    ) -> Result<Self> {
        Ok(Self {
            model: model.to_string(),
            variant,
            horizon,
            mape: mape(actual, &forecasts)?,
            rmse: rmse(actual, &forecasts)?,
            dstat: dstat(actual, &forecasts, previous)?,
            forecasts,
        })
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::metrics::anchors_from;

    #[test]
    fn report_carries_all_three_criteria() {
        let actual = [100.0, 110.0, 105.0, 120.0];
        let forecasts = vec![102.0, 108.0, 106.0, 118.0];
        let previous = anchors_from(95.0, &actual);
        let report = ForecastReport::from_forecasts(
            "LR",
            Variant::Single,
            1,
            &actual,
            forecasts.clone(),
            &previous,
        )
        .unwrap();
        assert_eq!(report.forecasts, forecasts);
        assert!(report.mape > 0.0 && report.mape < 0.05);
        assert!(report.rmse > 0.0);
        assert!((0.0..=1.0).contains(&report.dstat));
        assert_eq!(report.horizon, 1);
    }
}
