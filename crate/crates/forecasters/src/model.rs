use ndarray::{Array1, Array2};
use serde::{Deserialize, Serialize};
use series_core::SupervisedSet;

use crate::bpnn::BpnnParams;
use crate::error::{ForecastError, Result};
use crate::lstm::{lstm_forecast, LstmParams};
use crate::sigmoid;
use crate::spec::{ModelKind, ModelSpec};

/// Learned parameters, one variant per model family.
#[allow(clippy::large_enum_variant)]
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub enum ModelParams {
    Linear {
        weights: Array1<f64>,
        intercept: f64,
        rank_deficient: bool,
    },
    RandomLayer {
        input_weights: Array2<f64>,
        hidden_bias: Array1<f64>,
        output_weights: Array1<f64>,
        direct_link: bool,
        best_restart: usize,
        train_rmse: f64,
    },
    Bpnn {
        params: BpnnParams,
        loss_history: Vec<f64>,
    },
    Lstm {
        params: LstmParams,
        loss_history: Vec<f64>,
    },
    SeasonalNaive {
        window_offset: usize,
    },
}

/// A trained forecaster: the spec it was trained under, the lag window it
/// expects, the scaling of the channel it saw, and its parameters.
/// Prediction is a pure function of `(model, window)`.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct TrainedModel {
    pub spec: ModelSpec,
    pub lag_count: usize,
    /// (min, max) of the series the model was fit on, when the caller scaled.
    pub normalization: Option<(f64, f64)>,
    pub params: ModelParams,
}

impl TrainedModel {
    pub fn kind(&self) -> ModelKind {
        self.spec.kind
    }

    pub fn with_normalization(mut self, min: f64, max: f64) -> Self {
        self.normalization = Some((min, max));
        self
    }

    pub fn predict(&self, window: &[f64]) -> Result<f64> {
        if window.len() != self.lag_count {
            return Err(ForecastError::WindowMismatch {
                expected: self.lag_count,
                got: window.len(),
            });
        }
        if window.iter().any(|v| !v.is_finite()) {
            return Err(ForecastError::NonFinite("prediction window"));
        }
        let x = Array1::from_vec(window.to_vec());
        let value = match &self.params {
            ModelParams::Linear { weights, intercept, .. } => weights.dot(&x) + intercept,
            ModelParams::RandomLayer {
                input_weights,
                hidden_bias,
                output_weights,
                direct_link,
                ..
            } => {
                let hidden = (x.dot(input_weights) + hidden_bias).mapv(sigmoid);
                if *direct_link {
                    let h = hidden.len();
                    let p = x.len();
                    let mut features = Array1::ones(h + p + 1);
                    features.slice_mut(ndarray::s![..h]).assign(&hidden);
                    features.slice_mut(ndarray::s![h..h + p]).assign(&x);
                    features.dot(output_weights)
                } else {
                    hidden.dot(output_weights)
                }
            }
            ModelParams::Bpnn { params, .. } => params.predict(x.view()),
            ModelParams::Lstm { params, .. } => lstm_forecast(window, params)?,
            ModelParams::SeasonalNaive { window_offset } => window[*window_offset],
        };
        if !value.is_finite() {
            return Err(ForecastError::NonFinite("prediction"));
        }
        Ok(value)
    }

    /// Self-describing text blob (JSON) with kind tag, spec echo and
    /// parameter arrays. Predictions survive the round trip bit-exactly.
    pub fn to_blob(&self) -> String {
        serde_json::to_string(self).expect("model serialization cannot fail")
    }

    pub fn from_blob(blob: &str) -> Result<Self> {
        serde_json::from_str(blob).map_err(|e| ForecastError::Decode(e.to_string()))
    }
}

/// Trains the model `spec` asks for. The horizon for the seasonal-naive
/// baseline comes from the supervised set itself.
pub fn train(data: &SupervisedSet, spec: &ModelSpec) -> Result<TrainedModel> {
    match spec.kind {
        ModelKind::Lr => {
            let mut model = crate::linear::train_lr(data)?;
            model.spec.rng_seed = spec.rng_seed;
            Ok(model)
        }
        ModelKind::Bpnn => crate::bpnn::train_bpnn(data, spec),
        ModelKind::Elm => crate::random_layer::train_elm(data, spec),
        ModelKind::Rvfl => crate::random_layer::train_rvfl(data, spec),
        ModelKind::Lstm => crate::lstm::train_lstm(data, spec),
        ModelKind::SeasonalNaive => crate::seasonal::train_seasonal_naive(data, spec),
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use series_core::make_lag_matrix;

    #[test]
    fn blob_round_trip_is_bit_exact() {
        let series: Vec<f64> = (0..60).map(|t| 0.5 + 0.4 * (t as f64 * 0.37).sin()).collect();
        let data = make_lag_matrix(&series, 6, 1).unwrap();
        let window: Vec<f64> = series[20..26].to_vec();
        for kind in [ModelKind::Lr, ModelKind::Elm, ModelKind::Rvfl, ModelKind::Bpnn] {
            let spec = ModelSpec { iterations: 3, rng_seed: 7, ..ModelSpec::defaults(kind) };
            let model = train(&data, &spec).unwrap().with_normalization(0.1, 0.9);
            let blob = model.to_blob();
            let revived = TrainedModel::from_blob(&blob).unwrap();
            assert_eq!(revived.normalization, Some((0.1, 0.9)));
            let before = model.predict(&window).unwrap();
            let after = revived.predict(&window).unwrap();
            assert_eq!(before.to_bits(), after.to_bits(), "{kind:?}");
        }
    }

    #[test]
    fn window_length_is_enforced() {
        let series: Vec<f64> = (0..40).map(|t| t as f64 * 0.1).collect();
        let data = make_lag_matrix(&series, 5, 1).unwrap();
        let model = train(&data, &ModelSpec::defaults(ModelKind::Lr)).unwrap();
        assert!(matches!(
            model.predict(&[1.0, 2.0]),
            Err(ForecastError::WindowMismatch { expected: 5, got: 2 })
        ));
        assert!(model.predict(&[f64::NAN, 0.0, 0.0, 0.0, 0.0]).is_err());
    }

    #[test]
    fn predictions_are_finite_on_finite_input() {
        let series: Vec<f64> = (0..50).map(|t| 0.5 + 0.3 * (t as f64 * 0.9).cos()).collect();
        let data = make_lag_matrix(&series, 4, 2).unwrap();
        for kind in [ModelKind::Lr, ModelKind::Elm, ModelKind::Rvfl, ModelKind::Bpnn] {
            let spec = ModelSpec { iterations: 2, rng_seed: 1, ..ModelSpec::defaults(kind) };
            let model = train(&data, &spec).unwrap();
            for i in 0..data.len() {
                let pred = model.predict(&data.row(i).to_vec()).unwrap();
                assert!(pred.is_finite());
            }
        }
    }
}
