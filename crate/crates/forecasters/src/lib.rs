//! Forecasting model zoo behind one train/predict interface: linear
//! regression, a back-propagation network, extreme learning machine, random
//! vector functional link network, an LSTM trained from scratch with Adam,
//! and a seasonal-naive baseline. Every trainer is a pure function of
//! `(data, spec)` including the seed, and a [`TrainedModel`] is immutable and
//! safe to share for concurrent prediction.
//!
//! Models are meant to be fit on [0, 1]-scaled data (the sigmoid layers
//! saturate otherwise); callers denormalize the predictions.

mod bpnn;
mod error;
mod linear;
mod lstm;
mod lstsq;
mod model;
mod random_layer;
mod seasonal;
mod spec;

pub use bpnn::{bpnn_gradient, bpnn_loss, train_bpnn, BpnnParams};
pub use error::{ForecastError, Result};
pub use linear::train_lr;
pub use lstm::{
    lstm_cell_detail, lstm_cell_step, lstm_forecast, lstm_gradient, lstm_loss, train_lstm,
    GateActivations, LstmParams, LstmState,
};
pub use model::{train, ModelParams, TrainedModel};
pub use random_layer::{hidden_layer_weights, restart_seed, train_elm, train_rvfl};
pub use seasonal::{seasonal_naive_forecast, train_seasonal_naive};
pub use spec::{ModelKind, ModelSpec};

pub(crate) fn sigmoid(x: f64) -> f64 {
    1.0 / (1.0 + (-x).exp())
}
