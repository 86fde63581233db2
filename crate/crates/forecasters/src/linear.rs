use ndarray::{Array1, Array2};
use series_core::SupervisedSet;

use crate::error::{ForecastError, Result};
use crate::lstsq::min_norm_lstsq;
use crate::model::{ModelParams, TrainedModel};
use crate::spec::{ModelKind, ModelSpec};

/// Ordinary least squares with intercept. A rank-deficient design falls back
/// to the minimum-norm solution and is flagged in the model metadata.
pub fn train_lr(data: &SupervisedSet) -> Result<TrainedModel> {
    let (n, p) = (data.len(), data.lag_count());
    if n <= p {
        return Err(ForecastError::TooFewRows { needed: p + 1, got: n });
    }
    let mut design = Array2::ones((n, p + 1));
    design.slice_mut(ndarray::s![.., ..p]).assign(&data.inputs());
    let (beta, rank) = min_norm_lstsq(design.view(), data.targets());
    let weights = Array1::from_iter(beta.iter().take(p).cloned());
    let intercept = beta[p];
    Ok(TrainedModel {
        spec: ModelSpec::defaults(ModelKind::Lr),
        lag_count: p,
        normalization: None,
        params: ModelParams::Linear { weights, intercept, rank_deficient: rank < p + 1 },
    })
}
