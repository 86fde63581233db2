use ndarray::{Array1, Array2, ArrayView1, ArrayView2};
use rand::rngs::StdRng;
use rand::SeedableRng;
use rand_distr::{Distribution, Normal};
use serde::{Deserialize, Serialize};
use series_core::SupervisedSet;

use crate::error::{ForecastError, Result};
use crate::model::{ModelParams, TrainedModel};
use crate::sigmoid;
use crate::spec::ModelSpec;

/// Three-layer feedforward network: sigmoid hidden layer, linear output.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct BpnnParams {
    pub w1: Array2<f64>, // hidden × input
    pub b1: Array1<f64>,
    pub w2: Array1<f64>, // hidden
    pub b2: f64,
}

impl BpnnParams {
    pub fn init(input_dim: usize, hidden: usize, rng: &mut StdRng) -> Self {
        let normal = Normal::new(0.0, 0.1).expect("valid std");
        let w1 = Array2::from_shape_fn((hidden, input_dim), |_| normal.sample(rng));
        let b1 = Array1::from_shape_fn(hidden, |_| normal.sample(rng));
        let w2 = Array1::from_shape_fn(hidden, |_| normal.sample(rng));
        let b2 = normal.sample(rng);
        Self { w1, b1, w2, b2 }
    }

    pub fn predict(&self, x: ArrayView1<f64>) -> f64 {
        let pre = self.w1.dot(&x) + &self.b1;
        let h = pre.mapv(sigmoid);
        self.w2.dot(&h) + self.b2
    }

    pub fn to_flat(&self) -> Vec<f64> {
        let mut flat: Vec<f64> = self.w1.iter().cloned().collect();
        flat.extend(self.b1.iter());
        flat.extend(self.w2.iter());
        flat.push(self.b2);
        flat
    }

    pub fn from_flat(template: &Self, flat: &[f64]) -> Self {
        let (hidden, input) = template.w1.dim();
        let mut it = flat.iter().cloned();
        let w1 = Array2::from_shape_fn((hidden, input), |_| it.next().expect("w1"));
        let b1 = Array1::from_shape_fn(hidden, |_| it.next().expect("b1"));
        let w2 = Array1::from_shape_fn(hidden, |_| it.next().expect("w2"));
        let b2 = it.next().expect("b2");
        Self { w1, b1, w2, b2 }
    }
}

/// Mean squared training error.
pub fn bpnn_loss(params: &BpnnParams, inputs: ArrayView2<f64>, targets: ArrayView1<f64>) -> f64 {
    let n = targets.len() as f64;
    let mut total = 0.0;
    for (row, &y) in inputs.outer_iter().zip(targets.iter()) {
        let err = params.predict(row) - y;
        total += err * err;
    }
    total / n
}

/// Analytic gradient of [`bpnn_loss`] by backpropagation.
pub fn bpnn_gradient(
    params: &BpnnParams,
    inputs: ArrayView2<f64>,
    targets: ArrayView1<f64>,
) -> BpnnParams {
    let n = targets.len() as f64;
    let (hidden, input_dim) = params.w1.dim();
    let mut grad = BpnnParams {
        w1: Array2::zeros((hidden, input_dim)),
        b1: Array1::zeros(hidden),
        w2: Array1::zeros(hidden),
        b2: 0.0,
    };
    for (row, &y) in inputs.outer_iter().zip(targets.iter()) {
        let pre = params.w1.dot(&row) + &params.b1;
        let h = pre.mapv(sigmoid);
        let out = params.w2.dot(&h) + params.b2;
        let e = 2.0 * (out - y) / n;
        grad.b2 += e;
        grad.w2.scaled_add(e, &h);
        let dz = (&params.w2 * e) * &h * h.mapv(|v| 1.0 - v);
        grad.b1 += &dz;
        for j in 0..hidden {
            for i in 0..input_dim {
                grad.w1[(j, i)] += dz[j] * row[i];
            }
        }
    }
    grad
}

/// Full-batch gradient descent with at most `spec.iterations` updates.
pub fn train_bpnn(data: &SupervisedSet, spec: &ModelSpec) -> Result<TrainedModel> {
    if data.len() < 2 {
        return Err(ForecastError::TooFewRows { needed: 2, got: data.len() });
    }
    if spec.hidden_units == 0 {
        return Err(ForecastError::InvalidSpec("BPNN needs at least one hidden unit".into()));
    }
    let mut rng = StdRng::seed_from_u64(spec.rng_seed);
    let mut params = BpnnParams::init(data.lag_count(), spec.hidden_units, &mut rng);
    let mut history = Vec::with_capacity(spec.iterations + 1);
    for _ in 0..spec.iterations {
        let loss = bpnn_loss(&params, data.inputs(), data.targets());
        if !loss.is_finite() {
            return Err(ForecastError::Diverged { learning_rate: spec.learning_rate });
        }
        history.push(loss);
        let grad = bpnn_gradient(&params, data.inputs(), data.targets());
        params.w1.scaled_add(-spec.learning_rate, &grad.w1);
        params.b1.scaled_add(-spec.learning_rate, &grad.b1);
        params.w2.scaled_add(-spec.learning_rate, &grad.w2);
        params.b2 -= spec.learning_rate * grad.b2;
    }
    let final_loss = bpnn_loss(&params, data.inputs(), data.targets());
    if !final_loss.is_finite() {
        return Err(ForecastError::Diverged { learning_rate: spec.learning_rate });
    }
    history.push(final_loss);
    Ok(TrainedModel {
        spec: *spec,
        lag_count: data.lag_count(),
        normalization: None,
        params: ModelParams::Bpnn { params, loss_history: history },
    })
}
