use ndarray::{Array1, Array2, ArrayView1, ArrayView2};
use rand::rngs::StdRng;
use rand::{Rng, SeedableRng};
use rand_distr::{Distribution, Normal};
use serde::{Deserialize, Serialize};
use series_core::SupervisedSet;

use crate::error::{ForecastError, Result};
use crate::model::{ModelParams, TrainedModel};
use crate::sigmoid;
use crate::spec::{derive_seed, ModelSpec};

/// Recurrent state carried across time steps.
#[derive(Debug, Clone, PartialEq)]
pub struct LstmState {
    pub cell: Array1<f64>,
    pub hidden: Array1<f64>,
}

impl LstmState {
    pub fn zeros(hidden_size: usize) -> Self {
        Self { cell: Array1::zeros(hidden_size), hidden: Array1::zeros(hidden_size) }
    }
}

/// Gate activations of one cell step, exposed for inspection.
#[derive(Debug, Clone, PartialEq)]
pub struct GateActivations {
    pub forget: Array1<f64>,
    pub input: Array1<f64>,
    pub candidate: Array1<f64>,
    pub output: Array1<f64>,
}

/// Weights of a single-layer LSTM over a scalar input sequence, with a fully
/// connected output head. Gate matrices act on `[h_{t−1}, x_t]`.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct LstmParams {
    pub w_f: Array2<f64>,
    pub w_i: Array2<f64>,
    pub w_c: Array2<f64>,
    pub w_o: Array2<f64>,
    pub b_f: Array1<f64>,
    pub b_i: Array1<f64>,
    pub b_c: Array1<f64>,
    pub b_o: Array1<f64>,
    pub w_fc: Array1<f64>,
    pub b_fc: f64,
}

impl LstmParams {
    pub fn init(hidden: usize, rng: &mut StdRng) -> Self {
        let normal = Normal::new(0.0, 0.1).expect("valid std");
        let mut matrix = |_: ()| Array2::from_shape_fn((hidden, hidden + 1), |_| normal.sample(rng));
        let w_f = matrix(());
        let w_i = matrix(());
        let w_c = matrix(());
        let w_o = matrix(());
        let mut vector = |_: ()| Array1::from_shape_fn(hidden, |_| normal.sample(rng));
        let b_f = vector(());
        let b_i = vector(());
        let b_c = vector(());
        let b_o = vector(());
        let w_fc = Array1::from_shape_fn(hidden, |_| normal.sample(rng));
        let b_fc = normal.sample(rng);
        Self { w_f, w_i, w_c, w_o, b_f, b_i, b_c, b_o, w_fc, b_fc }
    }

    pub fn hidden_size(&self) -> usize {
        self.b_f.len()
    }

    pub fn to_flat(&self) -> Vec<f64> {
        let mut flat = Vec::new();
        for m in [&self.w_f, &self.w_i, &self.w_c, &self.w_o] {
            flat.extend(m.iter());
        }
        for v in [&self.b_f, &self.b_i, &self.b_c, &self.b_o, &self.w_fc] {
            flat.extend(v.iter());
        }
        flat.push(self.b_fc);
        flat
    }

    pub fn from_flat(template: &Self, flat: &[f64]) -> Self {
        let hidden = template.hidden_size();
        let mut it = flat.iter().cloned();
        let mut matrix = || Array2::from_shape_fn((hidden, hidden + 1), |_| it.next().expect("matrix"));
        let w_f = matrix();
        let w_i = matrix();
        let w_c = matrix();
        let w_o = matrix();
        let vector = |it: &mut dyn Iterator<Item = f64>| {
            Array1::from_shape_fn(hidden, |_| it.next().expect("vector"))
        };
        let b_f = vector(&mut it);
        let b_i = vector(&mut it);
        let b_c = vector(&mut it);
        let b_o = vector(&mut it);
        let w_fc = vector(&mut it);
        let b_fc = it.next().expect("b_fc");
        Self { w_f, w_i, w_c, w_o, b_f, b_i, b_c, b_o, w_fc, b_fc }
    }

    fn zeros_like(&self) -> Self {
        let hidden = self.hidden_size();
        Self {
            w_f: Array2::zeros((hidden, hidden + 1)),
            w_i: Array2::zeros((hidden, hidden + 1)),
            w_c: Array2::zeros((hidden, hidden + 1)),
            w_o: Array2::zeros((hidden, hidden + 1)),
            b_f: Array1::zeros(hidden),
            b_i: Array1::zeros(hidden),
            b_c: Array1::zeros(hidden),
            b_o: Array1::zeros(hidden),
            w_fc: Array1::zeros(hidden),
            b_fc: 0.0,
        }
    }
}

struct StepCache {
    z: Array1<f64>,
    forget: Array1<f64>,
    input: Array1<f64>,
    candidate: Array1<f64>,
    output: Array1<f64>,
    cell_prev: Array1<f64>,
    tanh_cell: Array1<f64>,
}

fn concat_state_input(hidden: &Array1<f64>, x_t: f64) -> Array1<f64> {
    let mut z = Array1::zeros(hidden.len() + 1);
    z.slice_mut(ndarray::s![..hidden.len()]).assign(hidden);
    z[hidden.len()] = x_t;
    z
}

fn cell_forward(x_t: f64, prev: &LstmState, params: &LstmParams) -> (LstmState, StepCache) {
    let z = concat_state_input(&prev.hidden, x_t);
    let forget = (params.w_f.dot(&z) + &params.b_f).mapv(sigmoid);
    let input = (params.w_i.dot(&z) + &params.b_i).mapv(sigmoid);
    let candidate = (params.w_c.dot(&z) + &params.b_c).mapv(f64::tanh);
    let output = (params.w_o.dot(&z) + &params.b_o).mapv(sigmoid);
    let cell = &forget * &prev.cell + &input * &candidate;
    let tanh_cell = cell.mapv(f64::tanh);
    let hidden = &output * &tanh_cell;
    let state = LstmState { cell, hidden };
    let cache = StepCache {
        z,
        forget,
        input,
        candidate,
        output,
        cell_prev: prev.cell.clone(),
        tanh_cell,
    };
    (state, cache)
}

/// One LSTM cell update: gate the previous cell state by the forget and
/// input gates, then expose it through the output gate.
pub fn lstm_cell_step(x_t: f64, prev: &LstmState, params: &LstmParams) -> Result<LstmState> {
    let (state, _) = lstm_cell_detail(x_t, prev, params)?;
    Ok(state)
}

/// As [`lstm_cell_step`], also returning the gate activations.
pub fn lstm_cell_detail(
    x_t: f64,
    prev: &LstmState,
    params: &LstmParams,
) -> Result<(LstmState, GateActivations)> {
    if !x_t.is_finite() {
        return Err(ForecastError::NonFinite("LSTM input"));
    }
    if prev.cell.iter().chain(prev.hidden.iter()).any(|v| !v.is_finite()) {
        return Err(ForecastError::NonFinite("LSTM state"));
    }
    let (state, cache) = cell_forward(x_t, prev, params);
    let gates = GateActivations {
        forget: cache.forget,
        input: cache.input,
        candidate: cache.candidate,
        output: cache.output,
    };
    Ok((state, gates))
}

/// Runs the cell over a lag window and reads the forecast off the fully
/// connected head: y = w_fc·h_T + b_fc.
pub fn lstm_forecast(window: &[f64], params: &LstmParams) -> Result<f64> {
    if window.iter().any(|v| !v.is_finite()) {
        return Err(ForecastError::NonFinite("LSTM window"));
    }
    let mut state = LstmState::zeros(params.hidden_size());
    for &x in window {
        let (next, _) = cell_forward(x, &state, params);
        state = next;
    }
    Ok(params.w_fc.dot(&state.hidden) + params.b_fc)
}

/// Mean squared error of the forecast head over all windows.
pub fn lstm_loss(params: &LstmParams, windows: ArrayView2<f64>, targets: ArrayView1<f64>) -> f64 {
    let n = targets.len() as f64;
    let mut total = 0.0;
    for (window, &y) in windows.outer_iter().zip(targets.iter()) {
        let mut state = LstmState::zeros(params.hidden_size());
        for &x in window {
            let (next, _) = cell_forward(x, &state, params);
            state = next;
        }
        let out = params.w_fc.dot(&state.hidden) + params.b_fc;
        total += (out - y) * (out - y);
    }
    total / n
}

/// Analytic gradient of [`lstm_loss`] by backpropagation through time.
pub fn lstm_gradient(
    params: &LstmParams,
    windows: ArrayView2<f64>,
    targets: ArrayView1<f64>,
) -> LstmParams {
    let n = targets.len() as f64;
    let hidden = params.hidden_size();
    let mut grad = params.zeros_like();

    for (window, &target) in windows.outer_iter().zip(targets.iter()) {
        let mut state = LstmState::zeros(hidden);
        let mut caches = Vec::with_capacity(window.len());
        for &x in window {
            let (next, cache) = cell_forward(x, &state, params);
            caches.push(cache);
            state = next;
        }
        let out = params.w_fc.dot(&state.hidden) + params.b_fc;
        let e = 2.0 * (out - target) / n;

        grad.w_fc.scaled_add(e, &state.hidden);
        grad.b_fc += e;

        let mut dh = &params.w_fc * e;
        let mut dc = Array1::zeros(hidden);
        for cache in caches.iter().rev() {
            let d_out = &dh * &cache.tanh_cell;
            dc += &(&dh * &cache.output * cache.tanh_cell.mapv(|v| 1.0 - v * v));
            let d_forget = &dc * &cache.cell_prev;
            let d_input = &dc * &cache.candidate;
            let d_candidate = &dc * &cache.input;

            let dz_f = &d_forget * &cache.forget * cache.forget.mapv(|v| 1.0 - v);
            let dz_i = &d_input * &cache.input * cache.input.mapv(|v| 1.0 - v);
            let dz_c = &d_candidate * cache.candidate.mapv(|v| 1.0 - v * v);
            let dz_o = &d_out * &cache.output * cache.output.mapv(|v| 1.0 - v);

            for (w_grad, b_grad, dz) in [
                (&mut grad.w_f, &mut grad.b_f, &dz_f),
                (&mut grad.w_i, &mut grad.b_i, &dz_i),
                (&mut grad.w_c, &mut grad.b_c, &dz_c),
                (&mut grad.w_o, &mut grad.b_o, &dz_o),
            ] {
                for j in 0..hidden {
                    let row_scale = dz[j];
                    if row_scale != 0.0 {
                        for (col, &zv) in cache.z.iter().enumerate() {
                            w_grad[(j, col)] += row_scale * zv;
                        }
                    }
                    b_grad[j] += row_scale;
                }
            }

            let mut dz_concat = params.w_f.t().dot(&dz_f);
            dz_concat += &params.w_i.t().dot(&dz_i);
            dz_concat += &params.w_c.t().dot(&dz_c);
            dz_concat += &params.w_o.t().dot(&dz_o);
            dh = dz_concat.slice(ndarray::s![..hidden]).to_owned();
            dc = &dc * &cache.forget;
        }
    }
    grad
}

struct Adam {
    first: Vec<f64>,
    second: Vec<f64>,
    step: usize,
    learning_rate: f64,
}

impl Adam {
    const BETA1: f64 = 0.9;
    const BETA2: f64 = 0.999;
    const EPS: f64 = 1e-8;

    fn new(len: usize, learning_rate: f64) -> Self {
        Self { first: vec![0.0; len], second: vec![0.0; len], step: 0, learning_rate }
    }

    fn update(&mut self, params: &mut [f64], grad: &[f64]) {
        self.step += 1;
        let correction1 = 1.0 - Self::BETA1.powi(self.step as i32);
        let correction2 = 1.0 - Self::BETA2.powi(self.step as i32);
        for i in 0..params.len() {
            self.first[i] = Self::BETA1 * self.first[i] + (1.0 - Self::BETA1) * grad[i];
            self.second[i] = Self::BETA2 * self.second[i] + (1.0 - Self::BETA2) * grad[i] * grad[i];
            let m_hat = self.first[i] / correction1;
            let v_hat = self.second[i] / correction2;
            params[i] -= self.learning_rate * m_hat / (v_hat.sqrt() + Self::EPS);
        }
    }
}

/// Zeroes the input feature at individual time steps with probability
/// `rate`, rescaling kept steps by 1/(1−rate). Training-time only.
fn spatial_dropout(windows: ArrayView2<f64>, rate: f64, rng: &mut StdRng) -> Array2<f64> {
    let mut masked = windows.to_owned();
    let keep_scale = 1.0 / (1.0 - rate);
    for v in masked.iter_mut() {
        if rng.gen::<f64>() < rate {
            *v = 0.0;
        } else {
            *v *= keep_scale;
        }
    }
    masked
}

/// Full-batch Adam over the mean squared error, with input-layer spatial
/// dropout during training only.
pub fn train_lstm(data: &SupervisedSet, spec: &ModelSpec) -> Result<TrainedModel> {
    if data.len() < 8 {
        return Err(ForecastError::TooFewRows { needed: 8, got: data.len() });
    }
    if spec.hidden_units == 0 {
        return Err(ForecastError::InvalidSpec("LSTM needs at least one hidden unit".into()));
    }
    if !(0.0..1.0).contains(&spec.dropout_rate) {
        return Err(ForecastError::InvalidSpec(format!(
            "dropout rate {} outside [0, 1)",
            spec.dropout_rate
        )));
    }
    let mut init_rng = StdRng::seed_from_u64(spec.rng_seed);
    let mut params = LstmParams::init(spec.hidden_units, &mut init_rng);
    let mut dropout_rng = StdRng::seed_from_u64(derive_seed(spec.rng_seed, 0x0d0f));
    let mut adam = Adam::new(params.to_flat().len(), spec.learning_rate);
    let mut history = Vec::with_capacity(spec.epochs + 1);

    for _ in 0..spec.epochs {
        let (loss, grad) = if spec.dropout_rate > 0.0 {
            let masked = spatial_dropout(data.inputs(), spec.dropout_rate, &mut dropout_rng);
            (
                lstm_loss(&params, masked.view(), data.targets()),
                lstm_gradient(&params, masked.view(), data.targets()),
            )
        } else {
            (
                lstm_loss(&params, data.inputs(), data.targets()),
                lstm_gradient(&params, data.inputs(), data.targets()),
            )
        };
        if !loss.is_finite() {
            return Err(ForecastError::Diverged { learning_rate: spec.learning_rate });
        }
        history.push(loss);
        let mut flat = params.to_flat();
        adam.update(&mut flat, &grad.to_flat());
        params = LstmParams::from_flat(&params, &flat);
    }
    let final_loss = lstm_loss(&params, data.inputs(), data.targets());
    if !final_loss.is_finite() {
        return Err(ForecastError::Diverged { learning_rate: spec.learning_rate });
    }
    history.push(final_loss);

    Ok(TrainedModel {
        spec: *spec,
        lag_count: data.lag_count(),
        normalization: None,
        params: ModelParams::Lstm { params, loss_history: history },
    })
}
