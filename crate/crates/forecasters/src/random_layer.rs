use ndarray::{Array1, Array2};
use rand::rngs::StdRng;
use rand::SeedableRng;
use rand_distr::{Distribution, Normal};
use series_core::SupervisedSet;

use crate::error::{ForecastError, Result};
use crate::lstsq::min_norm_lstsq;
use crate::model::{ModelParams, TrainedModel};
use crate::sigmoid;
use crate::spec::{derive_seed, ModelSpec};

/// Gaussian input weights and hidden biases for one restart. The draw order
/// (weights row by row, then biases) is part of the model's contract so that
/// matched-seed comparisons line up across ELM and RVFL.
pub fn hidden_layer_weights(
    input_dim: usize,
    hidden: usize,
    seed: u64,
) -> (Array2<f64>, Array1<f64>) {
    let mut rng = StdRng::seed_from_u64(seed);
    let normal = Normal::new(0.0, 1.0).expect("valid std");
    let weights = Array2::from_shape_fn((input_dim, hidden), |_| normal.sample(&mut rng));
    let bias = Array1::from_shape_fn(hidden, |_| normal.sample(&mut rng));
    (weights, bias)
}

/// Seed of restart `r` for a model seeded with `base`.
pub fn restart_seed(base: u64, restart: usize) -> u64 {
    derive_seed(base, restart as u64)
}

fn hidden_activations(inputs: &Array2<f64>, weights: &Array2<f64>, bias: &Array1<f64>) -> Array2<f64> {
    let mut h = inputs.dot(weights);
    for mut row in h.outer_iter_mut() {
        row += bias;
    }
    h.mapv(sigmoid)
}

fn training_rmse(design: &Array2<f64>, beta: &Array1<f64>, targets: &Array1<f64>) -> f64 {
    let fitted = design.dot(beta);
    let n = targets.len() as f64;
    ((&fitted - targets).mapv(|e| e * e).sum() / n).sqrt()
}

struct Restart {
    rmse: f64,
    index: usize,
    weights: Array2<f64>,
    bias: Array1<f64>,
    beta: Array1<f64>,
}

fn train_random_layer(
    data: &SupervisedSet,
    spec: &ModelSpec,
    direct_link: bool,
) -> Result<TrainedModel> {
    let (n, p) = (data.len(), data.lag_count());
    if n < 2 {
        return Err(ForecastError::TooFewRows { needed: 2, got: n });
    }
    if spec.hidden_units == 0 && !direct_link {
        return Err(ForecastError::InvalidSpec(
            "ELM needs at least one hidden unit".into(),
        ));
    }
    let inputs = data.inputs().to_owned();
    let targets = data.targets().to_owned();
    let restarts = spec.iterations.max(1);

    let mut best: Option<Restart> = None;
    for r in 0..restarts {
        let (weights, bias) = hidden_layer_weights(p, spec.hidden_units, restart_seed(spec.rng_seed, r));
        let h = hidden_activations(&inputs, &weights, &bias);
        let design = if direct_link {
            // [H | X | 1]: the direct input link plus an output bias.
            let mut d = Array2::ones((n, spec.hidden_units + p + 1));
            d.slice_mut(ndarray::s![.., ..spec.hidden_units]).assign(&h);
            d.slice_mut(ndarray::s![.., spec.hidden_units..spec.hidden_units + p])
                .assign(&inputs);
            d
        } else {
            h
        };
        let (beta, _) = min_norm_lstsq(design.view(), targets.view());
        let rmse = training_rmse(&design, &beta, &targets);
        if best.as_ref().is_none_or(|b| rmse < b.rmse) {
            best = Some(Restart { rmse, index: r, weights, bias, beta });
        }
    }
    let best = best.expect("at least one restart");
    Ok(TrainedModel {
        spec: *spec,
        lag_count: p,
        normalization: None,
        params: ModelParams::RandomLayer {
            input_weights: best.weights,
            hidden_bias: best.bias,
            output_weights: best.beta,
            direct_link,
            best_restart: best.index,
            train_rmse: best.rmse,
        },
    })
}

/// Extreme learning machine: random sigmoid hidden layer, least-squares
/// output weights, best of `spec.iterations` seeded restarts.
pub fn train_elm(data: &SupervisedSet, spec: &ModelSpec) -> Result<TrainedModel> {
    train_random_layer(data, spec, false)
}

/// Random vector functional link: as ELM, with a direct link from the inputs
/// (and an output bias) alongside the hidden layer.
pub fn train_rvfl(data: &SupervisedSet, spec: &ModelSpec) -> Result<TrainedModel> {
    train_random_layer(data, spec, true)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::linear::train_lr;
    use crate::spec::ModelKind;
    use rand::Rng;

    fn random_data(seed: u64, rows: usize, cols: usize) -> SupervisedSet {
        let mut rng = StdRng::seed_from_u64(seed);
        let inputs = Array2::from_shape_fn((rows, cols), |_| rng.gen::<f64>());
        let targets = Array1::from_shape_fn(rows, |_| rng.gen::<f64>());
        SupervisedSet::new(inputs, targets, cols, 1).unwrap()
    }

    fn model_rmse(model: &TrainedModel) -> f64 {
        match &model.params {
            ModelParams::RandomLayer { train_rmse, .. } => *train_rmse,
            _ => panic!("wrong params variant"),
        }
    }

    #[test]
    fn interpolates_when_hidden_exceeds_rows() {
        let data = random_data(3, 20, 4);
        let spec = ModelSpec {
            hidden_units: 64,
            iterations: 1,
            rng_seed: 3,
            ..ModelSpec::defaults(ModelKind::Elm)
        };
        let model = train_elm(&data, &spec).unwrap();
        assert!(model_rmse(&model) < 1e-6, "rmse {}", model_rmse(&model));
    }

    #[test]
    fn deterministic_given_seed() {
        let data = random_data(7, 30, 5);
        let spec = ModelSpec { iterations: 5, rng_seed: 9, ..ModelSpec::defaults(ModelKind::Elm) };
        let a = train_elm(&data, &spec).unwrap();
        let b = train_elm(&data, &spec).unwrap();
        let window: Vec<f64> = (0..5).map(|i| 0.1 * i as f64).collect();
        assert_eq!(a.predict(&window).unwrap(), b.predict(&window).unwrap());
    }

    #[test]
    fn rvfl_with_no_hidden_units_matches_lr() {
        let data = random_data(11, 40, 3);
        let spec = ModelSpec { hidden_units: 0, iterations: 1, ..ModelSpec::defaults(ModelKind::Rvfl) };
        let rvfl = train_rvfl(&data, &spec).unwrap();
        let lr = train_lr(&data).unwrap();
        for i in 0..data.len() {
            let row = data.row(i).to_vec();
            let a = rvfl.predict(&row).unwrap();
            let b = lr.predict(&row).unwrap();
            assert!((a - b).abs() < 1e-9, "row {i}: {a} vs {b}");
        }
    }

    #[test]
    fn rvfl_never_fits_worse_than_elm() {
        for seed in 0..20u64 {
            let data = random_data(100 + seed, 30, 4);
            let spec = ModelSpec {
                hidden_units: 8,
                iterations: 3,
                rng_seed: seed,
                ..ModelSpec::defaults(ModelKind::Elm)
            };
            let elm = train_elm(&data, &spec).unwrap();
            let rvfl = train_rvfl(&data, &ModelSpec { kind: ModelKind::Rvfl, ..spec }).unwrap();
            assert!(
                model_rmse(&rvfl) <= model_rmse(&elm) + 1e-9,
                "seed {seed}: rvfl {} vs elm {}",
                model_rmse(&rvfl),
                model_rmse(&elm)
            );
        }
    }

    #[test]
    fn rvfl_direct_link_recovers_linear_map() {
        let mut rng = StdRng::seed_from_u64(2);
        let inputs = Array2::from_shape_fn((50, 2), |_| rng.gen::<f64>());
        let targets = Array1::from_shape_fn(50, |r| 4.0 * inputs[(r, 0)] - 1.5 * inputs[(r, 1)] + 0.3);
        let data = SupervisedSet::new(inputs, targets, 2, 1).unwrap();
        let spec = ModelSpec { hidden_units: 6, iterations: 2, rng_seed: 5, ..ModelSpec::defaults(ModelKind::Rvfl) };
        let model = train_rvfl(&data, &spec).unwrap();
        // Least squares drives the training residual to numerical zero: the
        // direct link plus hidden features can represent the map exactly.
        assert!(model_rmse(&model) < 1e-8, "rmse {}", model_rmse(&model));
    }

    #[test]
    fn restart_rule_keeps_the_best_seed() {
        let data = random_data(13, 25, 3);
        let spec = ModelSpec { hidden_units: 4, iterations: 10, rng_seed: 21, ..ModelSpec::defaults(ModelKind::Elm) };
        let model = train_elm(&data, &spec).unwrap();
        let best = model_rmse(&model);
        // Recompute every restart independently; none may beat the winner.
        for r in 0..10 {
            let (w, b) = hidden_layer_weights(3, 4, restart_seed(21, r));
            let h = hidden_activations(&data.inputs().to_owned(), &w, &b);
            let (beta, _) = min_norm_lstsq(h.view(), data.targets());
            let rmse = training_rmse(&h, &beta, &data.targets().to_owned());
            assert!(best <= rmse + 1e-9, "restart {r} beat the chosen model");
        }
    }
}
