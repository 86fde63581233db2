use evaluation::{anchors_from, dm_test, DmTestResult, ForecastReport, Variant};
use forecasters::ModelSpec;
use na_memd::{
    decomposition_diagnostics, mean_period, na_memd, DiagnosticsRow, ImfDecomposition,
};
use serde::{Deserialize, Serialize};
use series_core::{ingest_csv, split_index, MultichannelSeries, UnitScaler};

use crate::config::{ExperimentConfig, Grouping, LeakageMode};
use crate::error::{PipelineError, Result};

/// One scored grid cell as it appears in `report.json`.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct ReportEntry {
    pub model: String,
    pub variant: Variant,
    pub horizon: usize,
    pub leakage_mode: String,
    pub cell_seed: u64,
    pub mape: f64,
    pub rmse: f64,
    pub dstat: f64,
    pub actuals: Vec<f64>,
    pub forecasts: Vec<f64>,
    /// Per-component forecasts of the decomposed variant; their sum is the
    /// final forecast.
    #[serde(skip_serializing_if = "Option::is_none")]
    pub component_forecasts: Option<Vec<Vec<f64>>>,
}

impl ReportEntry {
    fn new(
        report: ForecastReport,
        actuals: &[f64],
        leakage: LeakageMode,
        cell_seed: u64,
        components: Option<Vec<Vec<f64>>>,
    ) -> Self {
        Self {
            model: report.model,
            variant: report.variant,
            horizon: report.horizon,
            leakage_mode: leakage.label().to_string(),
            cell_seed,
            mape: report.mape,
            rmse: report.rmse,
            dstat: report.dstat,
            actuals: actuals.to_vec(),
            forecasts: report.forecasts,
            component_forecasts: components,
        }
    }
}

/// Decomposed-versus-single DM comparison for one model, pooled across
/// horizons (concatenated in horizon order). `result` is absent when the two
/// variants produce coinciding forecasts (the statistic is undefined then),
/// as the seasonal-naive baseline does under whole-series decomposition.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct DmEntry {
    pub model: String,
    pub pooled_horizons: Vec<usize>,
    pub result: Option<DmTestResult>,
}

/// Everything a full run produces, before serialization.
#[derive(Debug, Clone)]
pub struct RunArtifacts {
    pub reports: Vec<ReportEntry>,
    pub dm_tests: Vec<DmEntry>,
    pub diagnostics: Vec<DiagnosticsRow>,
    pub decomposition: ImfDecomposition,
}

/// A validated, loaded experiment: the selected channels with the target
/// first, the split point, and the (leakage-mode-appropriate) decomposition.
pub struct Experiment {
    config: ExperimentConfig,
    series: MultichannelSeries,
    target: Vec<f64>,
    n_train: usize,
    decomposition: ImfDecomposition,
}

impl Experiment {
    pub fn new(config: ExperimentConfig) -> Result<Self> {
        config.validate()?;
        let raw = ingest_csv(&config.input)?;
        Self::from_series(config, raw)
    }

    /// As [`Experiment::new`] but with the series already in memory.
    pub fn from_series(config: ExperimentConfig, raw: MultichannelSeries) -> Result<Self> {
        config.validate()?;
        raw.validate_pipeline_length()?;
        let mut ordered = vec![config.target_channel.clone()];
        ordered.extend(config.source_channels.iter().cloned());
        let series = raw.select_channels(&ordered)?;

        let n_train = split_index(series.len(), config.train_fraction)?;
        let max_horizon = *config.horizons.iter().max().expect("validated non-empty");
        let needed = config.lag_count + max_horizon;
        if n_train < needed {
            return Err(PipelineError::InsufficientHistory { needed, got: n_train });
        }
        if n_train == series.len() {
            return Err(PipelineError::Config {
                line: None,
                message: "train fraction leaves no test observations".into(),
            });
        }

        let decomposition = match config.leakage_mode {
            LeakageMode::WholeSeries => decompose(&series, &config)?,
            LeakageMode::TrainOnly => decompose(&series.prefix(n_train)?, &config)?,
        };
        let target = series.channel(0).to_vec();
        Ok(Self { config, series, target, n_train, decomposition })
    }

    pub fn config(&self) -> &ExperimentConfig {
        &self.config
    }

    pub fn series(&self) -> &MultichannelSeries {
        &self.series
    }

    pub fn n_train(&self) -> usize {
        self.n_train
    }

    pub fn decomposition(&self) -> &ImfDecomposition {
        &self.decomposition
    }

    fn test_actuals(&self) -> &[f64] {
        &self.target[self.n_train..]
    }

    fn cell_seed(&self, model: &ModelSpec, horizon: usize, variant: Variant) -> u64 {
        let key = format!(
            "{}/{}/{}/{}",
            self.config.seed,
            model.kind.label(),
            horizon,
            variant.label()
        );
        fnv1a64(key.as_bytes())
    }

    /// Forecast of the raw target channel: normalize, lag-embed, train on the
    /// training rows, score one forecast per test observation.
    pub fn single_forecast(&self, model: &ModelSpec, horizon: usize) -> Result<ReportEntry> {
        let seed = self.cell_seed(model, horizon, Variant::Single);
        let scaler = match self.config.leakage_mode {
            LeakageMode::WholeSeries => UnitScaler::fit_named(&self.target, "target")?,
            LeakageMode::TrainOnly => {
                UnitScaler::fit_named(&self.target[..self.n_train], "target")?
            }
        };
        let scaled = scaler.transform_slice(&self.target);
        let forecasts_scaled = forecast_series(
            &scaled,
            self.n_train,
            self.config.lag_count,
            horizon,
            &model.with_seed(seed),
        )?;
        let forecasts = scaler.inverse_slice(&forecasts_scaled);

        let actual = self.test_actuals();
        let previous = anchors_from(self.target[self.n_train - 1], actual);
        let report = ForecastReport::from_forecasts(
            model.kind.label(),
            Variant::Single,
            horizon,
            actual,
            forecasts,
            &previous,
        )?;
        Ok(ReportEntry::new(report, actual, self.config.leakage_mode, seed, None))
    }

    /// Decomposition-ensemble forecast: each component of the target channel
    /// is forecast separately and the component forecasts are summed.
    pub fn decomposed_forecast(&self, model: &ModelSpec, horizon: usize) -> Result<ReportEntry> {
        if self.config.source_channels.is_empty() {
            return Err(PipelineError::Config {
                line: None,
                message: "decomposed forecasting needs at least one source channel".into(),
            });
        }
        let seed = self.cell_seed(model, horizon, Variant::Decomposed);
        let components = group_components(self.decomposition.channel(0), self.config.grouping);
        let test_len = self.target.len() - self.n_train;

        let mut final_forecast = vec![0.0; test_len];
        let mut per_component = Vec::with_capacity(components.len());
        for (idx, (_, values)) in components.iter().enumerate() {
            let component_seed = fnv1a64(format!("{seed}/component/{idx}").as_bytes());
            let preds = self.forecast_component(
                values,
                &model.with_seed(component_seed),
                horizon,
                test_len,
            )?;
            for (sum, p) in final_forecast.iter_mut().zip(&preds) {
                *sum += p;
            }
            per_component.push(preds);
        }

        let actual = self.test_actuals();
        let previous = anchors_from(self.target[self.n_train - 1], actual);
        let report = ForecastReport::from_forecasts(
            model.kind.label(),
            Variant::Decomposed,
            horizon,
            actual,
            final_forecast,
            &previous,
        )?;
        Ok(ReportEntry::new(
            report,
            actual,
            self.config.leakage_mode,
            seed,
            Some(per_component),
        ))
    }

    /// One component series: scale, train, and produce one normalized-space
    /// forecast per test point, then invert the scaling. In train-only mode
    /// the component exists only on the training prefix, so the lag window
    /// rolls forward over the model's own predictions.
    fn forecast_component(
        &self,
        component: &[f64],
        model: &ModelSpec,
        horizon: usize,
        test_len: usize,
    ) -> Result<Vec<f64>> {
        let scaler = match UnitScaler::fit_named(component, "component") {
            Ok(s) => s,
            // A perfectly flat component forecasts itself.
            Err(series_core::SeriesError::ConstantChannel(_)) => {
                return Ok(vec![component[0]; test_len]);
            }
            Err(e) => return Err(e.into()),
        };
        let scaled = scaler.transform_slice(component);
        let lag = self.config.lag_count;

        let forecasts_scaled = match self.config.leakage_mode {
            LeakageMode::WholeSeries => {
                forecast_series(&scaled, self.n_train, lag, horizon, model)?
            }
            LeakageMode::TrainOnly => {
                debug_assert_eq!(component.len(), self.n_train);
                let sup = series_core::make_lag_matrix(&scaled, lag, horizon)?;
                let trained = forecasters::train(&sup, model)?;
                let mut extended = scaled.clone();
                let mut preds = Vec::with_capacity(test_len);
                for t in self.n_train..self.n_train + test_len {
                    let window = &extended[t - horizon - lag + 1..=t - horizon];
                    let pred = trained.predict(window)?;
                    extended.push(pred);
                    preds.push(pred);
                }
                preds
            }
        };
        Ok(scaler.inverse_slice(&forecasts_scaled))
    }

    /// The full grid: every model × horizon × {single, decomposed}, plus the
    /// pooled DM comparison per model and the decomposition diagnostics.
    pub fn run(&self) -> Result<RunArtifacts> {
        let mut reports = Vec::new();
        let mut dm_tests = Vec::new();
        let mut horizons = self.config.horizons.clone();
        horizons.sort_unstable();
        horizons.dedup();
        let max_horizon = *horizons.last().expect("validated non-empty");

        for model in &self.config.models {
            let label = model.kind.label();
            let mut pooled_actual = Vec::new();
            let mut pooled_single = Vec::new();
            let mut pooled_decomposed = Vec::new();
            for &horizon in &horizons {
                let single = self
                    .single_forecast(model, horizon)
                    .map_err(PipelineError::in_cell(label, horizon, "single"))?;
                let decomposed = self
                    .decomposed_forecast(model, horizon)
                    .map_err(PipelineError::in_cell(label, horizon, "decomposed"))?;
                pooled_actual.extend_from_slice(&single.actuals);
                pooled_single.extend_from_slice(&single.forecasts);
                pooled_decomposed.extend_from_slice(&decomposed.forecasts);
                reports.push(single);
                reports.push(decomposed);
            }
            let result =
                match dm_test(&pooled_actual, &pooled_decomposed, &pooled_single, max_horizon) {
                    Ok(result) => Some(result),
                    Err(evaluation::EvalError::IdenticalForecasts) => None,
                    Err(e) => {
                        return Err(PipelineError::in_cell(label, max_horizon, "dm")(e.into()))
                    }
                };
            dm_tests.push(DmEntry {
                model: label.to_string(),
                pooled_horizons: horizons.clone(),
                result,
            });
        }

        let original = match self.config.leakage_mode {
            LeakageMode::WholeSeries => self.series.clone(),
            LeakageMode::TrainOnly => self.series.prefix(self.n_train)?,
        };
        let diagnostics = decomposition_diagnostics(&self.decomposition, &original)?;
        Ok(RunArtifacts {
            reports,
            dm_tests,
            diagnostics,
            decomposition: self.decomposition.clone(),
        })
    }
}

fn decompose(series: &MultichannelSeries, config: &ExperimentConfig) -> Result<ImfDecomposition> {
    let mut na_config = config.na_memd.clone();
    na_config.rng_seed = fnv1a64(
        format!("{}/na_memd/{}", config.seed, config.na_memd.rng_seed).as_bytes(),
    );
    Ok(na_memd(series, &na_config)?)
}

/// Components to forecast: every IMF and the residue, optionally with the
/// sub-annual IMFs summed into one high-frequency component first.
pub fn group_components(
    set: &emd_univariate::ImfSet,
    grouping: Grouping,
) -> Vec<(String, Vec<f64>)> {
    let mut components = Vec::new();
    match grouping {
        Grouping::None => {
            for (j, imf) in set.imfs.iter().enumerate() {
                components.push((format!("imf_{}", j + 1), imf.clone()));
            }
        }
        Grouping::HighFreqUnder12m => {
            let mut high: Option<Vec<f64>> = None;
            for (j, imf) in set.imfs.iter().enumerate() {
                if mean_period(imf) < 12.0 {
                    match &mut high {
                        None => high = Some(imf.clone()),
                        Some(sum) => {
                            for (s, v) in sum.iter_mut().zip(imf) {
                                *s += v;
                            }
                        }
                    }
                } else {
                    components.push((format!("imf_{}", j + 1), imf.clone()));
                }
            }
            if let Some(high) = high {
                components.insert(0, ("highfreq".to_string(), high));
            }
        }
    }
    components.push(("residue".to_string(), set.residue.clone()));
    components
}

/// Shared single-channel forecast path: lag-embed the scaled series, train on
/// rows whose target precedes `n_train`, and predict every test row. The
/// series must cover the test window — either the whole-series decomposition
/// layout, or the raw target channel whose past actuals are observed by the
/// time each forecast is made.
fn forecast_series(
    scaled: &[f64],
    n_train: usize,
    lag: usize,
    horizon: usize,
    model: &ModelSpec,
) -> Result<Vec<f64>> {
    let sup = series_core::make_lag_matrix(scaled, lag, horizon)?;
    let (train, test) = sup.split_by_target(n_train);
    let expected_test = scaled.len() - n_train;
    if test.len() != expected_test {
        return Err(PipelineError::InsufficientHistory {
            needed: lag + horizon,
            got: n_train,
        });
    }
    let trained = forecasters::train(&train, model)?;
    let mut preds = Vec::with_capacity(test.len());
    for i in 0..test.len() {
        preds.push(trained.predict(&test.row(i).to_vec())?);
    }
    Ok(preds)
}

pub(crate) fn fnv1a64(bytes: &[u8]) -> u64 {
    let mut hash = 0xcbf2_9ce4_8422_2325u64;
    for &b in bytes {
        hash ^= b as u64;
        hash = hash.wrapping_mul(0x0000_0100_0000_01b3);
    }
    hash
}

/// Runs one cell of the single-model grid on a freshly loaded experiment.
pub fn run_single_forecast(
    config: &ExperimentConfig,
    model: &ModelSpec,
    horizon: usize,
) -> Result<ReportEntry> {
    Experiment::new(config.clone())?.single_forecast(model, horizon)
}

/// Runs one cell of the decomposed grid on a freshly loaded experiment.
pub fn run_decomposed_forecast(
    config: &ExperimentConfig,
    model: &ModelSpec,
    horizon: usize,
) -> Result<ReportEntry> {
    Experiment::new(config.clone())?.decomposed_forecast(model, horizon)
}

/// Loads, runs and returns the full grid.
pub fn run_experiment(config: &ExperimentConfig) -> Result<RunArtifacts> {
    Experiment::new(config.clone())?.run()
}
