use std::collections::BTreeMap;
use std::fs;
use std::path::{Path, PathBuf};

use emd_univariate::SiftConfig;
use forecasters::{ModelKind, ModelSpec};
use na_memd::NaMemdConfig;

use crate::error::{PipelineError, Result};

/// Whether the decomposition and scaling may see the test window
/// (`WholeSeries`, the usual decomposition-ensemble procedure) or only the
/// training prefix (`TrainOnly`, leakage-free evaluation).
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum LeakageMode {
    WholeSeries,
    TrainOnly,
}

impl LeakageMode {
    pub fn label(&self) -> &'static str {
        match self {
            LeakageMode::WholeSeries => "whole-series",
            LeakageMode::TrainOnly => "train-only",
        }
    }
}

/// Optional pre-forecast grouping of decomposition components.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Grouping {
    None,
    /// Sum all IMFs with mean period under 12 months into one
    /// high-frequency component before forecasting.
    HighFreqUnder12m,
}

impl Grouping {
    pub fn label(&self) -> &'static str {
        match self {
            Grouping::None => "none",
            Grouping::HighFreqUnder12m => "highfreq-under-12m",
        }
    }
}

/// Full description of one experiment run.
#[derive(Debug, Clone)]
pub struct ExperimentConfig {
    pub input: PathBuf,
    pub target_channel: String,
    pub source_channels: Vec<String>,
    pub train_fraction: f64,
    pub horizons: Vec<usize>,
    pub models: Vec<ModelSpec>,
    pub na_memd: NaMemdConfig,
    pub lag_count: usize,
    pub leakage_mode: LeakageMode,
    pub grouping: Grouping,
    pub output_dir: PathBuf,
    pub seed: u64,
}

impl ExperimentConfig {
    pub fn validate(&self) -> Result<()> {
        let fail = |message: String| PipelineError::Config { line: None, message };
        if self.source_channels.contains(&self.target_channel) {
            return Err(fail(format!(
                "target_channel `{}` also listed in source_channels",
                self.target_channel
            )));
        }
        if self.horizons.is_empty() || self.horizons.contains(&0) {
            return Err(fail("horizons must be a non-empty list of integers ≥ 1".into()));
        }
        if self.models.is_empty() {
            return Err(fail("at least one model is required".into()));
        }
        if !(self.train_fraction > 0.0 && self.train_fraction < 1.0) {
            return Err(fail(format!("train_fraction {} outside (0, 1)", self.train_fraction)));
        }
        if self.lag_count == 0 {
            return Err(fail("lag_count must be at least 1".into()));
        }
        Ok(())
    }
}

const DEFAULT_MODELS: [ModelKind; 6] = [
    ModelKind::Lr,
    ModelKind::Bpnn,
    ModelKind::Elm,
    ModelKind::Rvfl,
    ModelKind::Lstm,
    ModelKind::SeasonalNaive,
];

/// Reads the `key = value` experiment config. Keys mirror the
/// [`ExperimentConfig`] field names; nested settings use dotted keys
/// (`na_memd.directions`, `na_memd.sift.max_sifts`), and per-model
/// hyperparameter overrides are written `<model>.<field>` (`lstm.epochs`).
pub fn load_config(path: &Path) -> Result<ExperimentConfig> {
    let text = fs::read_to_string(path).map_err(|source| PipelineError::Io {
        path: path.display().to_string(),
        source,
    })?;
    parse_config(&text)
}

pub fn parse_config(text: &str) -> Result<ExperimentConfig> {
    let mut pairs: BTreeMap<String, (usize, String)> = BTreeMap::new();
    for (idx, raw) in text.lines().enumerate() {
        let line = raw.split('#').next().unwrap_or("").trim();
        if line.is_empty() {
            continue;
        }
        let Some((key, value)) = line.split_once('=') else {
            return Err(PipelineError::Config {
                line: Some(idx + 1),
                message: format!("expected `key = value`, got `{line}`"),
            });
        };
        pairs.insert(key.trim().to_string(), (idx + 1, value.trim().to_string()));
    }

    let mut take = |key: &str| pairs.remove(key);
    let required = |key: &str, value: Option<(usize, String)>| {
        value.map(|(_, v)| v).ok_or_else(|| PipelineError::Config {
            line: None,
            message: format!("missing required key `{key}`"),
        })
    };

    let input = PathBuf::from(required("input", take("input"))?);
    let target_channel = required("target_channel", take("target_channel"))?;
    let output_dir = PathBuf::from(required("output_dir", take("output_dir"))?);
    let source_channels = take("source_channels")
        .map(|(_, v)| split_list(&v))
        .unwrap_or_default();

    let train_fraction = parse_or(take("train_fraction"), 0.8, parse_float)?;
    let horizons = match take("horizons") {
        Some((line, v)) => split_list(&v)
            .iter()
            .map(|h| parse_usize(line, h))
            .collect::<Result<Vec<_>>>()?,
        None => vec![1, 2, 3],
    };
    let lag_count = parse_or(take("lag_count"), 12, parse_usize)?;
    let seed = parse_or(take("seed"), 0, parse_u64)?;

    let leakage_mode = match take("leakage_mode") {
        None => LeakageMode::WholeSeries,
        Some((line, v)) => match v.as_str() {
            "whole-series" => LeakageMode::WholeSeries,
            "train-only" => LeakageMode::TrainOnly,
            other => {
                return Err(PipelineError::Config {
                    line: Some(line),
                    message: format!(
                        "leakage_mode must be `whole-series` or `train-only`, got `{other}`"
                    ),
                })
            }
        },
    };
    let grouping = match take("grouping") {
        None => Grouping::None,
        Some((line, v)) => match v.as_str() {
            "none" => Grouping::None,
            "highfreq-under-12m" => Grouping::HighFreqUnder12m,
            other => {
                return Err(PipelineError::Config {
                    line: Some(line),
                    message: format!(
                        "grouping must be `none` or `highfreq-under-12m`, got `{other}`"
                    ),
                })
            }
        },
    };

    let na_memd = NaMemdConfig {
        noise_channels: parse_or(take("na_memd.noise_channels"), 2, parse_usize)?,
        noise_amplitude: parse_or(take("na_memd.noise_amplitude"), 0.1, parse_float)?,
        directions: parse_or(take("na_memd.directions"), 64, parse_usize)?,
        rng_seed: parse_or(take("na_memd.rng_seed"), 0, parse_u64)?,
        sift: SiftConfig {
            s_number: parse_or(take("na_memd.sift.s_number"), 4, parse_usize)?,
            max_sifts: parse_or(take("na_memd.sift.max_sifts"), 50, parse_usize)?,
        },
    };

    let kinds: Vec<ModelKind> = match take("models") {
        Some((line, v)) => split_list(&v)
            .iter()
            .map(|m| {
                ModelKind::parse(m).map_err(|e| PipelineError::Config {
                    line: Some(line),
                    message: e.to_string(),
                })
            })
            .collect::<Result<Vec<_>>>()?,
        None => DEFAULT_MODELS.to_vec(),
    };
    let mut models = Vec::with_capacity(kinds.len());
    for kind in kinds {
        let mut spec = ModelSpec::defaults(kind);
        let prefix = kind.label().to_ascii_lowercase();
        if let Some((line, v)) = pairs.remove(&format!("{prefix}.hidden_units")) {
            spec.hidden_units = parse_usize(line, &v)?;
        }
        if let Some((line, v)) = pairs.remove(&format!("{prefix}.iterations")) {
            spec.iterations = parse_usize(line, &v)?;
        }
        if let Some((line, v)) = pairs.remove(&format!("{prefix}.epochs")) {
            spec.epochs = parse_usize(line, &v)?;
        }
        if let Some((line, v)) = pairs.remove(&format!("{prefix}.learning_rate")) {
            spec.learning_rate = parse_float(line, &v)?;
        }
        if let Some((line, v)) = pairs.remove(&format!("{prefix}.dropout_rate")) {
            spec.dropout_rate = parse_float(line, &v)?;
        }
        models.push(spec);
    }

    if let Some((key, (line, _))) = pairs.into_iter().next() {
        return Err(PipelineError::Config {
            line: Some(line),
            message: format!("unknown key `{key}`"),
        });
    }

    let config = ExperimentConfig {
        input,
        target_channel,
        source_channels,
        train_fraction,
        horizons,
        models,
        na_memd,
        lag_count,
        leakage_mode,
        grouping,
        output_dir,
        seed,
    };
    config.validate()?;
    Ok(config)
}

fn split_list(value: &str) -> Vec<String> {
    value
        .split(',')
        .map(|s| s.trim().to_string())
        .filter(|s| !s.is_empty())
        .collect()
}

fn parse_or<T>(
    value: Option<(usize, String)>,
    default: T,
    parse: impl Fn(usize, &str) -> Result<T>,
) -> Result<T> {
    match value {
        Some((line, v)) => parse(line, &v),
        None => Ok(default),
    }
}

fn parse_float(line: usize, value: &str) -> Result<f64> {
    value.parse().map_err(|_| PipelineError::Config {
        line: Some(line),
        message: format!("`{value}` is not a number"),
    })
}

fn parse_usize(line: usize, value: &str) -> Result<usize> {
    value.parse().map_err(|_| PipelineError::Config {
        line: Some(line),
        message: format!("`{value}` is not a non-negative integer"),
    })
}

fn parse_u64(line: usize, value: &str) -> Result<u64> {
    value.parse().map_err(|_| PipelineError::Config {
        line: Some(line),
        message: format!("`{value}` is not a non-negative integer"),
    })
}
