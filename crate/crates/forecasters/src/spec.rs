use serde::{Deserialize, Serialize};

use crate::error::{ForecastError, Result};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum ModelKind {
    Lr,
    Bpnn,
    Elm,
    Rvfl,
    Lstm,
    SeasonalNaive,
}

impl ModelKind {
    pub fn label(&self) -> &'static str {
        match self {
            ModelKind::Lr => "LR",
            ModelKind::Bpnn => "BPNN",
            ModelKind::Elm => "ELM",
            ModelKind::Rvfl => "RVFL",
            ModelKind::Lstm => "LSTM",
            ModelKind::SeasonalNaive => "SeasonalNaive",
        }
    }

    pub fn parse(text: &str) -> Result<Self> {
        match text.trim().to_ascii_lowercase().as_str() {
            "lr" => Ok(ModelKind::Lr),
            "bpnn" => Ok(ModelKind::Bpnn),
            "elm" => Ok(ModelKind::Elm),
            "rvfl" => Ok(ModelKind::Rvfl),
            "lstm" => Ok(ModelKind::Lstm),
            "seasonal_naive" | "seasonalnaive" | "snaive" => Ok(ModelKind::SeasonalNaive),
            other => Err(ForecastError::InvalidSpec(format!("unknown model kind `{other}`"))),
        }
    }
}

/// Hyperparameters for one model. Defaults: BPNN with 7 hidden nodes and at
/// most 10 iterations; ELM and RVFL with 100 random restarts; LSTM with 64
/// hidden units trained for 300 epochs by Adam at learning rate 0.01 with
/// input dropout 0.5.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct ModelSpec {
    pub kind: ModelKind,
    pub hidden_units: usize,
    pub epochs: usize,
    pub learning_rate: f64,
    pub dropout_rate: f64,
    /// BPNN: gradient-descent iteration cap. ELM/RVFL: number of seeded
    /// random restarts, keeping the lowest training RMSE.
    pub iterations: usize,
    pub rng_seed: u64,
}

impl ModelSpec {
    pub fn defaults(kind: ModelKind) -> Self {
        let base = Self {
            kind,
            hidden_units: 0,
            epochs: 0,
            learning_rate: 0.0,
            dropout_rate: 0.0,
            iterations: 1,
            rng_seed: 0,
        };
        match kind {
            ModelKind::Lr | ModelKind::SeasonalNaive => base,
            ModelKind::Bpnn => Self {
                hidden_units: 7,
                iterations: 10,
                learning_rate: 0.01,
                ..base
            },
            ModelKind::Elm | ModelKind::Rvfl => Self {
                hidden_units: 64,
                iterations: 100,
                ..base
            },
            ModelKind::Lstm => Self {
                hidden_units: 64,
                epochs: 300,
                learning_rate: 0.01,
                dropout_rate: 0.5,
                ..base
            },
        }
    }

    pub fn with_seed(mut self, seed: u64) -> Self {
        self.rng_seed = seed;
        self
    }
}

/// Stable per-purpose seed derivation (splitmix64 over the pair), so restart
/// r of one training run never shares a stream with restart r of another.
pub(crate) fn derive_seed(base: u64, salt: u64) -> u64 {
    let mut state = base ^ salt.rotate_left(32).wrapping_mul(0x9E37_79B9_7F4A_7C15);
    let mut next = || {
        state = state.wrapping_add(0x9E37_79B9_7F4A_7C15);
        let mut z = state;
        z = (z ^ (z >> 30)).wrapping_mul(0xBF58_476D_1CE4_E5B9);
        z = (z ^ (z >> 27)).wrapping_mul(0x94D0_49BB_1331_11EB);
        z ^ (z >> 31)
    };
    next();
    next()
}
