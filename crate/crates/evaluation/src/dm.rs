use serde::{Deserialize, Serialize};

use crate::error::{EvalError, Result};

const MIN_OBS: usize = 8;

/// Diebold-Mariano comparison of two forecast sequences under squared-error
/// loss. Negative `statistic` means model A's losses are smaller.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct DmTestResult {
    pub statistic: f64,
    pub p_value: f64,
    /// Mean loss differential ḡ = mean((y−A)² − (y−B)²).
    pub mean_loss_diff: f64,
    /// Autocovariance-corrected variance estimate of g.
    pub variance: f64,
    /// Truncation lag L = horizon − 1 used in the variance sum.
    pub truncation_lag: usize,
    /// True when the truncated variance came out non-positive and the
    /// lag-zero autocovariance was used instead.
    pub used_fallback: bool,
}

/// DM statistic S = ḡ / sqrt(V̂/N) with V̂ = γ₀ + 2 Σ_{l=1}^{L} γ_l and
/// L = horizon − 1; two-sided p-value from the standard normal.
pub fn dm_test(
    actual: &[f64],
    forecast_a: &[f64],
    forecast_b: &[f64],
    horizon: usize,
) -> Result<DmTestResult> {
    let n = actual.len();
    if forecast_a.len() != n {
        return Err(EvalError::LengthMismatch { left: n, right: forecast_a.len() });
    }
    if forecast_b.len() != n {
        return Err(EvalError::LengthMismatch { left: n, right: forecast_b.len() });
    }
    if n < MIN_OBS {
        return Err(EvalError::TooShort { needed: MIN_OBS, got: n });
    }

    let diffs: Vec<f64> = actual
        .iter()
        .zip(forecast_a.iter().zip(forecast_b))
        .map(|(&y, (&a, &b))| (y - a) * (y - a) - (y - b) * (y - b))
        .collect();
    let mean = diffs.iter().sum::<f64>() / n as f64;

    let gamma = |lag: usize| -> f64 {
        (lag..n)
            .map(|t| (diffs[t] - mean) * (diffs[t - lag] - mean))
            .sum::<f64>()
            / n as f64
    };
    let gamma0 = gamma(0);
    // Forecasts that agree to within float dust leave a loss differential of
    // pure rounding noise; the statistic is undefined there just as for a
    // bitwise-identical pair.
    let loss_scale = actual
        .iter()
        .zip(forecast_a.iter().zip(forecast_b))
        .map(|(&y, (&a, &b))| (y - a) * (y - a) + (y - b) * (y - b))
        .sum::<f64>()
        / n as f64;
    if gamma0 == 0.0 || gamma0.sqrt() <= 1e-8 * loss_scale {
        return Err(EvalError::IdenticalForecasts);
    }
    let truncation = horizon.saturating_sub(1);
    let mut variance = gamma0;
    for lag in 1..=truncation.min(n - 1) {
        variance += 2.0 * gamma(lag);
    }
    let used_fallback = variance <= 0.0;
    if used_fallback {
        variance = gamma0;
    }

    let statistic = mean / (variance / n as f64).sqrt();
    let p_value = libm::erfc(statistic.abs() / std::f64::consts::SQRT_2);
    Ok(DmTestResult {
        statistic,
        p_value,
        mean_loss_diff: mean,
        variance,
        truncation_lag: truncation,
        used_fallback,
    })
}
