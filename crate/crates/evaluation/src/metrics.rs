use crate::error::{EvalError, Result};

fn check_lengths(a: &[f64], b: &[f64]) -> Result<()> {
    if a.len() != b.len() {
        return Err(EvalError::LengthMismatch { left: a.len(), right: b.len() });
    }
    if a.is_empty() {
        return Err(EvalError::Empty);
    }
    Ok(())
}

/// Mean absolute percent error: (1/T) Σ |(y − ŷ)/y|.
pub fn mape(actual: &[f64], forecast: &[f64]) -> Result<f64> {
    check_lengths(actual, forecast)?;
    let mut total = 0.0;
    for (i, (&y, &f)) in actual.iter().zip(forecast).enumerate() {
        if y == 0.0 {
            return Err(EvalError::ZeroActual(i));
        }
        total += ((y - f) / y).abs();
    }
    Ok(total / actual.len() as f64)
}

/// Root mean squared error: sqrt((1/T) Σ (ŷ − y)²).
pub fn rmse(actual: &[f64], forecast: &[f64]) -> Result<f64> {
    check_lengths(actual, forecast)?;
    let total: f64 = actual
        .iter()
        .zip(forecast)
        .map(|(&y, &f)| (f - y) * (f - y))
        .sum();
    Ok((total / actual.len() as f64).sqrt())
}

/// Directional statistic: the fraction of points where the forecast's move
/// and the actual's move from the same previous actual share a sign (a zero
/// move on either side counts as a hit). `previous[t]` anchors test point t;
/// the first anchor is the last training observation.
pub fn dstat(actual: &[f64], forecast: &[f64], previous: &[f64]) -> Result<f64> {
    check_lengths(actual, forecast)?;
    check_lengths(actual, previous)?;
    let hits = actual
        .iter()
        .zip(forecast)
        .zip(previous)
        .filter(|((&y, &f), &prev)| (f - prev) * (y - prev) >= 0.0)
        .count();
    Ok(hits as f64 / actual.len() as f64)
}

/// Convenience for the usual layout: anchors are the last training value
/// followed by the preceding test actuals.
pub fn anchors_from(last_train: f64, actual: &[f64]) -> Vec<f64> {
    let mut previous = Vec::with_capacity(actual.len());
    previous.push(last_train);
    previous.extend_from_slice(&actual[..actual.len() - 1]);
    previous
}
