use ndarray::Array2;

use crate::error::{Result, SeriesError};
use crate::series::MultichannelSeries;

/// Per-channel min/max recorded when a series is mapped to [0, 1].
#[derive(Debug, Clone, PartialEq)]
pub struct NormalizationParams {
    mins: Vec<f64>,
    maxs: Vec<f64>,
}

impl NormalizationParams {
    pub fn channel_range(&self, idx: usize) -> (f64, f64) {
        (self.mins[idx], self.maxs[idx])
    }

    pub fn channel_count(&self) -> usize {
        self.mins.len()
    }
}

/// Min-max scaler for a single channel or component series.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct UnitScaler {
    min: f64,
    max: f64,
}

impl UnitScaler {
    pub fn fit(values: &[f64]) -> Result<Self> {
        Self::fit_named(values, "channel")
    }

    pub fn fit_named(values: &[f64], name: &str) -> Result<Self> {
        if values.is_empty() {
            return Err(SeriesError::EmptyInput(format!("cannot fit scaler for `{name}`")));
        }
        let min = values.iter().cloned().fold(f64::INFINITY, f64::min);
        let max = values.iter().cloned().fold(f64::NEG_INFINITY, f64::max);
        if max <= min {
            return Err(SeriesError::ConstantChannel(name.to_string()));
        }
        Ok(Self { min, max })
    }

    pub fn min(&self) -> f64 {
        self.min
    }

    pub fn max(&self) -> f64 {
        self.max
    }

    pub fn transform(&self, x: f64) -> f64 {
        (x - self.min) / (self.max - self.min)
    }

    pub fn inverse(&self, x: f64) -> f64 {
        x * (self.max - self.min) + self.min
    }

    pub fn transform_slice(&self, values: &[f64]) -> Vec<f64> {
        values.iter().map(|&x| self.transform(x)).collect()
    }

    pub fn inverse_slice(&self, values: &[f64]) -> Vec<f64> {
        values.iter().map(|&x| self.inverse(x)).collect()
    }
}

/// Maps every channel to [0, 1], returning the scaled series and the
/// parameters needed to invert the map. Constant channels are rejected.
pub fn min_max_normalize(
    series: &MultichannelSeries,
) -> Result<(MultichannelSeries, NormalizationParams)> {
    let (rows, cols) = (series.len(), series.channel_count());
    let mut scaled = Array2::zeros((rows, cols));
    let mut mins = Vec::with_capacity(cols);
    let mut maxs = Vec::with_capacity(cols);
    for c in 0..cols {
        let column = series.channel(c);
        let scaler = UnitScaler::fit_named(&column.to_vec(), &series.channel_names()[c])?;
        for (r, &v) in column.iter().enumerate() {
            scaled[(r, c)] = scaler.transform(v);
        }
        mins.push(scaler.min());
        maxs.push(scaler.max());
    }
    let normalized =
        MultichannelSeries::new(scaled, series.channel_names().to_vec(), series.start())?;
    Ok((normalized, NormalizationParams { mins, maxs }))
}

/// Inverts [`min_max_normalize`].
pub fn denormalize(
    series: &MultichannelSeries,
    params: &NormalizationParams,
) -> Result<MultichannelSeries> {
    if params.channel_count() != series.channel_count() {
        return Err(SeriesError::ChannelCountMismatch {
            names: params.channel_count(),
            columns: series.channel_count(),
        });
    }
    let mut values = series.values().to_owned();
    for c in 0..series.channel_count() {
        let (min, max) = params.channel_range(c);
        for v in values.column_mut(c).iter_mut() {
            *v = *v * (max - min) + min;
        }
    }
    MultichannelSeries::new(values, series.channel_names().to_vec(), series.start())
}
