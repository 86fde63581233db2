use ndarray::{Array2, ArrayView1, ArrayView2, Axis};

use crate::error::{Result, SeriesError};
use crate::month::YearMonth;

/// Minimum length required for a full pipeline run (two seasonal cycles).
pub const MIN_PIPELINE_LEN: usize = 24;

/// Aligned monthly observations for several channels: a T×m value matrix with
/// channel names and a monthly date index starting at `start`.
#[derive(Debug, Clone, PartialEq)]
pub struct MultichannelSeries {
    values: Array2<f64>,
    channel_names: Vec<String>,
    start: YearMonth,
}

impl MultichannelSeries {
    pub fn new(values: Array2<f64>, channel_names: Vec<String>, start: YearMonth) -> Result<Self> {
        let (rows, cols) = values.dim();
        if rows == 0 || cols == 0 {
            return Err(SeriesError::EmptyInput("series has no observations".into()));
        }
        if channel_names.len() != cols {
            return Err(SeriesError::ChannelCountMismatch {
                names: channel_names.len(),
                columns: cols,
            });
        }
        for (c, name) in channel_names.iter().enumerate() {
            if channel_names[..c].contains(name) {
                return Err(SeriesError::InvalidArgument(format!(
                    "duplicate channel name `{name}`"
                )));
            }
        }
        if let Some(v) = values.iter().find(|v| !v.is_finite()) {
            return Err(SeriesError::InvalidArgument(format!(
                "non-finite value {v} in series"
            )));
        }
        Ok(Self { values, channel_names, start })
    }

    pub fn from_single(name: &str, values: Vec<f64>, start: YearMonth) -> Result<Self> {
        let len = values.len();
        let matrix = Array2::from_shape_vec((len, 1), values)
            .expect("length-checked column vector");
        Self::new(matrix, vec![name.to_string()], start)
    }

    /// Number of observations T.
    pub fn len(&self) -> usize {
        self.values.nrows()
    }

    pub fn is_empty(&self) -> bool {
        self.len() == 0
    }

    /// Number of channels m.
    pub fn channel_count(&self) -> usize {
        self.values.ncols()
    }

    pub fn channel_names(&self) -> &[String] {
        &self.channel_names
    }

    pub fn start(&self) -> YearMonth {
        self.start
    }

    pub fn values(&self) -> ArrayView2<'_, f64> {
        self.values.view()
    }

    pub fn channel(&self, idx: usize) -> ArrayView1<'_, f64> {
        self.values.column(idx)
    }

    pub fn channel_index(&self, name: &str) -> Result<usize> {
        self.channel_names
            .iter()
            .position(|n| n == name)
            .ok_or_else(|| SeriesError::UnknownChannel(name.to_string()))
    }

    pub fn channel_by_name(&self, name: &str) -> Result<ArrayView1<'_, f64>> {
        Ok(self.channel(self.channel_index(name)?))
    }

    pub fn date_at(&self, t: usize) -> YearMonth {
        self.start.plus_months(t)
    }

    pub fn dates(&self) -> Vec<YearMonth> {
        (0..self.len()).map(|t| self.date_at(t)).collect()
    }

    /// First `n` observations, keeping all channels.
    pub fn prefix(&self, n: usize) -> Result<Self> {
        if n == 0 || n > self.len() {
            return Err(SeriesError::InvalidArgument(format!(
                "prefix length {n} outside 1..={}",
                self.len()
            )));
        }
        Ok(Self {
            values: self.values.slice(ndarray::s![..n, ..]).to_owned(),
            channel_names: self.channel_names.clone(),
            start: self.start,
        })
    }

    /// New series containing the named channels, in the given order.
    pub fn select_channels(&self, names: &[String]) -> Result<Self> {
        let indices = names
            .iter()
            .map(|n| self.channel_index(n))
            .collect::<Result<Vec<_>>>()?;
        let mut values = Array2::zeros((self.len(), indices.len()));
        for (out, &idx) in indices.iter().enumerate() {
            values.column_mut(out).assign(&self.values.column(idx));
        }
        Self::new(values, names.to_vec(), self.start)
    }

    /// Enforces the minimum length required before any pipeline run.
    pub fn validate_pipeline_length(&self) -> Result<()> {
        if self.len() < MIN_PIPELINE_LEN {
            return Err(SeriesError::TooShort {
                needed: MIN_PIPELINE_LEN,
                got: self.len(),
            });
        }
        Ok(())
    }
}

/// Index at which a chronological split of `len` observations separates
/// train from test: the first ⌊len·fraction⌋ rows train, the rest test.
pub fn split_index(len: usize, train_fraction: f64) -> Result<usize> {
    if !(train_fraction > 0.0 && train_fraction < 1.0) {
        return Err(SeriesError::InvalidFraction(train_fraction));
    }
    Ok((len as f64 * train_fraction).floor() as usize)
}

/// Splits a series into a train prefix and test suffix without shuffling.
pub fn chronological_split(
    series: &MultichannelSeries,
    train_fraction: f64,
) -> Result<(MultichannelSeries, MultichannelSeries)> {
    let n = split_index(series.len(), train_fraction)?;
    if n == 0 || n == series.len() {
        return Err(SeriesError::InvalidArgument(format!(
            "split at {n} leaves an empty partition (T={})",
            series.len()
        )));
    }
    let train = MultichannelSeries {
        values: series.values.slice(ndarray::s![..n, ..]).to_owned(),
        channel_names: series.channel_names.clone(),
        start: series.start,
    };
    let test = MultichannelSeries {
        values: series.values.slice(ndarray::s![n.., ..]).to_owned(),
        channel_names: series.channel_names.clone(),
        start: series.start.plus_months(n),
    };
    Ok((train, test))
}

/// Appends `test` back onto `train`; inverse of [`chronological_split`].
pub fn concat(train: &MultichannelSeries, test: &MultichannelSeries) -> Result<MultichannelSeries> {
    if train.channel_names != test.channel_names {
        return Err(SeriesError::InvalidArgument(
            "cannot concatenate series with different channels".into(),
        ));
    }
    let values = ndarray::concatenate(Axis(0), &[train.values(), test.values()])
        .map_err(|e| SeriesError::InvalidArgument(e.to_string()))?;
    MultichannelSeries::new(values, train.channel_names.clone(), train.start)
}
