use ndarray::{Array1, Array2, ArrayView1, ArrayView2};

use crate::error::{Result, SeriesError};

/// Lag-embedded regression problem: `inputs` holds N rows of `lag_count`
/// consecutive values; `targets[i]` is the series value `horizon` steps after
/// the last lag of row i.
#[derive(Debug, Clone, PartialEq)]
pub struct SupervisedSet {
    inputs: Array2<f64>,
    targets: Array1<f64>,
    lag_count: usize,
    horizon: usize,
}

impl SupervisedSet {
    pub fn new(
        inputs: Array2<f64>,
        targets: Array1<f64>,
        lag_count: usize,
        horizon: usize,
    ) -> Result<Self> {
        if inputs.nrows() != targets.len() {
            return Err(SeriesError::InvalidArgument(format!(
                "{} input rows but {} targets",
                inputs.nrows(),
                targets.len()
            )));
        }
        if inputs.ncols() != lag_count {
            return Err(SeriesError::InvalidArgument(format!(
                "{} input columns but lag_count {lag_count}",
                inputs.ncols()
            )));
        }
        Ok(Self { inputs, targets, lag_count, horizon })
    }

    pub fn len(&self) -> usize {
        self.targets.len()
    }

    pub fn is_empty(&self) -> bool {
        self.len() == 0
    }

    pub fn lag_count(&self) -> usize {
        self.lag_count
    }

    pub fn horizon(&self) -> usize {
        self.horizon
    }

    pub fn inputs(&self) -> ArrayView2<'_, f64> {
        self.inputs.view()
    }

    pub fn targets(&self) -> ArrayView1<'_, f64> {
        self.targets.view()
    }

    pub fn row(&self, i: usize) -> ArrayView1<'_, f64> {
        self.inputs.row(i)
    }

    pub fn target(&self, i: usize) -> f64 {
        self.targets[i]
    }

    /// Index into the source series of row i's target observation.
    pub fn target_index(&self, i: usize) -> usize {
        i + self.lag_count + self.horizon - 1
    }

    /// Rows whose target falls before `boundary` go to the first set, the
    /// rest to the second. Used to honor a chronological train/test split at
    /// the supervised-row level.
    pub fn split_by_target(&self, boundary: usize) -> (SupervisedSet, SupervisedSet) {
        let cut = (0..self.len())
            .position(|i| self.target_index(i) >= boundary)
            .unwrap_or(self.len());
        let first = SupervisedSet {
            inputs: self.inputs.slice(ndarray::s![..cut, ..]).to_owned(),
            targets: self.targets.slice(ndarray::s![..cut]).to_owned(),
            lag_count: self.lag_count,
            horizon: self.horizon,
        };
        let second = SupervisedSet {
            inputs: self.inputs.slice(ndarray::s![cut.., ..]).to_owned(),
            targets: self.targets.slice(ndarray::s![cut..]).to_owned(),
            lag_count: self.lag_count,
            horizon: self.horizon,
        };
        (first, second)
    }
}

/// Builds the lag embedding of a single channel: row k holds
/// `[y_k, …, y_{k+lag_count−1}]` and its target is `y_{k+lag_count−1+horizon}`,
/// giving N = T − lag_count − horizon + 1 rows.
pub fn make_lag_matrix(series: &[f64], lag_count: usize, horizon: usize) -> Result<SupervisedSet> {
    if lag_count == 0 || horizon == 0 {
        return Err(SeriesError::InvalidArgument(
            "lag_count and horizon must be at least 1".into(),
        ));
    }
    let t = series.len();
    if t < lag_count + horizon {
        return Err(SeriesError::TooShort { needed: lag_count + horizon, got: t });
    }
    let n = t - lag_count - horizon + 1;
    let mut inputs = Array2::zeros((n, lag_count));
    let mut targets = Array1::zeros(n);
    for k in 0..n {
        for j in 0..lag_count {
            inputs[(k, j)] = series[k + j];
        }
        targets[k] = series[k + lag_count + horizon - 1];
    }
    SupervisedSet::new(inputs, targets, lag_count, horizon)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn one_to_ten() -> Vec<f64> {
        (1..=10).map(|v| v as f64).collect()
    }

    #[test]
    fn horizon_one_enumeration() {
        let set = make_lag_matrix(&one_to_ten(), 3, 1).unwrap();
        assert_eq!(set.len(), 7);
        assert_eq!(set.row(0).to_vec(), vec![1.0, 2.0, 3.0]);
        assert_eq!(set.target(0), 4.0);
        assert_eq!(set.row(6).to_vec(), vec![7.0, 8.0, 9.0]);
        assert_eq!(set.target(6), 10.0);
    }

    #[test]
    fn horizon_three_enumeration() {
        let set = make_lag_matrix(&one_to_ten(), 3, 3).unwrap();
        assert_eq!(set.len(), 5);
        assert_eq!(set.row(0).to_vec(), vec![1.0, 2.0, 3.0]);
        assert_eq!(set.target(0), 6.0);
    }

    #[test]
    fn too_short_series_is_an_error() {
        let short = vec![1.0, 2.0, 3.0, 4.0];
        assert!(make_lag_matrix(&short, 3, 3).is_err());
    }

    #[test]
    fn rows_are_contiguous_windows() {
        let set = make_lag_matrix(&one_to_ten(), 4, 2).unwrap();
        for i in 0..set.len() - 1 {
            for j in 0..set.lag_count() - 1 {
                assert_eq!(set.inputs()[(i, j + 1)], set.inputs()[(i + 1, j)]);
            }
        }
    }

    #[test]
    fn split_by_target_respects_boundary() {
        let set = make_lag_matrix(&one_to_ten(), 3, 1).unwrap();
        // Targets are values 4..=10 at indices 3..=9; boundary 8 puts targets
        // with index >= 8 (values 9, 10) in the test half.
        let (train, test) = set.split_by_target(8);
        assert_eq!(train.len(), 5);
        assert_eq!(test.len(), 2);
        assert_eq!(test.target(0), 9.0);
        assert_eq!(test.target(1), 10.0);
    }
}
