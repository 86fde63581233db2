use series_core::MultichannelSeries;

use emd_univariate::find_extrema;

use crate::error::{MemdError, Result};
use crate::multivariate::ImfDecomposition;

/// Timescale of a mode in months: sample length divided by the number of
/// local maxima. A mode with no maxima spans the whole sample (one cycle).
pub fn mean_period(imf: &[f64]) -> f64 {
    let t = imf.len() as f64;
    let maxima = find_extrema(imf).map_or(0, |ext| ext.maxima.len());
    if maxima == 0 {
        t
    } else {
        t / maxima as f64
    }
}

/// Sample Pearson correlation coefficient.
pub fn pearson_correlation(a: &[f64], b: &[f64]) -> Result<f64> {
    if a.len() != b.len() || a.is_empty() {
        return Err(MemdError::DegenerateInput(format!(
            "lengths {} and {}",
            a.len(),
            b.len()
        )));
    }
    let n = a.len() as f64;
    let (ma, mb) = (a.iter().sum::<f64>() / n, b.iter().sum::<f64>() / n);
    let mut cov = 0.0;
    let mut var_a = 0.0;
    let mut var_b = 0.0;
    for (x, y) in a.iter().zip(b) {
        cov += (x - ma) * (y - mb);
        var_a += (x - ma).powi(2);
        var_b += (y - mb).powi(2);
    }
    if var_a == 0.0 || var_b == 0.0 {
        return Err(MemdError::DegenerateInput("constant input".into()));
    }
    Ok(cov / (var_a.sqrt() * var_b.sqrt()))
}

/// One row of the decomposition diagnostics table: a mode's timescale and its
/// correlation with the original channel. The residue row has no period.
#[derive(Debug, Clone, PartialEq)]
pub struct DiagnosticsRow {
    pub channel: String,
    pub component: String,
    pub mean_period: Option<f64>,
    pub correlation: f64,
}

/// Mean period and Pearson correlation of every mode against its original
/// channel: `imf_count + 1` rows per channel (IMFs plus the residual).
pub fn decomposition_diagnostics(
    decomp: &ImfDecomposition,
    original: &MultichannelSeries,
) -> Result<Vec<DiagnosticsRow>> {
    let mut rows = Vec::new();
    for (c, name) in decomp.channel_names().iter().enumerate() {
        let source = original.channel_by_name(name)?.to_vec();
        let set = decomp.channel(c);
        for (j, imf) in set.imfs.iter().enumerate() {
            rows.push(DiagnosticsRow {
                channel: name.clone(),
                component: format!("IMF {}", j + 1),
                mean_period: Some(mean_period(imf)),
                correlation: pearson_correlation(imf, &source)?,
            });
        }
        rows.push(DiagnosticsRow {
            channel: name.clone(),
            component: "Residual".into(),
            mean_period: None,
            correlation: pearson_correlation(&set.residue, &source)?,
        });
    }
    Ok(rows)
}

#[cfg(test)]
mod tests {
    use super::*;
    use std::f64::consts::PI;

    #[test]
    fn mean_period_from_maxima_count() {
        // 122 samples with 41 local maxima: an oscillation at period 122/41.
        let t = 122;
        let signal: Vec<f64> = (0..t)
            .map(|i| (2.0 * PI * i as f64 * 41.0 / 122.0).sin())
            .collect();
        let period = mean_period(&signal);
        assert!((period - 122.0 / 41.0).abs() / (122.0 / 41.0) < 0.1, "{period}");
    }

    #[test]
    fn single_maximum_spans_whole_sample() {
        let t = 122;
        // One interior bump: period reported as the full sample length.
        let signal: Vec<f64> = (0..t)
            .map(|i| (PI * i as f64 / (t - 1) as f64).sin())
            .collect();
        assert_eq!(mean_period(&signal), 122.0);
    }

    #[test]
    fn pure_sine_recovers_its_period() {
        let samples_per_cycle = 16usize;
        let cycles = 8usize;
        let n = samples_per_cycle * cycles;
        let signal: Vec<f64> = (0..n)
            .map(|i| (2.0 * PI * i as f64 / samples_per_cycle as f64 + 0.3).sin())
            .collect();
        let period = mean_period(&signal);
        assert!(
            (period - samples_per_cycle as f64).abs() <= 1.0,
            "estimated {period}, true {samples_per_cycle}"
        );
    }

    #[test]
    fn correlation_reference_points() {
        let x = vec![0.5, 1.5, -2.0, 3.0, 0.1];
        assert!((pearson_correlation(&x, &x).unwrap() - 1.0).abs() < 1e-12);
        let neg: Vec<f64> = x.iter().map(|v| -v).collect();
        assert!((pearson_correlation(&x, &neg).unwrap() + 1.0).abs() < 1e-12);

        // Hand computation: cov/σσ = 3/sqrt(2 · 14/3).
        let a = vec![1.0, 2.0, 3.0];
        let b = vec![1.0, 2.0, 4.0];
        let expected = 3.0 / (2.0f64 * 14.0 / 3.0).sqrt();
        assert!((pearson_correlation(&a, &b).unwrap() - expected).abs() < 1e-12);
        assert!((expected - 0.9819).abs() < 1e-4);
    }

    #[test]
    fn constant_input_is_rejected() {
        assert!(pearson_correlation(&[1.0, 1.0, 1.0], &[1.0, 2.0, 3.0]).is_err());
        assert!(pearson_correlation(&[1.0, 2.0], &[1.0, 2.0, 3.0]).is_err());
    }
}
