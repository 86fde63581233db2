use crate::error::{EmdError, Result};
use crate::extrema::{find_extrema, is_residue_like, zero_crossings};
use crate::spline::{spline_envelope, EnvelopeKind};

/// Hard ceiling on extracted modes; decomposition of any realistic signal
/// terminates on the residue test long before this.
const MAX_IMFS: usize = 64;

/// Stopping rule for the sifting loop.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct SiftConfig {
    /// Number of consecutive sifts for which the extrema/zero-crossing counts
    /// must differ by at most one before a component is accepted.
    pub s_number: usize,
    /// Hard cap on sifts per component.
    pub max_sifts: usize,
}

impl Default for SiftConfig {
    fn default() -> Self {
        Self { s_number: 4, max_sifts: 50 }
    }
}

/// Ordered intrinsic mode functions (highest frequency first) plus the
/// residue; their sum telescopes back to the decomposed signal.
#[derive(Debug, Clone, PartialEq)]
pub struct ImfSet {
    pub imfs: Vec<Vec<f64>>,
    pub residue: Vec<f64>,
}

impl ImfSet {
    pub fn imf_count(&self) -> usize {
        self.imfs.len()
    }

    pub fn len(&self) -> usize {
        self.residue.len()
    }

    pub fn is_empty(&self) -> bool {
        self.residue.is_empty()
    }

    /// Σ IMFs + residue; equal to the input up to float accumulation.
    pub fn reconstruct(&self) -> Vec<f64> {
        let mut out = self.residue.clone();
        for imf in &self.imfs {
            for (o, v) in out.iter_mut().zip(imf) {
                *o += v;
            }
        }
        out
    }
}

/// One sifting step: subtracts the mean of the upper and lower spline
/// envelopes. Returns `(detail, mean_envelope)`.
pub fn sift_once(signal: &[f64]) -> Result<(Vec<f64>, Vec<f64>)> {
    let extrema = find_extrema(signal)?;
    let upper = spline_envelope(signal, &extrema, EnvelopeKind::Upper)?;
    let lower = spline_envelope(signal, &extrema, EnvelopeKind::Lower)?;
    let mean: Vec<f64> = upper
        .iter()
        .zip(&lower)
        .map(|(u, l)| (u + l) / 2.0)
        .collect();
    let detail: Vec<f64> = signal.iter().zip(&mean).map(|(s, m)| s - m).collect();
    Ok((detail, mean))
}

/// The counting half of the IMF criterion: extrema and zero crossings differ
/// by at most one.
fn counts_balanced(signal: &[f64]) -> bool {
    match find_extrema(signal) {
        Ok(ext) => {
            let zc = zero_crossings(signal);
            ext.total().abs_diff(zc) <= 1
        }
        Err(_) => false,
    }
}

fn extract_imf(signal: &[f64], config: &SiftConfig) -> Vec<f64> {
    let mut h = signal.to_vec();
    let mut streak = 0;
    for _ in 0..config.max_sifts {
        match sift_once(&h) {
            Ok((detail, _)) => h = detail,
            // No more envelope support: accept what sifting produced so far.
            Err(_) => break,
        }
        if counts_balanced(&h) {
            streak += 1;
            if streak >= config.s_number {
                break;
            }
        } else {
            streak = 0;
        }
    }
    h
}

/// Full decomposition: repeatedly sifts out the highest-frequency component
/// and continues on the remainder until it is residue-like.
pub fn emd(signal: &[f64], config: &SiftConfig) -> Result<ImfSet> {
    if signal.len() < 8 {
        return Err(EmdError::TooShort { needed: 8, got: signal.len() });
    }
    let mut imfs = Vec::new();
    let mut residue = signal.to_vec();
    while !is_residue_like(&residue) && imfs.len() < MAX_IMFS {
        let imf = extract_imf(&residue, config);
        for (r, v) in residue.iter_mut().zip(&imf) {
            *r -= v;
        }
        imfs.push(imf);
    }
    Ok(ImfSet { imfs, residue })
}

#[cfg(test)]
mod tests {
    use super::*;
    use std::f64::consts::PI;

    fn sine(n: usize, period: f64, phase: f64) -> Vec<f64> {
        (0..n)
            .map(|t| (2.0 * PI * t as f64 / period + phase).sin())
            .collect()
    }

    fn correlation(a: &[f64], b: &[f64]) -> f64 {
        let n = a.len() as f64;
        let (ma, mb) = (a.iter().sum::<f64>() / n, b.iter().sum::<f64>() / n);
        let mut num = 0.0;
        let mut da = 0.0;
        let mut db = 0.0;
        for (x, y) in a.iter().zip(b) {
            num += (x - ma) * (y - mb);
            da += (x - ma).powi(2);
            db += (y - mb).powi(2);
        }
        num / (da.sqrt() * db.sqrt())
    }

    #[test]
    fn sift_removes_constant_offset() {
        let n = 512;
        let signal: Vec<f64> = sine(n, 32.0, 0.0).iter().map(|v| v + 0.5).collect();
        let (detail, mean) = sift_once(&signal).unwrap();
        for t in n / 10..n - n / 10 {
            assert!((mean[t] - 0.5).abs() < 0.05, "mean at {t}: {}", mean[t]);
            assert!(
                (detail[t] - (signal[t] - 0.5)).abs() < 0.05,
                "detail at {t}: {}",
                detail[t]
            );
        }
    }

    #[test]
    fn symmetric_triangle_has_zero_mean_envelope() {
        let n = 256;
        let period = 16usize;
        let signal: Vec<f64> = (0..n)
            .map(|t| {
                let phase = (t % period) as f64 / period as f64;
                if phase < 0.5 {
                    4.0 * phase - 1.0
                } else {
                    3.0 - 4.0 * phase
                }
            })
            .collect();
        let (_, mean) = sift_once(&signal).unwrap();
        for t in n / 10..n - n / 10 {
            assert!(mean[t].abs() < 1e-6, "mean at {t}: {}", mean[t]);
        }
    }

    #[test]
    fn detail_is_signal_minus_mean_exactly() {
        let signal = sine(128, 16.0, 0.3);
        let (detail, mean) = sift_once(&signal).unwrap();
        for ((d, m), s) in detail.iter().zip(&mean).zip(&signal) {
            assert_eq!(*d, s - m, "detail must be the literal subtraction");
            assert!((d + m - s).abs() < 1e-12);
        }
    }

    #[test]
    fn residue_like_signal_cannot_be_sifted() {
        let ramp: Vec<f64> = (0..32).map(|t| t as f64).collect();
        assert!(matches!(sift_once(&ramp), Err(EmdError::ResidueLike(_))));
    }

    #[test]
    fn two_tone_signal_separates() {
        let n = 512;
        let fast = sine(n, 8.0, 0.0);
        let slow = sine(n, 64.0, 0.0);
        let signal: Vec<f64> = (0..n)
            .map(|t| fast[t] + slow[t] + 0.01 * t as f64)
            .collect();
        let set = emd(&signal, &SiftConfig::default()).unwrap();
        assert!(set.imf_count() >= 2, "got {} IMFs", set.imf_count());
        assert!(
            correlation(&set.imfs[0], &fast) > 0.9,
            "IMF1 vs fast tone: {}",
            correlation(&set.imfs[0], &fast)
        );
        assert!(
            correlation(&set.imfs[1], &slow) > 0.9,
            "IMF2 vs slow tone: {}",
            correlation(&set.imfs[1], &slow)
        );
    }

    #[test]
    fn ramp_decomposes_to_pure_residue() {
        let ramp: Vec<f64> = (0..64).map(|t| 0.5 * t as f64).collect();
        let set = emd(&ramp, &SiftConfig::default()).unwrap();
        assert_eq!(set.imf_count(), 0);
        assert_eq!(set.residue, ramp);
    }

    #[test]
    fn reconstruction_telescopes() {
        let n = 512;
        let signal: Vec<f64> = (0..n)
            .map(|t| {
                let t = t as f64;
                (2.0 * PI * t / 8.0).sin() + (2.0 * PI * t / 64.0).sin() + 0.01 * t
            })
            .collect();
        let set = emd(&signal, &SiftConfig::default()).unwrap();
        let rebuilt = set.reconstruct();
        for (r, s) in rebuilt.iter().zip(&signal) {
            assert!((r - s).abs() < 1e-8);
        }
    }

    #[test]
    fn frequency_order_is_non_increasing() {
        let n = 512;
        let signal: Vec<f64> = (0..n)
            .map(|t| {
                let t = t as f64;
                (2.0 * PI * t / 8.0).sin()
                    + 0.8 * (2.0 * PI * t / 32.0).sin()
                    + 0.6 * (2.0 * PI * t / 128.0).sin()
            })
            .collect();
        let set = emd(&signal, &SiftConfig::default()).unwrap();
        let maxima_counts: Vec<usize> = set
            .imfs
            .iter()
            .map(|imf| find_extrema(imf).map(|e| e.maxima.len()).unwrap_or(0))
            .collect();
        for w in maxima_counts.windows(2) {
            assert!(w[0] >= w[1], "maxima counts should fall: {maxima_counts:?}");
        }
    }

    #[test]
    fn each_imf_satisfies_the_count_criterion() {
        let n = 256;
        let signal: Vec<f64> = (0..n)
            .map(|t| {
                let t = t as f64;
                (2.0 * PI * t / 10.0).sin() + 0.5 * (2.0 * PI * t / 50.0).sin()
            })
            .collect();
        let set = emd(&signal, &SiftConfig::default()).unwrap();
        for (i, imf) in set.imfs.iter().enumerate() {
            let ext = find_extrema(imf).unwrap();
            let zc = zero_crossings(imf);
            assert!(
                ext.total().abs_diff(zc) <= 1,
                "IMF {i}: extrema {} vs crossings {zc}",
                ext.total()
            );
        }
    }

    #[test]
    fn short_signal_is_rejected() {
        assert!(matches!(
            emd(&[1.0; 7], &SiftConfig::default()),
            Err(EmdError::TooShort { .. })
        ));
    }
}
