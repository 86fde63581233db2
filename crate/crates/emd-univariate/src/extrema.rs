use crate::error::{EmdError, Result};

/// Interior local maxima and minima of a signal, as sample indices.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ExtremaSet {
    pub maxima: Vec<usize>,
    pub minima: Vec<usize>,
}

impl ExtremaSet {
    pub fn total(&self) -> usize {
        self.maxima.len() + self.minima.len()
    }
}

/// Locates interior extrema. A run of equal values is a single extremum at
/// its midpoint index (floor on ties); endpoints are never extrema.
pub fn find_extrema(signal: &[f64]) -> Result<ExtremaSet> {
    let n = signal.len();
    if n < 3 {
        return Err(EmdError::TooShort { needed: 3, got: n });
    }
    let mut maxima = Vec::new();
    let mut minima = Vec::new();
    let mut i = 1;
    while i < n - 1 {
        // Maximal run of equal values starting at i.
        let mut j = i;
        while j + 1 < n && signal[j + 1] == signal[i] {
            j += 1;
        }
        if j < n - 1 {
            let left = signal[i - 1];
            let right = signal[j + 1];
            let v = signal[i];
            let mid = (i + j) / 2;
            if v > left && v > right {
                maxima.push(mid);
            } else if v < left && v < right {
                minima.push(mid);
            }
        }
        i = j + 1;
    }
    Ok(ExtremaSet { maxima, minima })
}

/// Number of zero crossings: sign flips between consecutive nonzero samples
/// (runs of exact zeros between opposite signs count once).
pub fn zero_crossings(signal: &[f64]) -> usize {
    let mut crossings = 0;
    let mut last_sign = 0i8;
    for &v in signal {
        let sign = if v > 0.0 {
            1
        } else if v < 0.0 {
            -1
        } else {
            0
        };
        if sign != 0 {
            if last_sign != 0 && sign != last_sign {
                crossings += 1;
            }
            last_sign = sign;
        }
    }
    crossings
}

/// A signal is residue-like (a trend) once it has fewer than two maxima or
/// fewer than two minima; such signals cannot be sifted further.
pub fn is_residue_like(signal: &[f64]) -> bool {
    match find_extrema(signal) {
        Ok(ext) => ext.maxima.len() < 2 || ext.minima.len() < 2,
        Err(_) => true,
    }
}
