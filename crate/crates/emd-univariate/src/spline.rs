use crate::error::{EmdError, Result};
use crate::extrema::ExtremaSet;

/// Which envelope a spline fit should trace.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum EnvelopeKind {
    Upper,
    Lower,
}

/// Natural cubic spline through `(xs, ys)` knots, evaluated at the integer
/// sample points `0..len`. Knot positions must be strictly increasing; two
/// knots degenerate to a straight line.
pub fn natural_cubic(xs: &[f64], ys: &[f64], len: usize) -> Vec<f64> {
    let m = xs.len();
    assert!(m >= 2 && ys.len() == m, "need at least two knots");
    debug_assert!(xs.windows(2).all(|w| w[0] < w[1]), "knots must increase");

    let h: Vec<f64> = (0..m - 1).map(|i| xs[i + 1] - xs[i]).collect();

    // Second-derivative coefficients (c) from the natural-spline tridiagonal
    // system; endpoints pinned to zero.
    let mut alpha = vec![0.0; m];
    for i in 1..m - 1 {
        alpha[i] = 3.0 * ((ys[i + 1] - ys[i]) / h[i] - (ys[i] - ys[i - 1]) / h[i - 1]);
    }
    let mut l = vec![1.0; m];
    let mut mu = vec![0.0; m];
    let mut z = vec![0.0; m];
    for i in 1..m - 1 {
        l[i] = 2.0 * (xs[i + 1] - xs[i - 1]) - h[i - 1] * mu[i - 1];
        mu[i] = h[i] / l[i];
        z[i] = (alpha[i] - h[i - 1] * z[i - 1]) / l[i];
    }
    let mut c = vec![0.0; m];
    for j in (0..m - 1).rev() {
        c[j] = z[j] - mu[j] * c[j + 1];
    }
    let mut b = vec![0.0; m - 1];
    let mut d = vec![0.0; m - 1];
    for i in 0..m - 1 {
        b[i] = (ys[i + 1] - ys[i]) / h[i] - h[i] * (c[i + 1] + 2.0 * c[i]) / 3.0;
        d[i] = (c[i + 1] - c[i]) / (3.0 * h[i]);
    }

    // Sample points ascend, so a marching segment pointer suffices.
    let mut out = Vec::with_capacity(len);
    let mut seg = 0;
    for t in 0..len {
        let x = t as f64;
        while seg + 1 < m - 1 && x >= xs[seg + 1] {
            seg += 1;
        }
        let dx = x - xs[seg];
        out.push(ys[seg] + b[seg] * dx + c[seg] * dx * dx + d[seg] * dx * dx * dx);
    }
    out
}

/// Reflects the two extrema nearest each end across the signal boundary,
/// producing the ghost knots that suppress spline end swings.
pub fn mirror_extend(indices: &[usize], values: &[f64], len: usize) -> (Vec<f64>, Vec<f64>) {
    let m = indices.len();
    assert!(m >= 2, "mirror extension needs at least two extrema");
    let end = (len - 1) as f64;
    let mut xs = Vec::with_capacity(m + 4);
    let mut ys = Vec::with_capacity(m + 4);
    xs.push(-(indices[1] as f64));
    ys.push(values[1]);
    xs.push(-(indices[0] as f64));
    ys.push(values[0]);
    for (&i, &v) in indices.iter().zip(values) {
        xs.push(i as f64);
        ys.push(v);
    }
    xs.push(2.0 * end - indices[m - 1] as f64);
    ys.push(values[m - 1]);
    xs.push(2.0 * end - indices[m - 2] as f64);
    ys.push(values[m - 2]);
    (xs, ys)
}

/// Envelope through the requested extrema of `signal`, with mirrored boundary
/// knots, evaluated at every sample point.
pub fn spline_envelope(
    signal: &[f64],
    extrema: &ExtremaSet,
    kind: EnvelopeKind,
) -> Result<Vec<f64>> {
    let (indices, label) = match kind {
        EnvelopeKind::Upper => (&extrema.maxima, "maxima"),
        EnvelopeKind::Lower => (&extrema.minima, "minima"),
    };
    if indices.len() < 2 {
        return Err(EmdError::ResidueLike(label));
    }
    let values: Vec<f64> = indices.iter().map(|&i| signal[i]).collect();
    let (xs, ys) = mirror_extend(indices, &values, signal.len());
    Ok(natural_cubic(&xs, &ys, signal.len()))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::extrema::find_extrema;
    use std::f64::consts::PI;

    #[test]
    fn spline_interpolates_knots() {
        let xs = [0.0, 3.0, 7.0, 11.0];
        let ys = [1.0, -2.0, 4.0, 0.5];
        let fit = natural_cubic(&xs, &ys, 12);
        for (&x, &y) in xs.iter().zip(&ys) {
            assert!((fit[x as usize] - y).abs() < 1e-12, "knot at {x}");
        }
    }

    #[test]
    fn equal_height_maxima_give_flat_envelope() {
        // Two interior maxima with the same height: the spline degenerates to
        // a straight segment between them.
        let mut signal = vec![0.0; 32];
        let h = 2.5;
        signal[8] = h;
        signal[23] = h;
        signal[15] = -1.0;
        let ext = find_extrema(&signal).unwrap();
        assert_eq!(ext.maxima, vec![8, 23]);
        let env = spline_envelope(&signal, &ext, EnvelopeKind::Upper).unwrap();
        for t in 8..=23 {
            assert!((env[t] - h).abs() < 1e-9, "t={t}: {}", env[t]);
        }
    }

    #[test]
    fn upper_envelope_of_dense_sine_is_near_one() {
        let n = 512;
        let signal: Vec<f64> = (0..n).map(|t| (2.0 * PI * t as f64 / 32.0).sin()).collect();
        let ext = find_extrema(&signal).unwrap();
        let env = spline_envelope(&signal, &ext, EnvelopeKind::Upper).unwrap();
        let margin = n / 10;
        for t in margin..n - margin {
            assert!((env[t] - 1.0).abs() < 0.05, "t={t}: {}", env[t]);
        }
    }

    #[test]
    fn single_maximum_is_residue_like() {
        let mut signal = vec![0.0; 16];
        signal[7] = 1.0;
        let ext = find_extrema(&signal).unwrap();
        assert_eq!(
            spline_envelope(&signal, &ext, EnvelopeKind::Upper),
            Err(EmdError::ResidueLike("maxima"))
        );
    }
}
