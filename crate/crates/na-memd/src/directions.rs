use ndarray::{Array2, ArrayView1};

use crate::error::{MemdError, Result};

/// Projection directions: unit vectors covering the (d−1)-sphere, drawn from
/// a seeded Hammersley low-discrepancy sequence so every run is repeatable.
#[derive(Debug, Clone, PartialEq)]
pub struct DirectionSet {
    vectors: Array2<f64>, // K × d
    generator: &'static str,
    seed: u64,
}

impl DirectionSet {
    pub fn count(&self) -> usize {
        self.vectors.nrows()
    }

    pub fn dim(&self) -> usize {
        self.vectors.ncols()
    }

    pub fn vector(&self, k: usize) -> ArrayView1<'_, f64> {
        self.vectors.row(k)
    }

    pub fn generator(&self) -> &str {
        self.generator
    }

    pub fn seed(&self) -> u64 {
        self.seed
    }
}

/// K points of the seeded Hammersley set mapped onto the unit (d−1)-sphere
/// through the inverse-CDF angular map. Requires K ≥ 2d so the sphere is
/// covered on both sides of every axis.
pub fn generate_directions(dim: usize, count: usize, seed: u64) -> Result<DirectionSet> {
    if dim < 2 {
        return Err(MemdError::InvalidConfig(format!(
            "direction dimension must be at least 2, got {dim}"
        )));
    }
    if count < 2 * dim {
        return Err(MemdError::TooFewDirections { needed: 2 * dim, dim, got: count });
    }

    // Cranley–Patterson rotation: the seed shifts every Hammersley coordinate
    // modulo 1, preserving the low-discrepancy structure.
    let mut state = seed;
    let offsets: Vec<f64> = (0..dim - 1).map(|_| uniform_from_bits(splitmix64(&mut state))).collect();
    let bases = primes(dim.saturating_sub(2));

    let mut vectors = Array2::zeros((count, dim));
    for i in 0..count {
        let mut u = Vec::with_capacity(dim - 1);
        u.push(frac((i as f64 + 0.5) / count as f64 + offsets[0]));
        for (j, &base) in bases.iter().enumerate() {
            u.push(frac(radical_inverse(i as u64, base) + offsets[j + 1]));
        }
        let point = sphere_point(&u, dim);
        let norm = point.iter().map(|v| v * v).sum::<f64>().sqrt();
        for (c, v) in point.iter().enumerate() {
            vectors[(i, c)] = v / norm;
        }
    }
    Ok(DirectionSet { vectors, generator: "hammersley", seed })
}

/// Hyperspherical coordinates from the unit cube: the first d−2 coordinates
/// become polar angles through the inverse CDF of sin^m on [0, π], the last
/// becomes the azimuth.
fn sphere_point(u: &[f64], dim: usize) -> Vec<f64> {
    let mut angles = Vec::with_capacity(dim - 1);
    for (j, &uj) in u.iter().take(dim - 2).enumerate() {
        angles.push(inverse_sin_power_cdf(uj, dim - 2 - j));
    }
    angles.push(2.0 * std::f64::consts::PI * u[dim - 2]);

    let mut point = Vec::with_capacity(dim);
    let mut sin_product = 1.0;
    for &angle in angles.iter().take(dim - 2) {
        point.push(sin_product * angle.cos());
        sin_product *= angle.sin();
    }
    let azimuth = angles[dim - 2];
    point.push(sin_product * azimuth.cos());
    point.push(sin_product * azimuth.sin());
    point
}

/// Inverse CDF of the density ∝ sin^m(θ) on [0, π].
fn inverse_sin_power_cdf(u: f64, m: usize) -> f64 {
    match m {
        0 => u * std::f64::consts::PI,
        1 => (1.0 - 2.0 * u).clamp(-1.0, 1.0).acos(),
        _ => {
            let total = sin_power_integral(std::f64::consts::PI, m);
            let target = u * total;
            let (mut lo, mut hi) = (0.0, std::f64::consts::PI);
            for _ in 0..80 {
                let mid = 0.5 * (lo + hi);
                if sin_power_integral(mid, m) < target {
                    lo = mid;
                } else {
                    hi = mid;
                }
            }
            0.5 * (lo + hi)
        }
    }
}

/// ∫₀^θ sinᵐ t dt through the standard reduction formula.
fn sin_power_integral(theta: f64, m: usize) -> f64 {
    // Walk the recurrence bottom-up from I_{m mod 2}.
    let mut k = m % 2;
    let mut value = if k == 0 { theta } else { 1.0 - theta.cos() };
    while k < m {
        k += 2;
        value = (-theta.cos() * theta.sin().powi(k as i32 - 1) + (k as f64 - 1.0) * value) / k as f64;
    }
    value
}

fn radical_inverse(mut i: u64, base: u64) -> f64 {
    let mut inv = 0.0;
    let mut digit = 1.0 / base as f64;
    while i > 0 {
        inv += (i % base) as f64 * digit;
        i /= base;
        digit /= base as f64;
    }
    inv
}

fn primes(count: usize) -> Vec<u64> {
    let mut found = Vec::with_capacity(count);
    let mut candidate = 2u64;
    while found.len() < count {
        if found.iter().all(|p| !candidate.is_multiple_of(*p)) {
            found.push(candidate);
        }
        candidate += 1;
    }
    found
}

fn frac(x: f64) -> f64 {
    x - x.floor()
}

fn uniform_from_bits(bits: u64) -> f64 {
    (bits >> 11) as f64 / (1u64 << 53) as f64
}

fn splitmix64(state: &mut u64) -> u64 {
    *state = state.wrapping_add(0x9E37_79B9_7F4A_7C15);
    let mut z = *state;
    z = (z ^ (z >> 30)).wrapping_mul(0xBF58_476D_1CE4_E5B9);
    z = (z ^ (z >> 27)).wrapping_mul(0x94D0_49BB_1331_11EB);
    z ^ (z >> 31)
}
