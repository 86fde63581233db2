use nalgebra::{DMatrix, DVector};
use ndarray::{Array1, ArrayView1, ArrayView2};

/// Minimum-norm least-squares solution of `design · x ≈ targets` through a
/// singular value decomposition, with singular values below
/// `σ_max · max(rows, cols) · ε` treated as zero. Returns the solution and
/// the numerical rank.
pub(crate) fn min_norm_lstsq(design: ArrayView2<f64>, targets: ArrayView1<f64>) -> (Array1<f64>, usize) {
    let (rows, cols) = design.dim();
    let a = DMatrix::from_fn(rows, cols, |r, c| design[(r, c)]);
    let b = DVector::from_fn(rows, |r, _| targets[r]);
    let svd = a.svd(true, true);
    let sigma_max = svd.singular_values.iter().cloned().fold(0.0f64, f64::max);
    let eps = sigma_max * rows.max(cols) as f64 * f64::EPSILON;
    let rank = svd.singular_values.iter().filter(|&&s| s > eps).count();
    let solution = svd
        .solve(&b, eps)
        .expect("SVD solve with both factors requested");
    (Array1::from_iter(solution.iter().cloned()), rank)
}
