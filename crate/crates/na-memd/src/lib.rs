//! Noise-assisted multivariate empirical mode decomposition.
//!
//! Channels are decomposed jointly: the multichannel signal is projected
//! along K quasi-uniform unit directions, each projection's maxima anchor a
//! component-wise spline envelope, and the mean of those envelopes drives the
//! sift. Because every channel is sifted against the same mean envelope, all
//! channels yield the same number of IMFs with matching timescales per index
//! (mode alignment). The noise-assisted wrapper appends seeded Gaussian
//! channels before decomposing and discards their modes afterwards, which
//! stabilizes the filter-bank structure on short or intermittent data.
//!
//! Also provides the mode diagnostics used to characterize a decomposition:
//! mean period (sample length over maxima count) and Pearson correlation of
//! each mode with its original channel.

mod diagnostics;
mod directions;
mod error;
mod multivariate;

pub use diagnostics::{
    decomposition_diagnostics, mean_period, pearson_correlation, DiagnosticsRow,
};
pub use directions::{generate_directions, DirectionSet};
pub use error::{MemdError, Result};
pub use multivariate::{
    memd, memd_frames, multivariate_mean_envelope, na_memd, project, ImfDecomposition,
    NaMemdConfig,
};
