//! Classical single-channel empirical mode decomposition.
//!
//! A signal is repeatedly *sifted* — its mean envelope, the average of cubic
//! splines through local maxima and minima, is subtracted — until the result
//! is an intrinsic mode function (IMF): extrema and zero-crossing counts
//! differ by at most one. Modes are extracted highest frequency first; the
//! remainder after the last mode is the residue (trend). The decomposition is
//! a chain of exact subtractions, so summing IMFs and residue reconstructs
//! the input up to float accumulation.
//!
//! Everything here is pure and reentrant; the building blocks (extrema
//! detection, envelope splines) are shared with the multivariate
//! decomposition built on top of this crate.

mod error;
mod extrema;
mod sift;
mod spline;

pub use error::{EmdError, Result};
pub use extrema::{find_extrema, is_residue_like, zero_crossings, ExtremaSet};
pub use sift::{emd, sift_once, ImfSet, SiftConfig};
pub use spline::{mirror_extend, natural_cubic, spline_envelope, EnvelopeKind};
