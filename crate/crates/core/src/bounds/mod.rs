//! Universal constants and checkers for Dirichlet eigenvalue inequalities.
//!
//! Every checker returns a [`BoundReport`] oriented as `lhs <= rhs`. Spectra
//! with error bars widen the verdict by a tolerance band: twice each error
//! bar, weighted by the coefficient of that eigenvalue, summed linearly.

mod checks;
mod constants;
mod report;

pub use checks::{Bounds, CHENG_YANG_MIN, ROUNDOFF_REL};
pub use constants::{constants, UniversalConstants, CHENG_YANG_A_ENVELOPE};
pub use report::{BoundReport, Hypothesis, InequalityId, MarginKind, Verdict};

use crate::box_spectrum::SpectrumBuildError;
use crate::special::SpecialError;
use crate::spectrum::SpectrumError;

#[derive(Debug, Clone, PartialEq, thiserror::Error)]
pub enum BoundsError {
    #[error("dimension {0} outside 1..=60")]
    BadDimension(usize),
    #[error("indices k={k}, l={l} must satisfy k >= l >= 1")]
    BadIndices { k: usize, l: usize },
    #[error("{0} must be finite and positive")]
    NotPositive(&'static str),
    #[error("eigenvalue cluster at k={k} reaches the end of the spectrum (length {len})")]
    ClusterUnresolved { k: usize, len: usize },
    #[error(transparent)]
    Spectrum(#[from] SpectrumError),
    #[error(transparent)]
    Special(#[from] SpecialError),
    #[error(transparent)]
    Box(#[from] SpectrumBuildError),
}
