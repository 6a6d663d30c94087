//! Numerical replay of the packing arguments behind the orthotope constants.
//!
//! Each replay builds the radius `r`, a maximal `r`-separated set and then
//! evaluates every intermediate inequality on exact box eigenvalues. A
//! transcript stops at the first failing step.
//!
//! Covering is certified on a probe grid of pitch `r/8` (`r/4` in three
//! dimensions), so the covering radius fed into the volume comparison is the
//! measured probe gap plus the probe cell half-diagonal: at most
//! `r(1 + √2/16)` in the plane and `r(1 + √3/8)` in space when every probe is
//! within `r`. That excess is charged against the slack of the Γ-chain,
//! about 1.22 for `n = 2` and 1.62 for `n = 3`.

mod lemma;
mod separated;

pub use lemma::{replay_lemma31, replay_lemma33, Lemma};
pub use separated::{maximal_separated_set, SeparatedSet, PROBE_BUDGET, PROBE_FRACTIONS};

use serde::Serialize;

use crate::box_spectrum::SpectrumBuildError;
use crate::special::SpecialError;
use crate::Real;

/// Largest dimension the probe-grid certification supports.
pub const MAX_REPLAY_DIMENSION: usize = 3;

/// Relative slack on every step comparison.
pub const STEP_SLACK: f64 = 1e-12;

#[derive(Debug, Clone, PartialEq, thiserror::Error)]
pub enum ReplayError {
    #[error("replay supports dimensions 1..=3, got {0}")]
    Dimension(usize),
    #[error("indices k={k}, l={l} must satisfy k >= l >= 1")]
    BadIndices { k: usize, l: usize },
    #[error("separation radius {0} must be finite and positive")]
    BadRadius(f64),
    #[error("probe grid exceeds budget of {budget} points")]
    ProbeBudget { budget: usize },
    #[error(transparent)]
    Box(#[from] SpectrumBuildError),
    #[error(transparent)]
    Special(#[from] SpecialError),
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub enum Relation {
    #[serde(rename = "<=")]
    Le,
    #[serde(rename = "<")]
    Lt,
    #[serde(rename = "==")]
    Eq,
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct ReplayStep<T> {
    pub step_id: &'static str,
    pub description: &'static str,
    pub lhs: T,
    pub rhs: T,
    pub relation: Relation,
    pub pass: bool,
}

impl<T: Real> ReplayStep<T> {
    pub fn new(step_id: &'static str, description: &'static str, lhs: T, rhs: T, relation: Relation) -> Self {
        let slack = T::tol(STEP_SLACK) * lhs.abs().max(rhs.abs());
        let pass = match relation {
            Relation::Le => lhs <= rhs + slack,
            Relation::Lt => lhs < rhs,
            Relation::Eq => (lhs - rhs).abs() <= slack,
        };
        Self {
            step_id,
            description,
            lhs,
            rhs,
            relation,
            pass,
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
#[serde(tag = "status", rename_all = "snake_case")]
pub enum ReplayStatus {
    Passed,
    Failed { step_id: &'static str },
    /// The lemma's hypothesis is false for this box and index pair.
    NotApplicable,
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct ReplayTranscript<T> {
    pub lemma: Lemma,
    pub domain_id: String,
    pub half_widths: Vec<T>,
    pub k: usize,
    pub l: usize,
    pub r: T,
    /// Size of the separated set: `k'` for the upper replay, `l'` for the lower one.
    pub k_prime: usize,
    pub covering_radius: T,
    pub seed: u64,
    pub steps: Vec<ReplayStep<T>>,
    pub status: ReplayStatus,
}

impl<T: Real> ReplayTranscript<T> {
    pub fn passed(&self) -> bool {
        self.status == ReplayStatus::Passed
    }

    pub fn step(&self, step_id: &str) -> Option<&ReplayStep<T>> {
        self.steps.iter().find(|s| s.step_id == step_id)
    }
}
