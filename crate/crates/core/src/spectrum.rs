use serde::Serialize;

use crate::Real;

#[derive(Debug, Clone, PartialEq, thiserror::Error)]
pub enum SpectrumError {
    #[error("spectrum is empty")]
    Empty,
    #[error("eigenvalue {index} is not finite and positive")]
    NotPositive { index: usize },
    #[error("eigenvalues not ascending at index {index}")]
    NotAscending { index: usize },
    #[error("spectrum has {len} values, index {needed} requested")]
    TooShort { needed: usize, len: usize },
    #[error("error bars have length {got}, expected {expected}")]
    ErrorBarLength { got: usize, expected: usize },
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum SpectrumSource {
    Exact,
    FiniteDifference,
}

/// Ascending eigenvalue list `lambda_1 <= lambda_2 <= ...` with provenance.
///
/// Indices are 1-based in every accessor, matching `lambda_k`.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct Spectrum<T> {
    values: Vec<T>,
    source: SpectrumSource,
    #[serde(skip_serializing_if = "Option::is_none")]
    mesh_width: Option<T>,
    #[serde(skip_serializing_if = "Option::is_none")]
    error_bars: Option<Vec<T>>,
    domain_id: String,
}

impl<T: Real> Spectrum<T> {
    pub fn exact(values: Vec<T>, domain_id: impl Into<String>) -> Result<Self, SpectrumError> {
        validate(&values)?;
        Ok(Self {
            values,
            source: SpectrumSource::Exact,
            mesh_width: None,
            error_bars: None,
            domain_id: domain_id.into(),
        })
    }

    pub fn finite_difference(
        values: Vec<T>,
        mesh_width: T,
        domain_id: impl Into<String>,
    ) -> Result<Self, SpectrumError> {
        validate(&values)?;
        Ok(Self {
            values,
            source: SpectrumSource::FiniteDifference,
            mesh_width: Some(mesh_width),
            error_bars: None,
            domain_id: domain_id.into(),
        })
    }

    /// Attaches per-eigenvalue absolute error bars.
    pub fn with_error_bars(mut self, bars: Vec<T>) -> Result<Self, SpectrumError> {
        if bars.len() != self.values.len() {
            return Err(SpectrumError::ErrorBarLength {
                got: bars.len(),
                expected: self.values.len(),
            });
        }
        self.error_bars = Some(bars);
        Ok(self)
    }

    pub fn len(&self) -> usize {
        self.values.len()
    }

    pub fn is_empty(&self) -> bool {
        self.values.is_empty()
    }

    pub fn values(&self) -> &[T] {
        &self.values
    }

    pub fn source(&self) -> SpectrumSource {
        self.source
    }

    pub fn mesh_width(&self) -> Option<T> {
        self.mesh_width
    }

    pub fn error_bars(&self) -> Option<&[T]> {
        self.error_bars.as_deref()
    }

    pub fn domain_id(&self) -> &str {
        &self.domain_id
    }

    /// `lambda_k`, 1-based.
    pub fn get(&self, k: usize) -> Result<T, SpectrumError> {
        self.require(k)?;
        Ok(self.values[k - 1])
    }

    /// Absolute error bar of `lambda_k`; zero when none is attached.
    pub fn error_bar(&self, k: usize) -> T {
        self.error_bars
            .as_ref()
            .and_then(|b| b.get(k.wrapping_sub(1)).copied())
            .unwrap_or_else(T::zero)
    }

    pub fn require(&self, k: usize) -> Result<(), SpectrumError> {
        if k == 0 || k > self.values.len() {
            Err(SpectrumError::TooShort {
                needed: k,
                len: self.values.len(),
            })
        } else {
            Ok(())
        }
    }

    /// Sum `lambda_1 + ... + lambda_k`.
    pub fn partial_sum(&self, k: usize) -> Result<T, SpectrumError> {
        self.require(k)?;
        Ok(self.values[..k].iter().copied().sum())
    }
}

fn validate<T: Real>(values: &[T]) -> Result<(), SpectrumError> {
    if values.is_empty() {
        return Err(SpectrumError::Empty);
    }
    for (i, v) in values.iter().enumerate() {
        if !(v.is_finite() && *v > T::zero()) {
            return Err(SpectrumError::NotPositive { index: i + 1 });
        }
        if i > 0 && *v < values[i - 1] {
            return Err(SpectrumError::NotAscending { index: i + 1 });
        }
    }
    Ok(())
}
