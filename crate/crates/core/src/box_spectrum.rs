//! Exact Dirichlet spectrum of an orthotope `[-a_1, a_1] x ... x [-a_n, a_n]`.
//!
//! Eigenvalues are `(pi^2/4) * sum_i m_i^2 / a_i^2` over multi-indices
//! `m_i >= 1`. The k smallest are produced by a best-first walk over the
//! index lattice; counting uses per-axis range slicing instead.

use std::cmp::Ordering;
use std::collections::{BinaryHeap, HashSet};

use serde::Serialize;

use crate::spectrum::Spectrum;
use crate::Real;

/// Largest index the lattice walk will reach.
pub const ENUMERATION_BUDGET: usize = 10_000_000;

/// Relative tolerance under which lattice sums count as one eigenvalue.
pub const TIE_TOLERANCE: f64 = 1e-12;

#[derive(Debug, Clone, PartialEq, thiserror::Error)]
pub enum SpectrumBuildError {
    #[error("orthotope needs at least one axis")]
    NoAxes,
    #[error("half-width {index} = {value} is not finite and positive")]
    BadHalfWidth { index: usize, value: f64 },
    #[error("eigenvalue index must be at least 1")]
    ZeroIndex,
    #[error("index {requested} exceeds enumeration budget {budget}")]
    BudgetExceeded { requested: usize, budget: usize },
}

/// Axis-aligned box given by half-widths, stored ascending.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct Orthotope<T> {
    half_widths: Vec<T>,
}

impl<T: Real> Orthotope<T> {
    pub fn from_half_widths(mut half_widths: Vec<T>) -> Result<Self, SpectrumBuildError> {
        if half_widths.is_empty() {
            return Err(SpectrumBuildError::NoAxes);
        }
        for (i, a) in half_widths.iter().enumerate() {
            if !(a.is_finite() && *a > T::zero()) {
                return Err(SpectrumBuildError::BadHalfWidth {
                    index: i,
                    value: a.to_f64_lossy(),
                });
            }
        }
        half_widths.sort_by(|a, b| a.partial_cmp(b).unwrap_or(Ordering::Equal));
        Ok(Self { half_widths })
    }

    /// Builds the box from full side lengths `2 a_i`.
    pub fn from_sides(sides: Vec<T>) -> Result<Self, SpectrumBuildError> {
        let two = T::lit(2.0);
        Self::from_half_widths(sides.into_iter().map(|s| s / two).collect())
    }

    pub fn dim(&self) -> usize {
        self.half_widths.len()
    }

    pub fn half_widths(&self) -> &[T] {
        &self.half_widths
    }

    /// Smallest half-width, which is the inradius.
    pub fn inradius(&self) -> T {
        self.half_widths[0]
    }

    pub fn volume(&self) -> T {
        self.half_widths
            .iter()
            .fold(T::one(), |acc, &a| acc * T::lit(2.0) * a)
    }

    pub fn diameter(&self) -> T {
        self.half_widths
            .iter()
            .map(|&a| T::lit(4.0) * a * a)
            .sum::<T>()
            .sqrt()
    }

    /// `t * box`.
    pub fn scaled(&self, t: T) -> Self {
        Self {
            half_widths: self.half_widths.iter().map(|&a| a * t).collect(),
        }
    }

    pub fn domain_id(&self) -> String {
        let parts: Vec<String> = self.half_widths.iter().map(|a| format!("{a}")).collect();
        format!("box:half={}", parts.join(","))
    }

    fn inverse_squares(&self) -> Vec<T> {
        self.half_widths.iter().map(|&a| T::one() / (a * a)).collect()
    }

    /// Ground state `(pi^2/4) sum 1/a_i^2`.
    pub fn ground_state(&self) -> T {
        self.eigenvalue_at(&vec![1; self.dim()])
    }

    /// The eigenvalue attached to a multi-index.
    pub fn eigenvalue_at(&self, index: &[u32]) -> T {
        let inv = self.inverse_squares();
        level(&inv, index)
    }

    /// Iterator over `(eigenvalue, multi-index)` in ascending order.
    pub fn walk(&self) -> LatticeWalk<T> {
        LatticeWalk::new(self)
    }

    /// `lambda_k` with multiplicity, `k >= 1`.
    pub fn kth_eigenvalue(&self, k: usize) -> Result<T, SpectrumBuildError> {
        check_index(k)?;
        Ok(self.walk().nth(k - 1).expect("lattice walk is infinite").0)
    }

    /// The first `count` eigenvalues.
    pub fn spectrum_prefix(&self, count: usize) -> Result<Spectrum<T>, SpectrumBuildError> {
        check_index(count)?;
        let values = self.walk().take(count).map(|(v, _)| v).collect();
        Ok(Spectrum::exact(values, self.domain_id()).expect("lattice sums are positive and ascending"))
    }

    /// The first `count` eigenvalues, extended until the eigenvalue cluster
    /// containing `lambda_count` is complete.
    pub fn spectrum_through_cluster(&self, count: usize) -> Result<Spectrum<T>, SpectrumBuildError> {
        check_index(count)?;
        let tol = T::tol(TIE_TOLERANCE);
        let mut values = Vec::with_capacity(count + 4);
        for (v, _) in self.walk() {
            if values.len() >= count {
                let last: T = values[count - 1];
                if v > last * (T::one() + tol) {
                    break;
                }
            }
            values.push(v);
            if values.len() > ENUMERATION_BUDGET {
                return Err(SpectrumBuildError::BudgetExceeded {
                    requested: values.len(),
                    budget: ENUMERATION_BUDGET,
                });
            }
        }
        Ok(Spectrum::exact(values, self.domain_id()).expect("lattice sums are positive and ascending"))
    }

    /// `#{m : lambda(m) <= lambda}`.
    pub fn count_below(&self, lambda: T) -> usize {
        let inv = self.inverse_squares();
        let quarter_pi_sq = quarter_pi_squared::<T>();
        let budget = lambda / quarter_pi_sq * (T::one() + T::tol(1e-10));
        // tail[i] = minimal contribution of axes i.. (all indices 1)
        let mut tail = vec![T::zero(); inv.len() + 1];
        for i in (0..inv.len()).rev() {
            tail[i] = tail[i + 1] + inv[i];
        }
        count_rec(&inv, &tail, 0, T::zero(), budget, lambda, quarter_pi_sq)
    }

    /// Multiplicity of `lambda_k` under relative tolerance [`TIE_TOLERANCE`].
    pub fn multiplicity_of_kth(&self, k: usize) -> Result<usize, SpectrumBuildError> {
        check_index(k)?;
        let tol = T::tol(TIE_TOLERANCE);
        let target = self.kth_eigenvalue(k)?;
        let mut count = 0;
        for (v, _) in self.walk() {
            if v > target * (T::one() + tol) {
                break;
            }
            if (v - target).abs() <= tol * target {
                count += 1;
            }
        }
        Ok(count)
    }
}

fn check_index(k: usize) -> Result<(), SpectrumBuildError> {
    if k == 0 {
        return Err(SpectrumBuildError::ZeroIndex);
    }
    if k > ENUMERATION_BUDGET {
        return Err(SpectrumBuildError::BudgetExceeded {
            requested: k,
            budget: ENUMERATION_BUDGET,
        });
    }
    Ok(())
}

fn quarter_pi_squared<T: Real>() -> T {
    T::PI() * T::PI() / T::lit(4.0)
}

/// Shared by the walk and the counter so both round identically.
fn level<T: Real>(inv: &[T], index: &[u32]) -> T {
    let mut acc = T::zero();
    for (&q, &m) in inv.iter().zip(index) {
        let mf = T::of(m as usize);
        acc = acc + mf * mf * q;
    }
    acc * quarter_pi_squared()
}

fn count_rec<T: Real>(
    inv: &[T],
    tail: &[T],
    axis: usize,
    partial: T,
    budget: T,
    lambda: T,
    quarter_pi_sq: T,
) -> usize {
    let mut count = 0;
    let mut m = 1usize;
    loop {
        let mf = T::of(m);
        let next = partial + mf * mf * inv[axis];
        if next + tail[axis + 1] > budget {
            break;
        }
        if axis + 1 == inv.len() {
            if next * quarter_pi_sq <= lambda {
                count += 1;
            } else {
                break;
            }
        } else {
            count += count_rec(inv, tail, axis + 1, next, budget, lambda, quarter_pi_sq);
        }
        m += 1;
    }
    count
}

#[derive(Debug, Clone)]
struct Frontier<T> {
    value: T,
    index: Vec<u32>,
}

impl<T: PartialOrd> PartialEq for Frontier<T> {
    fn eq(&self, other: &Self) -> bool {
        self.cmp(other) == Ordering::Equal
    }
}

impl<T: PartialOrd> Eq for Frontier<T> {}

impl<T: PartialOrd> PartialOrd for Frontier<T> {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

impl<T: PartialOrd> Ord for Frontier<T> {
    // reversed so that BinaryHeap pops the smallest value first
    fn cmp(&self, other: &Self) -> Ordering {
        other
            .value
            .partial_cmp(&self.value)
            .unwrap_or(Ordering::Equal)
            .then_with(|| other.index.cmp(&self.index))
    }
}

/// Best-first enumeration of the eigenvalue lattice.
pub struct LatticeWalk<T> {
    inv: Vec<T>,
    heap: BinaryHeap<Frontier<T>>,
    visited: HashSet<Vec<u32>>,
}

impl<T: Real> LatticeWalk<T> {
    fn new(box_: &Orthotope<T>) -> Self {
        let inv = box_.inverse_squares();
        let start = vec![1u32; inv.len()];
        let mut heap = BinaryHeap::new();
        heap.push(Frontier {
            value: level(&inv, &start),
            index: start.clone(),
        });
        let mut visited = HashSet::new();
        visited.insert(start);
        Self { inv, heap, visited }
    }
}

impl<T: Real> Iterator for LatticeWalk<T> {
    type Item = (T, Vec<u32>);

    fn next(&mut self) -> Option<Self::Item> {
        let Frontier { value, index } = self.heap.pop()?;
        for axis in 0..index.len() {
            let mut child = index.clone();
            child[axis] += 1;
            if self.visited.insert(child.clone()) {
                self.heap.push(Frontier {
                    value: level(&self.inv, &child),
                    index: child,
                });
            }
        }
        // everything strictly below the popped index has been popped already
        self.visited.remove(&index);
        Some((value, index))
    }
}
