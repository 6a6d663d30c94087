use std::collections::HashMap;

use super::{GeometryError, PlanarRegion, Point};
use crate::Real;

/// Minimum edge clearance for a grid node to count as interior.
const INTERIOR_MARGIN: f64 = 1e-12;

/// Interior nodes `(i h, j h)` of a region, ordered row by row.
#[derive(Debug, Clone)]
pub struct GridMask<T> {
    h: T,
    nodes: Vec<(i64, i64)>,
    lookup: HashMap<(i64, i64), usize>,
}

impl<T: Real> GridMask<T> {
    pub fn h(&self) -> T {
        self.h
    }

    pub fn len(&self) -> usize {
        self.nodes.len()
    }

    pub fn is_empty(&self) -> bool {
        self.nodes.is_empty()
    }

    pub fn nodes(&self) -> &[(i64, i64)] {
        &self.nodes
    }

    pub fn index_of(&self, node: (i64, i64)) -> Option<usize> {
        self.lookup.get(&node).copied()
    }

    pub fn position(&self, row: usize) -> Point<T> {
        let (i, j) = self.nodes[row];
        [T::lit(i as f64) * self.h, T::lit(j as f64) * self.h]
    }
}

pub fn rasterize<T: Real, R: PlanarRegion<T> + ?Sized>(
    region: &R,
    h: T,
) -> Result<GridMask<T>, GeometryError> {
    if !(h > T::zero() && h.is_finite()) {
        return Err(GeometryError::EmptyMask(h.to_f64_lossy()));
    }
    let (lo, hi) = region.bounding_box();
    let index_range = |a: T, b: T| {
        let first = (a / h).floor().to_i64().unwrap_or(i64::MIN);
        let last = (b / h).ceil().to_i64().unwrap_or(i64::MAX);
        first..=last
    };
    let margin = T::lit(INTERIOR_MARGIN);
    let mut nodes = Vec::new();
    for j in index_range(lo[1], hi[1]) {
        for i in index_range(lo[0], hi[0]) {
            let p = [T::lit(i as f64) * h, T::lit(j as f64) * h];
            if region.contains_strictly(p, margin) {
                nodes.push((i, j));
            }
        }
    }
    if nodes.is_empty() {
        return Err(GeometryError::EmptyMask(h.to_f64_lossy()));
    }
    let lookup = nodes.iter().enumerate().map(|(r, &n)| (n, r)).collect();
    Ok(GridMask { h, nodes, lookup })
}
