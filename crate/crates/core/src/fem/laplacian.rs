use crate::geometry::{rasterize, GridMask, PlanarRegion, Point};
use crate::Real;

use super::SolverError;

/// Largest number of grid nodes `assemble` accepts.
pub const NODE_BUDGET: usize = 200_000;

const NONE: u32 = u32::MAX;

/// Five-point Dirichlet Laplacian on the interior grid nodes of a region.
///
/// Neighbours outside the mask are dropped, which keeps the operator
/// symmetric positive definite: diagonal `4/h²`, off-diagonals `-1/h²`.
#[derive(Debug, Clone)]
pub struct DiscreteLaplacian<T> {
    mask: GridMask<T>,
    neighbors: Vec<[u32; 4]>,
    inv_h2: T,
    domain_id: String,
}

pub fn assemble<T: Real, R: PlanarRegion<T> + ?Sized>(
    region: &R,
    h: T,
) -> Result<DiscreteLaplacian<T>, SolverError> {
    let mask = rasterize(region, h).map_err(|_| SolverError::MeshTooCoarse(h.to_f64_lossy()))?;
    if mask.len() > NODE_BUDGET {
        return Err(SolverError::NodeBudget {
            nodes: mask.len(),
            budget: NODE_BUDGET,
        });
    }
    let neighbors = mask
        .nodes()
        .iter()
        .map(|&(i, j)| {
            [(i - 1, j), (i + 1, j), (i, j - 1), (i, j + 1)]
                .map(|n| mask.index_of(n).map_or(NONE, |r| r as u32))
        })
        .collect();
    Ok(DiscreteLaplacian {
        inv_h2: T::one() / (h * h),
        domain_id: region.domain_id(),
        mask,
        neighbors,
    })
}

impl<T: Real> DiscreteLaplacian<T> {
    pub fn len(&self) -> usize {
        self.neighbors.len()
    }

    pub fn is_empty(&self) -> bool {
        self.neighbors.is_empty()
    }

    pub fn h(&self) -> T {
        self.mask.h()
    }

    pub fn domain_id(&self) -> &str {
        &self.domain_id
    }

    pub fn mask(&self) -> &GridMask<T> {
        &self.mask
    }

    pub fn node_position(&self, row: usize) -> Point<T> {
        self.mask.position(row)
    }

    pub fn diagonal(&self) -> T {
        T::lit(4.0) * self.inv_h2
    }

    /// Entry `(row, col)` of the matrix.
    pub fn entry(&self, row: usize, col: usize) -> T {
        if row == col {
            self.diagonal()
        } else if self.neighbors[row].contains(&(col as u32)) {
            -self.inv_h2
        } else {
            T::zero()
        }
    }

    /// Column indices of the off-diagonal entries in `row`.
    pub fn row_neighbors(&self, row: usize) -> impl Iterator<Item = usize> + '_ {
        self.neighbors[row]
            .iter()
            .filter(|&&c| c != NONE)
            .map(|&c| c as usize)
    }

    /// `y = A x`.
    pub fn apply(&self, x: &[T], y: &mut [T]) {
        let four = T::lit(4.0);
        for ((yi, nb), &xi) in y.iter_mut().zip(&self.neighbors).zip(x) {
            let mut acc = four * xi;
            for &c in nb {
                if c != NONE {
                    acc = acc - x[c as usize];
                }
            }
            *yi = acc * self.inv_h2;
        }
    }

    /// Dense copy, for tests on small grids.
    pub fn to_dense(&self) -> Vec<Vec<T>> {
        let n = self.len();
        (0..n).map(|r| (0..n).map(|c| self.entry(r, c)).collect()).collect()
    }
}
