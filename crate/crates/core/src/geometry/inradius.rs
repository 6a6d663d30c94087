//! Chebyshev center: `max r` subject to `normal_e . x - r >= offset_e`.
//!
//! The LP has three unknowns, so every vertex of the feasible set is fixed by
//! three active edge constraints. Enumerating all edge triples and keeping the
//! best feasible one solves it exactly for the edge counts used here.

use super::{ConvexPolygon, GeometryError, Point};
use crate::Real;

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Inradius<T> {
    pub radius: T,
    pub center: Point<T>,
}

pub fn inradius<T: Real>(poly: &ConvexPolygon<T>) -> Result<Inradius<T>, GeometryError> {
    let edges = poly.edges();
    let m = edges.len();
    let scale = poly.diameter();
    let feas_tol = T::tol(1e-10) * scale;
    let tie_tol = T::tol(1e-12) * scale;

    let mut best_r = T::neg_infinity();
    let mut centers: Vec<Point<T>> = Vec::new();
    for i in 0..m {
        for j in i + 1..m {
            for k in j + 1..m {
                let rows = [edges[i], edges[j], edges[k]];
                let Some((x, y, r)) = solve_active(&rows) else {
                    continue;
                };
                if !(r > T::zero()) {
                    continue;
                }
                let p = [x, y];
                if edges.iter().any(|e| e.slack(p) < r - feas_tol) {
                    continue;
                }
                if r > best_r + tie_tol {
                    best_r = r;
                    centers.clear();
                    centers.push(p);
                } else if (r - best_r).abs() <= tie_tol {
                    centers.push(p);
                }
            }
        }
    }
    if centers.is_empty() {
        return Err(GeometryError::LpFailure);
    }
    // the optimal face may be a segment; report the mean of its vertices
    let count = T::of(centers.len());
    let cx = centers.iter().map(|c| c[0]).sum::<T>() / count;
    let cy = centers.iter().map(|c| c[1]).sum::<T>() / count;
    Ok(Inradius {
        radius: best_r,
        center: [cx, cy],
    })
}

/// Solves `n_x x + n_y y - r = offset` for three edges by Cramer's rule.
fn solve_active<T: Real>(rows: &[super::HalfPlane<T>; 3]) -> Option<(T, T, T)> {
    let a = |i: usize| [rows[i].normal[0], rows[i].normal[1], -T::one()];
    let det3 = |c0: [T; 3], c1: [T; 3], c2: [T; 3]| {
        c0[0] * (c1[1] * c2[2] - c1[2] * c2[1]) - c1[0] * (c0[1] * c2[2] - c0[2] * c2[1])
            + c2[0] * (c0[1] * c1[2] - c0[2] * c1[1])
    };
    let (r0, r1, r2) = (a(0), a(1), a(2));
    // columns of the coefficient matrix
    let col = |j: usize| [r0[j], r1[j], r2[j]];
    let rhs = [rows[0].offset, rows[1].offset, rows[2].offset];
    let det = det3(col(0), col(1), col(2));
    if det.abs() < T::tol(1e-12) {
        return None;
    }
    let x = det3(rhs, col(1), col(2)) / det;
    let y = det3(col(0), rhs, col(2)) / det;
    let r = det3(col(0), col(1), rhs) / det;
    Some((x, y, r))
}
