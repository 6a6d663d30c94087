//! Planar convex geometry: polygons, Chebyshev inradius, minimum-volume
//! enclosing ellipses and the rotated-orthotope sandwich.

mod inradius;
mod mvee;
mod polygon;
mod raster;
mod sandwich;

pub use inradius::{inradius, Inradius};
pub use mvee::{mvee, Ellipsoid};
pub use polygon::{convex_hull, ConvexPolygon, HalfPlane, PlanarRegion, SimplePolygon};
pub use raster::{rasterize, GridMask};
pub use sandwich::{hatcher_sandwich, SandwichResult, MVEE_TOLERANCES};

use crate::Real;

/// A planar point.
pub type Point<T> = [T; 2];

#[derive(Debug, Clone, PartialEq, thiserror::Error)]
pub enum GeometryError {
    #[error("polygon needs at least 3 vertices, got {0}")]
    TooFewVertices(usize),
    #[error("vertex {0} is not finite")]
    NonFinite(usize),
    #[error("polygon is not strictly convex at vertex {0}")]
    NonConvex(usize),
    #[error("polygon has zero area")]
    Degenerate,
    #[error("points do not span the plane")]
    DimensionDeficient,
    #[error("tolerance {0} outside [1e-10, 1e-4]")]
    BadTolerance(f64),
    #[error("MVEE did not converge in {0} iterations")]
    MveeNoConvergence(usize),
    #[error("inradius linear program found no feasible vertex")]
    LpFailure,
    #[error("sandwich certification failed: inner slack {inner}, outer slack {outer}")]
    CertificationFailed { inner: f64, outer: f64 },
    #[error("mesh width {0} yields no interior grid nodes")]
    EmptyMask(f64),
    #[error("polygon file: {0}")]
    Parse(String),
}

#[inline]
pub(crate) fn sub<T: Real>(a: Point<T>, b: Point<T>) -> Point<T> {
    [a[0] - b[0], a[1] - b[1]]
}

#[inline]
pub(crate) fn dot<T: Real>(a: Point<T>, b: Point<T>) -> T {
    a[0] * b[0] + a[1] * b[1]
}

#[inline]
pub(crate) fn cross<T: Real>(a: Point<T>, b: Point<T>) -> T {
    a[0] * b[1] - a[1] * b[0]
}

#[inline]
pub(crate) fn norm<T: Real>(a: Point<T>) -> T {
    a[0].hypot(a[1])
}
