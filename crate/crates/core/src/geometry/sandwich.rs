//! Rotated orthotope `R` with `R / sqrt(n) ⊆ Ω ⊆ n R`, built from the
//! minimum-volume enclosing ellipse `E`.
//!
//! John's theorem gives `c + (E - c) / n ⊆ Ω ⊆ E`. With semi-axes `b_i`, the
//! box of half-widths `b_i / n^{3/2}` sits inside the shrunken ellipse and the
//! box of half-widths `b_i` contains `E`, so `a_i = b_i / n` realizes both
//! factors. Both containments are checked directly on the polygon.

use super::{mvee, sub, ConvexPolygon, Ellipsoid, GeometryError, Point};
use crate::{Orthotope, Real};

/// Khachiyan tolerances tried in order until certification succeeds.
pub const MVEE_TOLERANCES: [f64; 3] = [1e-7, 1e-9, 1e-10];

/// Certification slack relative to the polygon diameter.
const CERT_SLACK: f64 = 1e-9;

const DIM: usize = 2;

#[derive(Debug, Clone, PartialEq)]
pub struct SandwichResult<T> {
    /// Columns are the box axes in world coordinates.
    pub rotation: [[T; 2]; 2],
    pub center: Point<T>,
    pub box_: Orthotope<T>,
    pub inner_factor: T,
    pub outer_factor: T,
    /// Smallest edge clearance of the inner-box corners.
    pub inner_slack: T,
    /// Smallest gap between polygon vertices and the outer-box faces.
    pub outer_slack: T,
    /// The ellipse the box was derived from, scaled to pass through the
    /// farthest vertex.
    pub ellipse: Ellipsoid<T>,
    pub mvee_tolerance: f64,
}

impl<T: Real> SandwichResult<T> {
    pub fn half_widths(&self) -> [T; 2] {
        let a = self.box_.half_widths();
        [a[0], a[1]]
    }

    pub fn inner_box(&self) -> Orthotope<T> {
        self.box_.scaled(self.inner_factor)
    }

    pub fn outer_box(&self) -> Orthotope<T> {
        self.box_.scaled(self.outer_factor)
    }

    /// Coordinates of `p` in the box frame.
    pub fn to_local(&self, p: Point<T>) -> Point<T> {
        let d = sub(p, self.center);
        let r = &self.rotation;
        [r[0][0] * d[0] + r[1][0] * d[1], r[0][1] * d[0] + r[1][1] * d[1]]
    }

    pub fn to_world(&self, q: Point<T>) -> Point<T> {
        let r = &self.rotation;
        [
            self.center[0] + r[0][0] * q[0] + r[0][1] * q[1],
            self.center[1] + r[1][0] * q[0] + r[1][1] * q[1],
        ]
    }

    pub fn inner_corners(&self) -> [Point<T>; 4] {
        let [a0, a1] = self.half_widths();
        let (x, y) = (a0 * self.inner_factor, a1 * self.inner_factor);
        [[-x, -y], [x, -y], [x, y], [-x, y]].map(|q| self.to_world(q))
    }

    /// Largest deviation of `rotationᵀ rotation` from the identity.
    pub fn orthogonality_defect(&self) -> T {
        let r = &self.rotation;
        let c00 = r[0][0] * r[0][0] + r[1][0] * r[1][0] - T::one();
        let c11 = r[0][1] * r[0][1] + r[1][1] * r[1][1] - T::one();
        let c01 = r[0][0] * r[0][1] + r[1][0] * r[1][1];
        c00.abs().max(c11.abs()).max(c01.abs())
    }
}

pub fn hatcher_sandwich<T: Real>(poly: &ConvexPolygon<T>) -> Result<SandwichResult<T>, GeometryError> {
    let slack = T::lit(CERT_SLACK) * poly.diameter();
    let mut last = (f64::NAN, f64::NAN);
    for tol in MVEE_TOLERANCES {
        let result = attempt(poly, tol)?;
        if result.inner_slack >= -slack && result.outer_slack >= -slack {
            return Ok(result);
        }
        last = (result.inner_slack.to_f64_lossy(), result.outer_slack.to_f64_lossy());
    }
    Err(GeometryError::CertificationFailed {
        inner: last.0,
        outer: last.1,
    })
}

fn attempt<T: Real>(poly: &ConvexPolygon<T>, tol: f64) -> Result<SandwichResult<T>, GeometryError> {
    let e = mvee(poly.vertices(), T::lit(tol))?;
    let level = poly
        .vertices()
        .iter()
        .map(|&v| e.quad_form(v))
        .fold(T::zero(), T::max);
    let e = e.with_level(level);
    let ([b0, b1], [u0, u1]) = e.axes();
    let n = T::of(DIM);
    let box_ = Orthotope::from_half_widths(vec![b0 / n, b1 / n])
        .map_err(|_| GeometryError::Degenerate)?;
    let mut result = SandwichResult {
        rotation: [[u0[0], u1[0]], [u0[1], u1[1]]],
        center: e.center,
        box_,
        inner_factor: T::one() / n.sqrt(),
        outer_factor: n,
        inner_slack: T::zero(),
        outer_slack: T::zero(),
        ellipse: e,
        mvee_tolerance: tol,
    };
    result.inner_slack = result
        .inner_corners()
        .iter()
        .map(|&c| poly.clearance(c))
        .fold(T::infinity(), T::min);
    let [a0, a1] = result.half_widths();
    result.outer_slack = poly
        .vertices()
        .iter()
        .map(|&v| {
            let q = result.to_local(v);
            (a0 * n - q[0].abs()).min(a1 * n - q[1].abs())
        })
        .fold(T::infinity(), T::min);
    Ok(result)
}
