use serde::{Deserialize, Serialize};

use super::{cross, dot, norm, sub, GeometryError, Point};
use crate::Real;

/// A planar region the finite-difference pipeline can rasterize.
pub trait PlanarRegion<T: Real> {
    /// Lower-left and upper-right corners of the bounding box.
    fn bounding_box(&self) -> (Point<T>, Point<T>);

    /// True if `p` lies inside with clearance greater than `margin`.
    fn contains_strictly(&self, p: Point<T>, margin: T) -> bool;

    fn area(&self) -> T;

    fn domain_id(&self) -> String;
}

/// Edge constraint `normal . p - offset >= 0` with a unit inward normal, so
/// the left-hand side is the signed distance to the edge line.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct HalfPlane<T> {
    pub normal: Point<T>,
    pub offset: T,
}

impl<T: Real> HalfPlane<T> {
    #[inline]
    pub fn slack(&self, p: Point<T>) -> T {
        dot(self.normal, p) - self.offset
    }
}

/// Strictly convex polygon with counter-clockwise vertices.
#[derive(Debug, Clone, PartialEq)]
pub struct ConvexPolygon<T> {
    vertices: Vec<Point<T>>,
    edges: Vec<HalfPlane<T>>,
}

#[derive(Serialize, Deserialize)]
struct PolygonFile {
    vertices: Vec<[f64; 2]>,
}

impl<T: Real> ConvexPolygon<T> {
    /// Validates convexity; clockwise input is reversed.
    pub fn new(mut vertices: Vec<Point<T>>) -> Result<Self, GeometryError> {
        if vertices.len() < 3 {
            return Err(GeometryError::TooFewVertices(vertices.len()));
        }
        for (i, v) in vertices.iter().enumerate() {
            if !(v[0].is_finite() && v[1].is_finite()) {
                return Err(GeometryError::NonFinite(i));
            }
        }
        let signed = signed_area(&vertices);
        let scale = bbox_diagonal(&vertices);
        if !(signed.abs() > T::tol(1e-12) * scale * scale) {
            return Err(GeometryError::Degenerate);
        }
        if signed < T::zero() {
            vertices.reverse();
        }
        let m = vertices.len();
        let min_turn = T::tol(1e-12) * scale * scale;
        let mut turning = T::zero();
        for i in 0..m {
            let prev = vertices[(i + m - 1) % m];
            let next = vertices[(i + 1) % m];
            let a = sub(vertices[i], prev);
            let b = sub(next, vertices[i]);
            let c = cross(a, b);
            if !(c > min_turn) {
                return Err(GeometryError::NonConvex(i));
            }
            turning = turning + c.atan2(dot(a, b));
        }
        // all left turns but winding more than once (pentagram)
        if (turning - T::lit(2.0) * T::PI()).abs() > T::lit(1e-6) {
            return Err(GeometryError::NonConvex(0));
        }
        let edges = (0..m)
            .map(|i| {
                let a = vertices[i];
                let e = sub(vertices[(i + 1) % m], a);
                let len = norm(e);
                let normal = [-e[1] / len, e[0] / len];
                HalfPlane {
                    normal,
                    offset: dot(normal, a),
                }
            })
            .collect();
        Ok(Self { vertices, edges })
    }

    /// Convex hull of a point cloud.
    pub fn from_hull(points: &[Point<T>]) -> Result<Self, GeometryError> {
        Self::new(convex_hull(points))
    }

    /// Regular `m`-gon inscribed in the circle of radius `radius` about the origin.
    pub fn regular(m: usize, radius: T) -> Result<Self, GeometryError> {
        let step = T::lit(2.0) * T::PI() / T::of(m);
        Self::new(
            (0..m)
                .map(|i| {
                    let t = step * T::of(i);
                    [radius * t.cos(), radius * t.sin()]
                })
                .collect(),
        )
    }

    /// Axis-aligned rectangle `[0, w] x [0, h]`.
    pub fn rectangle(width: T, height: T) -> Result<Self, GeometryError> {
        let z = T::zero();
        Self::new(vec![[z, z], [width, z], [width, height], [z, height]])
    }

    pub fn from_json(text: &str) -> Result<Self, GeometryError> {
        let file: PolygonFile =
            serde_json::from_str(text).map_err(|e| GeometryError::Parse(e.to_string()))?;
        Self::new(file.vertices.into_iter().map(|[x, y]| [T::lit(x), T::lit(y)]).collect())
    }

    pub fn to_json(&self) -> String {
        let file = PolygonFile {
            vertices: self
                .vertices
                .iter()
                .map(|v| [v[0].to_f64_lossy(), v[1].to_f64_lossy()])
                .collect(),
        };
        serde_json::to_string(&file).expect("plain data serializes")
    }

    pub fn vertices(&self) -> &[Point<T>] {
        &self.vertices
    }

    pub fn edges(&self) -> &[HalfPlane<T>] {
        &self.edges
    }

    /// Rotation by `angle` about the origin followed by a translation.
    pub fn transformed(&self, angle: T, shift: Point<T>) -> Self {
        let (s, c) = angle.sin_cos();
        let vertices = self
            .vertices
            .iter()
            .map(|v| [c * v[0] - s * v[1] + shift[0], s * v[0] + c * v[1] + shift[1]])
            .collect();
        Self::new(vertices).expect("rigid motion preserves convexity")
    }

    pub fn scaled(&self, t: T) -> Self {
        Self::new(self.vertices.iter().map(|v| [v[0] * t, v[1] * t]).collect())
            .expect("scaling preserves convexity")
    }

    pub fn diameter(&self) -> T {
        let mut d = T::zero();
        for a in &self.vertices {
            for b in &self.vertices {
                d = d.max(norm(sub(*a, *b)));
            }
        }
        d
    }

    /// Smallest signed distance from `p` to the edge lines (negative outside).
    pub fn clearance(&self, p: Point<T>) -> T {
        self.edges
            .iter()
            .map(|e| e.slack(p))
            .fold(T::infinity(), T::min)
    }

    /// Smallest bounding-box extent.
    pub fn min_extent(&self) -> T {
        let (lo, hi) = self.bounding_box();
        (hi[0] - lo[0]).min(hi[1] - lo[1])
    }

    pub fn domain_id(&self) -> String {
        let parts: Vec<String> = self
            .vertices
            .iter()
            .map(|v| format!("{} {}", v[0], v[1]))
            .collect();
        format!("polygon:{}", parts.join(";"))
    }
}

impl<T: Real> PlanarRegion<T> for ConvexPolygon<T> {
    fn bounding_box(&self) -> (Point<T>, Point<T>) {
        bbox(&self.vertices)
    }

    fn contains_strictly(&self, p: Point<T>, margin: T) -> bool {
        self.edges.iter().all(|e| e.slack(p) > margin)
    }

    fn area(&self) -> T {
        signed_area(&self.vertices)
    }

    fn domain_id(&self) -> String {
        ConvexPolygon::domain_id(self)
    }
}

/// Simple (not necessarily convex) polygon, used only for empirical sweeps.
#[derive(Debug, Clone, PartialEq)]
pub struct SimplePolygon<T> {
    vertices: Vec<Point<T>>,
}

impl<T: Real> SimplePolygon<T> {
    pub fn new(mut vertices: Vec<Point<T>>) -> Result<Self, GeometryError> {
        if vertices.len() < 3 {
            return Err(GeometryError::TooFewVertices(vertices.len()));
        }
        let a = signed_area(&vertices);
        if a == T::zero() || !a.is_finite() {
            return Err(GeometryError::Degenerate);
        }
        if a < T::zero() {
            vertices.reverse();
        }
        Ok(Self { vertices })
    }

    pub fn vertices(&self) -> &[Point<T>] {
        &self.vertices
    }

    pub fn domain_id(&self) -> String {
        let parts: Vec<String> = self
            .vertices
            .iter()
            .map(|v| format!("{} {}", v[0], v[1]))
            .collect();
        format!("simple-polygon:{}", parts.join(";"))
    }

    fn segment_distance(p: Point<T>, a: Point<T>, b: Point<T>) -> T {
        let ab = sub(b, a);
        let t = (dot(sub(p, a), ab) / dot(ab, ab)).max(T::zero()).min(T::one());
        norm(sub(p, [a[0] + t * ab[0], a[1] + t * ab[1]]))
    }
}

impl<T: Real> PlanarRegion<T> for SimplePolygon<T> {
    fn bounding_box(&self) -> (Point<T>, Point<T>) {
        bbox(&self.vertices)
    }

    fn contains_strictly(&self, p: Point<T>, margin: T) -> bool {
        let m = self.vertices.len();
        let mut inside = false;
        for i in 0..m {
            let a = self.vertices[i];
            let b = self.vertices[(i + 1) % m];
            if Self::segment_distance(p, a, b) <= margin {
                return false;
            }
            if (a[1] > p[1]) != (b[1] > p[1]) {
                let x = a[0] + (p[1] - a[1]) / (b[1] - a[1]) * (b[0] - a[0]);
                if p[0] < x {
                    inside = !inside;
                }
            }
        }
        inside
    }

    fn area(&self) -> T {
        signed_area(&self.vertices)
    }

    fn domain_id(&self) -> String {
        SimplePolygon::domain_id(self)
    }
}

fn signed_area<T: Real>(v: &[Point<T>]) -> T {
    let m = v.len();
    let twice: T = (0..m).map(|i| cross(v[i], v[(i + 1) % m])).sum();
    twice / T::lit(2.0)
}

fn bbox<T: Real>(v: &[Point<T>]) -> (Point<T>, Point<T>) {
    let mut lo = [T::infinity(); 2];
    let mut hi = [T::neg_infinity(); 2];
    for p in v {
        for d in 0..2 {
            lo[d] = lo[d].min(p[d]);
            hi[d] = hi[d].max(p[d]);
        }
    }
    (lo, hi)
}

fn bbox_diagonal<T: Real>(v: &[Point<T>]) -> T {
    let (lo, hi) = bbox(v);
    norm(sub(hi, lo))
}

/// Andrew's monotone chain; collinear points are dropped. Counter-clockwise.
pub fn convex_hull<T: Real>(points: &[Point<T>]) -> Vec<Point<T>> {
    let mut pts: Vec<Point<T>> = points.to_vec();
    pts.sort_by(|a, b| {
        a[0].partial_cmp(&b[0])
            .unwrap_or(std::cmp::Ordering::Equal)
            .then(a[1].partial_cmp(&b[1]).unwrap_or(std::cmp::Ordering::Equal))
    });
    pts.dedup();
    if pts.len() < 3 {
        return pts;
    }
    let turn = |o: Point<T>, a: Point<T>, b: Point<T>| cross(sub(a, o), sub(b, o));
    let mut hull: Vec<Point<T>> = Vec::with_capacity(2 * pts.len());
    for &p in &pts {
        while hull.len() >= 2 && turn(hull[hull.len() - 2], hull[hull.len() - 1], p) <= T::zero() {
            hull.pop();
        }
        hull.push(p);
    }
    let lower = hull.len() + 1;
    for &p in pts.iter().rev().skip(1) {
        while hull.len() >= lower && turn(hull[hull.len() - 2], hull[hull.len() - 1], p) <= T::zero() {
            hull.pop();
        }
        hull.push(p);
    }
    hull.pop();
    hull
}
