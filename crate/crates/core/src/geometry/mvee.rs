//! Minimum-volume enclosing ellipse by Khachiyan's barycentric ascent, with
//! Wolfe–Atwood away steps for linear convergence.

use super::{sub, GeometryError, Point};
use crate::Real;

const MAX_ITERATIONS: usize = 200_000;

/// `{x : (x - center)^T shape (x - center) <= 1}`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Ellipsoid<T> {
    pub center: Point<T>,
    pub shape: [[T; 2]; 2],
}

impl<T: Real> Ellipsoid<T> {
    pub fn quad_form(&self, p: Point<T>) -> T {
        let d = sub(p, self.center);
        let s = &self.shape;
        d[0] * (s[0][0] * d[0] + s[0][1] * d[1]) + d[1] * (s[1][0] * d[0] + s[1][1] * d[1])
    }

    /// Membership in the ellipse whose quadratic form bound is `1 + slack`.
    pub fn contains(&self, p: Point<T>, slack: T) -> bool {
        self.quad_form(p) <= T::one() + slack
    }

    /// The ellipse `{q <= level}`, returned with unit level.
    pub fn with_level(&self, level: T) -> Self {
        let s = self.shape;
        Self {
            center: self.center,
            shape: [[s[0][0] / level, s[0][1] / level], [s[1][0] / level, s[1][1] / level]],
        }
    }

    /// Homothety about the center with linear factor `factor`.
    pub fn scaled(&self, factor: T) -> Self {
        self.with_level(factor * factor)
    }

    /// Semi-axes ascending and their unit directions.
    pub fn axes(&self) -> ([T; 2], [Point<T>; 2]) {
        let [[a, b], [_, c]] = self.shape;
        let two = T::lit(2.0);
        let mean = (a + c) / two;
        let rad = ((a - c) / two).hypot(b);
        let (mu_small, mu_large) = (mean - rad, mean + rad);
        let theta = (two * b).atan2(a - c) / two;
        let (s, co) = theta.sin_cos();
        // direction of the large shape eigenvalue carries the short semi-axis
        let short_dir = [co, s];
        let long_dir = [-s, co];
        (
            [T::one() / mu_large.sqrt(), T::one() / mu_small.sqrt()],
            [short_dir, long_dir],
        )
    }

    pub fn boundary_point(&self, angle: T) -> Point<T> {
        let ([b0, b1], [u0, u1]) = self.axes();
        let (s, c) = angle.sin_cos();
        [
            self.center[0] + b0 * c * u0[0] + b1 * s * u1[0],
            self.center[1] + b0 * c * u0[1] + b1 * s * u1[1],
        ]
    }

    pub fn area(&self) -> T {
        let [b0, b1] = self.axes().0;
        T::PI() * b0 * b1
    }
}

fn invert3<T: Real>(m: &[[T; 3]; 3]) -> Option<[[T; 3]; 3]> {
    let c = |r: usize, col: usize| {
        let (r1, r2) = ((r + 1) % 3, (r + 2) % 3);
        let (c1, c2) = ((col + 1) % 3, (col + 2) % 3);
        m[r1][c1] * m[r2][c2] - m[r1][c2] * m[r2][c1]
    };
    let det = m[0][0] * c(0, 0) + m[0][1] * c(0, 1) + m[0][2] * c(0, 2);
    if det == T::zero() || !det.is_finite() {
        return None;
    }
    let mut inv = [[T::zero(); 3]; 3];
    for (i, row) in inv.iter_mut().enumerate() {
        for (j, v) in row.iter_mut().enumerate() {
            *v = c(j, i) / det;
        }
    }
    Some(inv)
}

/// Minimum-volume enclosing ellipse of `points`.
///
/// Stops once every point satisfies `quad_form <= 1 + tolerance`.
pub fn mvee<T: Real>(points: &[Point<T>], tolerance: T) -> Result<Ellipsoid<T>, GeometryError> {
    if !(tolerance >= T::lit(1e-10) && tolerance <= T::lit(1e-4)) {
        return Err(GeometryError::BadTolerance(tolerance.to_f64_lossy()));
    }
    let m = points.len();
    if m < 3 {
        return Err(GeometryError::DimensionDeficient);
    }
    check_spans_plane(points)?;

    let d = T::lit(2.0);
    let lifted = T::lit(3.0);
    let mut u = vec![T::one() / T::of(m); m];
    let mut big_m = vec![T::zero(); m];

    for _ in 0..MAX_ITERATIONS {
        let mut x = [[T::zero(); 3]; 3];
        for (p, &w) in points.iter().zip(&u) {
            let q = [p[0], p[1], T::one()];
            for r in 0..3 {
                for c in 0..3 {
                    x[r][c] = x[r][c] + w * q[r] * q[c];
                }
            }
        }
        let inv = invert3(&x).ok_or(GeometryError::DimensionDeficient)?;
        for (p, mi) in points.iter().zip(big_m.iter_mut()) {
            let q = [p[0], p[1], T::one()];
            let mut acc = T::zero();
            for r in 0..3 {
                for c in 0..3 {
                    acc = acc + q[r] * inv[r][c] * q[c];
                }
            }
            *mi = acc;
        }
        let (j, &m_max) = big_m
            .iter()
            .enumerate()
            .max_by(|a, b| a.1.partial_cmp(b.1).unwrap())
            .expect("non-empty");
        if (m_max - T::one()) / d <= T::one() + tolerance {
            return Ok(ellipse_from_weights(points, &u));
        }
        let (kk, &m_min) = big_m
            .iter()
            .enumerate()
            .filter(|(i, _)| u[*i] > T::zero())
            .min_by(|a, b| a.1.partial_cmp(b.1).unwrap())
            .expect("support is non-empty");
        let eps_plus = m_max / lifted - T::one();
        let eps_minus = T::one() - m_min / lifted;
        if eps_plus > eps_minus {
            let beta = (m_max - lifted) / (lifted * (m_max - T::one()));
            for w in u.iter_mut() {
                *w = *w * (T::one() - beta);
            }
            u[j] = u[j] + beta;
        } else {
            let beta = ((lifted - m_min) / (lifted * (m_min - T::one())))
                .min(u[kk] / (T::one() - u[kk]));
            for w in u.iter_mut() {
                *w = *w * (T::one() + beta);
            }
            u[kk] = (u[kk] - beta).max(T::zero());
        }
    }
    Err(GeometryError::MveeNoConvergence(MAX_ITERATIONS))
}

fn ellipse_from_weights<T: Real>(points: &[Point<T>], u: &[T]) -> Ellipsoid<T> {
    let mut c = [T::zero(); 2];
    for (p, &w) in points.iter().zip(u) {
        c[0] = c[0] + w * p[0];
        c[1] = c[1] + w * p[1];
    }
    let mut s = [[T::zero(); 2]; 2];
    for (p, &w) in points.iter().zip(u) {
        let dp = sub(*p, c);
        for r in 0..2 {
            for col in 0..2 {
                s[r][col] = s[r][col] + w * dp[r] * dp[col];
            }
        }
    }
    let det = s[0][0] * s[1][1] - s[0][1] * s[1][0];
    let two = T::lit(2.0);
    // shape = cov^{-1} / d
    let shape = [
        [s[1][1] / det / two, -s[0][1] / det / two],
        [-s[1][0] / det / two, s[0][0] / det / two],
    ];
    Ellipsoid { center: c, shape }
}

fn check_spans_plane<T: Real>(points: &[Point<T>]) -> Result<(), GeometryError> {
    let m = T::of(points.len());
    let mut c = [T::zero(); 2];
    for p in points {
        c[0] = c[0] + p[0] / m;
        c[1] = c[1] + p[1] / m;
    }
    let (mut sxx, mut sxy, mut syy) = (T::zero(), T::zero(), T::zero());
    for p in points {
        let d = sub(*p, c);
        sxx = sxx + d[0] * d[0];
        sxy = sxy + d[0] * d[1];
        syy = syy + d[1] * d[1];
    }
    let det = sxx * syy - sxy * sxy;
    let scale = (sxx + syy) * (sxx + syy);
    if !(det > T::tol(1e-12) * scale) {
        return Err(GeometryError::DimensionDeficient);
    }
    Ok(())
}
