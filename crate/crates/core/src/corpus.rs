//! Seeded random domains.
//!
//! Trial `i` of a run with seed `s` draws from ChaCha8 seeded with `s` on
//! stream `i`, so every trial is reproducible on its own and independent of
//! how trials are scheduled.

use rand::Rng;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

use crate::geometry::{ConvexPolygon, SimplePolygon};
use crate::{Orthotope, Real};

/// Range of box half-widths, sampled log-uniformly.
pub const HALF_WIDTH_RANGE: (f64, f64) = (0.1, 10.0);

/// Largest anisotropy of the disk polygon vertices are drawn from.
pub const MAX_POLYGON_ANISOTROPY: f64 = 8.0;

/// Vertex counts drawn for random polygons.
pub const POLYGON_POINTS: (usize, usize) = (6, 16);

/// Largest ratio between the half-widths of a replay box.
pub const REPLAY_ASPECT: f64 = 3.0;

pub fn trial_rng(seed: u64, trial: u64) -> ChaCha8Rng {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    rng.set_stream(trial);
    rng
}

fn log_uniform<R: Rng>(rng: &mut R, lo: f64, hi: f64) -> f64 {
    (rng.gen_range(lo.ln()..=hi.ln())).exp()
}

/// Box with `n` half-widths log-uniform in [`HALF_WIDTH_RANGE`].
pub fn random_box<T: Real, R: Rng>(rng: &mut R, n: usize) -> Orthotope<T> {
    let (lo, hi) = HALF_WIDTH_RANGE;
    let a = (0..n).map(|_| T::lit(log_uniform(rng, lo, hi))).collect();
    Orthotope::from_half_widths(a).expect("sampled half-widths are positive")
}

/// Trial `trial` of the box corpus: dimension uniform in `dims`, then
/// [`random_box`].
pub fn corpus_box<T: Real>(seed: u64, trial: u64, dims: std::ops::RangeInclusive<usize>) -> Orthotope<T> {
    let mut rng = trial_rng(seed, trial);
    let n = rng.gen_range(dims);
    random_box(&mut rng, n)
}

/// Box for proof replays: smallest half-width log-uniform in
/// [`HALF_WIDTH_RANGE`], the others at most [`REPLAY_ASPECT`] times larger.
pub fn replay_box<T: Real, R: Rng>(rng: &mut R, n: usize) -> Orthotope<T> {
    let (lo, hi) = HALF_WIDTH_RANGE;
    let base = log_uniform(rng, lo, hi);
    let a = (0..n)
        .map(|j| {
            let factor = if j == 0 { 1.0 } else { log_uniform(rng, 1.0, REPLAY_ASPECT) };
            T::lit(base * factor)
        })
        .collect();
    Orthotope::from_half_widths(a).expect("sampled half-widths are positive")
}

/// Convex hull of 6 to 16 points uniform in a disk squeezed by up to a factor
/// 8 along one axis, then rotated by a uniform angle. Vertices lie in the unit
/// disk.
pub fn random_convex_polygon<T: Real, R: Rng>(rng: &mut R) -> ConvexPolygon<T> {
    loop {
        let m = rng.gen_range(POLYGON_POINTS.0..=POLYGON_POINTS.1);
        let squeeze = 1.0 / log_uniform(rng, 1.0, MAX_POLYGON_ANISOTROPY);
        let angle: f64 = rng.gen_range(0.0..std::f64::consts::TAU);
        let (s, c) = angle.sin_cos();
        let points: Vec<[T; 2]> = (0..m)
            .map(|_| {
                let rho = rng.gen::<f64>().sqrt();
                let theta: f64 = rng.gen_range(0.0..std::f64::consts::TAU);
                let (x, y) = (rho * theta.cos(), squeeze * rho * theta.sin());
                [T::lit(c * x - s * y), T::lit(s * x + c * y)]
            })
            .collect();
        if let Ok(p) = ConvexPolygon::from_hull(&points) {
            if p.vertices().len() >= 3 {
                return p;
            }
        }
    }
}

/// Star-shaped polygon with 6 to 16 vertices at sorted angles and radii in
/// `[0.35, 1]`; usually not convex.
pub fn random_star_polygon<T: Real, R: Rng>(rng: &mut R) -> SimplePolygon<T> {
    let m = rng.gen_range(POLYGON_POINTS.0..=POLYGON_POINTS.1);
    let step = std::f64::consts::TAU / m as f64;
    let vertices = (0..m)
        .map(|i| {
            let theta = step * (i as f64 + rng.gen_range(0.1..0.9));
            let rho = rng.gen_range(0.35..=1.0);
            [T::lit(rho * theta.cos()), T::lit(rho * theta.sin())]
        })
        .collect();
    SimplePolygon::new(vertices).expect("sorted angles give a simple polygon")
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::geometry::PlanarRegion;

    #[test]
    fn boxes_are_reproducible_and_in_range() {
        for trial in 0..200 {
            let a: Orthotope<f64> = corpus_box(7, trial, 1..=5);
            let b: Orthotope<f64> = corpus_box(7, trial, 1..=5);
            assert_eq!(a, b);
            assert!((1..=5).contains(&a.dim()));
            assert!(a.half_widths().iter().all(|&x| (0.1..=10.0).contains(&x)));
        }
        let x: Orthotope<f64> = corpus_box(7, 0, 3..=3);
        let y: Orthotope<f64> = corpus_box(8, 0, 3..=3);
        assert_ne!(x, y);
    }

    #[test]
    fn replay_boxes_have_bounded_aspect() {
        let mut rng = trial_rng(1, 0);
        for n in 1..=3 {
            let b: Orthotope<f64> = replay_box(&mut rng, n);
            let a = b.half_widths();
            assert!(a[n - 1] / a[0] <= REPLAY_ASPECT * (1.0 + 1e-12));
        }
    }

    #[test]
    fn polygons_are_valid() {
        for trial in 0..100 {
            let mut rng = trial_rng(3, trial);
            let p: ConvexPolygon<f64> = random_convex_polygon(&mut rng);
            assert!(p.vertices().len() >= 3);
            assert!(p.area() > 0.0);
            assert!(p.vertices().iter().all(|v| v[0].hypot(v[1]) <= 1.0 + 1e-12));
            let s: SimplePolygon<f64> = random_star_polygon(&mut rng);
            assert!(s.area() > 0.0);
        }
    }
}
