use rand::seq::SliceRandom;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use serde::Serialize;

use super::{ReplayError, MAX_REPLAY_DIMENSION};
use crate::{Orthotope, Real};

/// Largest probe grid `maximal_separated_set` will build.
pub const PROBE_BUDGET: usize = 4_000_000;

/// Probe pitch as a fraction of `r`, indexed by dimension minus one.
pub const PROBE_FRACTIONS: [f64; 3] = [0.125, 0.125, 0.25];

/// Maximal `r`-separated point set in a centered orthotope `Π[-a_j, a_j]`.
///
/// Points are drawn from the admissible region, the set of points within
/// `r/4` of the box shrunk by `r/4` per axis. There the half-radius ball
/// around a point, intersected with the box, contains a ball of radius `r/4`.
/// At a box corner it does not: the quarter disk `B(x, r/2) ∩ R` has inradius
/// `r/(2(1+√2)) < r/4`.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct SeparatedSet<T> {
    pub points: Vec<Vec<T>>,
    pub r: T,
    /// Number of leading points placed on the anchor grid.
    pub anchors: usize,
    pub probes: usize,
    /// Every point of the box lies within this distance of a probe.
    pub probe_radius: T,
    /// Largest distance from an admissible probe to the nearest point.
    pub admissible_gap: T,
    /// Largest distance from any probe to the nearest point.
    pub probe_gap: T,
    /// Smallest pairwise distance, `+∞` for a single point.
    pub min_separation: T,
    pub seed: u64,
}

impl<T: Real> SeparatedSet<T> {
    pub fn count(&self) -> usize {
        self.points.len()
    }

    /// Certified covering radius: `probe_gap + probe_radius`.
    pub fn covering_radius(&self) -> T {
        self.probe_gap + self.probe_radius
    }

}

fn dist2<T: Real>(p: &[T], q: &[T]) -> T {
    p.iter().zip(q).map(|(&a, &b)| (a - b) * (a - b)).sum()
}

/// Half-widths of the box shrunk by `r/4`, floored at zero.
pub(crate) fn shrunk<T: Real>(a: &[T], r: T) -> Vec<T> {
    let quarter = r / T::lit(4.0);
    a.iter().map(|&aj| (aj - quarter).max(T::zero())).collect()
}

/// Nearest point of `Π[-s_j, s_j]` to `p`.
pub(crate) fn clamp<T: Real>(p: &[T], s: &[T]) -> Vec<T> {
    p.iter().zip(s).map(|(&x, &sj)| x.max(-sj).min(sj)).collect()
}

/// Points padded with zeros to three coordinates.
type P3<T> = [T; 3];

fn pad<T: Real>(p: &[T]) -> P3<T> {
    let mut q = [T::zero(); 3];
    q[..p.len()].copy_from_slice(p);
    q
}

/// Uniform bucket grid with cell width `r` over the box `Π[-a_j, a_j]`.
struct SpatialHash<T> {
    cell: T,
    dim: usize,
    origin: P3<T>,
    shape: [i64; 3],
    points: Vec<P3<T>>,
    buckets: Vec<Vec<u32>>,
}

impl<T: Real> SpatialHash<T> {
    fn new(cell: T, half_widths: &[T]) -> Self {
        let origin = pad(&half_widths.iter().map(|&a| -a).collect::<Vec<_>>());
        let mut shape = [1i64; 3];
        for (sj, &a) in shape.iter_mut().zip(half_widths) {
            *sj = (T::lit(2.0) * a / cell).to_f64_lossy().floor() as i64 + 1;
        }
        let total = shape.iter().product::<i64>() as usize;
        Self {
            cell,
            dim: half_widths.len(),
            origin,
            shape,
            points: Vec::new(),
            buckets: vec![Vec::new(); total],
        }
    }

    fn key(&self, p: &P3<T>) -> [i64; 3] {
        let mut k = [0i64; 3];
        for j in 0..self.dim {
            let raw = ((p[j] - self.origin[j]) / self.cell).to_f64_lossy().floor() as i64;
            k[j] = raw.clamp(0, self.shape[j] - 1);
        }
        k
    }

    fn bucket(&self, k: [i64; 3]) -> Option<&Vec<u32>> {
        if (0..3).any(|j| k[j] < 0 || k[j] >= self.shape[j]) {
            return None;
        }
        let flat = (k[0] * self.shape[1] + k[1]) * self.shape[2] + k[2];
        Some(&self.buckets[flat as usize])
    }

    fn insert(&mut self, p: P3<T>) {
        let k = self.key(&p);
        let flat = (k[0] * self.shape[1] + k[1]) * self.shape[2] + k[2];
        self.buckets[flat as usize].push(self.points.len() as u32);
        self.points.push(p);
    }

    /// Squared distance to the nearest point in the cells within `reach`,
    /// skipping index `skip`.
    fn nearest2_within(&self, p: &P3<T>, reach: i64, skip: Option<usize>) -> Option<T> {
        let key = self.key(p);
        let span = |j: usize| if j < self.dim { -reach..=reach } else { 0..=0 };
        let mut best: Option<T> = None;
        for d0 in span(0) {
            for d1 in span(1) {
                for d2 in span(2) {
                    let k = [key[0] + d0, key[1] + d1, key[2] + d2];
                    for &i in self.bucket(k).into_iter().flatten() {
                        if Some(i as usize) == skip {
                            continue;
                        }
                        let d = dist2(p, &self.points[i as usize]);
                        if best.is_none_or(|b| d < b) {
                            best = Some(d);
                        }
                    }
                }
            }
        }
        best
    }

    /// True when some stored point lies strictly closer than `cell`.
    fn has_close(&self, p: &P3<T>) -> bool {
        let c2 = self.cell * self.cell;
        self.nearest2_within(p, 1, None).is_some_and(|d| d < c2)
    }

    /// Exact distance to the nearest stored point other than `skip`.
    fn nearest(&self, p: &P3<T>, skip: Option<usize>) -> T {
        let c2 = self.cell * self.cell;
        // a point within one cell width is always found at reach 1
        if let Some(d) = self.nearest2_within(p, 1, skip).filter(|&d| d <= c2) {
            return d.sqrt();
        }
        if let Some(d) = self.nearest2_within(p, 2, skip).filter(|&d| d <= T::lit(4.0) * c2) {
            return d.sqrt();
        }
        self.points
            .iter()
            .enumerate()
            .filter(|&(i, _)| Some(i) != skip)
            .map(|(_, q)| dist2(p, q))
            .fold(T::infinity(), T::min)
            .sqrt()
    }
}

/// Evenly spaced coordinates on `[-s, s]` with spacing at least `r`.
fn anchor_axis<T: Real>(s: T, r: T) -> Vec<T> {
    let gaps = (T::lit(2.0) * s / r).to_f64_lossy().floor() as usize;
    if gaps == 0 {
        return vec![T::zero()];
    }
    let step = T::lit(2.0) * s / T::of(gaps);
    (0..=gaps).map(|i| -s + step * T::of(i)).collect()
}

/// Row-major decoding of a flat index over per-axis coordinate lists.
fn grid_point<T: Real>(axes: &[Vec<T>], mut index: usize) -> P3<T> {
    let mut p = [T::zero(); 3];
    for (j, axis) in axes.iter().enumerate().rev() {
        p[j] = axis[index % axis.len()];
        index /= axis.len();
    }
    p
}

/// Greedy maximal `r`-separated set over anchors and shuffled admissible
/// probes of a grid with pitch `PROBE_FRACTIONS[n - 1] * r`.
///
/// Anchors lie on a grid of the shrunk box with spacing at least `r`, so the
/// corners of the box stay covered although they are not admissible.
pub fn maximal_separated_set<T: Real>(
    b: &Orthotope<T>,
    r: T,
    seed: u64,
) -> Result<SeparatedSet<T>, ReplayError> {
    let n = b.dim();
    if n > MAX_REPLAY_DIMENSION {
        return Err(ReplayError::Dimension(n));
    }
    if !(r.is_finite() && r > T::zero()) {
        return Err(ReplayError::BadRadius(r.to_f64_lossy()));
    }
    let a = b.half_widths();
    let pitch = r * T::lit(PROBE_FRACTIONS[n - 1]);
    let mut cells = Vec::with_capacity(n);
    let mut total: usize = 1;
    for &aj in a {
        let m = (T::lit(2.0) * aj / pitch).ceil().to_f64_lossy();
        if !(m.is_finite() && m <= PROBE_BUDGET as f64) {
            return Err(ReplayError::ProbeBudget { budget: PROBE_BUDGET });
        }
        let m = (m as usize).max(1);
        total = total.saturating_mul(m);
        cells.push(m);
    }
    if total > PROBE_BUDGET {
        return Err(ReplayError::ProbeBudget { budget: PROBE_BUDGET });
    }
    let axes: Vec<Vec<T>> = a
        .iter()
        .zip(&cells)
        .map(|(&aj, &m)| {
            let h = T::lit(2.0) * aj / T::of(m);
            (0..m).map(|i| -aj + h * (T::of(i) + T::lit(0.5))).collect()
        })
        .collect();
    let probe_radius = a
        .iter()
        .zip(&cells)
        .map(|(&aj, &m)| {
            let half = aj / T::of(m);
            half * half
        })
        .sum::<T>()
        .sqrt();

    let s = pad(&shrunk(a, r));
    let quarter2 = (r / T::lit(4.0)).powi(2);
    let admissible = |p: &P3<T>| dist2(p, &clamp(p, &s)) <= quarter2;

    let mut hash = SpatialHash::new(r, a);
    let anchor_axes: Vec<Vec<T>> = s[..n].iter().map(|&sj| anchor_axis(sj, r)).collect();
    let anchor_count: usize = anchor_axes.iter().map(Vec::len).product();
    for i in 0..anchor_count {
        let p = grid_point(&anchor_axes, i);
        if !hash.has_close(&p) {
            hash.insert(p);
        }
    }
    let anchors = hash.points.len();

    let mut order: Vec<u32> = (0..total)
        .filter(|&i| admissible(&grid_point(&axes, i)))
        .map(|i| i as u32)
        .collect();
    order.shuffle(&mut ChaCha8Rng::seed_from_u64(seed));
    for &i in &order {
        let p = grid_point(&axes, i as usize);
        if !hash.has_close(&p) {
            hash.insert(p);
        }
    }

    let mut admissible_gap = T::zero();
    let mut probe_gap = T::zero();
    for i in 0..total {
        let p = grid_point(&axes, i);
        let d = hash.nearest(&p, None);
        probe_gap = probe_gap.max(d);
        if admissible(&p) {
            admissible_gap = admissible_gap.max(d);
        }
    }
    let min_separation = (0..hash.points.len())
        .map(|i| hash.nearest(&hash.points[i], Some(i)))
        .fold(T::infinity(), T::min);

    Ok(SeparatedSet {
        points: hash.points.iter().map(|p| p[..n].to_vec()).collect(),
        r,
        anchors,
        probes: total,
        probe_radius,
        admissible_gap,
        probe_gap,
        min_separation,
        seed,
    })
}
