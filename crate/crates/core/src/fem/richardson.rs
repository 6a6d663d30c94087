use super::{assemble, smallest_eigenvalues, SolverError};
use crate::geometry::PlanarRegion;
use crate::{Real, Spectrum};

/// Inner eigensolver tolerance used by the extrapolation pipeline.
pub const DEFAULT_REL_TOL: f64 = 1e-9;

/// Mesh widths of [`default_mesh`] as fractions of the smallest extent.
pub const DEFAULT_MESH_DIVISIONS: [f64; 3] = [32.0, 64.0, 128.0];

/// Order bracket for the fitted error exponent: first order for staircase
/// boundaries, second order for grid-aligned ones.
const P_RANGE: (f64, f64) = (1.0, 2.0);

/// Extrapolated value from a mesh sequence.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Extrapolation<T> {
    pub value: T,
    /// Exponent `p` of the assumed error `c h^p`.
    pub order: T,
    /// `|value - finest|`.
    pub error_bar: T,
}

/// Fits `λ(h) = λ* + c h^p` to the finest meshes of `(hs, values)`.
///
/// With three or more meshes `p` comes from the three finest and is solved by
/// bisection on `[1, 2]`; with two meshes, or when the three finest values
/// are not monotone in `h`, `p = 2`.
pub fn extrapolate<T: Real>(hs: &[T], values: &[T]) -> Extrapolation<T> {
    let mut pairs: Vec<(T, T)> = hs.iter().copied().zip(values.iter().copied()).collect();
    pairs.sort_by(|a, b| b.0.partial_cmp(&a.0).unwrap());
    let m = pairs.len();
    let (h2, v2) = pairs[m - 2];
    let (h3, v3) = pairs[m - 1];
    let mut order = T::lit(2.0);
    if m >= 3 {
        let (h1, v1) = pairs[m - 3];
        let (d12, d23) = (v1 - v2, v2 - v3);
        if d12 * d23 > T::zero() {
            let target = d12 / d23;
            let ratio = |p: T| (h1.powf(p) - h2.powf(p)) / (h2.powf(p) - h3.powf(p));
            let (mut lo, mut hi) = (T::lit(P_RANGE.0), T::lit(P_RANGE.1));
            // the ratio increases with p for decreasing mesh widths
            if target <= ratio(lo) {
                order = lo;
            } else if target >= ratio(hi) {
                order = hi;
            } else {
                for _ in 0..100 {
                    let mid = (lo + hi) / T::lit(2.0);
                    if ratio(mid) < target {
                        lo = mid;
                    } else {
                        hi = mid;
                    }
                }
                order = (lo + hi) / T::lit(2.0);
            }
        }
    }
    let (a, b) = (h2.powf(order), h3.powf(order));
    let value = v3 + (v3 - v2) * b / (a - b);
    Extrapolation {
        value,
        order,
        error_bar: (value - v3).abs(),
    }
}

/// The smallest bounding-box extent of `region` divided by each of
/// [`DEFAULT_MESH_DIVISIONS`], coarsest first.
pub fn default_mesh<T: Real, R: PlanarRegion<T> + ?Sized>(region: &R) -> Vec<T> {
    let (lo, hi) = region.bounding_box();
    let extent = (hi[0] - lo[0]).min(hi[1] - lo[1]);
    DEFAULT_MESH_DIVISIONS.iter().map(|&d| extent / T::lit(d)).collect()
}

/// Eigenvalue estimates from a mesh sequence with per-eigenvalue error bars.
///
/// Every mesh width must be at most an eighth of the smallest bounding-box
/// extent.
pub fn richardson_estimate<T: Real, R: PlanarRegion<T> + ?Sized>(
    region: &R,
    k: usize,
    h_sequence: &[T],
) -> Result<Spectrum<T>, SolverError> {
    if h_sequence.len() < 2 {
        return Err(SolverError::TooFewMeshes(h_sequence.len()));
    }
    let (lo, hi) = region.bounding_box();
    let limit = (hi[0] - lo[0]).min(hi[1] - lo[1]) / T::lit(8.0);
    let mut hs = h_sequence.to_vec();
    hs.sort_by(|a, b| b.partial_cmp(a).unwrap());
    for &h in &hs {
        if !(h > T::zero() && h <= limit * (T::one() + T::lit(1e-12))) {
            return Err(SolverError::MeshPrecondition {
                h: h.to_f64_lossy(),
                limit: limit.to_f64_lossy(),
            });
        }
    }
    let mut per_mesh = Vec::with_capacity(hs.len());
    for &h in &hs {
        let lap = assemble(region, h)?;
        per_mesh.push(smallest_eigenvalues(&lap, k, T::lit(DEFAULT_REL_TOL))?);
    }
    let mut values = Vec::with_capacity(k);
    let mut bars = Vec::with_capacity(k);
    for i in 0..k {
        let column: Vec<T> = per_mesh.iter().map(|s| s.values()[i]).collect();
        let e = extrapolate(&hs, &column);
        values.push(e.value);
        bars.push(e.error_bar);
    }
    // extrapolation can reorder near-degenerate values
    let mut order: Vec<usize> = (0..k).collect();
    order.sort_by(|&a, &b| values[a].partial_cmp(&values[b]).unwrap());
    let values = order.iter().map(|&i| values[i]).collect();
    let bars = order.iter().map(|&i| bars[i]).collect();
    let finest = *hs.last().expect("at least two meshes");
    Ok(Spectrum::finite_difference(values, finest, region.domain_id())?.with_error_bars(bars)?)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn exact_power_law_is_recovered() {
        let hs = [0.1, 0.05, 0.025];
        let vals: Vec<f64> = hs.iter().map(|h: &f64| 3.0 + 2.0 * h.powf(1.5)).collect();
        let e = extrapolate(&hs, &vals);
        assert!((e.order - 1.5).abs() < 1e-9);
        assert!((e.value - 3.0).abs() < 1e-12);
    }

    #[test]
    fn two_meshes_assume_second_order() {
        let e = extrapolate::<f64>(&[0.1, 0.05], &[3.0 + 0.01, 3.0 + 0.0025]);
        assert_eq!(e.order, 2.0);
        assert!((e.value - 3.0).abs() < 1e-12);
        assert!((e.error_bar - 0.0025).abs() < 1e-12);
    }

    #[test]
    fn non_monotone_falls_back() {
        let e = extrapolate::<f64>(&[0.1, 0.05, 0.025], &[3.1, 2.9, 3.0]);
        assert_eq!(e.order, 2.0);
    }
}
