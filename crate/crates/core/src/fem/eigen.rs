//! Smallest eigenvalues of the discrete Laplacian by Lanczos on `A^{-1}`.
//!
//! Each Lanczos run uses full reorthogonalization against its own basis and
//! against all locked eigenvectors. Converged Ritz pairs are locked and a new
//! run starts from a fresh deterministic vector; the solve ends once a run
//! orthogonal to everything locked finds nothing below the current `λ_k`.

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use super::{DiscreteLaplacian, SolverError};
use crate::{Real, Spectrum};

/// Upper limit on `k`.
pub const MAX_EIGENVALUES: usize = 50;
/// Largest Krylov basis kept in one run.
const MAX_BASIS: usize = 200;

/// Statistics of one conjugate-gradient solve.
#[derive(Debug, Clone, PartialEq)]
pub struct CgReport {
    pub iterations: usize,
    pub relative_residual: f64,
    /// `‖r_i‖ / ‖b‖` after every iteration, when requested.
    pub history: Vec<f64>,
}

fn dot<T: Real>(a: &[T], b: &[T]) -> T {
    a.iter().zip(b).map(|(&x, &y)| x * y).sum()
}

fn axpy<T: Real>(alpha: T, x: &[T], y: &mut [T]) {
    for (yi, &xi) in y.iter_mut().zip(x) {
        *yi = *yi + alpha * xi;
    }
}

/// Default inner-solve tolerance: `1e-12` or the precision floor of `T`.
pub fn cg_tolerance<T: Real>() -> T {
    T::lit(1e-12).max(T::lit(10.0) * T::epsilon())
}

/// Unpreconditioned conjugate gradient for `A x = b`, from `x = 0`.
pub fn conjugate_gradient<T: Real>(
    a: &DiscreteLaplacian<T>,
    b: &[T],
    x: &mut [T],
    tol: T,
    record_history: bool,
) -> Result<CgReport, SolverError> {
    let n = b.len();
    let max_iter = 4 * n + 1000;
    x.iter_mut().for_each(|v| *v = T::zero());
    let b_norm = dot(b, b).sqrt();
    let mut history = Vec::new();
    if b_norm == T::zero() {
        return Ok(CgReport {
            iterations: 0,
            relative_residual: 0.0,
            history,
        });
    }
    let mut r = b.to_vec();
    let mut p = r.clone();
    let mut ap = vec![T::zero(); n];
    let mut rr = dot(&r, &r);
    let target = tol * b_norm;
    for it in 1..=max_iter {
        a.apply(&p, &mut ap);
        let alpha = rr / dot(&p, &ap);
        axpy(alpha, &p, x);
        axpy(-alpha, &ap, &mut r);
        let rr_new = dot(&r, &r);
        let res = rr_new.sqrt();
        if record_history {
            history.push((res / b_norm).to_f64_lossy());
        }
        if res <= target {
            return Ok(CgReport {
                iterations: it,
                relative_residual: (res / b_norm).to_f64_lossy(),
                history,
            });
        }
        let beta = rr_new / rr;
        for (pi, &ri) in p.iter_mut().zip(&r) {
            *pi = ri + beta * *pi;
        }
        rr = rr_new;
    }
    Err(SolverError::CgNoConvergence {
        iterations: max_iter,
        residual: (rr.sqrt() / b_norm).to_f64_lossy(),
    })
}

/// Eigen-decomposition of a symmetric tridiagonal matrix by the implicit QL
/// method. `diag` receives the eigenvalues, column `i` of `z` the
/// eigenvector for `diag[i]`. `off[i]` couples rows `i` and `i + 1`.
pub fn tridiagonal_eigen<T: Real>(diag: &mut [T], off: &mut [T], z: &mut [Vec<T>]) -> Result<(), SolverError> {
    let n = diag.len();
    if n == 0 {
        return Ok(());
    }
    off[n - 1] = T::zero();
    let two = T::lit(2.0);
    for l in 0..n {
        let mut iter = 0;
        loop {
            let mut m = l;
            while m + 1 < n {
                let dd = diag[m].abs() + diag[m + 1].abs();
                if off[m].abs() <= T::epsilon() * dd {
                    break;
                }
                m += 1;
            }
            if m == l {
                break;
            }
            iter += 1;
            if iter > 60 {
                return Err(SolverError::TridiagonalNoConvergence);
            }
            let mut g = (diag[l + 1] - diag[l]) / (two * off[l]);
            let mut r = g.hypot(T::one());
            g = diag[m] - diag[l] + off[l] / (g + if g >= T::zero() { r.abs() } else { -r.abs() });
            let (mut s, mut c, mut p) = (T::one(), T::one(), T::zero());
            let mut deflated = false;
            let mut i = m;
            while i > l {
                i -= 1;
                let f = s * off[i];
                let b = c * off[i];
                r = f.hypot(g);
                off[i + 1] = r;
                if r == T::zero() {
                    diag[i + 1] = diag[i + 1] - p;
                    off[m] = T::zero();
                    deflated = true;
                    break;
                }
                s = f / r;
                c = g / r;
                g = diag[i + 1] - p;
                r = (diag[i] - g) * s + two * c * b;
                p = s * r;
                diag[i + 1] = g + p;
                g = c * r - b;
                for row in z.iter_mut() {
                    let f = row[i + 1];
                    row[i + 1] = s * row[i] + c * f;
                    row[i] = c * row[i] - s * f;
                }
            }
            if deflated {
                continue;
            }
            diag[l] = diag[l] - p;
            off[l] = g;
            off[m] = T::zero();
        }
    }
    Ok(())
}

/// Converged eigenpairs, ascending.
#[derive(Debug, Clone)]
pub struct EigenPairs<T> {
    pub values: Vec<T>,
    pub vectors: Vec<Vec<T>>,
    /// `‖A y - λ y‖ / λ` for each pair.
    pub residuals: Vec<f64>,
    pub runs: usize,
    pub inner_solves: usize,
}

/// The `k` smallest eigenvalues of `a`, each converged to `rel_tol`.
pub fn smallest_eigenvalues<T: Real>(
    a: &DiscreteLaplacian<T>,
    k: usize,
    rel_tol: T,
) -> Result<Spectrum<T>, SolverError> {
    let pairs = smallest_eigenpairs(a, k, rel_tol)?;
    Ok(Spectrum::finite_difference(pairs.values, a.h(), a.domain_id())?)
}

pub fn smallest_eigenpairs<T: Real>(
    a: &DiscreteLaplacian<T>,
    k: usize,
    rel_tol: T,
) -> Result<EigenPairs<T>, SolverError> {
    let n = a.len();
    if k == 0 || k > MAX_EIGENVALUES.min(n) {
        return Err(SolverError::BadCount {
            k,
            max: MAX_EIGENVALUES.min(n),
        });
    }
    if !(rel_tol >= T::lit(1e-10) && rel_tol < T::one()) {
        return Err(SolverError::BadTolerance(rel_tol.to_f64_lossy()));
    }
    let tol = rel_tol.max(T::lit(100.0) * T::epsilon());
    let cg_tol = cg_tolerance::<T>();

    let mut locked: Vec<(T, Vec<T>)> = Vec::new();
    let mut inner_solves = 0usize;
    let mut fruitless = 0usize;
    let mut runs = 0usize;
    let mut last_residuals: Vec<f64> = Vec::new();
    let max_runs = 2 * k + 10;

    while runs < max_runs {
        let verifying = locked.len() >= k;
        let kth_before = if verifying {
            Some(sorted_values(&locked)[k - 1])
        } else {
            None
        };
        let free = n - locked.len();
        if free == 0 {
            break;
        }
        let want = if verifying { 1 } else { k - locked.len() }.min(free);
        let m_max = free.min((3 * want + 20).max(40)).min(MAX_BASIS);

        let run = lanczos_run(a, &locked, runs as u64, want, m_max, tol, cg_tol, &mut inner_solves)?;
        runs += 1;
        last_residuals = run.residuals.clone();
        if run.pairs.is_empty() {
            fruitless += 1;
            if fruitless >= 3 {
                return Err(SolverError::NoConvergence {
                    achieved: last_residuals,
                });
            }
            continue;
        }
        let newest_min = run
            .pairs
            .iter()
            .map(|p| p.0)
            .fold(T::infinity(), T::min);
        locked.extend(run.pairs);
        if let Some(kth) = kth_before {
            if newest_min >= kth * (T::one() - tol) {
                break;
            }
        }
    }
    if locked.len() < k {
        return Err(SolverError::NoConvergence {
            achieved: last_residuals,
        });
    }

    locked.sort_by(|x, y| x.0.partial_cmp(&y.0).unwrap());
    locked.truncate(k);
    let mut work = vec![T::zero(); n];
    let residuals = locked
        .iter()
        .map(|(lambda, y)| {
            a.apply(y, &mut work);
            axpy(-*lambda, y, &mut work);
            (dot(&work, &work).sqrt() / *lambda).to_f64_lossy()
        })
        .collect();
    let (values, vectors) = locked.into_iter().unzip();
    Ok(EigenPairs {
        values,
        vectors,
        residuals,
        runs,
        inner_solves,
    })
}

fn sorted_values<T: Real>(locked: &[(T, Vec<T>)]) -> Vec<T> {
    let mut v: Vec<T> = locked.iter().map(|p| p.0).collect();
    v.sort_by(|x, y| x.partial_cmp(y).unwrap());
    v
}

struct RunOutcome<T> {
    pairs: Vec<(T, Vec<T>)>,
    residuals: Vec<f64>,
}

fn orthogonalize<T: Real>(w: &mut [T], against: impl Iterator<Item = impl AsRef<[T]>> + Clone) {
    // two passes of classical Gram-Schmidt
    for _ in 0..2 {
        for v in against.clone() {
            let v = v.as_ref();
            let c = dot(w, v);
            axpy(-c, v, w);
        }
    }
}

fn start_vector<T: Real>(n: usize, seed: u64) -> Vec<T> {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    (0..n)
        .map(|_| T::lit(1.0 + 0.5 * (rng.gen::<f64>() - 0.5)))
        .collect()
}

#[allow(clippy::too_many_arguments)]
fn lanczos_run<T: Real>(
    a: &DiscreteLaplacian<T>,
    locked: &[(T, Vec<T>)],
    seed: u64,
    want: usize,
    m_max: usize,
    tol: T,
    cg_tol: T,
    inner_solves: &mut usize,
) -> Result<RunOutcome<T>, SolverError> {
    let n = a.len();
    let mut v = start_vector::<T>(n, seed);
    orthogonalize(&mut v, locked.iter().map(|p| p.1.as_slice()));
    let norm = dot(&v, &v).sqrt();
    v.iter_mut().for_each(|x| *x = *x / norm);

    let mut basis: Vec<Vec<T>> = vec![v];
    let mut alphas: Vec<T> = Vec::new();
    let mut betas: Vec<T> = Vec::new();
    let mut w = vec![T::zero(); n];
    let mut ritz: Option<(Vec<T>, Vec<Vec<T>>, T)> = None;

    for j in 0..m_max {
        conjugate_gradient(a, &basis[j], &mut w, cg_tol, false)?;
        *inner_solves += 1;
        let alpha = dot(&w, &basis[j]);
        axpy(-alpha, &basis[j], &mut w);
        if j > 0 {
            axpy(-betas[j - 1], &basis[j - 1], &mut w);
        }
        orthogonalize(
            &mut w,
            basis
                .iter()
                .map(|v| v.as_slice())
                .chain(locked.iter().map(|p| p.1.as_slice())),
        );
        let beta = dot(&w, &w).sqrt();
        alphas.push(alpha);
        betas.push(beta);

        let size = j + 1;
        let check = size >= want && (size <= 40 || size % 4 == 0 || size == m_max);
        let theta_scale = alphas.iter().fold(T::zero(), |m, &x| m.max(x.abs()));
        let exhausted = beta <= T::epsilon() * T::lit(1e3) * theta_scale || size == n - locked.len();
        if check || exhausted || size == m_max {
            let (theta, z) = ritz_pairs(&alphas, &betas)?;
            let converged = (0..want.min(size))
                .all(|i| beta * z[size - 1][i].abs() <= tol * theta[i]);
            ritz = Some((theta, z, beta));
            if converged || exhausted {
                break;
            }
        }
        if size < m_max {
            let inv = T::one() / beta;
            basis.push(w.iter().map(|&x| x * inv).collect());
        }
    }

    let (theta, z, beta) = ritz.expect("final step always computes Ritz pairs");
    let size = theta.len();
    let mut pairs = Vec::new();
    let mut residuals = Vec::new();
    let mut work = vec![T::zero(); n];
    for i in 0..want.min(size) {
        let res = beta * z[size - 1][i].abs();
        residuals.push((res / theta[i]).to_f64_lossy());
        if res > tol * theta[i] {
            continue;
        }
        let mut y = vec![T::zero(); n];
        for (row, v) in basis.iter().enumerate().take(size) {
            axpy(z[row][i], v, &mut y);
        }
        orthogonalize(&mut y, locked.iter().map(|p| p.1.as_slice()));
        let norm = dot(&y, &y).sqrt();
        y.iter_mut().for_each(|x| *x = *x / norm);
        a.apply(&y, &mut work);
        pairs.push((dot(&y, &work), y));
    }
    Ok(RunOutcome { pairs, residuals })
}

/// Ritz values of the Lanczos matrix, descending, with eigenvector rows.
fn ritz_pairs<T: Real>(alphas: &[T], betas: &[T]) -> Result<(Vec<T>, Vec<Vec<T>>), SolverError> {
    let m = alphas.len();
    let mut d = alphas.to_vec();
    let mut e: Vec<T> = betas[..m].to_vec();
    let mut z: Vec<Vec<T>> = (0..m)
        .map(|r| (0..m).map(|c| if r == c { T::one() } else { T::zero() }).collect())
        .collect();
    tridiagonal_eigen(&mut d, &mut e, &mut z)?;
    let mut order: Vec<usize> = (0..m).collect();
    order.sort_by(|&x, &y| d[y].partial_cmp(&d[x]).unwrap());
    let theta = order.iter().map(|&i| d[i]).collect();
    let z = z
        .iter()
        .map(|row| order.iter().map(|&i| row[i]).collect())
        .collect();
    Ok((theta, z))
}
