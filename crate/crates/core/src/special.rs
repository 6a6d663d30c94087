//! Bessel functions of the first kind, their first positive zeros, the Gamma
//! function and the volume of the unit ball.

use crate::Real;

/// Smallest supported order: `n/2 - 1` for `n = 1`.
pub const MIN_ORDER: f64 = -0.5;
/// Largest supported order.
pub const MAX_ORDER: f64 = 60.0;
/// Largest supported argument of [`bessel_j`].
pub const MAX_ARGUMENT: f64 = 100.0;
/// Largest supported dimension for [`unit_ball_volume`].
pub const MAX_DIMENSION: usize = 60;

/// Arguments up to this value use the ascending series; larger ones use
/// Miller's backward recurrence, where the series loses digits to cancellation.
const SERIES_CUTOFF: f64 = 8.0;

#[derive(Debug, Clone, PartialEq, thiserror::Error)]
pub enum SpecialError {
    #[error("{what} = {value} outside supported domain {domain}")]
    Domain {
        what: &'static str,
        value: f64,
        domain: &'static str,
    },
    #[error("no sign change of J_{nu} inside [{lo}, {hi}]")]
    NoSignChange { nu: f64, lo: f64, hi: f64 },
}

/// Order of a Bessel function, `nu >= -1/2`.
#[derive(Debug, Clone, Copy, PartialEq, PartialOrd)]
pub struct BesselOrder<T>(T);

impl<T: Real> BesselOrder<T> {
    pub fn new(nu: T) -> Result<Self, SpecialError> {
        check_order(nu)?;
        Ok(Self(nu))
    }

    /// The order `n/2 - 1` attached to the ball in dimension `n`.
    pub fn for_dimension(n: usize) -> Result<Self, SpecialError> {
        if n == 0 {
            return Err(SpecialError::Domain {
                what: "dimension",
                value: 0.0,
                domain: "[1, 60]",
            });
        }
        Self::new(T::of(n) / T::lit(2.0) - T::one())
    }

    pub fn value(self) -> T {
        self.0
    }

    /// First positive zero `j_{nu,1}`.
    pub fn first_zero(self) -> Result<T, SpecialError> {
        first_bessel_zero(self.0)
    }
}

fn check_order<T: Real>(nu: T) -> Result<(), SpecialError> {
    if !(nu >= T::lit(MIN_ORDER) && nu <= T::lit(MAX_ORDER)) {
        return Err(SpecialError::Domain {
            what: "order",
            value: nu.to_f64_lossy(),
            domain: "[-0.5, 60]",
        });
    }
    Ok(())
}

const LANCZOS_G: f64 = 7.0;
const LANCZOS_COEFFS: [f64; 9] = [
    0.999_999_999_999_809_93,
    676.520_368_121_885_1,
    -1_259.139_216_722_402_8,
    771.323_428_777_653_13,
    -176.615_029_162_140_59,
    12.507_343_278_686_905,
    -0.138_571_095_265_720_12,
    9.984_369_578_019_571_6e-6,
    1.505_632_735_149_311_6e-7,
];

/// Natural log of the Gamma function for `x > 0` (Lanczos, g = 7).
pub fn ln_gamma<T: Real>(x: T) -> T {
    let half = T::lit(0.5);
    if x < half {
        // reflection: Gamma(x) Gamma(1-x) = pi / sin(pi x)
        let pi = T::PI();
        return (pi / (pi * x).sin()).ln() - ln_gamma(T::one() - x);
    }
    let x = x - T::one();
    let mut acc = T::lit(LANCZOS_COEFFS[0]);
    for (i, &c) in LANCZOS_COEFFS.iter().enumerate().skip(1) {
        acc = acc + T::lit(c) / (x + T::of(i));
    }
    let t = x + T::lit(LANCZOS_G) + half;
    half * (T::lit(2.0) * T::PI()).ln() + (x + half) * t.ln() - t + acc.ln()
}

/// Gamma function for `x > 0`.
pub fn gamma<T: Real>(x: T) -> T {
    ln_gamma(x).exp()
}

/// Volume of the unit ball in dimension `n`, `pi^{n/2} / Gamma(n/2 + 1)`.
pub fn unit_ball_volume<T: Real>(n: usize) -> Result<T, SpecialError> {
    if n == 0 || n > MAX_DIMENSION {
        return Err(SpecialError::Domain {
            what: "dimension",
            value: n as f64,
            domain: "[1, 60]",
        });
    }
    let half_n = T::of(n) / T::lit(2.0);
    Ok((half_n * T::PI().ln() - ln_gamma(half_n + T::one())).exp())
}

/// `J_nu(x)` for `nu` in `[-1/2, 60]` and `x` in `[0, 100]`.
pub fn bessel_j<T: Real>(nu: T, x: T) -> Result<T, SpecialError> {
    check_order(nu)?;
    if !(x >= T::zero() && x <= T::lit(MAX_ARGUMENT)) {
        return Err(SpecialError::Domain {
            what: "argument",
            value: x.to_f64_lossy(),
            domain: "[0, 100]",
        });
    }
    Ok(bessel_j_unchecked(nu, x))
}

pub(crate) fn bessel_j_unchecked<T: Real>(nu: T, x: T) -> T {
    if x == T::zero() {
        return if nu == T::zero() {
            T::one()
        } else if nu > T::zero() {
            T::zero()
        } else {
            T::infinity()
        };
    }
    if x <= T::lit(SERIES_CUTOFF) {
        bessel_j_series(nu, x)
    } else {
        bessel_j_miller(nu, x)
    }
}

/// Ascending power series with term recursion.
fn bessel_j_series<T: Real>(nu: T, x: T) -> T {
    let half = x / T::lit(2.0);
    let q = half * half;
    let mut term = (nu * half.ln() - ln_gamma(nu + T::one())).exp();
    let mut sum = term;
    let cutoff = T::lit(1e-18).max(T::epsilon() * T::epsilon());
    for m in 1..=500usize {
        let mf = T::of(m);
        term = -term * q / (mf * (mf + nu));
        sum = sum + term;
        if term.abs() <= cutoff * sum.abs() {
            break;
        }
    }
    sum
}

/// Miller's backward recurrence over the orders `frac + m`, normalized by
/// `(x/2)^frac = sum_k (frac + 2k) Gamma(frac + k) / k! J_{frac + 2k}(x)`.
fn bessel_j_miller<T: Real>(nu: T, x: T) -> T {
    let base = nu.floor();
    let frac = nu - base;
    let order = base.to_i64().unwrap_or(0);
    let xf = x.to_f64_lossy();
    let top_f = (order.max(0) as f64).max(xf) + 30.0 + 8.0 * xf.cbrt();
    let top = top_f.ceil() as usize;

    let big = T::max_value().sqrt().sqrt();
    let mut f = vec![T::zero(); top + 2];
    f[top] = T::one();
    for k in (1..=top).rev() {
        let next = T::lit(2.0) * (frac + T::of(k)) / x * f[k] - f[k + 1];
        f[k - 1] = next;
        if next.abs() > big {
            let s = T::one() / big;
            for v in f[k - 1..=top].iter_mut() {
                *v = *v * s;
            }
        }
    }

    let g1 = gamma(frac + T::one());
    let mut norm = g1 * f[0];
    let mut g = g1;
    let mut k = 1usize;
    while 2 * k <= top {
        let kf = T::of(k);
        norm = norm + (frac + T::lit(2.0) * kf) * g * f[2 * k];
        g = g * (frac + kf) / (kf + T::one());
        k += 1;
    }
    let scale = (x / T::lit(2.0)).powf(frac) / norm;

    let value = if order >= 0 {
        f[order as usize]
    } else {
        // nu = -1/2: one more downward step
        T::lit(2.0) * frac / x * f[0] - f[1]
    };
    value * scale
}

/// The bracket `sqrt((nu+1)(nu+5)) < j_{nu,1} < sqrt(2(nu+1)(nu+3))`.
pub fn first_zero_bracket<T: Real>(nu: T) -> (T, T) {
    let one = T::one();
    let lo = ((nu + one) * (nu + T::lit(5.0))).sqrt();
    let hi = (T::lit(2.0) * (nu + one) * (nu + T::lit(3.0))).sqrt();
    (lo, hi)
}

/// First positive zero `j_{nu,1}` of `J_nu`.
///
/// Bisection inside [`first_zero_bracket`] to width 1e-13, one guarded Newton
/// step, then a sign-change certificate at the returned point.
pub fn first_bessel_zero<T: Real>(nu: T) -> Result<T, SpecialError> {
    check_order(nu)?;
    let (mut lo, mut hi) = first_zero_bracket(nu);
    let no_sign_change = |lo: T, hi: T| SpecialError::NoSignChange {
        nu: nu.to_f64_lossy(),
        lo: lo.to_f64_lossy(),
        hi: hi.to_f64_lossy(),
    };
    if !(bessel_j_unchecked(nu, lo) > T::zero()) {
        return Err(no_sign_change(lo, hi));
    }
    // For larger orders the upper end can pass the second zero, so walk up
    // from `lo` in steps shorter than the zero spacing to the first change.
    let step = T::lit(0.5).min((hi - lo) / T::lit(8.0));
    let top = hi;
    hi = lo;
    loop {
        let next = (hi + step).min(top);
        if bessel_j_unchecked(nu, next) <= T::zero() {
            hi = next;
            break;
        }
        if next >= top {
            return Err(no_sign_change(lo, top));
        }
        lo = next;
        hi = next;
    }

    let width = T::lit(1e-13).max(T::epsilon() * hi * T::lit(4.0));
    while hi - lo > width {
        let mid = (lo + hi) / T::lit(2.0);
        if mid <= lo || mid >= hi {
            break;
        }
        if bessel_j_unchecked(nu, mid) > T::zero() {
            lo = mid;
        } else {
            hi = mid;
        }
    }

    let mut root = (lo + hi) / T::lit(2.0);
    let value = bessel_j_unchecked(nu, root);
    let slope = nu / root * value - bessel_j_unchecked(nu + T::one(), root);
    if slope != T::zero() {
        let polished = root - value / slope;
        if polished >= lo && polished <= hi {
            root = polished;
        }
    }

    let delta = T::lit(1e-9).max(T::epsilon() * root * T::lit(8.0));
    let left = bessel_j_unchecked(nu, root - delta);
    let right = bessel_j_unchecked(nu, root + delta);
    if !(left > T::zero() && right < T::zero()) {
        return Err(no_sign_change(root - delta, root + delta));
    }
    Ok(root)
}

#[cfg(test)]
mod tests {
    use super::*;
    use std::f64::consts::PI;

    fn rel(a: f64, b: f64) -> f64 {
        ((a - b) / b).abs()
    }

    // Independent closed forms for half-integer orders.
    fn j_half(x: f64) -> f64 {
        (2.0 / (PI * x)).sqrt() * x.sin()
    }
    fn j_minus_half(x: f64) -> f64 {
        (2.0 / (PI * x)).sqrt() * x.cos()
    }
    fn j_three_halves(x: f64) -> f64 {
        (2.0 / (PI * x)).sqrt() * (x.sin() / x - x.cos())
    }

    /// Plain bisection on the ascending series, kept apart from the
    /// production path (bracket, Newton polish, Miller recurrence).
    fn series_bisection_zero(nu: f64, mut lo: f64, mut hi: f64) -> f64 {
        let series = |x: f64| {
            let mut term = (x / 2.0).powf(nu) / gamma(nu + 1.0);
            let mut s = term;
            for m in 1..200 {
                let m = m as f64;
                term *= -(x * x / 4.0) / (m * (m + nu));
                s += term;
            }
            s
        };
        for _ in 0..200 {
            let mid = 0.5 * (lo + hi);
            if series(mid) > 0.0 {
                lo = mid
            } else {
                hi = mid
            }
        }
        0.5 * (lo + hi)
    }

    #[test]
    fn j_at_origin() {
        assert_eq!(bessel_j(0.0, 0.0).unwrap(), 1.0);
        assert_eq!(bessel_j(2.5, 0.0).unwrap(), 0.0);
    }

    #[test]
    fn j_half_vanishes_at_pi() {
        assert!(bessel_j(0.5, PI).unwrap().abs() < 1e-15);
    }

    #[test]
    fn j_zero_at_tabulated_zero() {
        assert!(bessel_j(0.0f64, 2.404825557695773).unwrap().abs() < 1e-12);
    }

    #[test]
    fn half_integer_orders_match_closed_forms() {
        for i in 1..=400 {
            let x = i as f64 * 0.25;
            let a = bessel_j(0.5, x).unwrap();
            let b = bessel_j(-0.5, x).unwrap();
            let c = bessel_j(1.5, x).unwrap();
            assert!((a - j_half(x)).abs() < 1e-12, "J_1/2({x})");
            assert!((b - j_minus_half(x)).abs() < 1e-12, "J_-1/2({x})");
            assert!((c - j_three_halves(x)).abs() < 1e-12, "J_3/2({x})");
        }
    }

    #[test]
    fn matches_high_precision_reference_values() {
        // reference values from a 30-digit arbitrary precision evaluation
        let cases: [(f64, f64, f64); 5] = [
            (0.0, 50.0, 0.0558123276692518150047504785294),
            (7.0 / 3.0, 37.5, -0.0171574512511824980079252610737),
            (30.5, 36.0, 0.0612927312884033914340680026196),
            (60.0, 67.5, 0.00190325421272718975859212772689),
            (0.25, 100.0, -0.011070927544649826689673305123),
        ];
        for (nu, x, want) in cases {
            let got = bessel_j(nu, x).unwrap();
            assert!((got - want).abs() < 1e-12, "J_{nu}({x}) = {got}, want {want}");
        }
    }

    #[test]
    fn series_and_recurrence_agree_in_overlap() {
        for &nu in &[-0.5, 0.0, 0.3, 1.0, 4.5, 12.0] {
            for i in 0..=20 {
                let x = 4.0 + 0.2 * i as f64;
                let s = bessel_j_series(nu, x);
                let m = bessel_j_miller(nu, x);
                assert!((s - m).abs() < 1e-13, "nu={nu} x={x}: {s} vs {m}");
            }
        }
    }

    #[test]
    fn domain_errors() {
        assert!(bessel_j(0.0, -1.0).is_err());
        assert!(bessel_j(-0.6, 1.0).is_err());
        assert!(bessel_j(61.0, 1.0).is_err());
        assert!(first_bessel_zero(-1.0).is_err());
    }

    #[test]
    fn first_zeros() {
        assert!(rel(first_bessel_zero(0.5).unwrap(), PI) < 1e-10);
        assert!(rel(first_bessel_zero(-0.5).unwrap(), PI / 2.0) < 1e-10);
        assert!(rel(first_bessel_zero(0.0).unwrap(), 2.404825557695773) < 1e-10);
        assert!(rel(first_bessel_zero(1.0).unwrap(), 3.831705970207512) < 1e-10);
        assert!(rel(first_bessel_zero(2.0).unwrap(), 5.135622301840683) < 1e-10);
    }

    #[test]
    fn first_zeros_match_series_bisection_oracle() {
        for &nu in &[-0.25, 0.0, 0.75, 1.0, 2.0, 3.5] {
            let (lo, hi) = first_zero_bracket(nu);
            let oracle = series_bisection_zero(nu, lo, hi);
            assert!(rel(first_bessel_zero(nu).unwrap(), oracle) < 1e-11, "nu={nu}");
        }
    }

    #[test]
    fn zeros_inside_bracket_and_increasing() {
        let mut prev = 0.0;
        for i in 0..=305 {
            let nu = -0.5 + 0.1 * i as f64;
            let j = first_bessel_zero(nu).unwrap();
            let (lo, hi) = first_zero_bracket(nu);
            assert!(lo < j && j < hi, "nu={nu}: {lo} < {j} < {hi}");
            assert!(j > prev);
            prev = j;
        }
        assert!(first_bessel_zero(60.0).is_ok());
    }

    #[test]
    fn exactly_one_sign_change_before_first_zero() {
        for &nu in &[-0.5, 0.0, 1.0, 5.5, 17.0, 30.0] {
            let j = first_bessel_zero(nu).unwrap();
            let end = j + 0.1;
            let samples = 2000;
            let mut changes = 0;
            let mut prev = bessel_j(nu, end / samples as f64).unwrap();
            for s in 2..=samples {
                let v = bessel_j(nu, end * s as f64 / samples as f64).unwrap();
                if (v > 0.0) != (prev > 0.0) {
                    changes += 1;
                }
                prev = v;
            }
            assert_eq!(changes, 1, "nu={nu}");
        }
    }

    #[test]
    fn gamma_values() {
        assert!(rel(gamma(5.0), 24.0) < 1e-13);
        assert!(rel(gamma(0.5), PI.sqrt()) < 1e-13);
        assert!(rel(gamma(10.5), 1133278.3889487855) < 1e-13);
        assert!(rel(gamma(31.0), 2.652528598121911e32) < 1e-13);
    }

    #[test]
    fn unit_ball_volumes() {
        assert!(rel(unit_ball_volume::<f64>(1).unwrap(), 2.0) < 1e-12);
        assert!(rel(unit_ball_volume::<f64>(2).unwrap(), PI) < 1e-12);
        assert!(rel(unit_ball_volume::<f64>(3).unwrap(), 4.0 * PI / 3.0) < 1e-12);
        for n in 3..=60 {
            let lhs = unit_ball_volume::<f64>(n).unwrap();
            let rhs = unit_ball_volume::<f64>(n - 2).unwrap() * 2.0 * PI / n as f64;
            assert!(rel(lhs, rhs) < 1e-10, "n={n}");
        }
        assert!(unit_ball_volume::<f64>(0).is_err());
        assert!(unit_ball_volume::<f64>(61).is_err());
    }

    #[test]
    fn single_precision_zero() {
        let j = first_bessel_zero(0.0f32).unwrap();
        assert!((j - 2.404_825_6).abs() < 1e-5);
    }
}
