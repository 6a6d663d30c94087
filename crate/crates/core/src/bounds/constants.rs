use serde::Serialize;

use super::BoundsError;
use crate::special::{first_bessel_zero, unit_ball_volume, BesselOrder, MAX_DIMENSION};
use crate::Real;

/// Dimension-dependent constants of the universal inequalities.
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct UniversalConstants<T> {
    pub n: usize,
    /// `j_{n/2-1,1}`.
    pub j: T,
    /// `j_{n/2,1}`, the second Dirichlet eigenvalue scale of the unit ball.
    pub j_next: T,
    /// `12 j²`: upper constant for orthotopes.
    pub c_n_box: T,
    /// `12 n³ j²`.
    pub c_n: T,
    /// `(16/π²) j² n³`: hypothesis threshold for the lower bound.
    pub alpha_n: T,
    /// `1 / (12 n³ j²)`.
    pub beta_n: T,
    /// `1 / (12 j²)`: lower constant for orthotopes.
    pub d_n_box: T,
    /// `(16/π²) j²`: hypothesis threshold for orthotopes.
    pub alpha_box: T,
    /// `12^{n/2} n^{3n/2} jⁿ`.
    pub mult_coeff: T,
    /// Volume of the unit ball.
    pub omega_n: T,
}

pub fn constants<T: Real>(n: usize) -> Result<UniversalConstants<T>, BoundsError> {
    if !(1..=MAX_DIMENSION).contains(&n) {
        return Err(BoundsError::BadDimension(n));
    }
    let j = BesselOrder::<T>::for_dimension(n)?.first_zero()?;
    let nf = T::of(n);
    let j_next = first_bessel_zero(nf / T::lit(2.0))?;
    let twelve = T::lit(12.0);
    let j2 = j * j;
    let n3 = nf * nf * nf;
    let sixteen_over_pi2 = T::lit(16.0) / (T::PI() * T::PI());
    let half_n = nf / T::lit(2.0);
    // 12^{n/2} n^{3n/2} j^n in log space, then exponentiated
    let ln_mult = half_n * twelve.ln() + T::lit(1.5) * nf * nf.ln() + nf * j.ln();
    Ok(UniversalConstants {
        n,
        j,
        j_next,
        c_n_box: twelve * j2,
        c_n: twelve * n3 * j2,
        alpha_n: sixteen_over_pi2 * j2 * n3,
        beta_n: T::one() / (twelve * n3 * j2),
        d_n_box: T::one() / (twelve * j2),
        alpha_box: sixteen_over_pi2 * j2,
        mult_coeff: ln_mult.exp(),
        omega_n: unit_ball_volume(n)?,
    })
}

impl<T: Real> UniversalConstants<T> {
    /// `λ_2/λ_1` of the unit ball, `j_{n/2,1}² / j_{n/2-1,1}²`.
    pub fn ball_ratio(&self) -> T {
        let r = self.j_next / self.j;
        r * r
    }

    /// Envelope of the Cheng–Yang constant `C_0(n, k)`, using `a(p) <= 2.64`.
    pub fn cheng_yang_c0(&self, k: usize) -> T {
        if k == 1 {
            self.ball_ratio()
        } else {
            T::one() + T::lit(CHENG_YANG_A_ENVELOPE) / T::of(self.n)
        }
    }

    /// `((2π)² n/(n+2))^{1/2} ω_n^{-2/n}`, which the covering argument needs
    /// to be at least `2/√3`.
    pub fn gamma_chain(&self) -> T {
        let nf = T::of(self.n);
        let four_pi2 = T::lit(4.0) * T::PI() * T::PI();
        (four_pi2 * nf / (nf + T::lit(2.0))).sqrt() * self.omega_n.powf(-T::lit(2.0) / nf)
    }
}

/// Upper bound used for every `a(p)` in `C_0(n, k)`.
pub const CHENG_YANG_A_ENVELOPE: f64 = 2.64;
