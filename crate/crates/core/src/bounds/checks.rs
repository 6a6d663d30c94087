use super::{constants, BoundReport, BoundsError, Hypothesis, InequalityId, UniversalConstants};
use crate::{Orthotope, Real, Spectrum};

/// Relative round-off allowance added to every tolerance band, so that
/// equality cases evaluated along different arithmetic paths still pass.
pub const ROUNDOFF_REL: f64 = 1e-12;

/// Dimension at or above which the Cheng–Yang inequality without `C_0` applies.
pub const CHENG_YANG_MIN: usize = 41;

/// Inequality checkers for one dimension `n`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Bounds<T> {
    constants: UniversalConstants<T>,
}

/// `k -> 2 * error_bar(k)`, the per-eigenvalue half-width of a band.
fn bar<T: Real>(spec: &Spectrum<T>, k: usize) -> T {
    T::lit(2.0) * spec.error_bar(k)
}

fn roundoff<T: Real>(lhs: T, rhs: T) -> T {
    T::tol(ROUNDOFF_REL) * lhs.abs().max(rhs.abs())
}

fn check_positive<T: Real>(value: T, what: &'static str) -> Result<(), BoundsError> {
    if value.is_finite() && value > T::zero() {
        Ok(())
    } else {
        Err(BoundsError::NotPositive(what))
    }
}

impl<T: Real> Bounds<T> {
    pub fn new(n: usize) -> Result<Self, BoundsError> {
        Ok(Self {
            constants: constants(n)?,
        })
    }

    pub fn constants(&self) -> &UniversalConstants<T> {
        &self.constants
    }

    pub fn n(&self) -> usize {
        self.constants.n
    }

    fn two_over_n(&self) -> T {
        T::lit(2.0) / T::of(self.n())
    }

    #[allow(clippy::too_many_arguments)]
    fn report(
        &self,
        id: InequalityId,
        spec_id: &str,
        k: Option<usize>,
        l: Option<usize>,
        lhs: T,
        rhs: T,
        band: T,
    ) -> BoundReport<T> {
        let band = band + roundoff(lhs, rhs);
        BoundReport::new(id, self.n(), k, l, lhs, rhs, band, spec_id)
    }

    fn check_kl(spec: &Spectrum<T>, k: usize, l: usize) -> Result<(), BoundsError> {
        if l == 0 || k < l {
            return Err(BoundsError::BadIndices { k, l });
        }
        spec.require(k)?;
        Ok(())
    }

    fn upper(&self, id: InequalityId, c: T, spec: &Spectrum<T>, k: usize, l: usize) -> Result<BoundReport<T>, BoundsError> {
        Self::check_kl(spec, k, l)?;
        let factor = c * (T::of(k) / T::of(l)).powf(self.two_over_n());
        let lhs = spec.get(k)?;
        let rhs = factor * spec.get(l)?;
        let band = bar(spec, k) + factor * bar(spec, l);
        Ok(self.report(id, spec.domain_id(), Some(k), Some(l), lhs, rhs, band))
    }

    /// `λ_k <= c_n (k/l)^{2/n} λ_l`.
    pub fn theorem1(&self, spec: &Spectrum<T>, k: usize, l: usize) -> Result<BoundReport<T>, BoundsError> {
        self.upper(InequalityId::Theorem1, self.constants.c_n, spec, k, l)
    }

    /// `λ_k <= 12 j² (k/l)^{2/n} λ_l`; valid for orthotopes only.
    pub fn theorem1_box(&self, spec: &Spectrum<T>, k: usize, l: usize) -> Result<BoundReport<T>, BoundsError> {
        self.upper(InequalityId::Theorem1Box, self.constants.c_n_box, spec, k, l)
    }

    #[allow(clippy::too_many_arguments)]
    fn lower(
        &self,
        id: InequalityId,
        c: T,
        alpha: T,
        spec: &Spectrum<T>,
        k: usize,
        l: usize,
    ) -> Result<BoundReport<T>, BoundsError> {
        Self::check_kl(spec, k, l)?;
        let (lambda_1, lambda_l) = (spec.get(1)?, spec.get(l)?);
        let hypothesis = Hypothesis::new(lambda_l, alpha * lambda_1, bar(spec, l) + alpha * bar(spec, 1));
        let factor = c * (T::of(k) / T::of(l)).powf(self.two_over_n());
        let lhs = factor * lambda_l;
        let rhs = spec.get(k)?;
        let band = factor * bar(spec, l) + bar(spec, k);
        Ok(self
            .report(id, spec.domain_id(), Some(k), Some(l), lhs, rhs, band)
            .with_hypothesis(hypothesis))
    }

    /// `β_n (k/l)^{2/n} λ_l <= λ_k`, applicable when `λ_l > α_n λ_1`.
    pub fn theorem2(&self, spec: &Spectrum<T>, k: usize, l: usize) -> Result<BoundReport<T>, BoundsError> {
        let c = &self.constants;
        self.lower(InequalityId::Theorem2, c.beta_n, c.alpha_n, spec, k, l)
    }

    /// `(1/(12 j²)) (k/l)^{2/n} λ_l <= λ_k`, applicable when
    /// `λ_l > (16/π²) j² λ_1`; valid for orthotopes only.
    pub fn theorem2_box(&self, spec: &Spectrum<T>, k: usize, l: usize) -> Result<BoundReport<T>, BoundsError> {
        let c = &self.constants;
        self.lower(InequalityId::Theorem2Box, c.d_n_box, c.alpha_box, spec, k, l)
    }

    /// Smallest `l` with `λ_l > α_n λ_1` beyond the error bars, if the
    /// spectrum reaches it.
    pub fn first_admissible_l(&self, spec: &Spectrum<T>) -> Option<usize> {
        self.first_above(spec, self.constants.alpha_n)
    }

    fn first_above(&self, spec: &Spectrum<T>, alpha: T) -> Option<usize> {
        let lambda_1 = spec.get(1).ok()?;
        (1..=spec.len()).find(|&l| {
            let v = spec.values()[l - 1];
            v - alpha * lambda_1 > bar(spec, l) + alpha * bar(spec, 1)
        })
    }

    /// Index range `first..=last` of the eigenvalue cluster containing `λ_k`.
    ///
    /// Two eigenvalues are tied when they differ by at most the relative
    /// round-off allowance or their combined band.
    pub fn cluster(spec: &Spectrum<T>, k: usize) -> Result<(usize, usize), BoundsError> {
        spec.require(k)?;
        let v = spec.values();
        let tied = |a: usize, b: usize| {
            let tol = T::tol(crate::box_spectrum::TIE_TOLERANCE) * v[a - 1].max(v[b - 1]);
            (v[a - 1] - v[b - 1]).abs() <= tol + bar(spec, a) + bar(spec, b)
        };
        let mut first = k;
        while first > 1 && tied(first - 1, k) {
            first -= 1;
        }
        let mut last = k;
        while last < v.len() && tied(last + 1, k) {
            last += 1;
        }
        if last == v.len() {
            return Err(BoundsError::ClusterUnresolved { k, len: v.len() });
        }
        Ok((first, last))
    }

    /// `m_k <= 12^{n/2} n^{3n/2} jⁿ k`, applicable when `λ_k > α_n λ_1`.
    ///
    /// The spectrum must extend past the cluster of `λ_k`.
    pub fn corollary(&self, spec: &Spectrum<T>, k: usize) -> Result<BoundReport<T>, BoundsError> {
        let (first, last) = Self::cluster(spec, k)?;
        let multiplicity = last - first + 1;
        let c = &self.constants;
        let hypothesis = Hypothesis::new(spec.get(k)?, c.alpha_n * spec.get(1)?, bar(spec, k) + c.alpha_n * bar(spec, 1));
        let lhs = T::of(multiplicity);
        let rhs = c.mult_coeff * T::of(k);
        Ok(self
            .report(InequalityId::Corollary, spec.domain_id(), Some(k), None, lhs, rhs, T::zero())
            .with_hypothesis(hypothesis)
            .with_note(format!("cluster {first}..={last}")))
    }

    /// [`Self::corollary`] on an exact box spectrum enumerated past the cluster.
    pub fn corollary_for_box(&self, b: &Orthotope<T>, k: usize) -> Result<BoundReport<T>, BoundsError> {
        let lambda_k = b.kth_eigenvalue(k)?;
        let spec = b.spectrum_prefix(b.count_below(lambda_k).max(k) + 1)?;
        self.corollary(&spec, k)
    }

    /// `(2π)² n/(n+2) (k/(ω_n vol))^{2/n} <= λ_k`.
    pub fn berezin_li_yau(&self, spec: &Spectrum<T>, volume: T, k: usize) -> Result<BoundReport<T>, BoundsError> {
        check_positive(volume, "volume")?;
        spec.require(k.max(1))?;
        let lhs = self.berezin_li_yau_value(volume, k);
        let rhs = spec.get(k)?;
        Ok(self.report(InequalityId::BerezinLiYau, spec.domain_id(), Some(k), None, lhs, rhs, bar(spec, k)))
    }

    fn berezin_li_yau_value(&self, volume: T, k: usize) -> T {
        let nf = T::of(self.n());
        let four_pi2 = T::lit(4.0) * T::PI() * T::PI();
        four_pi2 * nf / (nf + T::lit(2.0)) * (T::of(k) / (self.constants.omega_n * volume)).powf(self.two_over_n())
    }

    /// `π²/(4ρ²) <= λ_1`.
    pub fn hersch_protter(&self, spec: &Spectrum<T>, inradius: T) -> Result<BoundReport<T>, BoundsError> {
        check_positive(inradius, "inradius")?;
        let lhs = T::PI() * T::PI() / (T::lit(4.0) * inradius * inradius);
        let rhs = spec.get(1)?;
        Ok(self.report(InequalityId::HerschProtter, spec.domain_id(), Some(1), None, lhs, rhs, bar(spec, 1)))
    }

    /// `λ_1 <= j²/ρ²`.
    pub fn inradius_upper(&self, spec: &Spectrum<T>, inradius: T) -> Result<BoundReport<T>, BoundsError> {
        check_positive(inradius, "inradius")?;
        let j = self.constants.j;
        let lhs = spec.get(1)?;
        let rhs = j * j / (inradius * inradius);
        Ok(self.report(InequalityId::InradiusUpper, spec.domain_id(), Some(1), None, lhs, rhs, bar(spec, 1)))
    }

    /// `λ_2/λ_1` against the ball ratio.
    pub fn ashbaugh_benguria(&self, spec: &Spectrum<T>) -> Result<BoundReport<T>, BoundsError> {
        let (l1, l2) = (spec.get(1)?, spec.get(2)?);
        let lhs = l2 / l1;
        let band = bar(spec, 2) / l1 + l2 * bar(spec, 1) / (l1 * l1);
        Ok(self.report(
            InequalityId::AshbaughBenguria,
            spec.domain_id(),
            None,
            None,
            lhs,
            self.constants.ball_ratio(),
            band,
        ))
    }

    /// Every classical inequality at `k`: both corrected PPW forms, Yang,
    /// Levitin–Parnovski (sum and each index), Cheng–Yang and `C_0`.
    ///
    /// Requires `λ_{k+n}`.
    pub fn classical_at(&self, spec: &Spectrum<T>, k: usize) -> Result<Vec<BoundReport<T>>, BoundsError> {
        if k == 0 {
            return Err(BoundsError::BadIndices { k, l: 1 });
        }
        let n = self.n();
        spec.require(k + n)?;
        let id = spec.domain_id();
        let nf = T::of(n);
        let kf = T::of(k);
        let four = T::lit(4.0);
        let lam = |i: usize| spec.values()[i - 1];
        let sum = spec.partial_sum(k)?;
        let sum_band: T = (1..=k).map(|i| bar(spec, i)).sum();
        let mut out = Vec::with_capacity(n + 6);

        let gap_coeff = four / (nf * kf);
        let gap = self.report(
            InequalityId::PpwGap,
            id,
            Some(k),
            None,
            lam(k + 1) - lam(k),
            gap_coeff * sum,
            bar(spec, k + 1) + bar(spec, k) + gap_coeff * sum_band,
        );
        let weak = T::one() / (nf * kf) * sum;
        out.push(gap.with_note(format!(
            "coefficient 1/(nk): rhs={:.12e} holds={}",
            weak.to_f64_lossy(),
            lam(k + 1) - lam(k) <= weak
        )));

        let ratio_factor = T::one() + four / nf;
        let ratio = self.report(
            InequalityId::PpwRatio,
            id,
            Some(k),
            None,
            lam(k + 1),
            ratio_factor * lam(k),
            bar(spec, k + 1) + ratio_factor * bar(spec, k),
        );
        let weak = (T::one() + T::one() / nf) * lam(k);
        out.push(ratio.with_note(format!(
            "factor 1+1/n: rhs={:.12e} holds={}",
            weak.to_f64_lossy(),
            lam(k + 1) <= weak
        )));

        out.push(self.report(
            InequalityId::YangSecond,
            id,
            Some(k),
            None,
            lam(k + 1),
            ratio_factor * sum / kf,
            bar(spec, k + 1) + ratio_factor * sum_band / kf,
        ));

        let lp_factor = four + nf;
        let lp_sum: T = (1..=n).map(|i| lam(k + i)).sum();
        let lp_band: T = (1..=n).map(|i| bar(spec, k + i)).sum();
        out.push(self.report(
            InequalityId::LevitinParnovskiSum,
            id,
            Some(k),
            None,
            lp_sum,
            lp_factor * lam(k),
            lp_band + lp_factor * bar(spec, k),
        ));
        for i in 1..=n {
            let factor = lp_factor / T::of(n - i + 1);
            out.push(
                self.report(
                    InequalityId::LevitinParnovski,
                    id,
                    Some(k),
                    None,
                    lam(k + i),
                    factor * lam(k),
                    bar(spec, k + i) + factor * bar(spec, k),
                )
                .with_note(format!("i={i}")),
            );
        }

        let growth = kf.powf(self.two_over_n());
        let cy = self.report(
            InequalityId::ChengYang,
            id,
            Some(k),
            None,
            lam(k + 1),
            growth * lam(1),
            bar(spec, k + 1) + growth * bar(spec, 1),
        );
        let cy = if n >= CHENG_YANG_MIN && k >= CHENG_YANG_MIN {
            cy
        } else {
            cy.not_applicable(format!("requires n >= {CHENG_YANG_MIN} and k >= {CHENG_YANG_MIN}"))
        };
        out.push(cy);

        let c0 = self.constants.cheng_yang_c0(k) * growth;
        out.push(
            self.report(
                InequalityId::ChengYangC0,
                id,
                Some(k),
                None,
                lam(k + 1),
                c0 * lam(1),
                bar(spec, k + 1) + c0 * bar(spec, 1),
            )
            .with_note(format!("C0={:.12e}", self.constants.cheng_yang_c0(k).to_f64_lossy())),
        );
        Ok(out)
    }

    /// Ashbaugh–Benguria once, then [`Self::classical_at`] for each `k`.
    pub fn classical_suite(&self, spec: &Spectrum<T>, ks: &[usize]) -> Result<Vec<BoundReport<T>>, BoundsError> {
        let mut out = vec![self.ashbaugh_benguria(spec)?];
        for &k in ks {
            out.extend(self.classical_at(spec, k)?);
        }
        Ok(out)
    }

    /// The PPW forms with coefficient `1/(nk)` and factor `1 + 1/n`.
    ///
    /// Both are false in general; the unit square violates them at `k = 1`.
    pub fn ppw_weak_forms(&self, spec: &Spectrum<T>, k: usize) -> Result<[BoundReport<T>; 2], BoundsError> {
        if k == 0 {
            return Err(BoundsError::BadIndices { k, l: 1 });
        }
        spec.require(k + 1)?;
        let nf = T::of(self.n());
        let (lk, lk1) = (spec.get(k)?, spec.get(k + 1)?);
        let coeff = T::one() / (nf * T::of(k));
        let sum_band: T = (1..=k).map(|i| bar(spec, i)).sum();
        let gap = self.report(
            InequalityId::PpwGapOneOverNk,
            spec.domain_id(),
            Some(k),
            None,
            lk1 - lk,
            coeff * spec.partial_sum(k)?,
            bar(spec, k + 1) + bar(spec, k) + coeff * sum_band,
        );
        let factor = T::one() + T::one() / nf;
        let ratio = self.report(
            InequalityId::PpwRatioOnePlusOneOverN,
            spec.domain_id(),
            Some(k),
            None,
            lk1,
            factor * lk,
            bar(spec, k + 1) + factor * bar(spec, k),
        );
        Ok([gap, ratio])
    }

    /// `r_k = λ_k / (4π² (k/(ω_n vol))^{2/n})` for every `k` in the spectrum.
    pub fn weyl_diagnostic(&self, spec: &Spectrum<T>, volume: T) -> Result<Vec<T>, BoundsError> {
        check_positive(volume, "volume")?;
        let four_pi2 = T::lit(4.0) * T::PI() * T::PI();
        let scale = self.constants.omega_n * volume;
        Ok(spec
            .values()
            .iter()
            .enumerate()
            .map(|(i, &v)| v / (four_pi2 * (T::of(i + 1) / scale).powf(self.two_over_n())))
            .collect())
    }
}
