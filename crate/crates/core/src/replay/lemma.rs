use serde::Serialize;

use super::separated::{clamp, shrunk};
use super::{
    maximal_separated_set, Relation, ReplayError, ReplayStatus, ReplayStep, ReplayTranscript, SeparatedSet,
    MAX_REPLAY_DIMENSION,
};
use crate::bounds::constants;
use crate::{Orthotope, Real};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum Lemma {
    /// `λ_k <= 12 j² (k/l)^{2/n} λ_l` on orthotopes.
    UpperBox,
    /// `(1/(12 j²)) (k/l)^{2/n} λ_l <= λ_k` when `λ_l > (16/π²) j² λ_1`.
    LowerBox,
}

/// Steps accumulated until the first failure.
struct Recorder<T> {
    steps: Vec<ReplayStep<T>>,
    failed: Option<&'static str>,
}

impl<T: Real> Recorder<T> {
    fn new() -> Self {
        Self {
            steps: Vec::new(),
            failed: None,
        }
    }

    /// Records a step; false once any step has failed.
    fn check(&mut self, id: &'static str, description: &'static str, lhs: T, rhs: T, relation: Relation) -> bool {
        if self.failed.is_some() {
            return false;
        }
        let step = ReplayStep::new(id, description, lhs, rhs, relation);
        if !step.pass {
            self.failed = Some(id);
        }
        self.steps.push(step);
        self.failed.is_none()
    }

    fn status(&self) -> ReplayStatus {
        match self.failed {
            None => ReplayStatus::Passed,
            Some(step_id) => ReplayStatus::Failed { step_id },
        }
    }
}

fn validate<T: Real>(b: &Orthotope<T>, k: usize, l: usize) -> Result<(), ReplayError> {
    if b.dim() > MAX_REPLAY_DIMENSION {
        return Err(ReplayError::Dimension(b.dim()));
    }
    if l == 0 || k < l {
        return Err(ReplayError::BadIndices { k, l });
    }
    Ok(())
}

/// Shared packing steps: the set is separated and maximal, covers the box,
/// and has at least `target` points.
fn packing_steps<T: Real>(
    rec: &mut Recorder<T>,
    b: &Orthotope<T>,
    set: &SeparatedSet<T>,
    target: usize,
) -> Result<(), ReplayError> {
    let n = b.dim();
    let nf = T::of(n);
    let r = set.r;
    let c = constants::<T>(n).map_err(|_| ReplayError::Dimension(n))?;
    let count = T::of(set.count());
    let rho = set.covering_radius();

    rec.check("s2_separation", "r <= min |x_i - x_j|", r, set.min_separation, Relation::Le);
    rec.check(
        "s2_maximality",
        "every admissible probe lies within r of the set",
        set.admissible_gap,
        r,
        Relation::Le,
    );
    rec.check(
        "s2",
        "vol R <= k' ω_n ρ^n with certified covering radius ρ",
        b.volume(),
        count * c.omega_n * rho.powi(n as i32),
        Relation::Le,
    );
    let two_over_sqrt3 = T::lit(2.0) / T::lit(3.0).sqrt();
    let four_pi2 = T::lit(4.0) * T::PI() * T::PI();
    let coefficient = two_over_sqrt3.powi(n as i32)
        * ((nf + T::lit(2.0)) / (four_pi2 * nf)).powf(nf / T::lit(2.0))
        * c.omega_n
        * c.omega_n;
    rec.check(
        "s3",
        "k <= (2/√3)^n ((2+n)/(4π²n))^{n/2} ω_n² (ρ/r)^n k'",
        T::of(target),
        coefficient * (rho / r).powi(n as i32) * count,
        Relation::Le,
    );
    let chain = c.gamma_chain();
    rec.check(
        "s4",
        "((2π)² n/(2+n))^{1/2} ω_n^{-2/n} >= 2/√3",
        two_over_sqrt3,
        chain,
        Relation::Le,
    );
    rec.check(
        "s4_slack",
        "ρ/r within the Γ-chain slack",
        rho / r,
        chain / two_over_sqrt3,
        Relation::Le,
    );
    rec.check("s4_count", "k <= k'", T::of(target), count, Relation::Le);
    Ok(())
}

/// Disjoint half-radius balls with certified inradius `r/4`.
fn ball_steps<T: Real>(rec: &mut Recorder<T>, b: &Orthotope<T>, set: &SeparatedSet<T>) {
    let r = set.r;
    let quarter = r / T::lit(4.0);
    rec.check(
        "s6_disjoint",
        "balls B(x_i, r/2) are pairwise disjoint",
        r,
        set.min_separation,
        Relation::Le,
    );
    let a = b.half_widths();
    let s = shrunk(a, r);
    let half = r / T::lit(2.0);
    let certified = set
        .points
        .iter()
        .map(|x| {
            let c = clamp(x, &s);
            let offset: T = x.iter().zip(&c).map(|(&p, &q)| (p - q) * (p - q)).sum::<T>().sqrt();
            let in_box = a.iter().zip(&c).map(|(&aj, &cj)| aj - cj.abs()).fold(T::infinity(), T::min);
            (half - offset).min(in_box)
        })
        .fold(T::infinity(), T::min);
    rec.check(
        "s6_inradius",
        "r/4 <= inradius of B(x_i, r/2) ∩ R, via the ball at x_i clamped to the shrunk box",
        quarter,
        certified,
        Relation::Le,
    );
}

/// Replays the upper bound `λ_k <= 12 j² (k/l)^{2/n} λ_l` on `b`.
pub fn replay_lemma31<T: Real>(
    b: &Orthotope<T>,
    k: usize,
    l: usize,
    seed: u64,
) -> Result<ReplayTranscript<T>, ReplayError> {
    validate(b, k, l)?;
    let n = b.dim();
    let nf = T::of(n);
    let c = constants::<T>(n).map_err(|_| ReplayError::Dimension(n))?;
    let (kf, lf) = (T::of(k), T::of(l));
    let lambda_l = b.kth_eigenvalue(l)?;
    let lambda_k = b.kth_eigenvalue(k)?;
    let lambda_1 = b.ground_state();
    let two_over_sqrt3 = T::lit(2.0) / T::lit(3.0).sqrt();
    let r = two_over_sqrt3 * (lf / kf).powf(T::one() / nf) / lambda_l.sqrt();
    let set = maximal_separated_set(b, r, seed)?;
    let k_prime = set.count();

    let mut rec = Recorder::new();
    rec.check(
        "s1",
        "r √λ_l (k/l)^{1/n} = 2/√3",
        r * lambda_l.sqrt() * (kf / lf).powf(T::one() / nf),
        two_over_sqrt3,
        Relation::Eq,
    );
    packing_steps(&mut rec, b, &set, k)?;

    let a1 = b.inradius();
    let hp = T::PI() / (T::lit(2.0) * lambda_1.sqrt());
    rec.check("s5_hp", "π/(2√λ_1) <= a_1", hp, a1, Relation::Le);
    let scaled = T::PI() * (lf / kf).powf(T::one() / nf) / (T::lit(2.0) * lambda_l.sqrt());
    rec.check("s5_monotone", "π (l/k)^{1/n} / (2√λ_l) <= π/(2√λ_1)", scaled, hp, Relation::Le);
    rec.check("s5", "r/2 < π (l/k)^{1/n} / (2√λ_l)", r / T::lit(2.0), scaled, Relation::Lt);

    ball_steps(&mut rec, b, &set);

    if rec.failed.is_none() {
        let lambda_kp = b.kth_eigenvalue(k_prime)?;
        let ball = c.j * c.j / (r / T::lit(4.0)).powi(2);
        let bound = c.c_n_box * (kf / lf).powf(T::lit(2.0) / nf) * lambda_l;
        rec.check("s7_monotone", "λ_k <= λ_{k'}", lambda_k, lambda_kp, Relation::Le);
        rec.check("s7_minmax", "λ_{k'} <= j²/(r/4)²", lambda_kp, ball, Relation::Le);
        rec.check("s7_identity", "j²/(r/4)² = 12 j² (k/l)^{2/n} λ_l", ball, bound, Relation::Eq);
        rec.check("s7", "λ_k <= 12 j² (k/l)^{2/n} λ_l", lambda_k, bound, Relation::Le);
    }

    Ok(ReplayTranscript {
        lemma: Lemma::UpperBox,
        domain_id: b.domain_id(),
        half_widths: b.half_widths().to_vec(),
        k,
        l,
        r,
        k_prime,
        covering_radius: set.covering_radius(),
        seed,
        status: rec.status(),
        steps: rec.steps,
    })
}

/// Replays the lower bound `(1/(12 j²)) (k/l)^{2/n} λ_l <= λ_k` on `b`,
/// after checking `λ_l > (16/π²) j² λ_1`.
pub fn replay_lemma33<T: Real>(
    b: &Orthotope<T>,
    k: usize,
    l: usize,
    seed: u64,
) -> Result<ReplayTranscript<T>, ReplayError> {
    validate(b, k, l)?;
    let n = b.dim();
    let nf = T::of(n);
    let c = constants::<T>(n).map_err(|_| ReplayError::Dimension(n))?;
    let (kf, lf) = (T::of(k), T::of(l));
    let lambda_l = b.kth_eigenvalue(l)?;
    let lambda_k = b.kth_eigenvalue(k)?;
    let lambda_1 = b.ground_state();
    let two_over_sqrt3 = T::lit(2.0) / T::lit(3.0).sqrt();
    let r = two_over_sqrt3 * (kf / lf).powf(T::one() / nf) / lambda_k.sqrt();

    let mut rec = Recorder::new();
    let hypothesis = ReplayStep::new(
        "h",
        "(16/π²) j² λ_1 < λ_l",
        c.alpha_box * lambda_1,
        lambda_l,
        Relation::Lt,
    );
    if !hypothesis.pass {
        return Ok(ReplayTranscript {
            lemma: Lemma::LowerBox,
            domain_id: b.domain_id(),
            half_widths: b.half_widths().to_vec(),
            k,
            l,
            r,
            k_prime: 0,
            covering_radius: T::zero(),
            seed,
            steps: vec![hypothesis],
            status: ReplayStatus::NotApplicable,
        });
    }
    rec.steps.push(hypothesis);

    let set = maximal_separated_set(b, r, seed)?;
    let l_prime = set.count();
    rec.check(
        "s1",
        "r √λ_k (l/k)^{1/n} = 2/√3",
        r * lambda_k.sqrt() * (lf / kf).powf(T::one() / nf),
        two_over_sqrt3,
        Relation::Eq,
    );
    packing_steps(&mut rec, b, &set, l)?;
    rec.check("s5", "r/2 < a_1", r / T::lit(2.0), b.inradius(), Relation::Lt);
    ball_steps(&mut rec, b, &set);

    if rec.failed.is_none() {
        let lambda_lp = b.kth_eigenvalue(l_prime)?;
        let ball = c.j * c.j / (r / T::lit(4.0)).powi(2);
        let bound = c.c_n_box * (lf / kf).powf(T::lit(2.0) / nf) * lambda_k;
        rec.check("s7_monotone", "λ_l <= λ_{l'}", lambda_l, lambda_lp, Relation::Le);
        rec.check("s7_minmax", "λ_{l'} <= j²/(r/4)²", lambda_lp, ball, Relation::Le);
        rec.check("s7_identity", "j²/(r/4)² = 12 j² (l/k)^{2/n} λ_k", ball, bound, Relation::Eq);
        rec.check(
            "s7",
            "(1/(12 j²)) (k/l)^{2/n} λ_l <= λ_k",
            c.d_n_box * (kf / lf).powf(T::lit(2.0) / nf) * lambda_l,
            lambda_k,
            Relation::Le,
        );
    }

    Ok(ReplayTranscript {
        lemma: Lemma::LowerBox,
        domain_id: b.domain_id(),
        half_widths: b.half_widths().to_vec(),
        k,
        l,
        r,
        k_prime: l_prime,
        covering_radius: set.covering_radius(),
        seed,
        status: rec.status(),
        steps: rec.steps,
    })
}
