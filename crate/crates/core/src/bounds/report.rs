use serde::Serialize;

use crate::Real;

/// Identifier of a checked inequality.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum InequalityId {
    /// `λ_k <= c_n (k/l)^{2/n} λ_l` for convex domains.
    Theorem1,
    /// Same with `12 j²`, valid for orthotopes.
    Theorem1Box,
    /// `β_n (k/l)^{2/n} λ_l <= λ_k` when `λ_l > α_n λ_1`.
    Theorem2,
    /// Same with `1/(12 j²)` when `λ_l > (16/π²) j² λ_1`, for orthotopes.
    Theorem2Box,
    /// `m_k <= 12^{n/2} n^{3n/2} jⁿ k` when `λ_k > α_n λ_1`.
    Corollary,
    BerezinLiYau,
    HerschProtter,
    /// `λ_1 <= j² / ρ²`.
    InradiusUpper,
    /// `λ_{k+1} - λ_k <= (4/(nk)) Σ_{i<=k} λ_i`.
    PpwGap,
    /// `λ_{k+1} <= (1 + 4/n) λ_k`.
    PpwRatio,
    /// Gap form with coefficient `1/(nk)`; false in general.
    PpwGapOneOverNk,
    /// Ratio form with factor `1 + 1/n`; false in general.
    PpwRatioOnePlusOneOverN,
    /// `λ_{k+1} <= (1 + 4/n) (1/k) Σ_{i<=k} λ_i`.
    YangSecond,
    /// `Σ_{i=1}^n λ_{k+i} <= (4 + n) λ_k`.
    LevitinParnovskiSum,
    /// `λ_{k+i} <= (4 + n)/(n - i + 1) λ_k`; `i` is recorded in the note.
    LevitinParnovski,
    /// `λ_2/λ_1 <= j_{n/2,1}² / j_{n/2-1,1}²`.
    AshbaughBenguria,
    /// `λ_{k+1} <= k^{2/n} λ_1` for `n, k >= 41`.
    ChengYang,
    /// `λ_{k+1} <= C_0(n, k) k^{2/n} λ_1`.
    ChengYangC0,
}

impl InequalityId {
    pub fn as_str(self) -> &'static str {
        match self {
            Self::Theorem1 => "theorem1",
            Self::Theorem1Box => "theorem1_box",
            Self::Theorem2 => "theorem2",
            Self::Theorem2Box => "theorem2_box",
            Self::Corollary => "corollary",
            Self::BerezinLiYau => "berezin_li_yau",
            Self::HerschProtter => "hersch_protter",
            Self::InradiusUpper => "inradius_upper",
            Self::PpwGap => "ppw_gap",
            Self::PpwRatio => "ppw_ratio",
            Self::PpwGapOneOverNk => "ppw_gap_one_over_nk",
            Self::PpwRatioOnePlusOneOverN => "ppw_ratio_one_plus_one_over_n",
            Self::YangSecond => "yang_second",
            Self::LevitinParnovskiSum => "levitin_parnovski_sum",
            Self::LevitinParnovski => "levitin_parnovski",
            Self::AshbaughBenguria => "ashbaugh_benguria",
            Self::ChengYang => "cheng_yang",
            Self::ChengYangC0 => "cheng_yang_c0",
        }
    }

    /// How `margin` is computed for this inequality.
    pub fn margin_kind(self) -> MarginKind {
        match self {
            Self::Corollary
            | Self::PpwGap
            | Self::PpwGapOneOverNk
            | Self::YangSecond
            | Self::LevitinParnovskiSum => MarginKind::Difference,
            _ => MarginKind::Ratio,
        }
    }
}

impl std::fmt::Display for InequalityId {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        f.write_str(self.as_str())
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum MarginKind {
    /// `rhs - lhs`.
    Difference,
    /// `rhs / lhs - 1`.
    Ratio,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum Verdict {
    Satisfied,
    Violated,
    NotApplicable,
}

/// Hypothesis `lhs > rhs` of a conditional inequality.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct Hypothesis<T> {
    pub lhs: T,
    pub rhs: T,
    /// Uncertainty of `lhs - rhs` from spectrum error bars.
    pub band: T,
    /// True only when `lhs - rhs` exceeds `band`.
    pub holds: bool,
}

impl<T: Real> Hypothesis<T> {
    pub fn new(lhs: T, rhs: T, band: T) -> Self {
        Self {
            lhs,
            rhs,
            band,
            holds: lhs - rhs > band,
        }
    }
}

/// One evaluated inequality instance, oriented as `lhs <= rhs`.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct BoundReport<T> {
    pub inequality_id: InequalityId,
    pub n: usize,
    pub k: Option<usize>,
    pub l: Option<usize>,
    pub lhs: T,
    pub rhs: T,
    pub margin: T,
    pub margin_kind: MarginKind,
    /// False for conditional inequalities whose hypothesis fails; such
    /// reports are never `satisfied`.
    pub satisfied: bool,
    pub applicable: bool,
    pub tolerance_band: T,
    pub domain_id: String,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub hypothesis: Option<Hypothesis<T>>,
    #[serde(skip_serializing_if = "String::is_empty")]
    pub note: String,
}

impl<T: Real> BoundReport<T> {
    #[allow(clippy::too_many_arguments)]
    pub fn new(
        inequality_id: InequalityId,
        n: usize,
        k: Option<usize>,
        l: Option<usize>,
        lhs: T,
        rhs: T,
        tolerance_band: T,
        domain_id: impl Into<String>,
    ) -> Self {
        let mut report = Self {
            inequality_id,
            n,
            k,
            l,
            lhs,
            rhs,
            margin: T::zero(),
            margin_kind: inequality_id.margin_kind(),
            satisfied: false,
            applicable: true,
            tolerance_band,
            domain_id: domain_id.into(),
            hypothesis: None,
            note: String::new(),
        };
        report.refresh();
        report
    }

    pub fn with_hypothesis(mut self, hypothesis: Hypothesis<T>) -> Self {
        self.applicable = hypothesis.holds;
        self.hypothesis = Some(hypothesis);
        self.refresh();
        self
    }

    pub fn with_note(mut self, note: impl Into<String>) -> Self {
        self.note = note.into();
        self
    }

    /// Marks the report as outside the stated range of the inequality.
    pub fn not_applicable(mut self, note: impl Into<String>) -> Self {
        self.applicable = false;
        self.note = note.into();
        self.refresh();
        self
    }

    /// Copy with a different left-hand side, verdict recomputed.
    pub fn with_lhs(mut self, lhs: T) -> Self {
        self.lhs = lhs;
        self.refresh();
        self
    }

    fn refresh(&mut self) {
        self.margin = match self.margin_kind {
            MarginKind::Difference => self.rhs - self.lhs,
            MarginKind::Ratio => self.rhs / self.lhs - T::one(),
        };
        self.satisfied = self.applicable && self.lhs <= self.rhs + self.tolerance_band;
    }

    /// True when the inequality holds, whatever its hypothesis.
    pub fn holds(&self) -> bool {
        self.lhs <= self.rhs + self.tolerance_band
    }

    pub fn verdict(&self) -> Verdict {
        match (self.applicable, self.satisfied) {
            (false, _) => Verdict::NotApplicable,
            (true, true) => Verdict::Satisfied,
            (true, false) => Verdict::Violated,
        }
    }

    /// Applicable and unsatisfied beyond the tolerance band.
    pub fn is_violation(&self) -> bool {
        self.verdict() == Verdict::Violated
    }
}
