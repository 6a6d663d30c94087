use anyhow::{bail, ensure, Result};
use rayon::prelude::*;

use eigenbox::bounds::{constants, BoundsError};
use eigenbox::corpus::{random_box, random_convex_polygon, random_star_polygon, trial_rng};
use eigenbox::fem::MAX_EIGENVALUES;
use eigenbox::replay::{replay_lemma31, replay_lemma33, Relation};
use eigenbox::{BoundReport64, Bounds64, InequalityId, Orthotope64, ReplayStatus, Spectrum64};

use crate::domain::{parse_list, Domain};
use crate::table::{Cell, Table};

/// Tables to print and whether anything was violated.
pub struct Outcome {
    pub tables: Vec<Table>,
    pub violated: bool,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, clap::ValueEnum)]
pub enum Suite {
    All,
    Theorem1,
    Theorem2,
    Classical,
    Blt,
    Inradius,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, clap::ValueEnum)]
pub enum Shape {
    Box,
    Polygon,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, clap::ValueEnum)]
pub enum LemmaArg {
    #[value(name = "31")]
    Upper,
    #[value(name = "33")]
    Lower,
}

pub const MAX_BOX_TRIALS: usize = 100_000;
pub const MAX_POLYGON_TRIALS: usize = 500;

pub fn cmd_constants(dim: usize, max_dim: Option<usize>) -> Result<Outcome> {
    let last = max_dim.unwrap_or(dim);
    ensure!(
        dim >= 1 && dim <= last && last <= 60,
        "need 1 <= dim <= max-dim <= 60, got dim {dim}, max-dim {last}"
    );
    let mut t = Table::new(
        "constants",
        &[
            "n", "j", "c_n_box", "c_n", "alpha_n", "beta_n", "mult_coeff", "alpha_box", "d_n_box", "omega_n",
        ],
    );
    for n in dim..=last {
        let c = constants::<f64>(n)?;
        t.push(vec![
            n.into(),
            c.j.into(),
            c.c_n_box.into(),
            c.c_n.into(),
            c.alpha_n.into(),
            c.beta_n.into(),
            c.mult_coeff.into(),
            c.alpha_box.into(),
            c.d_n_box.into(),
            c.omega_n.into(),
        ]);
    }
    Ok(Outcome {
        tables: vec![t],
        violated: false,
    })
}

pub fn cmd_box_spectrum(half_widths: Option<&str>, sides: Option<&str>, count: usize) -> Result<Outcome> {
    let b = match (half_widths, sides) {
        (Some(a), None) => Orthotope64::from_half_widths(parse_list(a)?)?,
        (None, Some(s)) => Orthotope64::from_sides(parse_list(s)?)?,
        _ => bail!("give exactly one of --half-widths and --sides"),
    };
    let spec = b.spectrum_prefix(count)?;
    let pi2 = std::f64::consts::PI.powi(2);
    let mut t = Table::new("spectrum", &["k", "lambda", "lambda_over_pi2", "multiplicity"]);
    for (i, &v) in spec.values().iter().enumerate() {
        let k = i + 1;
        t.push(vec![k.into(), v.into(), (v / pi2).into(), b.multiplicity_of_kth(k)?.into()]);
    }
    let mut d = Table::new("domain", &["domain_id", "dim", "volume", "inradius"]);
    d.push(vec![b.domain_id().into(), b.dim().into(), b.volume().into(), b.inradius().into()]);
    Ok(Outcome {
        tables: vec![d, t],
        violated: false,
    })
}

const REPORT_COLUMNS: &[&str] = &[
    "inequality_id",
    "n",
    "k",
    "l",
    "lhs",
    "rhs",
    "margin",
    "margin_kind",
    "tolerance_band",
    "applicable",
    "satisfied",
    "verdict",
    "hypothesis_lhs",
    "hypothesis_rhs",
    "note",
    "domain_id",
];

fn report_row(r: &BoundReport64) -> Vec<Cell> {
    let verdict = serde_json::to_value(r.verdict()).expect("verdict serializes");
    let kind = serde_json::to_value(r.margin_kind).expect("margin kind serializes");
    vec![
        r.inequality_id.as_str().into(),
        r.n.into(),
        r.k.into(),
        r.l.into(),
        r.lhs.into(),
        r.rhs.into(),
        r.margin.into(),
        kind.as_str().unwrap_or_default().into(),
        r.tolerance_band.into(),
        r.applicable.into(),
        r.satisfied.into(),
        verdict.as_str().unwrap_or_default().into(),
        r.hypothesis.as_ref().map(|h| h.lhs).into(),
        r.hypothesis.as_ref().map(|h| h.rhs).into(),
        r.note.clone().into(),
        r.domain_id.clone().into(),
    ]
}

fn wants(suite: Suite, part: Suite) -> bool {
    suite == Suite::All || suite == part
}

/// Number of eigenvalues the selected suites read at index `k`.
fn spectrum_len(domain: &Domain, suite: Suite, k: usize) -> usize {
    let n = domain.dim();
    let mut need = k.max(2);
    if wants(suite, Suite::Classical) {
        need = need.max(k + n);
    }
    if wants(suite, Suite::Theorem2) && !domain.is_box() {
        // room past the cluster of λ_k
        need = need.max(k + 3);
    }
    need
}

/// Every report of `suite` at `(k, l)` on `domain` with spectrum `spec`.
pub fn suite_reports(
    domain: &Domain,
    spec: &Spectrum64,
    suite: Suite,
    k: usize,
    l: usize,
) -> Result<Vec<BoundReport64>> {
    let bounds = Bounds64::new(domain.dim())?;
    let mut out = Vec::new();
    if wants(suite, Suite::Theorem1) {
        if domain.is_box() {
            out.push(bounds.theorem1_box(spec, k, l)?);
        }
        out.push(tag(bounds.theorem1(spec, k, l)?, domain));
    }
    if wants(suite, Suite::Theorem2) {
        if let Domain::Box(b) = domain {
            out.push(bounds.theorem2_box(spec, k, l)?);
            out.push(bounds.theorem2(spec, k, l)?);
            out.push(bounds.corollary_for_box(b, k)?);
        } else {
            out.push(tag(bounds.theorem2(spec, k, l)?, domain));
            match bounds.corollary(spec, k) {
                Ok(r) => out.push(tag(r, domain)),
                Err(BoundsError::ClusterUnresolved { .. }) => {}
                Err(e) => return Err(e.into()),
            }
        }
    }
    if wants(suite, Suite::Classical) {
        let ks: Vec<usize> = (1..=k).collect();
        out.extend(bounds.classical_suite(spec, &ks)?);
    }
    if wants(suite, Suite::Blt) {
        for i in 1..=k {
            out.push(bounds.berezin_li_yau(spec, domain.volume(), i)?);
        }
    }
    if wants(suite, Suite::Inradius) {
        if let Some(rho) = domain.inradius()? {
            out.push(bounds.hersch_protter(spec, rho)?);
            out.push(bounds.inradius_upper(spec, rho)?);
        }
    }
    Ok(out)
}

/// Marks convexity-dependent reports on nonconvex domains as empirical.
fn tag(r: BoundReport64, domain: &Domain) -> BoundReport64 {
    if domain.is_convex() {
        r
    } else {
        let note = if r.note.is_empty() {
            "nonconvex domain: empirical".to_string()
        } else {
            format!("{}; nonconvex domain: empirical", r.note)
        };
        r.with_note(note)
    }
}

pub fn cmd_verify(domain: &str, suite: Suite, k: usize, l: usize, mesh: Option<&str>) -> Result<Outcome> {
    ensure!(l >= 1 && k >= l, "need 1 <= l <= k, got k {k}, l {l}");
    let domain = Domain::resolve(domain)?;
    let mesh = mesh.map(parse_list).transpose()?;
    let count = spectrum_len(&domain, suite, k);
    if !domain.is_box() && count > MAX_EIGENVALUES {
        bail!("k = {k} needs {count} finite-difference eigenvalues; at most {MAX_EIGENVALUES} are computed");
    }
    let spec = domain.spectrum(count, mesh.as_deref())?;
    let reports = suite_reports(&domain, &spec, suite, k, l)?;
    let mut t = Table::new("reports", REPORT_COLUMNS);
    for r in &reports {
        t.push(report_row(r));
    }
    let violations = reports.iter().filter(|r| r.is_violation()).count();
    let applicable = reports.iter().filter(|r| r.applicable).count();
    let mut s = Table::new(
        "summary",
        &["domain_id", "spectrum_source", "mesh_width", "reports", "applicable", "violations"],
    );
    s.push(vec![
        domain.id().into(),
        format!("{:?}", spec.source()).to_lowercase().into(),
        spec.mesh_width().into(),
        reports.len().into(),
        applicable.into(),
        violations.into(),
    ]);
    Ok(Outcome {
        tables: vec![s, t],
        violated: violations > 0,
    })
}

/// Per-inequality aggregate over a sweep.
#[derive(Debug, Clone)]
struct Tally {
    id: InequalityId,
    total: usize,
    applicable: usize,
    violations: usize,
    margins: Vec<f64>,
    /// `(margin, trial, k, l, domain_id)` of the smallest applicable margin.
    worst: Option<(f64, u64, Option<usize>, Option<usize>, String)>,
}

impl Tally {
    fn new(id: InequalityId) -> Self {
        Self {
            id,
            total: 0,
            applicable: 0,
            violations: 0,
            margins: Vec::new(),
            worst: None,
        }
    }

    fn add(&mut self, trial: u64, r: &BoundReport64) {
        self.total += 1;
        if !r.applicable {
            return;
        }
        self.applicable += 1;
        if r.is_violation() {
            self.violations += 1;
        }
        self.margins.push(r.margin);
        if self.worst.as_ref().map_or(true, |w| r.margin < w.0) {
            self.worst = Some((r.margin, trial, r.k, r.l, r.domain_id.clone()));
        }
    }

    fn merge(&mut self, other: Tally) {
        self.total += other.total;
        self.applicable += other.applicable;
        self.violations += other.violations;
        self.margins.extend(other.margins);
        if let Some(w) = other.worst {
            if self.worst.as_ref().map_or(true, |s| w.0 < s.0) {
                self.worst = Some(w);
            }
        }
    }

    fn median(&mut self) -> Option<f64> {
        if self.margins.is_empty() {
            return None;
        }
        self.margins.sort_by(f64::total_cmp);
        let m = self.margins.len();
        Some(if m % 2 == 1 {
            self.margins[m / 2]
        } else {
            (self.margins[m / 2 - 1] + self.margins[m / 2]) / 2.0
        })
    }
}

fn tally_into(tallies: &mut Vec<Tally>, trial: u64, r: &BoundReport64) {
    let pos = match tallies.iter().position(|t| t.id == r.inequality_id) {
        Some(p) => p,
        None => {
            tallies.push(Tally::new(r.inequality_id));
            tallies.len() - 1
        }
    };
    tallies[pos].add(trial, r);
}

#[derive(Debug, Clone, Copy)]
pub struct SweepConfig {
    pub trials: usize,
    pub dim: usize,
    pub shape: Shape,
    pub seed: u64,
    pub nonconvex: bool,
    pub max_k: usize,
}

/// Domain of trial `trial`.
fn sweep_domain(cfg: &SweepConfig, trial: u64) -> Domain {
    let mut rng = trial_rng(cfg.seed, trial);
    match cfg.shape {
        Shape::Box => Domain::Box(random_box(&mut rng, cfg.dim)),
        Shape::Polygon if cfg.nonconvex => Domain::Simple(random_star_polygon(&mut rng)),
        Shape::Polygon => Domain::Polygon(random_convex_polygon(&mut rng)),
    }
}

/// All reports for one sweep trial.
fn sweep_trial(cfg: &SweepConfig, trial: u64) -> Result<Vec<Tally>> {
    let domain = sweep_domain(cfg, trial);
    let n = domain.dim();
    let kmax = cfg.max_k;
    let spec = domain.spectrum(kmax + n + 1, None)?;
    let bounds = Bounds64::new(n)?;
    let mut tallies = Vec::new();
    let mut add = |r: BoundReport64| tally_into(&mut tallies, trial, &r);
    for k in 1..=kmax {
        for l in 1..=k {
            if domain.is_box() {
                add(bounds.theorem1_box(&spec, k, l)?);
                add(bounds.theorem2_box(&spec, k, l)?);
            }
            add(tag(bounds.theorem1(&spec, k, l)?, &domain));
            add(tag(bounds.theorem2(&spec, k, l)?, &domain));
        }
    }
    for k in 1..=kmax {
        let corollary = match &domain {
            Domain::Box(b) => bounds.corollary_for_box(b, k),
            _ => bounds.corollary(&spec, k),
        };
        match corollary {
            Ok(r) => add(tag(r, &domain)),
            Err(BoundsError::ClusterUnresolved { .. }) => {}
            Err(e) => return Err(e.into()),
        }
        add(bounds.berezin_li_yau(&spec, domain.volume(), k)?);
    }
    let ks: Vec<usize> = (1..=kmax).collect();
    for r in bounds.classical_suite(&spec, &ks)? {
        add(r);
    }
    if let Some(rho) = domain.inradius()? {
        add(bounds.hersch_protter(&spec, rho)?);
        add(bounds.inradius_upper(&spec, rho)?);
    }
    Ok(tallies)
}

pub fn cmd_sweep(cfg: SweepConfig) -> Result<Outcome> {
    let (limit, dim) = match cfg.shape {
        Shape::Box => (MAX_BOX_TRIALS, cfg.dim),
        Shape::Polygon => (MAX_POLYGON_TRIALS, 2),
    };
    ensure!(cfg.trials <= limit, "at most {limit} trials for this shape");
    ensure!((1..=60).contains(&dim), "dimension {dim} outside 1..=60");
    ensure!(cfg.max_k >= 1, "max-k must be positive");
    if cfg.shape == Shape::Polygon {
        ensure!(
            cfg.max_k + 3 <= MAX_EIGENVALUES,
            "polygon sweeps compute at most {MAX_EIGENVALUES} eigenvalues; max-k must be <= {}",
            MAX_EIGENVALUES - 3
        );
    }
    let cfg = SweepConfig { dim, ..cfg };
    let per_trial: Vec<Result<Vec<Tally>>> = (0..cfg.trials as u64)
        .into_par_iter()
        .map(|t| sweep_trial(&cfg, t))
        .collect();
    let mut tallies: Vec<Tally> = Vec::new();
    for trial in per_trial {
        for t in trial? {
            match tallies.iter_mut().find(|s| s.id == t.id) {
                Some(s) => s.merge(t),
                None => tallies.push(t),
            }
        }
    }

    let mut table = Table::new(
        "inequalities",
        &[
            "inequality_id",
            "reports",
            "applicable",
            "not_applicable",
            "violations",
            "min_margin",
            "median_margin",
            "worst_trial",
            "worst_k",
            "worst_l",
            "worst_domain",
        ],
    );
    let mut violations = 0;
    let mut reports = 0;
    let mut not_applicable = 0;
    for t in &mut tallies {
        violations += t.violations;
        reports += t.total;
        not_applicable += t.total - t.applicable;
        let median = t.median();
        let (min, trial, k, l, dom) = match &t.worst {
            Some((m, tr, k, l, d)) => (Some(*m), Some(*tr), *k, *l, Some(d.clone())),
            None => (None, None, None, None, None),
        };
        table.push(vec![
            t.id.as_str().into(),
            t.total.into(),
            t.applicable.into(),
            (t.total - t.applicable).into(),
            t.violations.into(),
            min.into(),
            median.into(),
            trial.into(),
            k.into(),
            l.into(),
            dom.into(),
        ]);
    }
    let shape = match (cfg.shape, cfg.nonconvex) {
        (Shape::Box, _) => "box",
        (Shape::Polygon, false) => "polygon",
        (Shape::Polygon, true) => "nonconvex-polygon",
    };
    let mut summary = Table::new(
        "summary",
        &["trials", "shape", "dim", "seed", "max_k", "reports", "not_applicable", "violations"],
    );
    summary.push(vec![
        cfg.trials.into(),
        shape.into(),
        dim.into(),
        cfg.seed.into(),
        cfg.max_k.into(),
        reports.into(),
        not_applicable.into(),
        violations.into(),
    ]);
    Ok(Outcome {
        tables: vec![summary, table],
        violated: violations > 0,
    })
}

/// Smallest integer `k` with `β k (1 + 1/k²) > 2`.
pub fn first_failing_k(beta: f64) -> usize {
    let root = (1.0 + (1.0 - beta * beta).sqrt()) / beta;
    let mut k = root.floor().max(1.0) as usize;
    let fails = |k: usize| {
        let kf = k as f64;
        beta * kf * (1.0 + 1.0 / (kf * kf)) > 2.0
    };
    while k > 1 && fails(k - 1) {
        k -= 1;
    }
    while !fails(k) {
        k += 1;
    }
    k
}

pub fn cmd_counterexample(kmax: usize) -> Result<Outcome> {
    ensure!(kmax >= 1, "k must be at least 1");
    let c = constants::<f64>(2)?;
    let beta = c.beta_n;
    let row = |k: usize| -> Result<Vec<Cell>> {
        let b = Orthotope64::from_sides(vec![k as f64, 1.0])?;
        let (l1, lk) = (b.ground_state(), b.kth_eigenvalue(k)?);
        let rhs = beta * k as f64 * l1;
        let pi2 = std::f64::consts::PI.powi(2);
        Ok(vec![
            k.into(),
            l1.into(),
            lk.into(),
            (l1 / pi2).into(),
            (lk / pi2).into(),
            (lk / l1).into(),
            rhs.into(),
            (rhs > lk).into(),
        ])
    };
    let columns = [
        "k",
        "lambda_1",
        "lambda_k",
        "lambda_1_over_pi2",
        "lambda_k_over_pi2",
        "ratio",
        "unconditional_rhs",
        "unconditional_fails",
    ];
    let mut t = Table::new("family", &columns);
    for k in 1..=kmax {
        t.push(row(k)?);
    }
    let first = first_failing_k(beta);
    let mut w = Table::new("first_failure", &columns);
    w.push(row(first - 1)?);
    w.push(row(first)?);
    let mut s = Table::new("summary", &["beta_2", "alpha_2", "threshold", "first_failing_k", "hypothesis_at_l1"]);
    s.push(vec![
        beta.into(),
        c.alpha_n.into(),
        ((1.0 + (1.0 - beta * beta).sqrt()) / beta).into(),
        first.into(),
        "fails: lambda_1 > alpha_2 lambda_1 is false".into(),
    ]);
    Ok(Outcome {
        tables: vec![s, w, t],
        violated: false,
    })
}

pub fn cmd_replay(half_widths: &str, k: usize, l: usize, lemma: LemmaArg, seed: u64) -> Result<Outcome> {
    let b = Orthotope64::from_half_widths(parse_list(half_widths)?)?;
    let t = match lemma {
        LemmaArg::Upper => replay_lemma31(&b, k, l, seed)?,
        LemmaArg::Lower => replay_lemma33(&b, k, l, seed)?,
    };
    let (status, failed) = match &t.status {
        ReplayStatus::Passed => ("passed", None),
        ReplayStatus::Failed { step_id } => ("failed", Some(*step_id)),
        ReplayStatus::NotApplicable => ("not_applicable", None),
    };
    let lemma_name = match lemma {
        LemmaArg::Upper => "31",
        LemmaArg::Lower => "33",
    };
    let mut summary = Table::new(
        "transcript",
        &[
            "lemma",
            "domain_id",
            "k",
            "l",
            "r",
            "k_prime",
            "covering_radius",
            "seed",
            "status",
            "failed_step",
        ],
    );
    summary.push(vec![
        lemma_name.into(),
        t.domain_id.clone().into(),
        t.k.into(),
        t.l.into(),
        t.r.into(),
        t.k_prime.into(),
        t.covering_radius.into(),
        t.seed.into(),
        status.into(),
        failed.into(),
    ]);
    let mut steps = Table::new("steps", &["step_id", "description", "relation", "lhs", "rhs", "pass"]);
    for s in &t.steps {
        let rel = match s.relation {
            Relation::Le => "<=",
            Relation::Lt => "<",
            Relation::Eq => "==",
        };
        steps.push(vec![
            s.step_id.into(),
            s.description.into(),
            rel.into(),
            s.lhs.into(),
            s.rhs.into(),
            s.pass.into(),
        ]);
    }
    Ok(Outcome {
        tables: vec![summary, steps],
        violated: failed.is_some(),
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn first_failure_solves_the_scalar_inequality() {
        let beta = constants::<f64>(2).unwrap().beta_n;
        let k = first_failing_k(beta);
        let f = |k: f64| beta * k * (1.0 + 1.0 / (k * k));
        assert!(f(k as f64) > 2.0);
        assert!(f((k - 1) as f64) <= 2.0);
        assert!((k as f64 - 2.0 / beta).abs() < 2.0);
    }
}
