use std::f64::consts::PI;

use eigenbox::bounds::{Bounds, BoundsError, InequalityId, MarginKind, Verdict};
use eigenbox::{Orthotope64, Spectrum64};

const PI2: f64 = PI * PI;
const J01: f64 = 2.404825557695773;
const J11: f64 = 3.8317059702075125;

fn unit_square() -> Orthotope64 {
    Orthotope64::from_sides(vec![1.0, 1.0]).unwrap()
}

fn square_spectrum(count: usize) -> Spectrum64 {
    unit_square().spectrum_prefix(count).unwrap()
}

#[test]
fn theorem1_square_k4_l1() {
    let b = Bounds::<f64>::new(2).unwrap();
    let r = b.theorem1(&square_spectrum(10), 4, 1).unwrap();
    assert!((r.lhs - 8.0 * PI2).abs() < 1e-10);
    let c2 = 96.0 * J01 * J01;
    assert!((r.rhs - c2 * 4.0 * 2.0 * PI2).abs() < 1e-7);
    assert!(r.satisfied && r.applicable);
    assert_eq!(r.margin_kind, MarginKind::Ratio);
    assert_eq!(r.tolerance_band, r.rhs.abs() * 1e-12);
}

#[test]
fn theorem1_diagonal_always_holds() {
    let b = Bounds::<f64>::new(2).unwrap();
    let spec = square_spectrum(30);
    for k in 1..=30 {
        assert!(b.theorem1(&spec, k, k).unwrap().satisfied);
    }
}

#[test]
fn elongated_boxes_theorem1_and_not_applicable_theorem2() {
    let b = Bounds::<f64>::new(2).unwrap();
    for k in [2usize, 5, 10, 40] {
        let omega = Orthotope64::from_sides(vec![k as f64, 1.0]).unwrap();
        let spec = omega.spectrum_prefix(k).unwrap();
        let kf = k as f64;
        assert!((spec.get(k).unwrap() - 2.0 * PI2).abs() < 1e-9);
        let ratio = spec.get(k).unwrap() / spec.get(1).unwrap();
        assert!((ratio - 2.0 / (1.0 + 1.0 / (kf * kf))).abs() < 1e-12);
        assert!(b.theorem1(&spec, k, 1).unwrap().satisfied);
        let t2 = b.theorem2(&spec, k, 1).unwrap();
        assert_eq!(t2.verdict(), Verdict::NotApplicable);
        assert!(!t2.satisfied);
        assert!(!t2.hypothesis.as_ref().unwrap().holds);
        // without the hypothesis the lower bound would hold trivially here
        assert!(t2.holds());
    }
}

#[test]
fn theorem2_square_from_first_admissible_l() {
    let b = Bounds::<f64>::new(2).unwrap();
    let spec = square_spectrum(2000);
    let l = b.first_admissible_l(&spec).unwrap();
    let lambda_1 = spec.get(1).unwrap();
    assert!(spec.get(l).unwrap() / lambda_1 > b.constants().alpha_n);
    assert!(spec.get(l - 1).unwrap() / lambda_1 <= b.constants().alpha_n);
    for k in l..=(4 * l).min(spec.len()) {
        let r = b.theorem2(&spec, k, l).unwrap();
        assert_eq!(r.verdict(), Verdict::Satisfied, "k={k}");
    }
    let diag = b.theorem2(&spec, l, l).unwrap();
    assert!((diag.lhs - b.constants().beta_n * diag.rhs).abs() < 1e-9);
}

#[test]
fn box_constants_on_boxes() {
    let b = Bounds::<f64>::new(3).unwrap();
    let cube = Orthotope64::from_sides(vec![1.0, 1.3, 2.1]).unwrap();
    let spec = cube.spectrum_prefix(400).unwrap();
    for (k, l) in [(1, 1), (50, 3), (400, 1), (400, 399)] {
        assert!(b.theorem1_box(&spec, k, l).unwrap().satisfied);
    }
    let l = (1..=400)
        .find(|&l| spec.get(l).unwrap() > b.constants().alpha_box * spec.get(1).unwrap())
        .unwrap();
    for k in l..=400 {
        let r = b.theorem2_box(&spec, k, l).unwrap();
        assert_eq!(r.verdict(), Verdict::Satisfied);
    }
}

#[test]
fn index_validation() {
    let b = Bounds::<f64>::new(2).unwrap();
    let spec = square_spectrum(5);
    assert!(matches!(b.theorem1(&spec, 2, 3), Err(BoundsError::BadIndices { .. })));
    assert!(matches!(b.theorem1(&spec, 2, 0), Err(BoundsError::BadIndices { .. })));
    assert!(matches!(b.theorem1(&spec, 6, 1), Err(BoundsError::Spectrum(_))));
    assert!(matches!(b.classical_at(&spec, 4), Err(BoundsError::Spectrum(_))));
}

#[test]
fn corollary_square_and_irrational_box() {
    let b = Bounds::<f64>::new(2).unwrap();
    let r = b.corollary_for_box(&unit_square(), 2).unwrap();
    assert_eq!(r.lhs, 2.0);
    assert_eq!(r.verdict(), Verdict::NotApplicable);

    let irrational = Orthotope64::from_sides(vec![1.0, 2f64.powf(0.25)]).unwrap();
    let spec = irrational.spectrum_prefix(600).unwrap();
    let l = b.first_admissible_l(&spec).unwrap();
    for k in [l, l + 7, 500] {
        let r = b.corollary(&spec, k).unwrap();
        assert_eq!(r.lhs, 1.0);
        assert_eq!(r.verdict(), Verdict::Satisfied);
        assert!((r.rhs / k as f64 - b.constants().mult_coeff).abs() < 1e-9 * r.rhs);
    }
}

#[test]
fn corollary_needs_closed_cluster() {
    let b = Bounds::<f64>::new(2).unwrap();
    // square spectrum cut inside the 5π² pair
    let spec = square_spectrum(2);
    assert!(matches!(
        b.corollary(&spec, 2),
        Err(BoundsError::ClusterUnresolved { k: 2, len: 2 })
    ));
    assert_eq!(Bounds::cluster(&square_spectrum(4), 3).unwrap(), (2, 3));
}

#[test]
fn berezin_li_yau_square() {
    let b = Bounds::<f64>::new(2).unwrap();
    let spec = square_spectrum(10_000);
    let r = b.berezin_li_yau(&spec, 1.0, 1).unwrap();
    assert!((r.lhs - 2.0 * PI).abs() < 1e-12);
    assert!((r.rhs - 2.0 * PI2).abs() < 1e-12);
    for k in 1..=10_000 {
        assert!(b.berezin_li_yau(&spec, 1.0, k).unwrap().satisfied, "k={k}");
    }
}

#[test]
fn berezin_li_yau_scaling_invariance() {
    let b = Bounds::<f64>::new(3).unwrap();
    let base = Orthotope64::from_sides(vec![1.0, 1.7, 0.6]).unwrap();
    let t = 3.5;
    let scaled = base.scaled(t);
    let (s0, s1) = (base.spectrum_prefix(50).unwrap(), scaled.spectrum_prefix(50).unwrap());
    for k in [1, 10, 50] {
        let r0 = b.berezin_li_yau(&s0, base.volume(), k).unwrap();
        let r1 = b.berezin_li_yau(&s1, scaled.volume(), k).unwrap();
        assert!((r0.margin - r1.margin).abs() < 1e-12);
        assert!((r0.lhs / r1.lhs - t * t).abs() < 1e-10);
    }
}

#[test]
fn hersch_protter_examples() {
    let b2 = Bounds::<f64>::new(2).unwrap();
    let r = b2.hersch_protter(&square_spectrum(1), 0.5).unwrap();
    assert!((r.lhs - PI2).abs() < 1e-12 && r.satisfied);

    let b1 = Bounds::<f64>::new(1).unwrap();
    for a in [0.1, 0.5, 1.0, 7.3] {
        let interval = Orthotope64::from_half_widths(vec![a]).unwrap();
        let r = b1.hersch_protter(&interval.spectrum_prefix(1).unwrap(), a).unwrap();
        assert!((r.lhs / r.rhs - 1.0).abs() < 1e-14);
        assert!(r.satisfied);
    }

    let rho = 1.0 - 1.0 / 2f64.sqrt();
    let tri = Spectrum64::exact(vec![5.0 * PI2], "triangle").unwrap();
    let r = b2.hersch_protter(&tri, rho).unwrap();
    assert!((r.lhs - 28.77).abs() < 0.01);
    assert!(r.satisfied);
}

#[test]
fn inradius_upper_examples() {
    let b = Bounds::<f64>::new(2).unwrap();
    let disk = Spectrum64::exact(vec![J01 * J01], "unit-disk").unwrap();
    let r = b.inradius_upper(&disk, 1.0).unwrap();
    assert!(r.margin.abs() < 1e-14 && r.satisfied);

    let r = b.inradius_upper(&square_spectrum(1), 0.5).unwrap();
    assert!((r.rhs - 23.13).abs() < 0.01 && r.satisfied);

    let omega5 = Orthotope64::from_sides(vec![5.0, 1.0]).unwrap();
    let r = b.inradius_upper(&omega5.spectrum_prefix(1).unwrap(), 0.5).unwrap();
    assert!((r.lhs - 1.04 * PI2).abs() < 1e-12 && r.satisfied);

    assert!(matches!(b.inradius_upper(&disk, 0.0), Err(BoundsError::NotPositive(_))));
}

#[test]
fn classical_square_values() {
    let b = Bounds::<f64>::new(2).unwrap();
    let spec = square_spectrum(60);
    let suite = b.classical_suite(&spec, &[1, 2, 3, 10, 40]).unwrap();
    let ab = &suite[0];
    assert_eq!(ab.inequality_id, InequalityId::AshbaughBenguria);
    assert!((ab.lhs - 2.5).abs() < 1e-12);
    assert!((ab.rhs - J11 * J11 / (J01 * J01)).abs() < 1e-10);
    assert!(ab.satisfied && ab.margin < 0.016);

    let ratio = suite
        .iter()
        .find(|r| r.inequality_id == InequalityId::PpwRatio && r.k == Some(1))
        .unwrap();
    assert!((ratio.lhs - 5.0 * PI2).abs() < 1e-10 && (ratio.rhs - 6.0 * PI2).abs() < 1e-10);
    assert!(ratio.note.contains("holds=false"));

    for r in &suite {
        match r.inequality_id {
            InequalityId::ChengYang => assert_eq!(r.verdict(), Verdict::NotApplicable),
            _ => assert_eq!(r.verdict(), Verdict::Satisfied, "{} k={:?}", r.inequality_id, r.k),
        }
    }
    let per_index = suite
        .iter()
        .filter(|r| r.inequality_id == InequalityId::LevitinParnovski && r.k == Some(10))
        .count();
    assert_eq!(per_index, 2);
}

#[test]
fn weak_ppw_forms_fail_on_square() {
    let b = Bounds::<f64>::new(2).unwrap();
    let [gap, ratio] = b.ppw_weak_forms(&square_spectrum(5), 1).unwrap();
    assert!((gap.lhs - 3.0 * PI2).abs() < 1e-10 && (gap.rhs - PI2).abs() < 1e-10);
    assert_eq!(gap.verdict(), Verdict::Violated);
    assert_eq!(ratio.verdict(), Verdict::Violated);
    assert_eq!(gap.margin_kind, MarginKind::Difference);
}

#[test]
fn cheng_yang_applies_in_high_dimension() {
    let n = 41;
    let b = Bounds::<f64>::new(n).unwrap();
    let sides: Vec<f64> = (0..n).map(|i| 1.0 + 0.01 * i as f64).collect();
    let spec = Orthotope64::from_sides(sides).unwrap().spectrum_prefix(41 + n).unwrap();
    let reports = b.classical_at(&spec, 41).unwrap();
    let cy = reports.iter().find(|r| r.inequality_id == InequalityId::ChengYang).unwrap();
    assert!(cy.applicable);
    assert_eq!(cy.verdict(), Verdict::Satisfied);
}

#[test]
fn weyl_ratio_square() {
    let b = Bounds::<f64>::new(2).unwrap();
    let spec = square_spectrum(100_000);
    let r = b.weyl_diagnostic(&spec, 1.0).unwrap();
    assert!((0.9..=1.1).contains(&r[99_999]));
    assert!(r.iter().all(|&x| x >= 0.5 - 1e-12));
}

#[test]
fn band_widens_verdicts_for_fd_spectra() {
    let b = Bounds::<f64>::new(2).unwrap();
    // λ_2/λ_1 slightly above the ball ratio, inside its error bars
    let l1 = 10.0;
    let l2 = l1 * (J11 * J11 / (J01 * J01)) * (1.0 + 1e-4);
    let spec = Spectrum64::finite_difference(vec![l1, l2], 0.01, "fd")
        .unwrap()
        .with_error_bars(vec![1e-3, 1e-3])
        .unwrap();
    let r = b.ashbaugh_benguria(&spec).unwrap();
    assert!(r.lhs > r.rhs);
    assert!(r.tolerance_band > r.lhs - r.rhs);
    assert!(r.satisfied);
    let exact = Spectrum64::exact(vec![l1, l2], "exact").unwrap();
    assert_eq!(b.ashbaugh_benguria(&exact).unwrap().verdict(), Verdict::Violated);
}

#[test]
fn hypothesis_must_clear_band() {
    let b = Bounds::<f64>::new(2).unwrap();
    let alpha = b.constants().alpha_n;
    let values = vec![1.0, alpha * (1.0 + 1e-6)];
    let tight = Spectrum64::finite_difference(values.clone(), 0.01, "fd")
        .unwrap()
        .with_error_bars(vec![1e-3, 1e-3])
        .unwrap();
    assert_eq!(b.theorem2(&tight, 2, 2).unwrap().verdict(), Verdict::NotApplicable);
    let exact = Spectrum64::exact(values, "exact").unwrap();
    assert_eq!(b.theorem2(&exact, 2, 2).unwrap().verdict(), Verdict::Satisfied);
}

#[test]
fn inflating_lhs_past_rhs_flips_every_verdict() {
    let b = Bounds::<f64>::new(2).unwrap();
    let spec = square_spectrum(3000);
    let mut reports = b.classical_suite(&spec, &[1, 5, 50]).unwrap();
    reports.extend(b.ppw_weak_forms(&spec, 1).unwrap());
    let l = b.first_admissible_l(&spec).unwrap();
    reports.push(b.theorem1(&spec, 10, 2).unwrap());
    reports.push(b.theorem1_box(&spec, 10, 2).unwrap());
    reports.push(b.theorem2(&spec, 2 * l, l).unwrap());
    reports.push(b.theorem2_box(&spec, 2 * l, l).unwrap());
    reports.push(b.corollary(&spec, l).unwrap());
    reports.push(b.berezin_li_yau(&spec, 1.0, 7).unwrap());
    reports.push(b.hersch_protter(&spec, 0.5).unwrap());
    reports.push(b.inradius_upper(&spec, 0.5).unwrap());
    let mut seen = std::collections::HashSet::new();
    for r in reports.into_iter().filter(|r| r.satisfied) {
        seen.insert(r.inequality_id);
        let pushed = (r.rhs + r.tolerance_band) * 1.01;
        let flipped = r.clone().with_lhs(pushed);
        assert!(!flipped.satisfied, "{}", r.inequality_id);
        let scaled = r.clone().with_lhs(r.lhs * 1.01);
        assert_eq!(scaled.satisfied, r.lhs * 1.01 <= r.rhs + r.tolerance_band);
    }
    assert_eq!(seen.len(), 15);
}

#[test]
fn json_fields_are_stable() {
    let b = Bounds::<f64>::new(2).unwrap();
    let r = b.theorem2(&square_spectrum(5), 3, 1).unwrap();
    let v = serde_json::to_value(&r).unwrap();
    assert_eq!(v["inequality_id"], "theorem2");
    assert_eq!(v["margin_kind"], "ratio");
    assert_eq!(v["applicable"], false);
    assert_eq!(v["hypothesis"]["holds"], false);
    for key in ["n", "k", "l", "lhs", "rhs", "margin", "satisfied", "tolerance_band", "domain_id"] {
        assert!(v.get(key).is_some(), "{key}");
    }
}
