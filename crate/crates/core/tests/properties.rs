use eigenbox::corpus::{random_box, random_convex_polygon, trial_rng};
use eigenbox::geometry::{inradius, PlanarRegion};
use eigenbox::{Bounds64, Orthotope64};
use proptest::prelude::*;

fn half_widths(n: usize) -> impl Strategy<Value = Vec<f64>> {
    prop::collection::vec(0.1f64..10.0, n)
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]

    #[test]
    fn box_spectrum_scales_inverse_square(hw in half_widths(3), t in 0.2f64..5.0) {
        let b = Orthotope64::from_half_widths(hw).unwrap();
        let s = b.spectrum_prefix(40).unwrap();
        let st = b.scaled(t).spectrum_prefix(40).unwrap();
        for (a, c) in s.values().iter().zip(st.values()) {
            prop_assert!((c * t * t - a).abs() <= 1e-12 * a);
        }
    }

    #[test]
    fn box_spectrum_is_permutation_invariant(hw in half_widths(3)) {
        let mut rev = hw.clone();
        rev.reverse();
        let a = Orthotope64::from_half_widths(hw).unwrap().spectrum_prefix(30).unwrap();
        let b = Orthotope64::from_half_widths(rev).unwrap().spectrum_prefix(30).unwrap();
        prop_assert_eq!(a.values(), b.values());
    }

    #[test]
    fn satisfied_means_within_band(hw in half_widths(2), a in 1usize..40, c in 1usize..40) {
        let (l, k) = (a.min(c), a.max(c));
        let b = Orthotope64::from_half_widths(hw).unwrap();
        let s = b.spectrum_prefix(40).unwrap();
        let bounds = Bounds64::new(2).unwrap();
        for r in [bounds.theorem1(&s, k, l).unwrap(), bounds.theorem1_box(&s, k, l).unwrap()] {
            prop_assert!(r.applicable);
            prop_assert_eq!(r.satisfied, r.lhs <= r.rhs + r.tolerance_band);
            prop_assert!(r.satisfied);
        }
        let r = bounds.theorem2(&s, k, l).unwrap();
        prop_assert!(!r.is_violation());
        if !r.applicable {
            prop_assert!(!r.satisfied);
        }
    }

    #[test]
    fn indices_out_of_order_are_errors(k in 1usize..20, gap in 1usize..20) {
        let s = Orthotope64::from_sides(vec![1.0, 1.0]).unwrap().spectrum_prefix(40).unwrap();
        prop_assert!(Bounds64::new(2).unwrap().theorem1(&s, k, k + gap).is_err());
    }

    #[test]
    fn corpus_boxes_respect_ranges(seed in any::<u64>(), trial in 0u64..1000, n in 1usize..=5) {
        let b: Orthotope64 = random_box(&mut trial_rng(seed, trial), n);
        prop_assert_eq!(b.dim(), n);
        prop_assert!(b.half_widths().iter().all(|&a| (0.1..=10.0).contains(&a)));
    }

    #[test]
    fn corpus_polygons_are_valid(seed in any::<u64>(), trial in 0u64..1000) {
        let p = random_convex_polygon::<f64, _>(&mut trial_rng(seed, trial));
        prop_assert!(p.vertices().len() >= 3);
        prop_assert!(p.area() > 0.0);
        let r = inradius(&p).unwrap();
        prop_assert!(r.radius > 0.0);
        prop_assert!(p.contains_strictly(r.center, r.radius * (1.0 - 1e-6)));
    }
}

#[test]
fn corpus_is_reproducible() {
    let a: Orthotope64 = random_box(&mut trial_rng(7, 3), 3);
    let b: Orthotope64 = random_box(&mut trial_rng(7, 3), 3);
    assert_eq!(a, b);
    let c: Orthotope64 = random_box(&mut trial_rng(7, 4), 3);
    assert_ne!(a, c);
}
