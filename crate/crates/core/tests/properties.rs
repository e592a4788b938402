use harmonics::boundary::{BoundaryData, Family};
use harmonics::verification::arc::arc_integral;
use harmonics::{Harmonic, HalfSpacePoint, HarmonicFn};
use proptest::prelude::*;

fn point(h: Vec<f64>, t: f64) -> HalfSpacePoint {
    HalfSpacePoint::new(h, t).unwrap()
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]

    // maximum principle: |U| never exceeds the sup of the data
    #[test]
    fn extension_bounded_by_data(x in -5.0..5.0f64, h in 1e-3..20.0f64, offset in -0.5..0.5f64, clip in 0.2..1.2f64) {
        let d = BoundaryData::new(Family::Cosine { wave: vec![1.3], phase: 0.2, amplitude: 1.0, offset, clip: Some(clip) }, 2).unwrap();
        let u = HarmonicFn::new(d.clone()).unwrap();
        let v = u.value(&point(vec![x], h)).unwrap();
        prop_assert!(v.abs() <= d.sup_bound() + 1e-8);
    }

    #[test]
    fn arc_integral_below_bound(
        a in prop::collection::vec(-2.0..2.0f64, 2), b in prop::collection::vec(-2.0..2.0f64, 2),
        ha in 1e-3..3.0f64, hb in 1e-3..3.0f64, alpha in 0.05..0.95f64,
    ) {
        let r = arc_integral(&point(a, ha), &point(b, hb), alpha).unwrap();
        prop_assert!(r.value <= r.bound * (1.0 + 1e-9), "{} > {}", r.value, r.bound);
    }

    // U_s(x) = U(s x) is the extension of f(s ·)
    #[test]
    fn closed_forms_commute_with_dilation(s in 0.1..10.0f64, x in -3.0..3.0f64, h in 0.01..3.0f64) {
        let u = HarmonicFn::new(BoundaryData::cosine(2, vec![1.0]).unwrap()).unwrap();
        let us = HarmonicFn::new(BoundaryData::cosine(2, vec![s]).unwrap()).unwrap();
        let lhs = us.value(&point(vec![x], h)).unwrap();
        let rhs = u.value(&point(vec![s * x], s * h)).unwrap();
        prop_assert!((lhs - rhs).abs() < 1e-12);
    }
}
