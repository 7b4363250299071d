use proptest::prelude::*;
use weierstrass_limits::curves::{
    classify_on_curve, limit_special_classifier, local_expansion, rr_basis, twisted_ramification, twisted_system,
    two_point_report, vprime_subspace, weierstrass_divisor, CurvePoint, HyperellipticCurve, Support,
};
use weierstrass_limits::exact::{BigQ, DensePoly, Ring};
use weierstrass_limits::linear_series::PointClass;
use weierstrass_limits::Error;

fn q(n: i64) -> BigQ {
    BigQ::from_int(n)
}

fn curve(s: &str) -> HyperellipticCurve {
    HyperellipticCurve::parse(s).unwrap()
}

#[test]
fn model_validation() {
    assert!(matches!(HyperellipticCurve::parse("x^4-1"), Err(Error::InvalidArgument(_))));
    assert!(HyperellipticCurve::parse("x^3-x^2").is_err());
    assert!(HyperellipticCurve::parse("x^5+").is_err());
    let c = curve("x^5-1");
    assert_eq!(c.genus, 2);
    assert!(c.point(q(1), q(1)).is_err());
    assert_eq!(c.rational_branch_points(), vec![CurvePoint::Affine { x: q(1), y: q(0) }]);
}

#[test]
fn riemann_roch_dimensions() {
    let c = curve("x^5-1");
    assert_eq!(rr_basis(&c, 0).unwrap().describe(), vec!["(1)*dx/y", "(x)*dx/y"]);
    let s2 = rr_basis(&c, 2).unwrap();
    assert_eq!((s2.dim(), s2.degree()), (3, 4));
    for n in 1..8 {
        assert_eq!(rr_basis(&c, n).unwrap().dim(), (n + 1) as usize, "n={n}");
    }
    assert_eq!(rr_basis(&curve("x^3-x"), 3).unwrap().dim(), 3);
    assert!(rr_basis(&c, -1).is_err());
}

#[test]
fn expansion_orders_at_a_branch_point() {
    let c = curve("x^5-1");
    let sys = twisted_system(&c, 0, &[]).unwrap();
    let p = CurvePoint::Affine { x: q(1), y: q(0) };
    let e = local_expansion(&sys, 0, &p, 4).unwrap();
    assert_eq!(e.valuation().exact(), Some(0));
    let off = CurvePoint::Affine { x: q(2), y: q(0) };
    assert!(local_expansion(&sys, 0, &off, 4).is_err() || !c.is_branch(&off));
}

#[test]
fn canonical_divisor_of_x5_minus_1() {
    let entries = weierstrass_divisor(&curve("x^5-1")).unwrap();
    let points: usize = entries.iter().map(|e| e.points()).sum();
    assert_eq!(points, 6);
    assert!(entries.iter().all(|e| e.weight == 1));
    assert!(entries.iter().any(|e| e.support == Support::Point(CurvePoint::Infinity)));
    // an ordinary point has weight 0
    let c = curve("x^5+1");
    let r = twisted_ramification(&rr_basis(&c, 0).unwrap(), &[c.point_over(&q(0)).unwrap()]).unwrap();
    assert_eq!(r.samples[0].1, 0);
    assert_eq!(r.total_weight, 6);
}

#[test]
fn canonical_divisor_of_x7_minus_x() {
    let entries = weierstrass_divisor(&curve("x^7-x")).unwrap();
    assert_eq!(entries.iter().map(|e| e.total()).sum::<usize>(), 24);
    assert!(entries.iter().all(|e| e.weight == 3));
}

#[test]
fn twisted_split_with_an_ordinary_pole() {
    let c = curve("x^5+1");
    let a = c.point_over(&q(0)).unwrap();
    let r = twisted_ramification(&twisted_system(&c, 0, &[(a, 2)]).unwrap(), &[]).unwrap();
    assert_eq!((r.total_weight, r.weight_at_pole_point, r.off_pole_total), (18, 2, 16));
}

#[test]
fn three_division_locus() {
    let c = curve("x^3-x");
    let r = twisted_ramification(&rr_basis(&c, 3).unwrap(), &[]).unwrap();
    assert_eq!((r.total_weight, r.weight_at_pole_point, r.off_pole_total), (9, 1, 8));
    let rep = limit_special_classifier(&c, &CurvePoint::Infinity, 1, true, 1).unwrap();
    assert_eq!(rep.condition_ii.defining_poly(), DensePoly::from_ints(&[-1, 0, -6, 0, 3]));
    assert_eq!(rep.condition_ii.point_count(), 8);
    for j in [-1, 1] {
        let rep = limit_special_classifier(&c, &CurvePoint::Infinity, 1, false, j).unwrap();
        assert!(rep.condition_i.is_empty() && rep.condition_ii.is_empty());
    }
    let a = c.point(q(0), q(0)).unwrap();
    assert!(limit_special_classifier(&c, &a, 1, true, 1).is_err());
}

#[test]
fn classifier_points_reclassify_in_genus_two() {
    let c = curve("x^5-1");
    for j in [1i8, -1] {
        let rep = limit_special_classifier(&c, &CurvePoint::Infinity, 1, false, j).unwrap();
        for p in rep.condition_i.rational_points(&c) {
            assert_ne!(p, CurvePoint::Infinity);
            let (_, class) = classify_on_curve(&c, 1, &p).unwrap();
            assert!(if j == 1 { class.is_high() } else { class.is_low() });
        }
    }
}

#[test]
fn vprime_at_a_branch_point() {
    let c = curve("x^5-1");
    let v = vprime_subspace(&c, 1, &CurvePoint::Affine { x: q(1), y: q(0) }).unwrap();
    assert_eq!(v.system.dim(), v.g);
    assert!(v.class.is_low());
    assert_eq!(v.class, PointClass::SpecialBoth);
    assert!(v.vanishing_identity_holds());
    assert_eq!(v.vanishing_table[0], (0, v.g, v.g - 1));
}

#[test]
fn two_point_systems_follow_pluecker() {
    let c = curve("x^5-5x^3+4x");
    for (a, b) in [(1, 1), (2, 1), (2, 3)] {
        let r = two_point_report(&c, &c.point(q(0), q(0)).unwrap(), a, &c.point(q(2), q(0)).unwrap(), b).unwrap();
        assert_eq!(r.total_weight, r.pluecker_total, "a={a} b={b}");
    }
}

fn random_f() -> impl Strategy<Value = (usize, Vec<i64>)> {
    (2usize..=3).prop_flat_map(|g| (Just(g), prop::collection::vec(-3i64..=3, 2 * g + 1)))
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(24))]

    #[test]
    fn random_curves_satisfy_pluecker((g, low) in random_f(), n in 0i64..=3, lead in 1i64..=3) {
        let mut coeffs = low;
        coeffs.push(lead);
        let f = DensePoly::<BigQ>::from_ints(&coeffs);
        prop_assume!(f.is_squarefree());
        let c = HyperellipticCurve::new(f).unwrap();
        let sys = rr_basis(&c, n).unwrap();
        let r = twisted_ramification(&sys, &[]).unwrap();
        prop_assert_eq!(r.total_weight, r.pluecker_total);
        if n == 0 {
            prop_assert_eq!(r.total_weight, g * g * g - g);
        }
    }
}
