use proptest::prelude::*;
use weierstrass_limits::exact::{BigQ, DensePoly, Ring, TruncSeries};
use weierstrass_limits::family_limits::{
    base_change, blowdown, central_restriction, chain_refine, family_wronskian, limit_cycle_dr, m_e, saturate,
    semicontinuity_check, wronskian_t_order, ComponentCycle, FamilySections, TwistTable,
};
use weierstrass_limits::linear_series::wronskian_poly;
use weierstrass_limits::Error;

type Grid = Vec<Vec<i64>>;

fn q(n: i64) -> BigQ {
    BigQ::from_int(n)
}

fn family(grids: &[Grid], trunc: usize) -> FamilySections<BigQ> {
    let p: Vec<Vec<Vec<BigQ>>> = grids.iter().map(|g| g.iter().map(|r| r.iter().map(|&c| q(c)).collect()).collect()).collect();
    FamilySections::from_polys(&p, trunc, trunc).unwrap()
}

fn specialize(g: &Grid, t0: i64) -> DensePoly<BigQ> {
    let width = g.iter().map(|r| r.len()).max().unwrap_or(0);
    let mut out = vec![BigQ::zero(); width];
    for (e, row) in g.iter().enumerate() {
        for (m, &c) in row.iter().enumerate() {
            out[m] = out[m].clone() + q(c) * Ring::pow(&q(t0), e as u32);
        }
    }
    DensePoly::new(out)
}

#[test]
fn saturation_of_documented_families() {
    // {1+x, t x} saturates to {1+x, x}
    let s = saturate(&family(&[vec![vec![1, 1]], vec![vec![], vec![0, 1]]], 6)).unwrap();
    let c = central_restriction(&s).unwrap();
    assert!(c.sections[0].agrees_with(&TruncSeries::from_ints(&[1, 1], 6)));
    assert!(c.sections[1].agrees_with(&TruncSeries::from_ints(&[0, 1], 6)));
    // {t, t x} -> {1, x}
    let s = saturate(&family(&[vec![vec![], vec![1]], vec![vec![], vec![0, 1]]], 6)).unwrap();
    assert_eq!(wronskian_t_order(&s).unwrap(), 0);
    // {1 + t x, x^2} restricts to {1, x^2}
    let c = central_restriction(&family(&[vec![vec![1], vec![0, 1]], vec![vec![0, 0, 1]]], 6)).unwrap();
    assert!(c.sections[0].agrees_with(&TruncSeries::from_ints(&[1], 6)));
}

#[test]
fn wronskian_orders_of_documented_families() {
    assert_eq!(wronskian_t_order(&family(&[vec![vec![1]], vec![vec![], vec![0, 1]]], 6)).unwrap(), 1);
    assert_eq!(wronskian_t_order(&family(&[vec![vec![1]], vec![vec![0, 1]]], 6)).unwrap(), 0);
    assert_eq!(wronskian_t_order(&family(&[vec![vec![], vec![1, 1]], vec![vec![], vec![0, 1]]], 6)).unwrap(), 2);
}

#[test]
fn dependent_generic_fiber_asks_for_more_precision() {
    let fs = family(&[vec![vec![1, 1]], vec![vec![1, 1]]], 4);
    assert_eq!(saturate(&fs), Err(Error::RaiseTruncT));
}

#[test]
fn unequal_singularity_types_are_rejected() {
    let r = vec![ComponentCycle::default(), ComponentCycle::default(), ComponentCycle::default()];
    let tw = TwistTable {
        a: vec![vec![0; 3]; 3],
        node_incidence: vec![(0, 1, "P".into(), 0), (1, 2, "P'".into(), 1)],
    };
    assert!(matches!(limit_cycle_dr(&r, &tw, 2), Err(Error::UnsupportedSmoothing(_))));
    let equal = TwistTable {
        a: vec![vec![0; 3]; 3],
        node_incidence: vec![(0, 1, "P".into(), 1), (1, 2, "P'".into(), 1)],
    };
    assert_eq!(limit_cycle_dr(&r, &equal, 2).unwrap().degree(), 4);
}

#[test]
fn singularity_type_calculus() {
    assert_eq!(base_change(0, 3).unwrap(), 2);
    assert_eq!(blowdown(&[1, 2]).unwrap(), 4);
    let r = chain_refine(0, &[2, 3]).unwrap();
    assert_eq!((r.d, r.ell, r.types), (5, 1, vec![1, 2]));
    assert_eq!(m_e(&[0, 2]).unwrap(), 3);
    // refining then blowing the chain down recovers the base-changed type
    for k in 0..4u64 {
        for m in [vec![1u64, 1], vec![2, 3], vec![1, 2, 4]] {
            let r = chain_refine(k, &m).unwrap();
            assert_eq!(blowdown(&r.types).unwrap(), base_change(k, r.d).unwrap());
            assert_eq!(((k + 1) * r.d) % m.iter().sum::<u64>(), 0);
        }
    }
}

fn grid(max_t: usize, max_x: usize) -> impl Strategy<Value = Grid> {
    prop::collection::vec(prop::collection::vec(-3i64..=3, 1..=max_x + 1), 1..=max_t + 1)
}

proptest! {
    #[test]
    fn specialization_commutes_with_the_wronskian(grids in prop::collection::vec(grid(1, 3), 2..=3), t0 in -3i64..=3) {
        let fs = family(&grids, 16);
        let w = family_wronskian(&fs).unwrap();
        prop_assert!(w.t_precision > w.det.coeffs().len());
        let mut special = DensePoly::<BigQ>::zero();
        for (e, c) in w.det.coeffs().iter().enumerate() {
            special = &special + &c.scale(&Ring::pow(&q(t0), e as u32));
        }
        let polys: Vec<DensePoly<BigQ>> = grids.iter().map(|g| specialize(g, t0)).collect();
        prop_assert_eq!(special, wronskian_poly(&polys).unwrap());
    }

    #[test]
    fn saturation_is_idempotent_and_never_raises_the_order(grids in prop::collection::vec(grid(2, 3), 2..=3)) {
        let fs = family(&grids, 10);
        prop_assume!(!family_wronskian(&fs).unwrap().det.is_zero());
        if let Ok(s) = saturate(&fs) {
            prop_assert_eq!(saturate(&s).unwrap(), s.clone());
            let (before, after) = (wronskian_t_order(&fs), wronskian_t_order(&s));
            if let (Ok(b), Ok(a)) = (before, after) {
                prop_assert!(a <= b);
                prop_assert_eq!(a == b, saturate(&fs).unwrap() == fs);
            }
            for a in 0..4 {
                let (central, generic) = semicontinuity_check(&s, a).unwrap();
                prop_assert!(central >= generic);
            }
        }
    }
}
