use proptest::prelude::*;
use weierstrass_limits::exact::{
    exact_determinant, nullspace, rank, series_invert, series_sqrt, squarefree_part, BigQ, DensePoly, Ring,
    TruncSeries,
};

fn q(n: i64) -> BigQ {
    BigQ::from_int(n)
}

fn to_q(m: &[Vec<i64>]) -> Vec<Vec<BigQ>> {
    m.iter().map(|r| r.iter().map(|&v| q(v)).collect()).collect()
}

// Laplace expansion along the first row.
fn cofactor_det(m: &[Vec<BigQ>]) -> BigQ {
    if m.is_empty() {
        return BigQ::one();
    }
    let mut acc = BigQ::zero();
    for j in 0..m.len() {
        let minor: Vec<Vec<BigQ>> =
            m[1..].iter().map(|r| r.iter().enumerate().filter(|(k, _)| *k != j).map(|(_, v)| v.clone()).collect()).collect();
        let term = m[0][j].clone() * cofactor_det(&minor);
        acc = if j % 2 == 0 { acc + term } else { acc - term };
    }
    acc
}

fn square(max: usize) -> impl Strategy<Value = Vec<Vec<i64>>> {
    (1..=max).prop_flat_map(|n| prop::collection::vec(prop::collection::vec(-9i64..=9, n), n))
}

fn poly(max_deg: usize) -> impl Strategy<Value = Vec<i64>> {
    prop::collection::vec(-5i64..=5, 1..=max_deg + 1)
}

proptest! {
    #[test]
    fn determinant_matches_cofactor_expansion(m in square(5)) {
        let m = to_q(&m);
        prop_assert_eq!(exact_determinant(&m).unwrap(), cofactor_det(&m));
    }

    #[test]
    fn determinant_is_alternating(m in square(5), a in 0usize..5, b in 0usize..5) {
        let n = m.len();
        let (a, b) = (a % n, b % n);
        let m = to_q(&m);
        let mut swapped = m.clone();
        swapped.swap(a, b);
        let d = exact_determinant(&m).unwrap();
        let expected = if a == b { d } else { -d };
        prop_assert_eq!(exact_determinant(&swapped).unwrap(), expected);
        if n > 1 && a != b {
            let mut repeated = m.clone();
            repeated[b] = repeated[a].clone();
            prop_assert!(exact_determinant(&repeated).unwrap().is_zero());
        }
    }

    #[test]
    fn determinant_is_multilinear(m in square(4), row in prop::collection::vec(-9i64..=9, 4), k in 0usize..4, c in -4i64..=4) {
        let n = m.len();
        let k = k % n;
        let m = to_q(&m);
        let extra: Vec<BigQ> = row[..n].iter().map(|&v| q(v)).collect();
        let mut mixed = m.clone();
        mixed[k] = m[k].iter().zip(&extra).map(|(a, b)| a.clone() * q(c) + b.clone()).collect();
        let mut other = m.clone();
        other[k] = extra;
        let lhs = exact_determinant(&mixed).unwrap();
        let rhs = exact_determinant(&m).unwrap() * q(c) + exact_determinant(&other).unwrap();
        prop_assert_eq!(lhs, rhs);
    }

    #[test]
    fn determinant_over_polynomials_evaluates(m in square(3), x in -3i64..=3) {
        // entries a + b x with b a fixed shift of the matrix
        let pm: Vec<Vec<DensePoly<BigQ>>> = m.iter().enumerate()
            .map(|(i, r)| r.iter().enumerate().map(|(j, &v)| DensePoly::from_ints(&[v, (i as i64 - j as i64)])).collect())
            .collect();
        let at: Vec<Vec<BigQ>> = pm.iter().map(|r| r.iter().map(|p| p.eval(&q(x))).collect()).collect();
        prop_assert_eq!(exact_determinant(&pm).unwrap().eval(&q(x)), exact_determinant(&at).unwrap());
    }

    #[test]
    fn rank_nullity(m in square(5)) {
        let n = m.len();
        let m = to_q(&m);
        let ker = nullspace(&m, n);
        prop_assert_eq!(rank(&m) + ker.len(), n);
        for v in ker {
            for r in &m {
                let dot = r.iter().zip(&v).fold(BigQ::zero(), |a, (x, y)| a + x.clone() * y.clone());
                prop_assert!(dot.is_zero());
            }
        }
    }

    #[test]
    fn squarefree_part_strips_repeated_factors(a in poly(3), b in poly(3)) {
        let a = DensePoly::<BigQ>::from_ints(&a);
        let b = DensePoly::<BigQ>::from_ints(&b);
        prop_assume!(!a.is_zero() && !b.is_zero());
        let p = &(&a * &a) * &b;
        let s = squarefree_part(&p).unwrap();
        prop_assert!(s.is_squarefree());
        prop_assert!(p.exact_div_poly(&s).is_some());
        // every root of p is a root of s: p divides s^deg p
        let k = p.degree().finite().unwrap().max(1) as u32;
        prop_assert!(Ring::pow(&s, k).exact_div_poly(&p).is_some());
        prop_assert_eq!(squarefree_part(&s).unwrap(), s);
    }

    #[test]
    fn series_inverse_is_inverse(c0 in 1i64..=6, rest in prop::collection::vec(-6i64..=6, 0..8), n in 1usize..12) {
        let mut coeffs = vec![c0];
        coeffs.extend(rest);
        let s = TruncSeries::<BigQ>::from_ints(&coeffs, 20);
        let inv = series_invert(&s, n).unwrap();
        let prod = (&s * &inv).truncate(n);
        prop_assert!(prod.agrees_with(&TruncSeries::from_ints(&[1], n)));
    }

    #[test]
    fn series_sqrt_squares_back(root in 1i64..=4, rest in prop::collection::vec(-6i64..=6, 0..8), n in 1usize..12) {
        let mut coeffs = vec![root * root];
        coeffs.extend(rest);
        let s = TruncSeries::<BigQ>::from_ints(&coeffs, 20);
        let r = series_sqrt(&s, n, Some(q(-root))).unwrap();
        prop_assert_eq!(r.coeff(0), Some(q(-root)));
        prop_assert!((&r * &r).truncate(n).agrees_with(&s.truncate(n)));
    }

    #[test]
    fn polynomial_parse_roundtrip(c in poly(6)) {
        let p = DensePoly::<BigQ>::from_ints(&c);
        let text = p.to_string();
        prop_assert_eq!(DensePoly::<BigQ>::parse(&text).unwrap(), p);
    }
}
