//! Twist combinatorics on a curve of genus `g-1` with a chain
//! `E_1, ..., E_{g-1}` of rational curves attached at `A` and `B`.

use serde::Serialize;

use crate::error::{Error, Result};
use crate::exact::{BigQ, DensePoly, Ring};
use crate::linear_series::{order_sequence, ramification_weight, wronskian_poly, LocalSystem, OrderSequence};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub struct Decomposition {
    pub k: i64,
    pub ell: i64,
    pub kprime: i64,
    pub ellprime: i64,
}

fn check_range(g: i64, i: i64, j: i64) -> Result<()> {
    if g < 2 || i < 1 || i > g - 1 {
        return Err(Error::InvalidArgument(format!("need 1 <= i <= g-1, got g={g}, i={i}")));
    }
    if j < 0 || j > i * (g - i) - 1 {
        return Err(Error::InvalidArgument(format!("need 0 <= j <= {}, got j={j}", i * (g - i) - 1)));
    }
    Ok(())
}

/// `j = k i + ell = k' (g - i) + ell'` with `0 <= ell < i`, `0 <= ell' < g - i`.
pub fn decompose_j(g: i64, i: i64, j: i64) -> Result<Decomposition> {
    check_range(g, i, j)?;
    Ok(Decomposition { k: j / i, ell: j % i, kprime: j / (g - i), ellprime: j % (g - i) })
}

/// The twist coefficients of `D_{i,j}`: `c` on `E_1..E_i`, `cprime` on `E_i..E_{g-1}`.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct ChainTwistProfile {
    pub g: i64,
    pub i: i64,
    pub j: i64,
    pub k: i64,
    pub ell: i64,
    pub kprime: i64,
    pub ellprime: i64,
    pub c: Vec<i64>,
    pub cprime: Vec<i64>,
}

impl ChainTwistProfile {
    pub fn new(g: i64, i: i64, j: i64) -> Result<Self> {
        let Decomposition { k, ell, kprime, ellprime } = decompose_j(g, i, j)?;
        let c = (1..=i).map(|m| k * m + 0.max(ell - i + m + 1)).collect();
        let cprime = (i..g).map(|m| kprime * (g - m) + 0.max(ellprime + i - m + 1)).collect();
        Ok(ChainTwistProfile { g, i, j, k, ell, kprime, ellprime, c, cprime })
    }

    /// Coefficients of `D_{i,j}` on `E_1, ..., E_{g-1}`.
    pub fn d_coefficients(&self) -> Vec<i64> {
        let mut d = self.c.clone();
        d.extend_from_slice(&self.cprime[1..]);
        d
    }
}

/// The restriction of the twisted sheaf to the genus `g-1` curve:
/// `omega_X(a_coeff A + b_coeff B)`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub struct XRestriction {
    pub case: u8,
    pub a_coeff: i64,
    pub b_coeff: i64,
    pub degree: i64,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct TwistReport {
    pub profile: ChainTwistProfile,
    pub d_coefficients: Vec<i64>,
    /// Inclusive interval of chain indices carrying `F_{i,j}`.
    pub f_support: (i64, i64),
    /// Degree on `E_1..E_{g-1}`.
    pub degree_table: Vec<i64>,
    pub x_restriction: XRestriction,
    pub h0_pair: (i64, i64),
}

impl TwistReport {
    pub fn total_degree(&self) -> i64 {
        self.degree_table.iter().sum::<i64>() + self.x_restriction.degree
    }
}

pub fn twist_profile(g: i64, i: i64, j: i64) -> Result<TwistReport> {
    let p = ChainTwistProfile::new(g, i, j)?;
    let (k, ell, kp, ellp) = (p.k, p.ell, p.kprime, p.ellprime);
    let mut degree_table = vec![0i64; (g - 1) as usize];
    degree_table[(i - 1) as usize] = k + kp + 2;
    // indices 0 and g name the genus g-1 component; its twist is in the case label
    for m in [i - ell - 1, i + ellp + 1] {
        if (1..g).contains(&m) {
            degree_table[(m - 1) as usize] = -1;
        }
    }
    let low_end = ell == i - 1;
    let high_end = ellp == g - i - 1;
    let (case, a_coeff, b_coeff) = match (low_end, high_end) {
        (false, false) => (1, 1 - k, 1 - kp),
        (true, false) => (2, -k, 1 - kp),
        (false, true) => (3, 1 - k, -kp),
        (true, true) => (4, -k, -kp),
    };
    let x_restriction = XRestriction { case, a_coeff, b_coeff, degree: 2 * g - 4 + a_coeff + b_coeff };
    Ok(TwistReport {
        d_coefficients: p.d_coefficients(),
        f_support: (i - ell, i + ellp),
        degree_table,
        x_restriction,
        h0_pair: (k + kp + 1, g - 1 - k - kp),
        profile: p,
    })
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub struct WronskianMultiplicity {
    pub total_drop: i64,
    pub mult_e: i64,
}

/// `total_drop = sum_j (k + k' + 1)` and `mult_e = g i (g-i) - total_drop`.
pub fn wronskian_multiplicity(g: i64, i: i64) -> Result<WronskianMultiplicity> {
    check_range(g, i, 0)?;
    let mut total_drop = 0;
    for j in 0..i * (g - i) {
        let d = decompose_j(g, i, j)?;
        total_drop += d.k + d.kprime + 1;
    }
    Ok(WronskianMultiplicity { total_drop, mult_e: g * i * (g - i) - total_drop })
}

/// Sections `x, x^2, ..., x^{g-1}, alpha + beta x^g` on a rational chain
/// component, `P` at `x = 0` and `Q` at infinity.
pub fn canonical_chain_system(g: usize, alpha: &BigQ, beta: &BigQ) -> Result<LocalSystem<BigQ>> {
    if g < 2 {
        return Err(Error::InvalidArgument("need g >= 2".into()));
    }
    if alpha.is_zero() || beta.is_zero() {
        return Err(Error::InvalidArgument("alpha and beta must be nonzero".into()));
    }
    LocalSystem::from_polys(&chain_polys(g, alpha, beta), g, 0)
}

fn chain_polys(g: usize, alpha: &BigQ, beta: &BigQ) -> Vec<DensePoly<BigQ>> {
    let mut polys: Vec<DensePoly<BigQ>> = (1..g).map(|u| DensePoly::monomial(BigQ::one(), u)).collect();
    let mut top = vec![BigQ::zero(); g + 1];
    top[0] = alpha.clone();
    top[g] = beta.clone();
    polys.push(DensePoly::new(top));
    polys
}

#[derive(Debug, Clone, PartialEq)]
pub struct ChainSystemReport {
    pub wronskian: DensePoly<BigQ>,
    pub orders_at_p: OrderSequence,
    pub orders_at_q: OrderSequence,
    pub weight_at_p: usize,
    pub weight_at_q: usize,
    /// Zeros in the punctured line, with multiplicity.
    pub off_total: usize,
    pub simple_zeros: bool,
}

/// Wronskian data of [`canonical_chain_system`]: weights at `P`, `Q`, and
/// the zeros away from both.
pub fn chain_system_report(g: usize, alpha: &BigQ, beta: &BigQ) -> Result<ChainSystemReport> {
    let sys = canonical_chain_system(g, alpha, beta)?;
    let polys: Vec<DensePoly<BigQ>> = sys.sections.iter().map(|s| s.to_poly()).collect();
    let w = wronskian_poly(&polys)?;
    let orders_at_p = order_sequence(&sys)?;
    // chart at infinity: y = 1/x, sections y^g s(1/y)
    let flipped: Vec<DensePoly<BigQ>> = polys
        .iter()
        .map(|p| {
            let mut c = p.coeffs().to_vec();
            c.resize(g + 1, BigQ::zero());
            c.reverse();
            DensePoly::new(c)
        })
        .collect();
    let at_q = LocalSystem::from_polys(&flipped, g, 0)?;
    let orders_at_q = order_sequence(&at_q)?;
    let val = w.valuation().ok_or(Error::ZeroInput)?;
    let deg = w.degree().finite().ok_or(Error::ZeroInput)?;
    let stripped = DensePoly::new(w.coeffs()[val..].to_vec());
    Ok(ChainSystemReport {
        weight_at_p: ramification_weight(&orders_at_p),
        weight_at_q: ramification_weight(&orders_at_q),
        off_total: deg - val,
        simple_zeros: stripped.degree() == crate::exact::Degree::Finite(0) || stripped.is_squarefree(),
        wronskian: w,
        orders_at_p,
        orders_at_q,
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn decompositions() {
        assert_eq!(decompose_j(5, 2, 3).unwrap(), Decomposition { k: 1, ell: 1, kprime: 1, ellprime: 0 });
        assert_eq!(decompose_j(7, 3, 0).unwrap(), Decomposition { k: 0, ell: 0, kprime: 0, ellprime: 0 });
        assert_eq!(decompose_j(5, 2, 5).unwrap(), Decomposition { k: 2, ell: 1, kprime: 1, ellprime: 2 });
        assert!(decompose_j(5, 2, 6).is_err());
        assert!(decompose_j(5, 0, 0).is_err());
    }

    #[test]
    fn profile_examples() {
        let r = twist_profile(5, 2, 3).unwrap();
        assert_eq!(r.d_coefficients, vec![2, 4, 2, 1]);
        assert_eq!(r.f_support, (1, 2));
        assert_eq!(r.h0_pair, (3, 2));
        assert_eq!(twist_profile(5, 2, 2).unwrap().d_coefficients, vec![1, 3, 2, 1]);
        let r = twist_profile(6, 3, 0).unwrap();
        assert_eq!(r.d_coefficients, vec![0, 0, 1, 0, 0]);
        assert_eq!(r.f_support, (3, 3));
        assert_eq!(r.h0_pair, (1, 5));
        let p = ChainTwistProfile::new(5, 2, 5).unwrap();
        assert_eq!(p.c[1], 6);
        assert_eq!(p.cprime[0], 6);
    }

    #[test]
    fn degrees_sum_to_canonical() {
        for (g, i, j) in [(5, 2, 3), (5, 2, 5), (6, 1, 4), (4, 3, 2)] {
            assert_eq!(twist_profile(g, i, j).unwrap().total_degree(), 2 * g - 2);
        }
    }

    #[test]
    fn multiplicities() {
        assert_eq!(wronskian_multiplicity(5, 2).unwrap(), WronskianMultiplicity { total_drop: 15, mult_e: 15 });
        assert_eq!(wronskian_multiplicity(9, 1).unwrap().total_drop, 36);
        assert_eq!(wronskian_multiplicity(2, 1).unwrap().total_drop, 1);
    }

    #[test]
    fn chain_system_examples() {
        let one = BigQ::one();
        let r = chain_system_report(3, &one, &one).unwrap();
        assert_eq!(r.wronskian, DensePoly::from_ints(&[2, 0, 0, 2]));
        assert_eq!((r.weight_at_p, r.weight_at_q, r.off_total, r.simple_zeros), (0, 0, 3, true));
        let r = chain_system_report(2, &one, &one).unwrap();
        assert_eq!(r.wronskian, DensePoly::from_ints(&[-1, 0, 1]));
        assert_eq!(r.off_total, 2);
        assert!(canonical_chain_system(3, &BigQ::zero(), &one).is_err());
    }
}
