//! Ramification of a linear system at a point: order sequences, weights,
//! Wronskians and the special-point types.
//!
//! `n` is always the vector-space dimension of the system. The ordinary
//! order sequence is `0, 1, ..., n-1`; high type means top order `>= n+1`;
//! low type means the two largest orders are `>= n-1`.

use std::fmt;

use serde::Serialize;

use crate::error::{Error, Result};
use crate::exact::{exact_determinant, rank, rref, DensePoly, Scalar, TruncSeries, Valuation, EXACT};

/// Sections of a line bundle expanded in a local parameter at a point.
#[derive(Debug, Clone, PartialEq)]
pub struct LocalSystem<T> {
    pub sections: Vec<TruncSeries<T>>,
    pub bundle_degree: usize,
    pub genus: usize,
}

impl<T: Scalar> LocalSystem<T> {
    pub fn new(sections: Vec<TruncSeries<T>>, bundle_degree: usize, genus: usize) -> Result<Self> {
        if sections.is_empty() {
            return Err(Error::InvalidArgument("a linear system needs at least one section".into()));
        }
        Ok(LocalSystem { sections, bundle_degree, genus })
    }

    /// Exact polynomial sections; handy for rational curves.
    pub fn from_polys(polys: &[DensePoly<T>], bundle_degree: usize, genus: usize) -> Result<Self> {
        Self::new(polys.iter().map(|p| TruncSeries::from_poly(p, EXACT)).collect(), bundle_degree, genus)
    }

    pub fn dim(&self) -> usize {
        self.sections.len()
    }

    pub fn min_truncation(&self) -> usize {
        self.sections.iter().map(|s| s.order()).min().unwrap_or(EXACT)
    }

    /// Coefficient matrix, one row per section, columns `0..cols`.
    pub fn coefficient_matrix(&self, cols: usize) -> Result<Vec<Vec<T>>> {
        self.sections
            .iter()
            .map(|s| (0..cols).map(|k| s.coeff(k).ok_or(Error::RaiseTruncation)).collect())
            .collect()
    }
}

/// Strictly increasing vanishing orders at a point.
#[derive(Debug, Clone, PartialEq, Eq, Hash, Serialize)]
#[serde(transparent)]
pub struct OrderSequence(Vec<usize>);

impl OrderSequence {
    pub fn new(orders: Vec<usize>) -> Result<Self> {
        if orders.windows(2).any(|w| w[0] >= w[1]) {
            return Err(Error::InvalidArgument(format!("orders {orders:?} are not strictly increasing")));
        }
        Ok(OrderSequence(orders))
    }

    pub fn orders(&self) -> &[usize] {
        &self.0
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    /// Number of orders `>= a`: the dimension of the subsystem vanishing to
    /// order `a` at the point.
    pub fn dim_vanishing(&self, a: usize) -> usize {
        self.0.iter().filter(|&&o| o >= a).count()
    }
}

impl fmt::Display for OrderSequence {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let parts: Vec<String> = self.0.iter().map(|o| o.to_string()).collect();
        write!(f, "({})", parts.join(","))
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum PointClass {
    Ordinary,
    Ramification,
    SpecialHigh,
    SpecialLow,
    SpecialBoth,
}

impl PointClass {
    pub fn is_high(self) -> bool {
        matches!(self, PointClass::SpecialHigh | PointClass::SpecialBoth)
    }

    pub fn is_low(self) -> bool {
        matches!(self, PointClass::SpecialLow | PointClass::SpecialBoth)
    }

    pub fn as_str(self) -> &'static str {
        match self {
            PointClass::Ordinary => "ordinary",
            PointClass::Ramification => "ramification",
            PointClass::SpecialHigh => "special_high",
            PointClass::SpecialLow => "special_low",
            PointClass::SpecialBoth => "special_both",
        }
    }
}

impl fmt::Display for PointClass {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.as_str())
    }
}

/// The Wronskian at a point and its derivative in the local parameter.
#[derive(Debug, Clone, PartialEq)]
pub struct SpecialLocusWitness<T> {
    pub w: TruncSeries<T>,
    pub dw: TruncSeries<T>,
}

/// Vanishing orders by column reduction of the coefficient matrix: the
/// pivot columns of the row echelon form are exactly the orders.
pub fn order_sequence<T: Scalar>(sys: &LocalSystem<T>) -> Result<OrderSequence> {
    let d = sys.bundle_degree;
    if sys.min_truncation() <= d {
        return Err(Error::RaiseTruncation);
    }
    let m = sys.coefficient_matrix(d + 1)?;
    let (_, pivots) = rref(&m);
    if pivots.len() < sys.dim() {
        let known = sys.min_truncation().min(sys.sections.iter().map(|s| s.known().len()).max().unwrap_or(0).max(d + 1));
        let full = sys.coefficient_matrix(known)?;
        if rank(&full) < sys.dim() {
            return Err(Error::NotABasis);
        }
        return Err(Error::InvalidArgument(format!(
            "a section vanishes past the bundle degree {d}"
        )));
    }
    OrderSequence::new(pivots)
}

/// `sum_k (orders[k] - k)`.
pub fn ramification_weight(o: &OrderSequence) -> usize {
    o.0.iter().enumerate().map(|(k, &a)| a - k).sum()
}

pub fn classify_point(o: &OrderSequence, n: usize) -> PointClass {
    let orders = o.orders();
    let top = orders.last().copied().unwrap_or(0);
    if ramification_weight(o) == 0 {
        return PointClass::Ordinary;
    }
    let high = top > n;
    let low = n >= 2 && orders.len() >= 2 && orders[orders.len() - 2] + 1 >= n;
    match (high, low) {
        (true, true) => PointClass::SpecialBoth,
        (true, false) => PointClass::SpecialHigh,
        (false, true) => PointClass::SpecialLow,
        (false, false) => PointClass::Ramification,
    }
}

/// The `n x n` matrix whose row `i` holds the `i`-th derivatives.
pub fn wronskian_matrix<T: Scalar>(sections: &[TruncSeries<T>]) -> Vec<Vec<TruncSeries<T>>> {
    let n = sections.len();
    (0..n)
        .map(|i| sections.iter().map(|s| s.derivative_n(i)).collect())
        .collect()
}

/// Wronskian of exact polynomials.
pub fn wronskian_poly<T: Scalar>(sections: &[DensePoly<T>]) -> Result<DensePoly<T>> {
    let n = sections.len();
    let mut rows = Vec::with_capacity(n);
    let mut cur: Vec<DensePoly<T>> = sections.to_vec();
    for _ in 0..n {
        rows.push(cur.clone());
        cur = cur.iter().map(|p| p.derivative()).collect();
    }
    exact_determinant(&rows)
}

/// Local Wronskian with a certified valuation.
///
/// Every term of a Wronskian whose entries have valuations `a_j` has
/// valuation at least `sum a_j - n(n-1)/2`. Replacing one section by its
/// unknown tail therefore perturbs the determinant only in degrees
/// `>= weight + N_min - o_max`, which exceeds the weight whenever the
/// truncation exceeds every order.
pub fn wronskian_local<T: Scalar>(sys: &LocalSystem<T>) -> Result<SpecialLocusWitness<T>> {
    let orders = order_sequence(sys)?;
    let weight = ramification_weight(&orders);
    let polys: Vec<DensePoly<T>> = sys.sections.iter().map(|s| s.to_poly()).collect();
    let det = wronskian_poly(&polys)?;
    let n_min = sys.min_truncation();
    let o_max = *orders.orders().last().expect("nonempty");
    let order = if n_min == EXACT { EXACT } else { weight + n_min - o_max };
    let w = TruncSeries::from_poly(&det, order);
    match w.valuation() {
        Valuation::Exact(v) if v == weight => {}
        Valuation::Exact(v) => {
            return Err(Error::Consistency(format!("Wronskian valuation {v} differs from weight {weight}")))
        }
        Valuation::AtLeast(_) => return Err(Error::RaiseTruncation),
    }
    let dw = w.derivative();
    Ok(SpecialLocusWitness { w, dw })
}

/// Membership of a point in the special loci from the scalar jet rows.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub struct Membership {
    pub in_ve_low: bool,
    pub in_ve_high: bool,
    pub in_vsw: bool,
}

/// `a` holds the first `n-1` jet rows, `c` and `d_row` the next two.
///
/// Low type: every maximal minor of `a` vanishes. High type: every maximal
/// minor of `[a; c; d_row]` vanishes. The derived-Wronskian locus is cut by
/// `det [a; c] = det [a; d_row] = 0`.
pub fn special_membership_minors<T: Scalar>(a: &[Vec<T>], c: &[T], d_row: &[T]) -> Result<Membership> {
    let n = c.len();
    if n < 2 {
        return Err(Error::Shape("need n >= 2 columns".into()));
    }
    if a.len() != n - 1 || a.iter().any(|r| r.len() != n) || d_row.len() != n {
        return Err(Error::Shape(format!(
            "expected an {}x{n} block and two rows of length {n}",
            n - 1
        )));
    }
    let in_ve_low = rank(a) < n - 1;
    let mut m = a.to_vec();
    m.push(c.to_vec());
    m.push(d_row.to_vec());
    let in_ve_high = rank(&m) < n;
    let mut m1 = a.to_vec();
    m1.push(c.to_vec());
    let mut m2 = a.to_vec();
    m2.push(d_row.to_vec());
    let in_vsw = exact_determinant(&m1)?.is_zero() && exact_determinant(&m2)?.is_zero();
    Ok(Membership { in_ve_low, in_ve_high, in_vsw })
}

/// Scalar jet rows of the sections at the point: row `i` lists the
/// coefficients of `x^i`. Derivative rows differ by the nonzero factor `i!`.
pub fn jet_rows<T: Scalar>(sys: &LocalSystem<T>, rows: usize) -> Result<Vec<Vec<T>>> {
    (0..rows)
        .map(|i| {
            sys.sections
                .iter()
                .map(|s| s.coeff(i).ok_or(Error::RaiseTruncation))
                .collect()
        })
        .collect()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::exact::{BigQ, Ring};

    type S = TruncSeries<BigQ>;

    fn sys(secs: &[&[i64]], d: usize) -> LocalSystem<BigQ> {
        LocalSystem::new(secs.iter().map(|c| S::from_ints(c, d + 2)).collect(), d, 0).unwrap()
    }

    fn os(v: &[usize]) -> OrderSequence {
        OrderSequence::new(v.to_vec()).unwrap()
    }

    #[test]
    fn order_sequence_examples() {
        assert_eq!(order_sequence(&sys(&[&[1], &[0, 1], &[0, 0, 1]], 3)).unwrap(), os(&[0, 1, 2]));
        assert_eq!(order_sequence(&sys(&[&[1, 1], &[0, 1, 1], &[0, 0, 1]], 3)).unwrap(), os(&[0, 1, 2]));
        assert_eq!(order_sequence(&sys(&[&[0, 1], &[0, 0, 1], &[1, 0, 0, 1]], 3)).unwrap(), os(&[0, 1, 2]));
    }

    #[test]
    fn order_sequence_errors() {
        assert_eq!(order_sequence(&sys(&[&[1, 1], &[2, 2]], 3)), Err(Error::NotABasis));
        let short = LocalSystem::new(vec![S::from_ints(&[1], 2)], 3, 0).unwrap();
        assert_eq!(order_sequence(&short), Err(Error::RaiseTruncation));
    }

    #[test]
    fn weights() {
        assert_eq!(ramification_weight(&os(&[0, 1, 2])), 0);
        assert_eq!(ramification_weight(&os(&[0, 1, 3])), 1);
        assert_eq!(ramification_weight(&os(&[0, 2, 4])), 3);
    }

    #[test]
    fn classification() {
        assert_eq!(classify_point(&os(&[0, 1, 2]), 3), PointClass::Ordinary);
        assert_eq!(classify_point(&os(&[0, 1, 4]), 3), PointClass::SpecialHigh);
        assert_eq!(classify_point(&os(&[0, 2, 3]), 3), PointClass::SpecialLow);
        assert_eq!(classify_point(&os(&[0, 2, 4]), 3), PointClass::SpecialBoth);
        assert_eq!(classify_point(&os(&[0, 1, 3]), 3), PointClass::Ramification);
    }

    #[test]
    fn wronskian_examples() {
        let w = wronskian_local(&sys(&[&[1], &[0, 1]], 2)).unwrap();
        assert_eq!(w.w.coeff(0), Some(BigQ::one()));
        let w = wronskian_local(&sys(&[&[0, 1], &[0, 0, 1], &[1, 0, 0, 1]], 3)).unwrap();
        assert!(w.w.agrees_with(&S::from_ints(&[2, 0, 0, 2], EXACT)));
        let w = wronskian_local(&sys(&[&[1], &[0, 0, 1]], 2)).unwrap();
        assert_eq!(w.w.valuation(), Valuation::Exact(1));
        assert!(w.dw.agrees_with(&S::from_ints(&[2], EXACT)));
    }

    #[test]
    fn membership_examples() {
        let q = |n: i64| BigQ::from_int(n);
        let a = vec![vec![q(1), q(0), q(0)], vec![q(0), q(1), q(0)]];
        let m = special_membership_minors(&a, &[q(0), q(0), q(1)], &[q(1), q(2), q(3)]).unwrap();
        assert_eq!(m, Membership { in_ve_low: false, in_ve_high: false, in_vsw: false });
        let m = special_membership_minors(&a, &[q(1), q(1), q(0)], &[q(2), q(3), q(0)]).unwrap();
        assert!(m.in_ve_high && m.in_vsw && !m.in_ve_low);
        let low = vec![vec![q(1), q(1), q(0)], vec![q(2), q(2), q(0)]];
        let m = special_membership_minors(&low, &[q(0), q(0), q(1)], &[q(1), q(0), q(0)]).unwrap();
        assert!(m.in_ve_low && m.in_vsw);
        assert!(special_membership_minors(&low, &[q(0)], &[q(1)]).is_err());
    }
}
