use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

use super::poly::DensePoly;
use super::scalar::{Ring, Scalar};
use crate::error::{Error, Result};

/// Sentinel truncation order of a series known exactly (a polynomial).
pub const EXACT: usize = usize::MAX;

/// Valuation of a truncated series. A series whose known coefficients all
/// vanish only has a lower bound.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Valuation {
    Exact(usize),
    AtLeast(usize),
}

impl Valuation {
    /// The certified lower bound in either case.
    pub fn lower_bound(self) -> usize {
        match self {
            Valuation::Exact(v) | Valuation::AtLeast(v) => v,
        }
    }

    pub fn exact(self) -> Option<usize> {
        match self {
            Valuation::Exact(v) => Some(v),
            Valuation::AtLeast(_) => None,
        }
    }
}

impl fmt::Display for Valuation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Valuation::Exact(v) => write!(f, "{v}"),
            Valuation::AtLeast(n) if *n == EXACT => write!(f, "inf"),
            Valuation::AtLeast(n) => write!(f, ">= {n}"),
        }
    }
}

/// Power series in one variable known modulo `x^order`.
///
/// Coefficients at index `>= order` are unknown and never reported.
/// `order == EXACT` marks a series with no unknown tail.
#[derive(Debug, Clone, PartialEq)]
pub struct TruncSeries<R> {
    coeffs: Vec<R>,
    order: usize,
}

impl<R: Ring> TruncSeries<R> {
    pub fn new(mut coeffs: Vec<R>, order: usize) -> Self {
        if coeffs.len() > order {
            coeffs.truncate(order);
        }
        while coeffs.last().is_some_and(|c| c.is_zero()) {
            coeffs.pop();
        }
        TruncSeries { coeffs, order }
    }

    /// A polynomial viewed as an exactly known series.
    pub fn exact(coeffs: Vec<R>) -> Self {
        Self::new(coeffs, EXACT)
    }

    pub fn from_poly(p: &DensePoly<R>, order: usize) -> Self {
        Self::new(p.coeffs().to_vec(), order)
    }

    pub fn zero_to(order: usize) -> Self {
        TruncSeries { coeffs: Vec::new(), order }
    }

    pub fn constant(c: R) -> Self {
        Self::exact(vec![c])
    }

    pub fn monomial(c: R, k: usize) -> Self {
        let mut v = vec![R::zero(); k];
        v.push(c);
        Self::exact(v)
    }

    pub fn from_ints(ints: &[i64], order: usize) -> Self {
        Self::new(ints.iter().map(|&n| R::from_int(n)).collect(), order)
    }

    pub fn order(&self) -> usize {
        self.order
    }

    pub fn is_exact(&self) -> bool {
        self.order == EXACT
    }

    /// Known coefficients, trailing zeros stripped.
    pub fn known(&self) -> &[R] {
        &self.coeffs
    }

    /// Coefficient of `x^k`, or `None` when `k` is past the truncation.
    pub fn coeff(&self, k: usize) -> Option<R> {
        if k >= self.order {
            None
        } else {
            Some(self.coeffs.get(k).cloned().unwrap_or_else(R::zero))
        }
    }

    pub fn valuation(&self) -> Valuation {
        match self.coeffs.iter().position(|c| !c.is_zero()) {
            Some(v) => Valuation::Exact(v),
            None => Valuation::AtLeast(self.order),
        }
    }

    /// Polynomial representative: the known part.
    pub fn to_poly(&self) -> DensePoly<R> {
        DensePoly::new(self.coeffs.clone())
    }

    pub fn truncate(&self, order: usize) -> Self {
        Self::new(self.coeffs.clone(), order.min(self.order))
    }

    /// Coefficients agree wherever both series are known.
    pub fn agrees_with(&self, other: &Self) -> bool {
        let n = self.order.min(other.order);
        let len = self.coeffs.len().max(other.coeffs.len()).min(n);
        (0..len).all(|k| self.coeff(k) == other.coeff(k))
    }

    pub fn scale(&self, c: &R) -> Self {
        Self::new(self.coeffs.iter().map(|a| a.clone() * c.clone()).collect(), self.order)
    }

    pub fn map<S: Ring, F: Fn(&R) -> S>(&self, f: F) -> TruncSeries<S> {
        TruncSeries::new(self.coeffs.iter().map(f).collect(), self.order)
    }

    /// Multiply by `x^k`.
    pub fn shift_up(&self, k: usize) -> Self {
        let mut v = vec![R::zero(); k];
        v.extend(self.coeffs.iter().cloned());
        Self::new(v, self.order.saturating_add(k))
    }

    /// Divide by `x^k`; the series must be certified divisible.
    pub fn shift_down(&self, k: usize) -> Result<Self> {
        if self.valuation().lower_bound() < k {
            return Err(Error::InvalidArgument(format!("series not divisible by x^{k}")));
        }
        if self.order <= k {
            return Err(Error::RaiseTruncation);
        }
        let v = self.coeffs.iter().skip(k).cloned().collect();
        let order = if self.order == EXACT { EXACT } else { self.order - k };
        Ok(Self::new(v, order))
    }

    pub fn derivative(&self) -> Self {
        let v = self
            .coeffs
            .iter()
            .enumerate()
            .skip(1)
            .map(|(k, c)| c.clone() * R::from_int(k as i64))
            .collect();
        let order = if self.order == EXACT { EXACT } else { self.order.saturating_sub(1) };
        Self::new(v, order)
    }

    /// `i`-th derivative.
    pub fn derivative_n(&self, i: usize) -> Self {
        let mut s = self.clone();
        for _ in 0..i {
            s = s.derivative();
        }
        s
    }

    /// `self(inner)` for `inner` with positive valuation.
    pub fn compose(&self, inner: &Self) -> Result<Self> {
        let vi = inner.valuation().lower_bound();
        if vi == 0 {
            return Err(Error::InvalidArgument("inner series must vanish at 0".into()));
        }
        let mut acc = Self::zero();
        for c in self.coeffs.iter().rev() {
            acc = &acc * inner + Self::constant(c.clone());
        }
        if self.order != EXACT {
            acc = acc.truncate(self.order.saturating_mul(vi));
        }
        Ok(acc)
    }

    /// Quotient `self / rhs` computed by long division in `R[[x]]`; needs
    /// exact division by the leading coefficient of `rhs`.
    pub fn divide(&self, rhs: &Self) -> Result<Self> {
        let vb = rhs.valuation().exact().ok_or(Error::ZeroInput)?;
        let va = self.valuation();
        if va.lower_bound() < vb {
            return Err(Error::NotAUnit);
        }
        let lead = rhs.coeffs[vb].clone();
        let order = match va {
            Valuation::AtLeast(_) if self.order == EXACT => return Ok(Self::zero()),
            _ => {
                let a = if self.order == EXACT { EXACT } else { self.order.saturating_sub(vb) };
                let b = if rhs.order == EXACT {
                    EXACT
                } else {
                    (rhs.order - vb).saturating_add(va.lower_bound() - vb)
                };
                a.min(b)
            }
        };
        if order == EXACT {
            return self.exact_quotient(rhs, vb, &lead);
        }
        let mut q: Vec<R> = Vec::with_capacity(order);
        for k in 0..order {
            let mut acc = self.coeff(k + vb).unwrap_or_else(R::zero);
            for (i, qi) in q.iter().enumerate() {
                if let Some(b) = rhs.coeffs.get(k + vb - i) {
                    if !qi.is_zero() && !b.is_zero() {
                        acc = acc - qi.clone() * b.clone();
                    }
                }
            }
            q.push(acc.exact_div(&lead).ok_or(Error::NotAUnit)?);
        }
        Ok(Self::new(q, order))
    }

    // Both operands exact: the quotient exists only if it is a polynomial.
    fn exact_quotient(&self, rhs: &Self, vb: usize, lead: &R) -> Result<Self> {
        let q_len = self.coeffs.len().saturating_sub(vb);
        let mut q: Vec<R> = Vec::with_capacity(q_len);
        let mut rem: Vec<R> = self.coeffs.clone();
        for k in 0..q_len {
            let c = rem[k + vb].exact_div(lead).ok_or(Error::NotAUnit)?;
            for (i, b) in rhs.coeffs.iter().enumerate().skip(vb) {
                let idx = k + i;
                if idx < rem.len() {
                    rem[idx] = rem[idx].clone() - c.clone() * b.clone();
                } else if !(c.clone() * b.clone()).is_zero() {
                    return Err(Error::NotAUnit);
                }
            }
            q.push(c);
        }
        if rem.iter().any(|c| !c.is_zero()) {
            return Err(Error::NotAUnit);
        }
        Ok(Self::exact(q))
    }

    pub fn zero() -> Self {
        Self::exact(Vec::new())
    }

    pub fn is_zero_exact(&self) -> bool {
        self.coeffs.is_empty() && self.order == EXACT
    }
}

impl<T: Scalar> TruncSeries<T> {
    /// Inverse modulo `x^n` (capped by the input's own truncation).
    pub fn invert(&self, n: usize) -> Result<Self> {
        let c0 = match self.coeff(0) {
            Some(c) if !c.is_zero() => c,
            _ => return Err(Error::NotAUnit),
        };
        let inv0 = c0.inv().ok_or(Error::NotAUnit)?;
        let n = n.min(self.order);
        let mut out: Vec<T> = Vec::with_capacity(n);
        for k in 0..n {
            if k == 0 {
                out.push(inv0.clone());
                continue;
            }
            let mut acc = T::zero();
            for i in 1..=k.min(self.coeffs.len().saturating_sub(1)) {
                acc = acc + self.coeffs[i].clone() * out[k - i].clone();
            }
            out.push(-acc * inv0.clone());
        }
        Ok(Self::new(out, n))
    }

    /// Square root modulo `x^n` whose constant term is `root` (or the
    /// nonnegative rational square root when `root` is `None`).
    pub fn sqrt(&self, n: usize, root: Option<T>) -> Result<Self> {
        let c0 = self.coeff(0).ok_or(Error::RaiseTruncation)?;
        if c0.is_zero() {
            return Err(Error::BranchPoint);
        }
        let r0 = match root {
            Some(r) => {
                if r.clone() * r.clone() != c0 {
                    return Err(Error::InvalidArgument("supplied root does not square to the constant term".into()));
                }
                r
            }
            None => c0.exact_sqrt().ok_or(Error::NotASquare)?,
        };
        let two_r0_inv = (r0.clone() + r0.clone()).inv().ok_or(Error::NotAUnit)?;
        let n = n.min(self.order);
        let mut out: Vec<T> = Vec::with_capacity(n);
        for k in 0..n {
            if k == 0 {
                out.push(r0.clone());
                continue;
            }
            let mut acc = self.coeff(k).unwrap_or_else(T::zero);
            for i in 1..k {
                acc = acc - out[i].clone() * out[k - i].clone();
            }
            out.push(acc * two_r0_inv.clone());
        }
        Ok(Self::new(out, n))
    }

    /// Evaluate an exactly known series at a scalar.
    pub fn eval_exact(&self, x: &T) -> Option<T> {
        if !self.is_exact() {
            return None;
        }
        Some(self.to_poly().eval(x))
    }
}

impl<R: Ring> Ring for TruncSeries<R> {
    fn zero() -> Self {
        TruncSeries::zero()
    }
    fn one() -> Self {
        TruncSeries::constant(R::one())
    }
    /// Zero as far as known: no nonzero coefficient below the truncation.
    fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }
    fn from_int(n: i64) -> Self {
        TruncSeries::constant(R::from_int(n))
    }
    fn exact_div(&self, rhs: &Self) -> Option<Self> {
        self.divide(rhs).ok()
    }
}

impl<R: Ring> Add for TruncSeries<R> {
    type Output = Self;
    fn add(self, rhs: Self) -> Self {
        let order = self.order.min(rhs.order);
        let (mut long, short) = if self.coeffs.len() >= rhs.coeffs.len() {
            (self.coeffs, rhs.coeffs)
        } else {
            (rhs.coeffs, self.coeffs)
        };
        for (a, b) in long.iter_mut().zip(short) {
            *a = a.clone() + b;
        }
        Self::new(long, order)
    }
}

impl<R: Ring> Neg for TruncSeries<R> {
    type Output = Self;
    fn neg(self) -> Self {
        TruncSeries { coeffs: self.coeffs.into_iter().map(|c| -c).collect(), order: self.order }
    }
}

impl<R: Ring> Sub for TruncSeries<R> {
    type Output = Self;
    fn sub(self, rhs: Self) -> Self {
        self + (-rhs)
    }
}

impl<R: Ring> Mul for TruncSeries<R> {
    type Output = Self;
    fn mul(self, rhs: Self) -> Self {
        &self * &rhs
    }
}

impl<'a, R: Ring> Mul<&'a TruncSeries<R>> for &'a TruncSeries<R> {
    type Output = TruncSeries<R>;
    fn mul(self, rhs: &TruncSeries<R>) -> TruncSeries<R> {
        let v1 = self.valuation().lower_bound();
        let v2 = rhs.valuation().lower_bound();
        let order = self.order.saturating_add(v2).min(rhs.order.saturating_add(v1));
        if self.coeffs.is_empty() || rhs.coeffs.is_empty() {
            return TruncSeries::zero_to(order);
        }
        let len = (self.coeffs.len() + rhs.coeffs.len() - 1).min(order);
        let mut out = vec![R::zero(); len];
        for (i, a) in self.coeffs.iter().enumerate() {
            if a.is_zero() || i >= len {
                continue;
            }
            for (j, b) in rhs.coeffs.iter().enumerate() {
                if i + j >= len {
                    break;
                }
                out[i + j] = out[i + j].clone() + a.clone() * b.clone();
            }
        }
        TruncSeries::new(out, order)
    }
}

impl<R: Ring + fmt::Display> fmt::Display for TruncSeries<R> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.to_poly())?;
        if self.order != EXACT {
            write!(f, " + O(x^{})", self.order)?;
        }
        Ok(())
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::exact::scalar::BigQ;

    type S = TruncSeries<BigQ>;

    fn q(a: i64, b: i64) -> BigQ {
        BigQ::from_ratio(a, b)
    }

    #[test]
    fn invert_examples() {
        assert_eq!(S::from_ints(&[1], 5).invert(5).unwrap(), S::from_ints(&[1], 5));
        assert_eq!(S::from_ints(&[1, 1], 3).invert(3).unwrap(), S::from_ints(&[1, -1, 1], 3));
        assert_eq!(S::from_ints(&[2], 2).invert(2).unwrap(), S::new(vec![q(1, 2)], 2));
        assert_eq!(S::from_ints(&[0, 1], 4).invert(4), Err(Error::NotAUnit));
    }

    #[test]
    fn sqrt_examples() {
        assert_eq!(S::from_ints(&[1], 4).sqrt(4, None).unwrap(), S::from_ints(&[1], 4));
        let r = S::from_ints(&[1, 1], 3).sqrt(3, None).unwrap();
        assert_eq!(r, S::new(vec![q(1, 1), q(1, 2), q(-1, 8)], 3));
        assert_eq!(S::from_ints(&[4], 3).sqrt(3, None).unwrap(), S::from_ints(&[2], 3));
        assert_eq!(S::from_ints(&[0, 1], 3).sqrt(3, None), Err(Error::BranchPoint));
        assert_eq!(S::from_ints(&[2, 1], 3).sqrt(3, None), Err(Error::NotASquare));
        let neg = S::from_ints(&[4, 1], 3).sqrt(3, Some(q(-2, 1))).unwrap();
        assert_eq!(neg.coeff(0), Some(q(-2, 1)));
    }

    #[test]
    fn product_truncation_is_pessimistic() {
        // (x^2 + O(x^5)) * (1 + O(x^3)) is known modulo x^5 = min(5+0, 3+2)
        let a = S::from_ints(&[0, 0, 1], 5);
        let b = S::from_ints(&[1], 3);
        assert_eq!((&a * &b).order(), 5);
        let c = S::from_ints(&[0, 1], 3);
        assert_eq!((&a * &c).order(), 5);
        assert_eq!((&b * &c).order(), 3);
    }

    #[test]
    fn unknown_valuation_is_a_bound() {
        let s = S::from_ints(&[0, 0], 4);
        assert_eq!(s.valuation(), Valuation::AtLeast(4));
        assert_eq!(s.coeff(4), None);
        assert_eq!(S::from_ints(&[0, 3], 4).valuation(), Valuation::Exact(1));
    }

    #[test]
    fn division_over_nested_ring() {
        // (x + t x^2) / x over Q[[t]]
        type T2 = TruncSeries<S>;
        let one = S::from_ints(&[1], EXACT);
        let t = S::from_ints(&[0, 1], EXACT);
        let a = T2::exact(vec![S::zero(), one.clone(), t.clone()]);
        let b = T2::exact(vec![S::zero(), one.clone()]);
        assert_eq!(a.divide(&b).unwrap(), T2::exact(vec![one, t]));
    }

    #[test]
    fn derivative_and_compose() {
        let s = S::from_ints(&[1, 1, 1], 6);
        assert_eq!(s.derivative(), S::from_ints(&[1, 2], 5));
        let inner = S::from_ints(&[0, 1, 1], EXACT);
        // 1 + (x+x^2) + (x+x^2)^2 mod x^12
        let c = s.compose(&inner).unwrap();
        assert_eq!(c, S::from_ints(&[1, 1, 2, 2, 1], 6));
    }
}
