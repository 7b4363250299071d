//! The coordinate ring `Q[x, y] / (y^2 - f)` as pairs `a(x) + b(x) y`.

use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};
use std::sync::Arc;

use crate::exact::{BigQ, DensePoly, Ring};

/// `a + b y`. The curve polynomial travels with the element; constants built
/// through [`Ring::zero`] / [`Ring::one`] carry none and never need it.
#[derive(Debug, Clone)]
pub struct HypElem {
    pub a: DensePoly<BigQ>,
    pub b: DensePoly<BigQ>,
    f: Option<Arc<DensePoly<BigQ>>>,
}

impl HypElem {
    pub fn new(a: DensePoly<BigQ>, b: DensePoly<BigQ>, f: &Arc<DensePoly<BigQ>>) -> Self {
        HypElem { a, b, f: Some(f.clone()) }
    }

    fn join(&self, other: &Self) -> Option<Arc<DensePoly<BigQ>>> {
        self.f.clone().or_else(|| other.f.clone())
    }

    fn curve(&self) -> &DensePoly<BigQ> {
        self.f.as_deref().expect("element without a curve used in y-arithmetic")
    }

    pub fn conj(&self) -> Self {
        HypElem { a: self.a.clone(), b: -self.b.clone(), f: self.f.clone() }
    }

    /// `a^2 - b^2 f`.
    pub fn norm(&self) -> DensePoly<BigQ> {
        if self.b.is_zero() {
            return &self.a * &self.a;
        }
        let bb = &self.b * &self.b;
        &self.a * &self.a - &bb * self.curve()
    }

    /// The derivation `2 y d/dx`: `a + b y -> (2 f b' + f' b) + 2 a' y`.
    pub fn derive(&self) -> Self {
        let a = if self.b.is_zero() {
            DensePoly::zero()
        } else {
            let f = self.curve();
            let two = BigQ::from_int(2);
            &self.b.derivative().scale(&two) * f + &self.b * &f.derivative()
        };
        HypElem { a, b: self.a.derivative().scale(&BigQ::from_int(2)), f: self.f.clone() }
    }

    pub fn eval(&self, x0: &BigQ, y0: &BigQ) -> BigQ {
        self.a.eval(x0) + self.b.eval(x0) * y0.clone()
    }
}

impl PartialEq for HypElem {
    fn eq(&self, other: &Self) -> bool {
        self.a == other.a && self.b == other.b
    }
}

impl Add for HypElem {
    type Output = Self;
    fn add(self, rhs: Self) -> Self {
        let f = self.join(&rhs);
        HypElem { a: self.a + rhs.a, b: self.b + rhs.b, f }
    }
}

impl Sub for HypElem {
    type Output = Self;
    fn sub(self, rhs: Self) -> Self {
        let f = self.join(&rhs);
        HypElem { a: self.a - rhs.a, b: self.b - rhs.b, f }
    }
}

impl Neg for HypElem {
    type Output = Self;
    fn neg(self) -> Self {
        HypElem { a: -self.a, b: -self.b, f: self.f }
    }
}

impl Mul for HypElem {
    type Output = Self;
    fn mul(self, rhs: Self) -> Self {
        let f = self.join(&rhs);
        let mut a = &self.a * &rhs.a;
        let bb = &self.b * &rhs.b;
        if !bb.is_zero() {
            let curve = f.as_deref().expect("element without a curve used in y-arithmetic");
            a = a + &bb * curve;
        }
        let b = &self.a * &rhs.b + &self.b * &rhs.a;
        HypElem { a, b, f }
    }
}

impl Ring for HypElem {
    fn zero() -> Self {
        HypElem { a: DensePoly::zero(), b: DensePoly::zero(), f: None }
    }
    fn one() -> Self {
        HypElem { a: DensePoly::constant(BigQ::from_int(1)), b: DensePoly::zero(), f: None }
    }
    fn is_zero(&self) -> bool {
        self.a.is_zero() && self.b.is_zero()
    }
    fn from_int(n: i64) -> Self {
        HypElem { a: DensePoly::constant(BigQ::from_int(n)), b: DensePoly::zero(), f: None }
    }
    fn exact_div(&self, rhs: &Self) -> Option<Self> {
        if rhs.is_zero() {
            return None;
        }
        let f = self.join(rhs);
        let rhs = HypElem { f: f.clone(), ..rhs.clone() };
        let num = HypElem { f: f.clone(), ..self.clone() } * rhs.conj();
        let den = rhs.norm();
        Some(HypElem { a: num.a.exact_div_poly(&den)?, b: num.b.exact_div_poly(&den)?, f })
    }
}

impl fmt::Display for HypElem {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match (self.a.is_zero(), self.b.is_zero()) {
            (_, true) => write!(f, "{}", self.a),
            (true, false) => write!(f, "({})*y", self.b),
            (false, false) => write!(f, "{} + ({})*y", self.a, self.b),
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn p(c: &[i64]) -> DensePoly<BigQ> {
        DensePoly::from_ints(c)
    }

    #[test]
    fn arithmetic_and_division() {
        let f = Arc::new(p(&[0, -1, 0, 1]));
        let y = HypElem::new(p(&[]), p(&[1]), &f);
        let h = HypElem::new(p(&[1, 1]), p(&[2]), &f);
        assert_eq!((y.clone() * y.clone()).a, *f);
        let prod = h.clone() * y.clone();
        assert_eq!(prod.exact_div(&y), Some(h.clone()));
        assert_eq!(prod.exact_div(&h), Some(y.clone()));
        assert_eq!(h.norm(), p(&[1, 2, 1]) - p(&[0, -4, 0, 4]));
        // y is not divisible by x + 1 in the coordinate ring
        assert_eq!(y.exact_div(&HypElem::new(p(&[1, 1]), p(&[]), &f)), None);
    }

    #[test]
    fn derivation_is_a_derivation() {
        let f = Arc::new(p(&[-1, 0, 0, 0, 0, 1]));
        let u = HypElem::new(p(&[1, 2, 0, 1]), p(&[0, 1]), &f);
        let v = HypElem::new(p(&[3, 0, 1]), p(&[2, 0, 0, 1]), &f);
        let lhs = (u.clone() * v.clone()).derive();
        let rhs = u.derive() * v.clone() + u * v.derive();
        assert_eq!(lhs, rhs);
        // delta(y) = f'
        let y = HypElem::new(p(&[]), p(&[1]), &f);
        assert_eq!(y.derive().a, f.derivative());
    }
}
