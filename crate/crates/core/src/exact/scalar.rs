//! Ring and field abstractions shared by the polynomial, series and
//! determinant code.
//!
//! [`Ring`] is the minimal surface the fraction-free determinant needs:
//! ring operations, a zero test and exact division (`None` when the quotient
//! leaves the ring). [`Scalar`] adds the field operations used by Gaussian
//! elimination, gcds and series inversion. Only exact number types implement
//! [`Scalar`]: floating point is deliberately absent.

use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

use num_bigint::BigInt;
use num_integer::{Integer, Roots};
use num_rational::Ratio;
use num_traits::{One, Signed, Zero};

pub trait Ring:
    Clone
    + PartialEq
    + fmt::Debug
    + Send
    + Sync
    + Add<Output = Self>
    + Sub<Output = Self>
    + Mul<Output = Self>
    + Neg<Output = Self>
{
    fn zero() -> Self;
    fn one() -> Self;
    fn is_zero(&self) -> bool;
    fn from_int(n: i64) -> Self;
    /// `self / rhs` when the quotient exists in the ring.
    fn exact_div(&self, rhs: &Self) -> Option<Self>;

    fn is_one(&self) -> bool {
        *self == Self::one()
    }

    fn pow(&self, e: u32) -> Self {
        let mut acc = Self::one();
        for _ in 0..e {
            acc = acc * self.clone();
        }
        acc
    }
}

/// An exact field of characteristic zero.
pub trait Scalar: Ring + fmt::Display + PartialOrd {
    fn inv(&self) -> Option<Self>;
    /// A square root inside the field, if one exists. The nonnegative root is
    /// returned for ordered fields.
    fn exact_sqrt(&self) -> Option<Self>;
    fn from_ratio(num: i64, den: i64) -> Self;

    /// Rescale a coefficient vector by a nonzero constant to keep entries
    /// small; used between steps of remainder sequences.
    fn normalize_coeffs(_coeffs: &mut [Self]) {}
}

impl<I> Ring for Ratio<I>
where
    I: Integer + Clone + Signed + fmt::Debug + Send + Sync + From<i64>,
{
    fn zero() -> Self {
        Zero::zero()
    }
    fn one() -> Self {
        One::one()
    }
    fn is_zero(&self) -> bool {
        Zero::is_zero(self)
    }
    fn from_int(n: i64) -> Self {
        Ratio::from_integer(I::from(n))
    }
    fn exact_div(&self, rhs: &Self) -> Option<Self> {
        if Zero::is_zero(rhs) {
            None
        } else {
            Some(self.clone() / rhs.clone())
        }
    }
}

impl<I> Scalar for Ratio<I>
where
    I: Integer + Clone + Signed + Roots + fmt::Debug + fmt::Display + Send + Sync + From<i64>,
{
    fn inv(&self) -> Option<Self> {
        if Zero::is_zero(self) {
            None
        } else {
            Some(self.recip())
        }
    }

    fn exact_sqrt(&self) -> Option<Self> {
        if self.is_negative() {
            return None;
        }
        let n = self.numer().sqrt();
        let d = self.denom().sqrt();
        if n.clone() * n.clone() == *self.numer() && d.clone() * d.clone() == *self.denom() {
            Some(Ratio::new(n, d))
        } else {
            None
        }
    }

    fn from_ratio(num: i64, den: i64) -> Self {
        Ratio::new(I::from(num), I::from(den))
    }

    /// Clear denominators and divide out the content.
    fn normalize_coeffs(coeffs: &mut [Self]) {
        let nonzero = || coeffs.iter().filter(|c| !Zero::is_zero(*c));
        let Some(first) = nonzero().next() else { return };
        let mut den = first.denom().clone();
        let mut num = first.numer().abs();
        for c in nonzero() {
            den = den.lcm(c.denom());
            num = num.gcd(c.numer());
        }
        let scale = Ratio::new(den, num);
        for c in coeffs.iter_mut() {
            *c = c.clone() * scale.clone();
        }
    }
}

/// Arbitrary-precision rational, the default scalar of the crate.
pub type BigQ = Ratio<BigInt>;

/// `n` choose `k` as a rational.
pub fn binomial<T: Scalar>(n: i64, k: i64) -> T {
    if k < 0 || n < 0 || k > n {
        return T::zero();
    }
    let mut acc = T::one();
    for i in 0..k {
        acc = acc * T::from_int(n - i);
        acc = acc.exact_div(&T::from_int(i + 1)).expect("nonzero");
    }
    acc
}

#[cfg(test)]
mod tests {
    use super::*;
    use num_rational::Rational64;

    #[test]
    fn rational_lowest_terms_past_64_bits() {
        let a = BigQ::new(BigInt::from(u64::MAX), BigInt::from(3));
        let b = BigQ::new(BigInt::from(u64::MAX), BigInt::from(6));
        let s = a + b;
        assert_eq!(s, BigQ::new(BigInt::from(u64::MAX), BigInt::from(2)));
        assert_eq!(s.to_string(), "18446744073709551615/2");
        let neg = BigQ::new(BigInt::from(4), BigInt::from(-6));
        assert_eq!(neg.to_string(), "-2/3");
    }

    #[test]
    fn sqrt_of_rational_squares() {
        assert_eq!(BigQ::from_ratio(9, 4).exact_sqrt(), Some(BigQ::from_ratio(3, 2)));
        assert_eq!(BigQ::from_ratio(2, 1).exact_sqrt(), None);
        assert_eq!(BigQ::from_ratio(-1, 1).exact_sqrt(), None);
        assert_eq!(Rational64::from_ratio(16, 25).exact_sqrt(), Some(Rational64::new(4, 5)));
    }

    #[test]
    fn binomials() {
        assert_eq!(binomial::<BigQ>(5, 2), BigQ::from_int(10));
        assert_eq!(binomial::<BigQ>(2, 3), BigQ::from_int(0));
        assert_eq!(binomial::<BigQ>(31, 2), BigQ::from_int(465));
    }
}
