//! Sparse multivariate polynomials over the rationals, enough to check
//! closed-form identities symbolically.

use std::collections::BTreeMap;
use std::ops::{Add, Mul, Neg, Sub};

use super::scalar::{BigQ, Ring};

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct MPoly {
    nvars: usize,
    terms: BTreeMap<Vec<u32>, BigQ>,
}

impl MPoly {
    pub fn zero(nvars: usize) -> Self {
        MPoly { nvars, terms: BTreeMap::new() }
    }

    pub fn constant(nvars: usize, c: BigQ) -> Self {
        let mut p = Self::zero(nvars);
        p.push(vec![0; nvars], c);
        p
    }

    pub fn int(nvars: usize, c: i64) -> Self {
        Self::constant(nvars, BigQ::from_int(c))
    }

    /// The `k`-th variable.
    pub fn var(nvars: usize, k: usize) -> Self {
        let mut e = vec![0; nvars];
        e[k] = 1;
        let mut p = Self::zero(nvars);
        p.push(e, BigQ::one());
        p
    }

    fn push(&mut self, e: Vec<u32>, c: BigQ) {
        let entry = self.terms.entry(e).or_insert_with(BigQ::zero);
        *entry = entry.clone() + c;
        self.terms.retain(|_, v| !Ring::is_zero(v));
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn scale(&self, c: &BigQ) -> Self {
        let mut out = Self::zero(self.nvars);
        for (e, v) in &self.terms {
            out.push(e.clone(), v.clone() * c.clone());
        }
        out
    }

    pub fn pow(&self, k: u32) -> Self {
        (0..k).fold(Self::int(self.nvars, 1), |acc, _| &acc * self)
    }

    pub fn eval(&self, point: &[BigQ]) -> BigQ {
        self.terms
            .iter()
            .map(|(e, c)| {
                e.iter()
                    .zip(point)
                    .fold(c.clone(), |acc, (&k, x)| acc * Ring::pow(x, k))
            })
            .fold(BigQ::zero(), |a, b| a + b)
    }

    pub fn term_count(&self) -> usize {
        self.terms.len()
    }
}

impl Add for &MPoly {
    type Output = MPoly;
    fn add(self, rhs: &MPoly) -> MPoly {
        let mut out = self.clone();
        for (e, c) in &rhs.terms {
            out.push(e.clone(), c.clone());
        }
        out
    }
}

impl Sub for &MPoly {
    type Output = MPoly;
    fn sub(self, rhs: &MPoly) -> MPoly {
        self + &(-rhs)
    }
}

impl Neg for &MPoly {
    type Output = MPoly;
    fn neg(self) -> MPoly {
        self.scale(&BigQ::from_int(-1))
    }
}

impl Mul for &MPoly {
    type Output = MPoly;
    // exponents add when monomials multiply
    #[allow(clippy::suspicious_arithmetic_impl)]
    fn mul(self, rhs: &MPoly) -> MPoly {
        let mut out = MPoly::zero(self.nvars);
        for (e1, c1) in &self.terms {
            for (e2, c2) in &rhs.terms {
                let e: Vec<u32> = e1.iter().zip(e2).map(|(a, b)| a + b).collect();
                out.push(e, c1.clone() * c2.clone());
            }
        }
        out
    }
}

macro_rules! owned_ops {
    ($($tr:ident $m:ident),*) => {$(
        impl $tr for MPoly {
            type Output = MPoly;
            fn $m(self, rhs: MPoly) -> MPoly {
                (&self).$m(&rhs)
            }
        }
    )*};
}
owned_ops!(Add add, Sub sub, Mul mul);

macro_rules! mixed_ops {
    ($($tr:ident $m:ident),*) => {$(
        impl $tr<&MPoly> for MPoly {
            type Output = MPoly;
            fn $m(self, rhs: &MPoly) -> MPoly {
                (&self).$m(rhs)
            }
        }
        impl $tr<MPoly> for &MPoly {
            type Output = MPoly;
            fn $m(self, rhs: MPoly) -> MPoly {
                self.$m(&rhs)
            }
        }
    )*};
}
mixed_ops!(Add add, Sub sub, Mul mul);

impl Neg for MPoly {
    type Output = MPoly;
    fn neg(self) -> MPoly {
        -&self
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn ring_laws_and_eval() {
        let x = MPoly::var(2, 0);
        let y = MPoly::var(2, 1);
        let one = MPoly::int(2, 1);
        let lhs = (&x + &y).pow(2);
        let rhs = &x * &x + (&x * &y).scale(&BigQ::from_int(2)) + &y * &y;
        assert_eq!(lhs, rhs);
        assert!((&(&x + &one) - &(&one + &x)).is_zero());
        assert_eq!(lhs.eval(&[BigQ::from_int(2), BigQ::from_int(3)]), BigQ::from_int(25));
        assert_eq!(lhs.term_count(), 3);
    }
}
