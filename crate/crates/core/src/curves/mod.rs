//! Explicit hyperelliptic curves `y^2 = f(x)` with `deg f = 2g + 1`:
//! Riemann-Roch bases of twisted canonical systems, local expansions,
//! Weierstrass divisors and the limit-point classifier.

mod hyp;
mod local;
mod ramification;
mod rr;

use std::fmt;

use crate::error::{Error, Result};
use crate::exact::{BigQ, Degree, DensePoly, Ring, Scalar};

pub use hyp::HypElem;
pub use local::{expand_function, local_expansion, system_at};
pub use ramification::{
    classify_on_curve, global_wronskian, limit_special_classifier, pluecker_total, ramification_locus,
    twisted_ramification, two_point_report, vprime_subspace, weierstrass_divisor, ClassifierReport, DivisorEntry,
    Locus, LocusComponent, RamificationReport, Support, TwoPointReport, VPrime,
};
pub use rr::{rr_basis, twisted_system, Section, TwistedCanonicalSystem};

#[derive(Debug, Clone, PartialEq)]
pub struct HyperellipticCurve {
    pub f: DensePoly<BigQ>,
    pub genus: usize,
}

impl HyperellipticCurve {
    pub fn new(f: DensePoly<BigQ>) -> Result<Self> {
        let deg = f.degree().finite().ok_or(Error::ZeroInput)?;
        if deg < 3 || deg % 2 == 0 {
            return Err(Error::InvalidArgument(format!("need odd degree >= 3, got {deg}")));
        }
        if !f.is_squarefree() {
            return Err(Error::InvalidArgument(format!("{f} is not squarefree")));
        }
        Ok(HyperellipticCurve { f, genus: (deg - 1) / 2 })
    }

    pub fn parse(s: &str) -> Result<Self> {
        Self::new(DensePoly::parse(s)?)
    }

    /// The point over `x0` with the given `y0`, checked on the curve.
    pub fn point(&self, x0: BigQ, y0: BigQ) -> Result<CurvePoint> {
        if y0.clone() * y0.clone() != self.f.eval(&x0) {
            return Err(Error::InvalidArgument(format!("({x0}, {y0}) is not on the curve")));
        }
        Ok(CurvePoint::Affine { x: x0, y: y0 })
    }

    /// A point over `x0` with nonnegative `y0`, if `f(x0)` is a rational square.
    pub fn point_over(&self, x0: &BigQ) -> Result<CurvePoint> {
        let v = self.f.eval(x0);
        let y0 = v.exact_sqrt().ok_or(Error::NonRationalPoint)?;
        Ok(CurvePoint::Affine { x: x0.clone(), y: y0 })
    }

    pub fn is_branch(&self, p: &CurvePoint) -> bool {
        match p {
            CurvePoint::Infinity => true,
            CurvePoint::Affine { y, .. } => y.is_zero(),
        }
    }

    /// Rational affine branch points, sorted by `x`.
    pub fn rational_branch_points(&self) -> Vec<CurvePoint> {
        self.f
            .rational_roots()
            .into_iter()
            .map(|e| CurvePoint::Affine { x: e, y: BigQ::zero() })
            .collect()
    }

    pub(crate) fn leading_is_square(&self) -> bool {
        self.f.leading().and_then(|l| l.exact_sqrt()).is_some()
    }
}

impl fmt::Display for HyperellipticCurve {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "y^2 = {}", self.f)
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub enum CurvePoint {
    Affine { x: BigQ, y: BigQ },
    Infinity,
}

impl CurvePoint {
    pub fn x(&self) -> Option<&BigQ> {
        match self {
            CurvePoint::Affine { x, .. } => Some(x),
            CurvePoint::Infinity => None,
        }
    }
}

impl fmt::Display for CurvePoint {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            CurvePoint::Affine { x, y } => write!(f, "({x}, {y})"),
            CurvePoint::Infinity => write!(f, "infinity"),
        }
    }
}

/// `(x - x0)^k`.
pub(crate) fn linear_power(x0: &BigQ, k: usize) -> DensePoly<BigQ> {
    let lin = DensePoly::new(vec![-x0.clone(), BigQ::one()]);
    let mut acc = DensePoly::constant(BigQ::one());
    for _ in 0..k {
        acc = &acc * &lin;
    }
    acc
}

pub(crate) fn degree_of(p: &DensePoly<BigQ>) -> i64 {
    match p.degree() {
        Degree::NegInfinity => -1,
        Degree::Finite(d) => d as i64,
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn curve_validation() {
        assert_eq!(HyperellipticCurve::parse("x^5-1").unwrap().genus, 2);
        assert_eq!(HyperellipticCurve::parse("x^7-x").unwrap().genus, 3);
        assert!(HyperellipticCurve::parse("x^4-1").is_err());
        assert!(HyperellipticCurve::parse("x^3-x^2").is_err());
        let c = HyperellipticCurve::parse("x^5+1").unwrap();
        assert_eq!(c.point_over(&BigQ::from_int(0)).unwrap(), CurvePoint::Affine { x: BigQ::from_int(0), y: BigQ::from_int(1) });
        assert_eq!(c.point_over(&BigQ::from_int(1)), Err(Error::NonRationalPoint));
        assert_eq!(HyperellipticCurve::parse("x^5-x").unwrap().rational_branch_points().len(), 3);
    }
}
