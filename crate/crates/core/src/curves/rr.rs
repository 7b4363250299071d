//! Riemann-Roch bases of `omega(n_inf * infinity + sum m_i P_i)`.
//!
//! A section is stored as `(a(x) + b(x) y) / D(x) * dx/y` with a common
//! denominator `D` supported at the affine poles.

use std::sync::Arc;

use super::local::expand_function;
use super::{degree_of, linear_power, CurvePoint, HyperellipticCurve, HypElem};
use crate::error::{Error, Result};
use crate::exact::{nullspace, BigQ, DensePoly, Ring};

#[derive(Debug, Clone, PartialEq)]
pub struct Section {
    pub a: DensePoly<BigQ>,
    pub b: DensePoly<BigQ>,
}

impl Section {
    pub fn numerator(&self, f: &Arc<DensePoly<BigQ>>) -> HypElem {
        HypElem::new(self.a.clone(), self.b.clone(), f)
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct TwistedCanonicalSystem {
    pub curve: HyperellipticCurve,
    pub n_inf: usize,
    pub affine_poles: Vec<(CurvePoint, usize)>,
    pub denom: DensePoly<BigQ>,
    pub sections: Vec<Section>,
}

impl TwistedCanonicalSystem {
    pub fn dim(&self) -> usize {
        self.sections.len()
    }

    /// Degree of `omega(E)`.
    pub fn degree(&self) -> usize {
        2 * self.curve.genus - 2 + self.n_inf + self.affine_poles.iter().map(|(_, m)| m).sum::<usize>()
    }

    /// Allowed pole order at `p`.
    pub fn pole_order_at(&self, p: &CurvePoint) -> usize {
        match p {
            CurvePoint::Infinity => self.n_inf,
            _ => self.affine_poles.iter().find(|(q, _)| q == p).map_or(0, |(_, m)| *m),
        }
    }

    /// Default expansion length: all orders are at most `d`, plus a guard term.
    pub fn default_truncation(&self) -> usize {
        self.degree() + 2
    }

    pub(crate) fn f_arc(&self) -> Arc<DensePoly<BigQ>> {
        Arc::new(self.curve.f.clone())
    }

    pub fn numerators(&self) -> Vec<HypElem> {
        let f = self.f_arc();
        self.sections.iter().map(|s| s.numerator(&f)).collect()
    }

    /// Human-readable basis, e.g. `x^2*dx/y` or `(x + 1)*dx/y + dx`.
    pub fn describe(&self) -> Vec<String> {
        self.sections
            .iter()
            .map(|s| {
                let mut parts = Vec::new();
                if !s.a.is_zero() {
                    parts.push(format!("({})*dx/y", s.a));
                }
                if !s.b.is_zero() {
                    parts.push(format!("({})*dx", s.b));
                }
                let num = parts.join(" + ");
                if self.denom.degree() > crate::exact::Degree::Finite(0) {
                    format!("[{num}] / ({})", self.denom)
                } else {
                    num
                }
            })
            .collect()
    }
}

/// Monomial basis of `H^0(omega(n * infinity))`: `x^u dx/y` with
/// `2g - 2 - 2u >= -n` and `x^u dx` with `-2u - 3 >= -n`.
pub fn rr_basis(c: &HyperellipticCurve, n: i64) -> Result<TwistedCanonicalSystem> {
    if n < 0 {
        return Err(Error::InvalidArgument(format!("pole order must be nonnegative, got {n}")));
    }
    let g = c.genus as i64;
    let mut sections = Vec::new();
    for u in 0..=(2 * g - 2 + n).div_euclid(2) {
        sections.push(Section { a: DensePoly::monomial(BigQ::one(), u as usize), b: DensePoly::zero() });
    }
    if n >= 3 {
        for u in 0..=(n - 3) / 2 {
            sections.push(Section { a: DensePoly::zero(), b: DensePoly::monomial(BigQ::one(), u as usize) });
        }
    }
    Ok(TwistedCanonicalSystem {
        curve: c.clone(),
        n_inf: n as usize,
        affine_poles: Vec::new(),
        denom: DensePoly::constant(BigQ::one()),
        sections,
    })
}

/// Basis of `H^0(omega(n_inf * infinity + sum m_i P_i))` for rational affine
/// `P_i` with distinct `x`-coordinates.
pub fn twisted_system(
    c: &HyperellipticCurve,
    n_inf: usize,
    poles: &[(CurvePoint, usize)],
) -> Result<TwistedCanonicalSystem> {
    if poles.is_empty() {
        return rr_basis(c, n_inf as i64);
    }
    let mut denom = DensePoly::constant(BigQ::one());
    // (point, required vanishing order of the numerator there)
    let mut conditions: Vec<(CurvePoint, usize)> = Vec::new();
    let mut seen_x: Vec<BigQ> = Vec::new();
    for (p, m) in poles {
        let CurvePoint::Affine { x, y } = p else {
            return Err(Error::InvalidArgument("use n_inf for the pole at infinity".into()));
        };
        c.point(x.clone(), y.clone())?;
        if *m == 0 {
            return Err(Error::InvalidArgument(format!("pole order at {p} must be positive")));
        }
        if seen_x.contains(x) {
            return Err(Error::InvalidArgument("affine poles need distinct x-coordinates".into()));
        }
        seen_x.push(x.clone());
        if y.is_zero() {
            let k = m.div_ceil(2);
            denom = &denom * &linear_power(x, k);
            if 2 * k > *m {
                conditions.push((p.clone(), 2 * k - m));
            }
        } else {
            denom = &denom * &linear_power(x, *m);
            conditions.push((CurvePoint::Affine { x: x.clone(), y: -y.clone() }, *m));
        }
    }
    let dd = degree_of(&denom);
    let g = c.genus as i64;
    let n = n_inf as i64;
    let a_max = g - 1 + dd + n.div_euclid(2);
    let b_max = dd + (n - 3).div_euclid(2);
    let mut monomials: Vec<Section> = Vec::new();
    for u in 0..=a_max {
        monomials.push(Section { a: DensePoly::monomial(BigQ::one(), u as usize), b: DensePoly::zero() });
    }
    for u in 0..=b_max {
        monomials.push(Section { a: DensePoly::zero(), b: DensePoly::monomial(BigQ::one(), u as usize) });
    }
    let mut rows: Vec<Vec<BigQ>> = Vec::new();
    let expansions: Vec<Vec<_>> = conditions
        .iter()
        .map(|(p, need)| monomials.iter().map(|s| expand_function(c, &s.a, &s.b, p, *need)).collect::<Result<Vec<_>>>())
        .collect::<Result<_>>()?;
    for ((_, need), exps) in conditions.iter().zip(&expansions) {
        for k in 0..*need {
            rows.push(exps.iter().map(|e| e.coeff(k).unwrap_or_else(BigQ::zero)).collect());
        }
    }
    let kernel = nullspace(&rows, monomials.len());
    let sections = kernel
        .into_iter()
        .map(|v| {
            let mut a = DensePoly::zero();
            let mut b = DensePoly::zero();
            for (coef, s) in v.iter().zip(&monomials) {
                if !coef.is_zero() {
                    a = a + s.a.scale(coef);
                    b = b + s.b.scale(coef);
                }
            }
            Section { a, b }
        })
        .collect();
    Ok(TwistedCanonicalSystem { curve: c.clone(), n_inf, affine_poles: poles.to_vec(), denom, sections })
}

#[cfg(test)]
mod tests {
    use super::*;

    fn curve(s: &str) -> HyperellipticCurve {
        HyperellipticCurve::parse(s).unwrap()
    }

    #[test]
    fn monomial_bases() {
        let c = curve("x^5-1");
        let s = rr_basis(&c, 0).unwrap();
        assert_eq!(s.describe(), vec!["(1)*dx/y", "(x)*dx/y"]);
        assert_eq!(rr_basis(&c, 2).unwrap().dim(), 3);
        assert_eq!(rr_basis(&c, 1).unwrap().dim(), 2);
        for n in 1..9 {
            assert_eq!(rr_basis(&c, n).unwrap().dim(), (n + 1) as usize);
        }
        let e = curve("x^3-x");
        let s = rr_basis(&e, 3).unwrap();
        assert_eq!(s.describe(), vec!["(1)*dx/y", "(x)*dx/y", "(1)*dx"]);
        assert!(rr_basis(&c, -1).is_err());
    }

    #[test]
    fn affine_pole_dimensions() {
        let c = curve("x^5+1");
        let a = c.point_over(&BigQ::from_int(0)).unwrap();
        for m in 1..6usize {
            let s = twisted_system(&c, 0, &[(a.clone(), m)]).unwrap();
            // nonspecial once d = 2 + m >= 3
            assert_eq!(s.dim(), 2 + m - 1, "m = {m}");
        }
        let c = curve("x^5-5x^3+4x");
        let p = CurvePoint::Affine { x: BigQ::from_int(1), y: BigQ::zero() };
        let q = CurvePoint::Affine { x: BigQ::from_int(-2), y: BigQ::zero() };
        for (a, b) in [(1, 1), (2, 3), (3, 3), (4, 1)] {
            let s = twisted_system(&c, 0, &[(p.clone(), a), (q.clone(), b)]).unwrap();
            let d = 2 + a + b;
            let expect = if d >= 3 { d - 1 } else { 2 };
            assert_eq!(s.dim(), expect, "a={a} b={b}");
        }
    }
}
