//! Local charts: `x - x0` at ordinary affine points, `y` at affine branch
//! points, and `tau` with `x = tau^-2`, `y = tau^-(2g+1) * unit` at infinity.

use super::rr::TwistedCanonicalSystem;
use super::{degree_of, CurvePoint, HyperellipticCurve};
use crate::error::{Error, Result};
use crate::exact::{BigQ, DensePoly, Ring, Scalar, TruncSeries};
use crate::linear_series::LocalSystem;

type QS = TruncSeries<BigQ>;

/// `p(x + x0)`.
fn recentre(p: &DensePoly<BigQ>, x0: &BigQ) -> DensePoly<BigQ> {
    p.compose(&DensePoly::new(vec![x0.clone(), BigQ::one()]))
}

/// `x - e` as a series in `s = y` at the branch point `(e, 0)`, from
/// `s^2 = u * h(e + u)` with `h = f / (x - e)`.
fn branch_x_series(c: &HyperellipticCurve, e: &BigQ, order: usize) -> Result<QS> {
    let lin = DensePoly::new(vec![-e.clone(), BigQ::one()]);
    let h = c.f.exact_div_poly(&lin).ok_or_else(|| Error::InvalidArgument(format!("{e} is not a root of f")))?;
    let h_e = QS::from_poly(&recentre(&h, e), crate::exact::EXACT);
    let s2 = QS::monomial(BigQ::one(), 2);
    let mut u = QS::zero_to(order);
    for _ in 0..order / 2 + 1 {
        let hu = if u.valuation().lower_bound() >= order {
            QS::constant(h_e.coeff(0).unwrap_or_else(BigQ::zero))
        } else {
            h_e.compose(&u)?
        };
        u = (&s2 * &hu.invert(order)?).truncate(order);
    }
    Ok(u)
}

fn poly_of_series(p: &DensePoly<BigQ>, x0: &BigQ, u: &QS) -> Result<QS> {
    let pe = QS::from_poly(&recentre(p, x0), crate::exact::EXACT);
    if u.valuation().lower_bound() >= u.order() {
        return Ok(QS::constant(pe.coeff(0).unwrap_or_else(BigQ::zero)));
    }
    pe.compose(u)
}

/// Expansion of the function `a(x) + b(x) y` at an affine point, to `n` terms.
pub fn expand_function(
    c: &HyperellipticCurve,
    a: &DensePoly<BigQ>,
    b: &DensePoly<BigQ>,
    p: &CurvePoint,
    n: usize,
) -> Result<QS> {
    let CurvePoint::Affine { x, y } = p else {
        return Err(Error::InvalidArgument("functions have poles at infinity".into()));
    };
    if y.is_zero() {
        let u = branch_x_series(c, x, n + 1)?;
        let av = poly_of_series(a, x, &u)?;
        let bv = poly_of_series(b, x, &u)?;
        Ok((av + &bv * &QS::monomial(BigQ::one(), 1)).truncate(n))
    } else {
        let fz = QS::from_poly(&recentre(&c.f, x), n);
        let yz = fz.sqrt(n, Some(y.clone()))?;
        let av = QS::from_poly(&recentre(a, x), n);
        let bv = QS::from_poly(&recentre(b, x), n);
        Ok((av + &bv * &yz).truncate(n))
    }
}

/// Expansion of section `idx` of `sys` at `p`, to at least `n` terms, in the
/// trivialization `z^{m_p} dz` of `omega(E)` (`z` the chart parameter and
/// `m_p` the allowed pole order), so orders are those of the line bundle.
pub fn local_expansion(sys: &TwistedCanonicalSystem, idx: usize, p: &CurvePoint, n: usize) -> Result<QS> {
    let s = sys.sections.get(idx).ok_or_else(|| Error::InvalidArgument(format!("no section {idx}")))?;
    let c = &sys.curve;
    let m = sys.pole_order_at(p);
    match p {
        CurvePoint::Infinity => at_infinity(sys, &s.a, &s.b, m, n),
        CurvePoint::Affine { x, y } => {
            let v = sys.denom.root_multiplicity(x).unwrap_or(0);
            if y.is_zero() {
                let k = n + 2 * v + 2;
                let u = branch_x_series(c, x, k + 1)?;
                let s1 = QS::monomial(BigQ::one(), 1);
                let num = poly_of_series(&s.a, x, &u)? + &poly_of_series(&s.b, x, &u)? * &s1;
                let dxy = u.derivative().shift_down(1)?;
                let den = poly_of_series(&sys.denom, x, &u)?.shift_down(2 * v)?;
                let r = (&num * &dxy).truncate(k) * den.invert(k)?;
                twist(r, m, 2 * v)
            } else {
                let k = n + v + 1;
                let fz = QS::from_poly(&recentre(&c.f, x), k);
                let yz = fz.sqrt(k, Some(y.clone()))?;
                let num = QS::from_poly(&recentre(&s.a, x), k) + &QS::from_poly(&recentre(&s.b, x), k) * &yz;
                let den = QS::from_poly(&recentre(&sys.denom, x), crate::exact::EXACT).shift_down(v)?;
                let r = (&num * &yz.invert(k)?).truncate(k) * den.invert(k)?;
                twist(r, m, v)
            }
        }
    }
}

/// Multiply by `z^{m - v}`.
fn twist(r: QS, m: usize, v: usize) -> Result<QS> {
    if m >= v {
        Ok(r.shift_up(m - v))
    } else {
        r.shift_down(v - m)
    }
}

fn at_infinity(sys: &TwistedCanonicalSystem, a: &DensePoly<BigQ>, b: &DensePoly<BigQ>, m: usize, n: usize) -> Result<QS> {
    let c = &sys.curve;
    let g = c.genus as i64;
    let lead = c.f.leading().ok_or(Error::ZeroInput)?.clone();
    let root = lead.exact_sqrt().ok_or(Error::NotASquare)?;
    // u(tau)^2 = F(tau^2), F(s) = s^{2g+1} f(1/s)
    let mut rev: Vec<BigQ> = c.f.coeffs().to_vec();
    rev.reverse();
    let f_rev = DensePoly::new(rev);
    let sq = |p: &DensePoly<BigQ>| -> DensePoly<BigQ> {
        let mut out = vec![BigQ::zero(); 2 * p.coeffs().len()];
        for (i, c) in p.coeffs().iter().enumerate() {
            out[2 * i] = c.clone();
        }
        DensePoly::new(out)
    };
    let k = n + 1;
    let u = QS::from_poly(&sq(&f_rev), k).sqrt(k, Some(root))?;
    let dd = degree_of(&sys.denom);
    let mut d_rev = sys.denom.coeffs().to_vec();
    d_rev.reverse();
    let d_tilde = QS::from_poly(&sq(&DensePoly::new(d_rev)), k);
    let base = m as i64 + 2 * dd;
    let mut pa = vec![BigQ::zero(); 1];
    let mut pb = vec![BigQ::zero(); 1];
    let place = |v: &mut Vec<BigQ>, e: i64, coef: &BigQ| -> Result<()> {
        if e < 0 {
            return Err(Error::Consistency("section has a pole beyond its allowed order at infinity".into()));
        }
        let e = e as usize;
        if v.len() <= e {
            v.resize(e + 1, BigQ::zero());
        }
        v[e] = v[e].clone() + coef.clone();
        Ok(())
    };
    for (i, coef) in a.coeffs().iter().enumerate() {
        if !coef.is_zero() {
            place(&mut pa, base + 2 * g - 2 - 2 * i as i64, coef)?;
        }
    }
    for (i, coef) in b.coeffs().iter().enumerate() {
        if !coef.is_zero() {
            place(&mut pb, base - 3 - 2 * i as i64, coef)?;
        }
    }
    let pa = QS::from_poly(&DensePoly::new(pa), k);
    let pb = QS::from_poly(&DensePoly::new(pb), k);
    let inner = (&pa * &u.invert(k)?).truncate(k) + pb;
    Ok((inner * d_tilde.invert(k)?).scale(&BigQ::from_int(-2)))
}

/// All sections of `sys` expanded at `p` as a [`LocalSystem`] (bundle degree
/// and genus taken from the system).
pub fn system_at(sys: &TwistedCanonicalSystem, p: &CurvePoint, n: usize) -> Result<LocalSystem<BigQ>> {
    let sections = (0..sys.dim()).map(|i| local_expansion(sys, i, p, n)).collect::<Result<Vec<_>>>()?;
    LocalSystem::new(sections, sys.degree(), sys.curve.genus)
}
