//! Ramification of twisted canonical systems through the global Wronskian.
//!
//! For sections `G_k dx/y` with `G_k = N_k / D`, the determinant
//! `W = det[delta^i N_k]` with `delta = 2y d/dx` lives in the coordinate
//! ring. At an affine point `P` the chart derivative differs from `delta` by
//! a unit, so the weight there is `ord_P W + n (m_P - ord_P D)`.

use super::local::system_at;
use super::rr::{rr_basis, twisted_system, Section, TwistedCanonicalSystem};
use super::{degree_of, CurvePoint, HyperellipticCurve, HypElem};
use crate::error::{Error, Result};
use crate::exact::{combinations, exact_determinant, BigQ, Degree, DensePoly, Ring, Scalar};
use crate::linear_series::{
    classify_point, order_sequence, ramification_weight, LocalSystem, OrderSequence, PointClass,
};

/// Points over the roots of `x_poly`: two per root when `sheets == 2`, one
/// per root on branch components or when a single sheet is singled out.
#[derive(Debug, Clone, PartialEq)]
pub struct LocusComponent {
    /// Primitive, squarefree.
    pub x_poly: DensePoly<BigQ>,
    pub sheets: usize,
    pub branch: bool,
    /// `(p, r)` for a one-sheet component: the point over `x0` has
    /// `y0 = -p(x0) / r(x0)`.
    pub sheet: Option<(DensePoly<BigQ>, DensePoly<BigQ>)>,
}

impl LocusComponent {
    fn new(x_poly: &DensePoly<BigQ>, sheets: usize, branch: bool, sheet: Option<(DensePoly<BigQ>, DensePoly<BigQ>)>) -> Self {
        LocusComponent { x_poly: x_poly.primitive(), sheets, branch, sheet }
    }

    pub fn point_count(&self) -> usize {
        self.x_poly.degree().finite().unwrap_or(0) * self.sheets
    }

    /// The points of the component with rational coordinates.
    pub fn rational_points(&self, c: &HyperellipticCurve) -> Vec<CurvePoint> {
        let mut out = Vec::new();
        for x0 in self.x_poly.rational_roots() {
            if self.branch {
                out.push(CurvePoint::Affine { x: x0, y: BigQ::zero() });
                continue;
            }
            match (&self.sheet, self.sheets) {
                (Some((p, r)), 1) => {
                    let y0 = -(p.eval(&x0) / r.eval(&x0));
                    out.push(CurvePoint::Affine { x: x0, y: y0 });
                }
                _ => {
                    if let Some(y0) = c.f.eval(&x0).exact_sqrt() {
                        out.push(CurvePoint::Affine { x: x0.clone(), y: y0.clone() });
                        out.push(CurvePoint::Affine { x: x0, y: -y0 });
                    }
                }
            }
        }
        out
    }
}

#[derive(Debug, Clone, PartialEq, Default)]
pub struct Locus {
    pub components: Vec<LocusComponent>,
}

impl Locus {
    pub fn is_empty(&self) -> bool {
        self.components.is_empty()
    }

    pub fn point_count(&self) -> usize {
        self.components.iter().map(|c| c.point_count()).sum()
    }

    /// Product of the component polynomials (squarefree: components have
    /// disjoint roots).
    pub fn defining_poly(&self) -> DensePoly<BigQ> {
        self.components
            .iter()
            .fold(DensePoly::constant(BigQ::one()), |acc, c| &acc * &c.x_poly)
            .primitive()
    }

    pub fn rational_points(&self, c: &HyperellipticCurve) -> Vec<CurvePoint> {
        self.components.iter().flat_map(|k| k.rational_points(c)).collect()
    }
}

#[derive(Debug, Clone, PartialEq)]
pub enum Support {
    Point(CurvePoint),
    Locus(LocusComponent),
}

#[derive(Debug, Clone, PartialEq)]
pub struct DivisorEntry {
    pub support: Support,
    /// Weight at each point of the support.
    pub weight: usize,
}

impl DivisorEntry {
    pub fn points(&self) -> usize {
        match &self.support {
            Support::Point(_) => 1,
            Support::Locus(l) => l.point_count(),
        }
    }

    pub fn total(&self) -> usize {
        self.points() * self.weight
    }
}

/// `det[delta^i N_k]` for the numerators of `sys`.
pub fn global_wronskian(sys: &TwistedCanonicalSystem) -> Result<HypElem> {
    let rows = derivative_rows(&sys.numerators(), sys.dim());
    exact_determinant(&rows)
}

fn derivative_rows(nums: &[HypElem], count: usize) -> Vec<Vec<HypElem>> {
    let mut rows: Vec<Vec<HypElem>> = Vec::with_capacity(count);
    let mut cur = nums.to_vec();
    for _ in 0..count {
        let next = cur.iter().map(|h| h.derive()).collect();
        rows.push(std::mem::replace(&mut cur, next));
    }
    rows
}

fn nonconstant(p: &DensePoly<BigQ>) -> bool {
    p.degree() > Degree::Finite(0)
}

/// Common zeros of `elems` at affine points whose `x` is not a root of
/// `exclude`.
///
/// The ideal they generate is a `Q[x]`-module spanned by `(a, b)` and
/// `y (a + b y) = (b f, a)`; its Hermite form `[(p, r), (0, q)]` describes
/// the zeros off the branch points.
pub fn ramification_locus(c: &HyperellipticCurve, elems: &[HypElem], exclude: &DensePoly<BigQ>) -> Result<Locus> {
    let mut vecs: Vec<(DensePoly<BigQ>, DensePoly<BigQ>)> = Vec::new();
    for h in elems.iter().filter(|h| !h.is_zero()) {
        vecs.push((h.a.clone(), h.b.clone()));
        vecs.push((&h.b * &c.f, h.a.clone()));
    }
    if vecs.is_empty() {
        return Err(Error::Consistency("every generator vanishes identically".into()));
    }
    loop {
        let nz: Vec<usize> = (0..vecs.len()).filter(|&i| !vecs[i].0.is_zero()).collect();
        if nz.len() <= 1 {
            break;
        }
        let piv = *nz.iter().min_by_key(|&&i| vecs[i].0.degree()).expect("nonempty");
        let (pp, pr) = vecs[piv].clone();
        for &i in nz.iter().filter(|&&i| i != piv) {
            let (quo, rem) = vecs[i].0.div_rem(&pp)?;
            let second = vecs[i].1.clone() - &quo * &pr;
            vecs[i] = (rem, second);
        }
    }
    let (p, r) = vecs
        .iter()
        .find(|v| !v.0.is_zero())
        .cloned()
        .ok_or_else(|| Error::Consistency("ideal has no pure-x element".into()))?;
    let q = vecs
        .iter()
        .filter(|v| v.0.is_zero())
        .fold(DensePoly::zero(), |acc, v| acc.gcd(&v.1));
    let mut locus = Locus::default();
    if !q.is_zero() && nonconstant(&q) {
        let q_sf = q.squarefree_part()?.remove_factors_of(&c.f).remove_factors_of(exclude);
        let two = q_sf.gcd(&p.gcd(&r));
        if nonconstant(&two) {
            locus.components.push(LocusComponent::new(&two, 2, false, None));
        }
        let one = q_sf.remove_factors_of(&r);
        if nonconstant(&one) {
            locus.components.push(LocusComponent::new(&one, 1, false, Some((p.clone(), r.clone()))));
        }
    }
    let branch = elems
        .iter()
        .fold(c.f.remove_factors_of(exclude), |acc, h| if h.is_zero() { acc } else { acc.gcd(&h.a) });
    if nonconstant(&branch) {
        locus.components.push(LocusComponent::new(&branch, 1, true, None));
    }
    Ok(locus)
}

#[derive(Debug, Clone, PartialEq)]
pub struct RamificationReport {
    pub n_dim: usize,
    pub degree: usize,
    pub genus: usize,
    pub pluecker_total: usize,
    /// Sum over the computed divisor.
    pub total_weight: usize,
    pub pole_point: CurvePoint,
    pub weight_at_pole_point: usize,
    pub off_pole_total: usize,
    pub entries: Vec<DivisorEntry>,
    pub samples: Vec<(CurvePoint, usize)>,
    pub wronskian: HypElem,
}

/// `n d + n (n - 1) (g - 1)`.
pub fn pluecker_total(n: usize, d: usize, g: usize) -> usize {
    n * d + n * n.saturating_sub(1) * (g - 1)
}

fn point_weight(sys: &TwistedCanonicalSystem, p: &CurvePoint) -> Result<(OrderSequence, usize)> {
    let ls = system_at(sys, p, sys.default_truncation())?;
    let o = order_sequence(&ls)?;
    let w = ramification_weight(&o);
    Ok((o, w))
}

fn weight_at_infinity(sys: &TwistedCanonicalSystem, w: &HypElem) -> Result<usize> {
    if sys.curve.leading_is_square() {
        return Ok(point_weight(sys, &CurvePoint::Infinity)?.1);
    }
    let g = sys.curve.genus as i64;
    let n = sys.dim() as i64;
    let ord_a = if w.a.is_zero() { i64::MAX } else { -2 * degree_of(&w.a) };
    let ord_b = if w.b.is_zero() { i64::MAX } else { -2 * degree_of(&w.b) - (2 * g + 1) };
    let weight = n * (2 * g - 2 + sys.n_inf as i64) + ord_a.min(ord_b) + 2 * n * degree_of(&sys.denom)
        + n * (n - 1) / 2 * (2 * g - 2);
    usize::try_from(weight).map_err(|_| Error::Consistency(format!("negative weight {weight} at infinity")))
}

/// The full ramification divisor of `sys`, the Plücker count, and weights at
/// the sample points.
pub fn twisted_ramification(sys: &TwistedCanonicalSystem, samples: &[CurvePoint]) -> Result<RamificationReport> {
    let c = &sys.curve;
    let n = sys.dim();
    let w = global_wronskian(sys)?;
    if w.is_zero() {
        return Err(Error::NotABasis);
    }
    let d = &sys.denom;
    let mut entries = Vec::new();
    let norm = w.norm();
    if nonconstant(&norm) {
        let ell = norm.squarefree_part()?.remove_factors_of(&c.f).remove_factors_of(d);
        let gab = w.a.gcd(&w.b);
        for (fac, vn) in norm.order_partition(&ell) {
            for (sub, gam) in gab.order_partition(&fac) {
                let heavy = vn - gam;
                if heavy == gam {
                    entries.push(locus_entry(&sub, 2, false, None, gam));
                    continue;
                }
                let rule = (gam == 0).then(|| (w.a.clone(), w.b.clone()));
                entries.push(locus_entry(&sub, 1, false, rule, heavy));
                if gam > 0 {
                    entries.push(locus_entry(&sub, 1, false, None, gam));
                }
            }
        }
    }
    let fb = c.f.remove_factors_of(d);
    let mut branch_orders: Vec<(DensePoly<BigQ>, usize)> = Vec::new();
    if w.a.is_zero() {
        for (fac, vb) in w.b.order_partition(&fb) {
            branch_orders.push((fac, 2 * vb + 1));
        }
    } else {
        for (fac, va) in w.a.order_partition(&fb) {
            if w.b.is_zero() {
                branch_orders.push((fac, 2 * va));
            } else {
                for (sub, vb) in w.b.order_partition(&fac) {
                    branch_orders.push((sub, (2 * va).min(2 * vb + 1)));
                }
            }
        }
    }
    for (fac, ord) in branch_orders.into_iter().filter(|(_, o)| *o > 0) {
        entries.push(locus_entry(&fac, 1, true, None, ord));
    }
    for x0 in d.rational_roots() {
        let over: Vec<CurvePoint> = if c.f.eval(&x0).is_zero() {
            vec![CurvePoint::Affine { x: x0, y: BigQ::zero() }]
        } else {
            let y0 = c.f.eval(&x0).exact_sqrt().ok_or(Error::NonRationalPoint)?;
            vec![CurvePoint::Affine { x: x0.clone(), y: y0.clone() }, CurvePoint::Affine { x: x0, y: -y0 }]
        };
        for p in over {
            let (_, wt) = point_weight(sys, &p)?;
            if wt > 0 {
                entries.push(DivisorEntry { support: Support::Point(p), weight: wt });
            }
        }
    }
    let w_inf = weight_at_infinity(sys, &w)?;
    if w_inf > 0 {
        entries.push(DivisorEntry { support: Support::Point(CurvePoint::Infinity), weight: w_inf });
    }
    let total_weight = entries.iter().map(|e| e.total()).sum();
    let pole_point = sys.affine_poles.first().map_or(CurvePoint::Infinity, |(p, _)| p.clone());
    let weight_at_pole_point = if pole_point == CurvePoint::Infinity { w_inf } else { point_weight(sys, &pole_point)?.1 };
    let samples = samples
        .iter()
        .map(|p| Ok((p.clone(), point_weight(sys, p)?.1)))
        .collect::<Result<Vec<_>>>()?;
    Ok(RamificationReport {
        n_dim: n,
        degree: sys.degree(),
        genus: c.genus,
        pluecker_total: pluecker_total(n, sys.degree(), c.genus),
        total_weight,
        off_pole_total: total_weight - weight_at_pole_point,
        pole_point,
        weight_at_pole_point,
        entries,
        samples,
        wronskian: w,
    })
}

fn locus_entry(
    x_poly: &DensePoly<BigQ>,
    sheets: usize,
    branch: bool,
    rule: Option<(DensePoly<BigQ>, DensePoly<BigQ>)>,
    weight: usize,
) -> DivisorEntry {
    DivisorEntry { support: Support::Locus(LocusComponent::new(x_poly, sheets, branch, rule)), weight }
}

/// Ramification divisor of the canonical system.
pub fn weierstrass_divisor(c: &HyperellipticCurve) -> Result<Vec<DivisorEntry>> {
    if c.genus < 2 {
        return Err(Error::InvalidArgument("need genus >= 2".into()));
    }
    Ok(twisted_ramification(&rr_basis(c, 0)?, &[])?.entries)
}

#[derive(Debug, Clone, PartialEq)]
pub struct TwoPointReport {
    pub a: usize,
    pub b: usize,
    pub pluecker_total: usize,
    pub total_weight: usize,
    pub weight_p: usize,
    pub weight_q: usize,
    pub max_other_weight: usize,
    /// Entries of weight above one away from `P` and `Q`.
    pub exceptional: Vec<DivisorEntry>,
}

/// Ramification of `omega(aP + bQ)` for two affine points.
pub fn two_point_report(c: &HyperellipticCurve, p: &CurvePoint, a: usize, q: &CurvePoint, b: usize) -> Result<TwoPointReport> {
    let sys = twisted_system(c, 0, &[(p.clone(), a), (q.clone(), b)])?;
    let r = twisted_ramification(&sys, std::slice::from_ref(q))?;
    let marked = |e: &DivisorEntry| matches!(&e.support, Support::Point(x) if x == p || x == q);
    let others: Vec<&DivisorEntry> = r.entries.iter().filter(|e| !marked(e)).collect();
    Ok(TwoPointReport {
        a,
        b,
        pluecker_total: r.pluecker_total,
        total_weight: r.total_weight,
        weight_p: r.weight_at_pole_point,
        weight_q: r.samples[0].1,
        max_other_weight: others.iter().map(|e| e.weight).max().unwrap_or(0),
        exceptional: others.into_iter().filter(|e| e.weight > 1).cloned().collect(),
    })
}

#[derive(Debug, Clone, PartialEq)]
pub struct ClassifierReport {
    pub g: usize,
    pub j: i8,
    pub condition_i: Locus,
    pub condition_ii: Locus,
}

/// Points `Q != A` (with `A` at infinity) satisfying the two limit
/// conditions for a special point of type `g + j`, `g = g_X + g_Y`:
/// (i) `Q` is special of that type for `omega_X((g_Y + 1) A)`;
/// (ii) `Q` ramifies for `omega_X((g_Y + 1 + j) A)`, when `B` is Weierstrass.
pub fn limit_special_classifier(
    cx: &HyperellipticCurve,
    a: &CurvePoint,
    g_y: usize,
    b_weierstrass: bool,
    j: i8,
) -> Result<ClassifierReport> {
    if *a != CurvePoint::Infinity {
        return Err(Error::InvalidArgument("A must be the point at infinity".into()));
    }
    if j != 1 && j != -1 {
        return Err(Error::InvalidArgument(format!("j must be +1 or -1, got {j}")));
    }
    if g_y == 0 {
        return Err(Error::InvalidArgument("need g_Y >= 1".into()));
    }
    let sys = rr_basis(cx, (g_y + 1) as i64)?;
    let g = sys.dim();
    let one = DensePoly::constant(BigQ::one());
    let nums = sys.numerators();
    let minors = if j == 1 {
        let rows = derivative_rows(&nums, g + 1);
        combinations(g + 1, g)
            .into_iter()
            .map(|sel| exact_determinant(&sel.iter().map(|&i| rows[i].clone()).collect::<Vec<_>>()))
            .collect::<Result<Vec<_>>>()?
    } else {
        let rows = derivative_rows(&nums, g - 1);
        combinations(g, g - 1)
            .into_iter()
            .map(|sel| {
                let sub: Vec<Vec<HypElem>> = rows.iter().map(|r| sel.iter().map(|&k| r[k].clone()).collect()).collect();
                exact_determinant(&sub)
            })
            .collect::<Result<Vec<_>>>()?
    };
    let condition_i = if minors.iter().all(|m| m.is_zero()) {
        return Err(Error::Consistency("every point is special; system is degenerate".into()));
    } else {
        ramification_locus(cx, &minors, &one)?
    };
    let condition_ii = if b_weierstrass {
        let sys2 = rr_basis(cx, g_y as i64 + 1 + j as i64)?;
        ramification_locus(cx, &[global_wronskian(&sys2)?], &one)?
    } else {
        Locus::default()
    };
    Ok(ClassifierReport { g, j, condition_i, condition_ii })
}

/// Classification of an explicit point for `omega_X((g_Y + 1) infinity)`.
pub fn classify_on_curve(cx: &HyperellipticCurve, g_y: usize, q: &CurvePoint) -> Result<(OrderSequence, PointClass)> {
    let sys = rr_basis(cx, (g_y + 1) as i64)?;
    let (o, _) = point_weight(&sys, q)?;
    let class = classify_point(&o, sys.dim());
    Ok((o, class))
}

#[derive(Debug, Clone, PartialEq)]
pub struct VPrime {
    pub g: usize,
    pub system: LocalSystem<BigQ>,
    pub orders: OrderSequence,
    pub class: PointClass,
    /// `(i, dim V'(-iQ), h0(omega(nP - iQ)))` for `i = 0..=g`.
    pub vanishing_table: Vec<(usize, usize, usize)>,
}

impl VPrime {
    pub fn vanishing_identity_holds(&self) -> bool {
        self.vanishing_table.iter().all(|&(_, lhs, rhs)| lhs == rhs + 1)
    }
}

/// `V' = H^0(omega(nP)) + H^0(omega((n+2)P - gQ))` with `P` at infinity and
/// `g = g_X + n`, expanded at `Q`.
pub fn vprime_subspace(cx: &HyperellipticCurve, n: usize, q: &CurvePoint) -> Result<VPrime> {
    if *q == CurvePoint::Infinity {
        return Err(Error::InvalidArgument("Q must differ from P".into()));
    }
    let g = cx.genus + n;
    let big = rr_basis(cx, n as i64 + 2)?;
    let small = rr_basis(cx, n as i64)?;
    let trunc = big.default_truncation();
    let big_at_q = system_at(&big, q, trunc)?;
    let jets = crate::linear_series::jet_rows(&big_at_q, g)?;
    let kernel = crate::exact::nullspace(&jets, big.dim());
    // small sections are the leading monomials of the big basis
    let small_as_big = TwistedCanonicalSystem { sections: small.sections.clone(), ..big.clone() };
    let small_at_q = system_at(&small_as_big, q, trunc)?;
    let small_jets = crate::linear_series::jet_rows(&small_at_q, g)?;
    if kernel.len() != 1 || !crate::exact::nullspace(&small_jets, small.dim()).is_empty() {
        return Err(Error::GenericityFailure);
    }
    let mut extra = Section { a: DensePoly::zero(), b: DensePoly::zero() };
    for (coef, s) in kernel[0].iter().zip(&big.sections) {
        extra.a = extra.a.clone() + s.a.scale(coef);
        extra.b = extra.b.clone() + s.b.scale(coef);
    }
    let mut sections = small.sections.clone();
    sections.push(extra);
    let vp = TwistedCanonicalSystem { sections, ..big.clone() };
    let system = system_at(&vp, q, trunc)?;
    let orders = order_sequence(&system)?;
    let small_orders = order_sequence(&small_at_q)?;
    let vanishing_table = (0..=g).map(|i| (i, orders.dim_vanishing(i), small_orders.dim_vanishing(i))).collect();
    Ok(VPrime { g, class: classify_point(&orders, g), system, orders, vanishing_table })
}

#[cfg(test)]
mod tests {
    use super::*;

    fn curve(s: &str) -> HyperellipticCurve {
        HyperellipticCurve::parse(s).unwrap()
    }

    fn q(n: i64) -> BigQ {
        BigQ::from_int(n)
    }

    #[test]
    fn weierstrass_totals() {
        for (f, g) in [("x^5-1", 2usize), ("x^7-x", 3), ("x^5-5x^3+4x", 2), ("2x^7+x+1", 3)] {
            let c = curve(f);
            let entries = weierstrass_divisor(&c).unwrap();
            let total: usize = entries.iter().map(|e| e.total()).sum();
            assert_eq!(total, g * g * g - g, "{f}");
            let points: usize = entries.iter().map(|e| e.points()).sum();
            assert_eq!(points, 2 * g + 2, "{f}");
            assert!(entries.iter().all(|e| e.weight == g * (g - 1) / 2));
        }
    }

    #[test]
    fn deg1_instance() {
        let c = curve("x^5+1");
        let a = c.point_over(&q(0)).unwrap();
        let sys = twisted_system(&c, 0, &[(a, 2)]).unwrap();
        let r = twisted_ramification(&sys, &[]).unwrap();
        assert_eq!((r.n_dim, r.degree), (3, 4));
        assert_eq!(r.pluecker_total, 18);
        assert_eq!(r.total_weight, 18);
        assert_eq!(r.weight_at_pole_point, 2);
        assert_eq!(r.off_pole_total, 16);
    }

    #[test]
    fn three_torsion() {
        let c = curve("x^3-x");
        let sys = rr_basis(&c, 3).unwrap();
        let r = twisted_ramification(&sys, &[]).unwrap();
        assert_eq!((r.total_weight, r.pluecker_total), (9, 9));
        assert_eq!(r.weight_at_pole_point, 1);
        assert_eq!(r.off_pole_total, 8);
        let rep = limit_special_classifier(&c, &CurvePoint::Infinity, 1, true, 1).unwrap();
        assert!(rep.condition_i.is_empty());
        assert_eq!(rep.condition_ii.components.len(), 1);
        let comp = &rep.condition_ii.components[0];
        assert_eq!(comp.x_poly, DensePoly::from_ints(&[-1, 0, -6, 0, 3]));
        assert_eq!(comp.sheets, 2);
        let rep = limit_special_classifier(&c, &CurvePoint::Infinity, 1, true, -1).unwrap();
        assert!(rep.condition_i.is_empty() && rep.condition_ii.is_empty());
        let rep = limit_special_classifier(&c, &CurvePoint::Infinity, 1, false, 1).unwrap();
        assert!(rep.condition_ii.is_empty());
    }

    #[test]
    fn classifier_points_reclassify() {
        let c = curve("x^5-1");
        for j in [1i8, -1] {
            let rep = limit_special_classifier(&c, &CurvePoint::Infinity, 1, false, j).unwrap();
            let pts = rep.condition_i.rational_points(&c);
            assert!(!pts.is_empty());
            for p in pts {
                let (_, class) = classify_on_curve(&c, 1, &p).unwrap();
                assert!(if j == 1 { class.is_high() } else { class.is_low() }, "{p}: {class}");
            }
        }
    }

    #[test]
    fn vprime_on_branch_point() {
        let c = curve("x^5-1");
        let v = vprime_subspace(&c, 1, &CurvePoint::Affine { x: q(1), y: q(0) }).unwrap();
        assert_eq!(v.g, 3);
        assert_eq!(v.system.dim(), 3);
        assert_eq!(v.orders.orders(), &[0, 2, 4]);
        assert_eq!(v.class, PointClass::SpecialBoth);
        assert!(v.vanishing_identity_holds());
    }

    #[test]
    fn two_point_plucker() {
        let c = curve("x^5-5x^3+4x");
        let p = CurvePoint::Affine { x: q(1), y: q(0) };
        let qq = CurvePoint::Affine { x: q(-2), y: q(0) };
        let r = two_point_report(&c, &p, 2, &qq, 3).unwrap();
        assert_eq!(r.total_weight, r.pluecker_total);
    }
}
