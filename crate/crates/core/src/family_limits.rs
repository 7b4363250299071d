//! One-parameter degenerations: saturation over `k[[t]]`, limit linear
//! systems, the `t`-order of the family Wronskian, the limit ramification
//! cycle and the singularity-type calculus.

use std::collections::BTreeMap;

use num_integer::Integer;
use serde::Serialize;

use crate::error::{Error, Result};
use crate::exact::{
    exact_determinant, nullspace, rank, series_determinant, transpose, DensePoly, Ring, Scalar, TruncSeries, Valuation,
    EXACT,
};
use crate::linear_series::LocalSystem;

/// A series in `t` whose coefficients are series in `x`.
pub type BiSeries<T> = TruncSeries<TruncSeries<T>>;

/// Sections of a family over the formal disk, known modulo `(t^trunc_t, x^trunc_x)`.
#[derive(Debug, Clone, PartialEq)]
pub struct FamilySections<T> {
    pub sections: Vec<BiSeries<T>>,
    pub trunc_t: usize,
    pub trunc_x: usize,
    pub bundle_degree: usize,
    pub genus: usize,
}

fn clip<T: Ring>(s: &BiSeries<T>, trunc_t: usize, trunc_x: usize) -> BiSeries<T> {
    s.map(|inner| inner.truncate(trunc_x)).truncate(trunc_t)
}

impl<T: Scalar> FamilySections<T> {
    pub fn new(sections: Vec<BiSeries<T>>, trunc_t: usize, trunc_x: usize) -> Result<Self> {
        if sections.is_empty() {
            return Err(Error::InvalidArgument("a family needs at least one section".into()));
        }
        if trunc_t == 0 || trunc_x == 0 {
            return Err(Error::InvalidArgument("truncation orders must be positive".into()));
        }
        let sections = sections.iter().map(|s| clip(s, trunc_t, trunc_x)).collect();
        Ok(FamilySections { sections, trunc_t, trunc_x, bundle_degree: trunc_x - 1, genus: 0 })
    }

    /// Build from polynomials in `(t, x)`: `coeffs[i][j]` is the coefficient
    /// of `t^i x^j`.
    pub fn from_polys(polys: &[Vec<Vec<T>>], trunc_t: usize, trunc_x: usize) -> Result<Self> {
        let sections = polys
            .iter()
            .map(|p| BiSeries::exact(p.iter().map(|row| TruncSeries::exact(row.clone())).collect()))
            .collect();
        Self::new(sections, trunc_t, trunc_x)
    }

    pub fn with_degree(mut self, bundle_degree: usize, genus: usize) -> Self {
        self.bundle_degree = bundle_degree;
        self.genus = genus;
        self
    }

    pub fn dim(&self) -> usize {
        self.sections.len()
    }

    /// The `x`-coefficients `0..trunc_x` of the `t^0` image of each section.
    fn central_matrix(&self) -> Vec<Vec<T>> {
        self.sections
            .iter()
            .map(|s| {
                let c0 = s.coeff(0).unwrap_or_else(TruncSeries::zero);
                (0..self.trunc_x).map(|k| c0.coeff(k).unwrap_or_else(T::zero)).collect()
            })
            .collect()
    }

    /// Coefficient of `x^m` of a section, as a series in `t`.
    fn x_coefficient(&self, k: usize, m: usize) -> TruncSeries<T> {
        let s = &self.sections[k];
        TruncSeries::new(
            s.known().iter().map(|inner| inner.coeff(m).unwrap_or_else(T::zero)).collect(),
            s.order(),
        )
    }
}

/// Basis of the saturation `(V : t) = V`.
///
/// While the `t = 0` images are dependent, the dependency is subtracted
/// and the resulting section divided by `t`; each step lowers the
/// `t`-order of the coordinate determinant by one.
pub fn saturate<T: Scalar>(fs: &FamilySections<T>) -> Result<FamilySections<T>> {
    let mut out = fs.clone();
    let n = out.dim();
    let max_steps = n.saturating_mul(fs.trunc_t) + 1;
    for _ in 0..max_steps {
        let m = out.central_matrix();
        let deps = nullspace(&transpose(&m), n);
        let Some(c) = deps.into_iter().next() else {
            return Ok(out);
        };
        let j = c.iter().rposition(|v| !v.is_zero()).expect("nonzero kernel vector");
        let cj_inv = c[j].inv().expect("nonzero");
        let mut comb = BiSeries::<T>::zero();
        for (k, ck) in c.iter().enumerate() {
            if !ck.is_zero() {
                let factor = TruncSeries::constant(ck.clone() * cj_inv.clone());
                comb = comb + out.sections[k].scale(&factor);
            }
        }
        match comb.valuation() {
            Valuation::Exact(v) if v >= 1 => {}
            Valuation::Exact(_) => return Err(Error::Consistency("dependency did not cancel at t = 0".into())),
            Valuation::AtLeast(_) => return Err(Error::RaiseTruncT),
        }
        if comb.order() <= 1 {
            return Err(Error::RaiseTruncT);
        }
        out.sections[j] = comb.shift_down(1)?;
    }
    Err(Error::RaiseTruncT)
}

/// The limit system: the `t = 0` images of a saturated family.
pub fn central_restriction<T: Scalar>(fs: &FamilySections<T>) -> Result<LocalSystem<T>> {
    let m = fs.central_matrix();
    if rank(&m) < fs.dim() {
        return Err(Error::NotSaturated);
    }
    let sections = fs
        .sections
        .iter()
        .map(|s| s.coeff(0).unwrap_or_else(TruncSeries::zero).truncate(fs.trunc_x))
        .map(|s| TruncSeries::new(s.known().to_vec(), fs.trunc_x))
        .collect();
    LocalSystem::new(sections, fs.bundle_degree, fs.genus)
}

/// Wronskian in `x` of a family, as a polynomial in `t` with polynomial
/// coefficients in `x`, certified below `t^t_precision` and `x^x_precision`.
#[derive(Debug, Clone, PartialEq)]
pub struct FamilyWronskian<T> {
    pub det: DensePoly<DensePoly<T>>,
    pub t_precision: usize,
    pub x_precision: usize,
}

impl<T: Scalar> FamilyWronskian<T> {
    pub fn coeff(&self, e: usize, m: usize) -> T {
        self.det.coeffs().get(e).and_then(|c| c.coeffs().get(m).cloned()).unwrap_or_else(T::zero)
    }

    /// Whether two Wronskians agree on their common certified range.
    pub fn agrees_with(&self, other: &Self) -> bool {
        let mt = self.t_precision.min(other.t_precision);
        let mx = self.x_precision.min(other.x_precision);
        let te = mt.min(self.det.coeffs().len().max(other.det.coeffs().len()));
        (0..te).all(|e| {
            let xe = mx.min(self.det.coeffs().get(e).map_or(0, |c| c.coeffs().len()).max(
                other.det.coeffs().get(e).map_or(0, |c| c.coeffs().len()),
            ));
            (0..xe).all(|m| self.coeff(e, m) == other.coeff(e, m))
        })
    }
}

pub fn family_wronskian<T: Scalar>(fs: &FamilySections<T>) -> Result<FamilyWronskian<T>> {
    let n = fs.dim();
    let rows: Vec<Vec<BiSeries<T>>> = (0..n)
        .map(|i| fs.sections.iter().map(|s| s.map(|inner| inner.derivative_n(i))).collect())
        .collect();
    let lifted: Vec<Vec<DensePoly<DensePoly<T>>>> = rows
        .iter()
        .map(|row| {
            row.iter()
                .map(|s| DensePoly::new(s.known().iter().map(|inner| inner.to_poly()).collect()))
                .collect()
        })
        .collect();
    let det = exact_determinant(&lifted)?;
    // certified t-precision from the row rule
    let t_ords: Vec<usize> = rows.iter().map(|r| r.iter().map(|s| s.order()).min().unwrap_or(EXACT)).collect();
    let t_vals: Vec<usize> = rows
        .iter()
        .map(|r| r.iter().map(|s| s.valuation().lower_bound()).min().unwrap_or(EXACT))
        .collect();
    let total = t_vals.iter().fold(0usize, |a, v| a.saturating_add(*v));
    let t_precision = (0..n)
        .map(|i| {
            if t_ords[i] == EXACT {
                EXACT
            } else {
                t_ords[i].saturating_add(if total == EXACT { EXACT } else { total - t_vals[i] })
            }
        })
        .min()
        .unwrap_or(EXACT);
    let x_precision = rows
        .iter()
        .flat_map(|r| r.iter())
        .flat_map(|s| s.known().iter().map(|inner| inner.order()))
        .min()
        .unwrap_or(EXACT)
        .min(fs.trunc_x.saturating_sub(n - 1));
    Ok(FamilyWronskian { det, t_precision, x_precision })
}

/// Order in `t` of the Wronskian taken with respect to `x`.
pub fn wronskian_t_order<T: Scalar>(fs: &FamilySections<T>) -> Result<usize> {
    let w = family_wronskian(fs)?;
    for (e, coeff) in w.det.coeffs().iter().enumerate() {
        if e >= w.t_precision {
            break;
        }
        if coeff.coeffs().iter().take(w.x_precision).any(|c| !c.is_zero()) {
            return Ok(e);
        }
    }
    Err(Error::RaiseTruncT)
}

/// `(dim of the central system vanishing to order a, rank over k((t)) of
/// the sections vanishing to order a)`.
pub fn semicontinuity_check<T: Scalar>(fs: &FamilySections<T>, a: usize) -> Result<(usize, usize)> {
    let n = fs.dim();
    if a > fs.trunc_x {
        return Err(Error::RaiseTruncation);
    }
    let central: Vec<Vec<T>> = fs.central_matrix().into_iter().map(|r| r[..a].to_vec()).collect();
    let dim_central = n - if a == 0 { 0 } else { rank(&central) };
    let entries: Vec<Vec<TruncSeries<T>>> = (0..n).map(|k| (0..a).map(|m| fs.x_coefficient(k, m)).collect()).collect();
    let generic_rank = generic_rank(&entries)?;
    Ok((dim_central, n - generic_rank))
}

// Largest r with a certified nonzero r x r minor.
fn generic_rank<T: Scalar>(m: &[Vec<TruncSeries<T>>]) -> Result<usize> {
    let rows = m.len();
    let cols = m.first().map_or(0, |r| r.len());
    for r in (1..=rows.min(cols)).rev() {
        for rs in crate::exact::matrix::combinations(rows, r) {
            for cs in crate::exact::matrix::combinations(cols, r) {
                let sub: Vec<Vec<TruncSeries<T>>> =
                    rs.iter().map(|&i| cs.iter().map(|&j| m[i][j].clone()).collect()).collect();
                if let Valuation::Exact(_) = series_determinant(&sub)?.valuation() {
                    return Ok(r);
                }
            }
        }
    }
    Ok(0)
}

/// Twist integers `a[i][m]` and the nodes joining components.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct TwistTable {
    pub a: Vec<Vec<i64>>,
    /// `(component i, component j, node label, singularity type)`.
    pub node_incidence: Vec<(usize, usize, String, usize)>,
}

impl TwistTable {
    pub fn ell(&self, i: usize, j: usize) -> i64 {
        self.a[i][j] + self.a[j][i] - self.a[i][i] - self.a[j][j]
    }
}

/// A zero-cycle with optional whole-component part; labels keep it abstract.
#[derive(Debug, Clone, Default, PartialEq, Eq, Serialize)]
pub struct ComponentCycle {
    pub point_part: BTreeMap<String, u64>,
    pub component_part: BTreeMap<String, u64>,
}

impl ComponentCycle {
    pub fn points(pairs: &[(&str, u64)]) -> Self {
        let mut c = ComponentCycle::default();
        for (p, m) in pairs {
            c.add_point(p, *m);
        }
        c
    }

    pub fn add_point(&mut self, label: &str, m: u64) {
        if m > 0 {
            *self.point_part.entry(label.to_string()).or_insert(0) += m;
        }
    }

    pub fn degree(&self) -> u64 {
        self.point_part.values().sum()
    }

    pub fn is_empty(&self) -> bool {
        self.point_part.is_empty() && self.component_part.is_empty()
    }
}

/// `sum R_i + sum over nodes of n (n - 1 - l_ij) [P]`.
///
/// Nodes must be regular, or all of one common singularity type (then the
/// twist table is read in units of the refined chain components).
pub fn limit_cycle_dr(per_component: &[ComponentCycle], tw: &TwistTable, n: usize) -> Result<ComponentCycle> {
    let comps = tw.a.len();
    if tw.a.iter().any(|r| r.len() != comps) {
        return Err(Error::InconsistentTwist("twist matrix is not square".into()));
    }
    if per_component.len() != comps && !(comps == 0 && per_component.len() <= 1) {
        return Err(Error::InconsistentTwist(format!(
            "{} component cycles for {} components",
            per_component.len(),
            comps
        )));
    }
    if let Some(first) = tw.node_incidence.first() {
        if tw.node_incidence.iter().any(|nd| nd.3 != first.3) {
            return Err(Error::UnsupportedSmoothing("nodes of unequal singularity types".into()));
        }
    }
    let mut out = ComponentCycle::default();
    for c in per_component {
        for (p, m) in &c.point_part {
            out.add_point(p, *m);
        }
        for (p, m) in &c.component_part {
            *out.component_part.entry(p.clone()).or_insert(0) += m;
        }
    }
    let n = n as i64;
    for (i, j, label, _) in &tw.node_incidence {
        if *i >= comps || *j >= comps || i == j {
            return Err(Error::InconsistentTwist(format!("node {label} joins invalid components {i}, {j}")));
        }
        let coeff = n * (n - 1 - tw.ell(*i, *j));
        if coeff < 0 {
            return Err(Error::InconsistentTwist(format!("node {label} gets coefficient {coeff}")));
        }
        out.add_point(label, coeff as u64);
    }
    Ok(out)
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct ChainRefinement {
    pub d: u64,
    pub ell: u64,
    pub types: Vec<u64>,
}

/// Singularity type after a base change of degree `d`.
pub fn base_change(k: u64, d: u64) -> Result<u64> {
    if d == 0 {
        return Err(Error::InvalidArgument("base change degree must be positive".into()));
    }
    Ok((k + 1) * d - 1)
}

/// Type of the node left after contracting a chain with node types `ks`.
pub fn blowdown(ks: &[u64]) -> Result<u64> {
    if ks.is_empty() {
        return Err(Error::InvalidArgument("empty chain".into()));
    }
    Ok(ks.iter().sum::<u64>() + ks.len() as u64 - 1)
}

/// Minimal base change making a node of type `k` refinable into a chain
/// with relative weights `m`.
pub fn chain_refine(k: u64, m: &[u64]) -> Result<ChainRefinement> {
    if m.is_empty() || m.contains(&0) {
        return Err(Error::InvalidArgument("chain weights must be a nonempty list of positive integers".into()));
    }
    let s: u64 = m.iter().sum();
    let d = s / (k + 1).gcd(&s);
    let ell = (k + 1) * d / s;
    Ok(ChainRefinement { d, ell, types: m.iter().map(|mi| ell * mi - 1).collect() })
}

/// Multiplicity of an exceptional component: lcm of `k + 1` over its nodes.
pub fn m_e(types: &[u64]) -> Result<u64> {
    if types.is_empty() {
        return Err(Error::InvalidArgument("empty node list".into()));
    }
    Ok(types.iter().fold(1u64, |acc, k| acc.lcm(&(k + 1))))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::exact::BigQ;

    fn q(n: i64) -> BigQ {
        BigQ::from_int(n)
    }

    // coeffs[i][j] of t^i x^j
    fn fam(polys: &[&[&[i64]]]) -> FamilySections<BigQ> {
        let p: Vec<Vec<Vec<BigQ>>> =
            polys.iter().map(|s| s.iter().map(|row| row.iter().map(|&c| q(c)).collect()).collect()).collect();
        FamilySections::from_polys(&p, 6, 6).unwrap()
    }

    fn agrees(fs: &FamilySections<BigQ>, other: &FamilySections<BigQ>) -> bool {
        fs.sections.iter().zip(&other.sections).all(|(a, b)| {
            (0..fs.trunc_t.min(a.order()).min(b.order())).all(|k| {
                a.coeff(k).unwrap().agrees_with(&b.coeff(k).unwrap())
            })
        })
    }

    #[test]
    fn saturation_examples() {
        let s = saturate(&fam(&[&[&[1, 1]], &[&[], &[0, 1]]])).unwrap();
        assert!(agrees(&s, &fam(&[&[&[1, 1]], &[&[0, 1]]])));
        assert_eq!(s.sections[1].order(), 5);
        let s = saturate(&fam(&[&[&[1]], &[&[0, 1]]])).unwrap();
        assert_eq!(s, fam(&[&[&[1]], &[&[0, 1]]]));
        let s = saturate(&fam(&[&[&[], &[1]], &[&[], &[0, 1]]])).unwrap();
        assert!(agrees(&s, &fam(&[&[&[1]], &[&[0, 1]]])));
        assert_eq!(saturate(&s).unwrap(), s);
    }

    #[test]
    fn restriction_examples() {
        let c = central_restriction(&fam(&[&[&[1], &[0, 1]], &[&[0, 0, 1]]])).unwrap();
        assert!(c.sections[0].agrees_with(&TruncSeries::from_ints(&[1], EXACT)));
        assert!(c.sections[1].agrees_with(&TruncSeries::from_ints(&[0, 0, 1], EXACT)));
        assert_eq!(central_restriction(&fam(&[&[&[1]], &[&[], &[1]]])), Err(Error::NotSaturated));
    }

    #[test]
    fn wronskian_t_order_examples() {
        assert_eq!(wronskian_t_order(&fam(&[&[&[1]], &[&[], &[0, 1]]])).unwrap(), 1);
        assert_eq!(wronskian_t_order(&fam(&[&[&[1]], &[&[0, 1]]])).unwrap(), 0);
        assert_eq!(wronskian_t_order(&fam(&[&[&[], &[1, 1]], &[&[], &[0, 1]]])).unwrap(), 2);
    }

    #[test]
    fn semicontinuity_examples() {
        assert_eq!(semicontinuity_check(&fam(&[&[&[1, 1]], &[&[0, 1]]]), 1).unwrap(), (1, 1));
        assert_eq!(semicontinuity_check(&fam(&[&[&[1]], &[&[0, 1]]]), 0).unwrap(), (2, 2));
        assert_eq!(semicontinuity_check(&fam(&[&[&[1], &[0, 0, 1]], &[&[0, 1]]]), 2).unwrap(), (0, 0));
    }

    #[test]
    fn dr_examples() {
        let r = vec![ComponentCycle::points(&[("Q1", 2)]), ComponentCycle::points(&[("Q2", 1)])];
        // l_12 = a12 + a21 - a11 - a22
        let tw = TwistTable { a: vec![vec![0, 1], vec![0, 0]], node_incidence: vec![(0, 1, "P".into(), 0)] };
        let out = limit_cycle_dr(&r, &tw, 2).unwrap();
        assert_eq!(out, ComponentCycle::points(&[("Q1", 2), ("Q2", 1)]));
        let tw0 = TwistTable { a: vec![vec![0, 0], vec![0, 0]], node_incidence: vec![(0, 1, "P".into(), 0)] };
        assert_eq!(limit_cycle_dr(&r, &tw0, 2).unwrap(), ComponentCycle::points(&[("Q1", 2), ("Q2", 1), ("P", 2)]));
        let single = TwistTable { a: vec![vec![0]], node_incidence: vec![] };
        assert!(limit_cycle_dr(&[ComponentCycle::default()], &single, 3).unwrap().is_empty());
        let bad = TwistTable { a: vec![vec![0, 3], vec![0, 0]], node_incidence: vec![(0, 1, "P".into(), 0)] };
        assert!(matches!(limit_cycle_dr(&r, &bad, 2), Err(Error::InconsistentTwist(_))));
    }

    #[test]
    fn singularity_calculus() {
        assert_eq!(base_change(0, 3).unwrap(), 2);
        assert_eq!(blowdown(&[1, 2]).unwrap(), 4);
        assert_eq!(chain_refine(0, &[2, 3]).unwrap(), ChainRefinement { d: 5, ell: 1, types: vec![1, 2] });
        assert_eq!(m_e(&[0, 2]).unwrap(), 3);
        assert!(blowdown(&[]).is_err());
        assert!(chain_refine(1, &[]).is_err());
    }
}
