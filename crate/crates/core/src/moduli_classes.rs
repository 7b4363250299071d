//! Divisor classes on the moduli space of stable curves, written in the
//! basis `lambda, delta_0, ..., delta_{[g/2]}`.

use std::fmt;
use std::ops::{Add, Sub};

use serde::ser::{Serialize, SerializeStruct, Serializer};

use crate::error::{Error, Result};
use crate::exact::{binomial, scalar_to_string, BigQ, MPoly, Ring, Scalar};

fn q(n: i64) -> BigQ {
    BigQ::from_int(n)
}

fn check_genus(g: usize) -> Result<()> {
    if g < 4 {
        return Err(Error::InvalidArgument(format!("need g >= 4, got {g}")));
    }
    Ok(())
}

/// `lambda * lambda_coeff + sum_i delta_coeffs[i] * delta_i`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct DivisorClass {
    pub g: usize,
    pub lambda: BigQ,
    pub delta: Vec<BigQ>,
}

impl DivisorClass {
    pub fn new(g: usize, lambda: BigQ, delta: Vec<BigQ>) -> Result<Self> {
        if delta.len() != g / 2 + 1 {
            return Err(Error::Shape(format!("genus {g} needs {} boundary coefficients, got {}", g / 2 + 1, delta.len())));
        }
        Ok(DivisorClass { g, lambda, delta })
    }

    pub fn zero(g: usize) -> Self {
        DivisorClass { g, lambda: BigQ::zero(), delta: vec![BigQ::zero(); g / 2 + 1] }
    }

    fn zip(&self, other: &Self, op: impl Fn(BigQ, BigQ) -> BigQ) -> Self {
        assert_eq!(self.g, other.g, "classes of different genus");
        DivisorClass {
            g: self.g,
            lambda: op(self.lambda.clone(), other.lambda.clone()),
            delta: self.delta.iter().zip(&other.delta).map(|(a, b)| op(a.clone(), b.clone())).collect(),
        }
    }
}

impl Add for &DivisorClass {
    type Output = DivisorClass;
    fn add(self, rhs: &DivisorClass) -> DivisorClass {
        self.zip(rhs, |a, b| a + b)
    }
}

impl Sub for &DivisorClass {
    type Output = DivisorClass;
    fn sub(self, rhs: &DivisorClass) -> DivisorClass {
        self.zip(rhs, |a, b| a - b)
    }
}

impl fmt::Display for DivisorClass {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}*lambda", self.lambda)?;
        for (i, c) in self.delta.iter().enumerate() {
            if c < &BigQ::zero() {
                write!(f, " - {}*delta_{i}", -c.clone())?;
            } else {
                write!(f, " + {c}*delta_{i}")?;
            }
        }
        Ok(())
    }
}

impl Serialize for DivisorClass {
    fn serialize<S: Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        let mut st = s.serialize_struct("DivisorClass", 3)?;
        st.serialize_field("delta", &self.delta.iter().map(scalar_to_string).collect::<Vec<_>>())?;
        st.serialize_field("g", &self.g)?;
        st.serialize_field("lambda", &scalar_to_string(&self.lambda))?;
        st.end()
    }
}

/// Degrees of `lambda` and the `delta_i` on a test curve.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct TestFunctional {
    pub g: usize,
    pub on_lambda: BigQ,
    pub on_delta: Vec<BigQ>,
}

/// Evaluate a test curve on a class.
pub fn pair(f: &TestFunctional, c: &DivisorClass) -> Result<BigQ> {
    if f.on_delta.len() != c.delta.len() {
        return Err(Error::Shape(format!("functional has {} boundary entries, class {}", f.on_delta.len(), c.delta.len())));
    }
    Ok(f.on_delta
        .iter()
        .zip(&c.delta)
        .fold(f.on_lambda.clone() * c.lambda.clone(), |acc, (a, b)| acc + a.clone() * b.clone()))
}

/// `(3g^4+4g^3+9g^2+6g+2) lambda - g(g+1)(2g^2+g+3)/6 delta_0
///  - (g^3+3g^2+2g+2) sum i(g-i) delta_i`.
pub fn sw_class(g: usize) -> Result<DivisorClass> {
    check_genus(g)?;
    let gi = g as i64;
    let lambda = q(3 * gi.pow(4) + 4 * gi.pow(3) + 9 * gi * gi + 6 * gi + 2);
    let mut delta = vec![BigQ::new((-gi * (gi + 1) * (2 * gi * gi + gi + 3)).into(), 6.into())];
    let cubic = gi.pow(3) + 3 * gi * gi + 2 * gi + 2;
    for i in 1..=gi / 2 {
        delta.push(q(-cubic * i * (gi - i)));
    }
    DivisorClass::new(g, lambda, delta)
}

/// `lambda`-coefficients of the two special loci:
/// `a_{-1} = g^2(g-1)(3g-1)/2`, `a_1 = (g+1)(g+2)(3g^2+3g+2)/2`.
pub fn a_coeff(j: i64, g: i64) -> Result<BigQ> {
    let num = match j {
        -1 => g * g * (g - 1) * (3 * g - 1),
        1 => (g + 1) * (g + 2) * (3 * g * g + 3 * g + 2),
        _ => return Err(Error::InvalidArgument(format!("j must be +1 or -1, got {j}"))),
    };
    Ok(BigQ::new(num.into(), 2.into()))
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct CountBundle {
    pub g: i64,
    pub i: i64,
    pub j: i64,
    pub d: BigQ,
    pub dprime: BigQ,
    pub dprimeprime: BigQ,
    pub e: BigQ,
}

/// `e` in closed form.
pub fn e_closed(g: i64, i: i64, j: i64) -> BigQ {
    let gj = g + j;
    q(i * (g - i) * (g - i - 1) * (gj * gj * (g + 3) + 2 * gj - (g + 1)))
}

/// The limit counts on the test curve of index `i`; `e = d + d'' d'` is
/// checked against [`e_closed`].
pub fn count_bundle(g: i64, i: i64, j: i64) -> Result<CountBundle> {
    if j != 1 && j != -1 {
        return Err(Error::InvalidArgument(format!("j must be +1 or -1, got {j}")));
    }
    if g < 2 || i < 1 || i > g - 1 {
        return Err(Error::InvalidArgument(format!("need 1 <= i <= g-1, got g={g}, i={i}")));
    }
    let gj = g + j;
    let d = q((g - i) * (g - i - 1) * (gj * gj * (i + 1) * (i + 1) - (g - i + j) * (g - i + j)));
    let dprime = q(i * gj * gj - i);
    let dprimeprime = q((g - i - 1) * (g - i) * (g - i + 1));
    let e = d.clone() + dprimeprime.clone() * dprime.clone();
    if e != e_closed(g, i, j) {
        return Err(Error::Consistency(format!("count identity fails at g={g}, i={i}, j={j}")));
    }
    Ok(CountBundle { g, i, j, d, dprime, dprimeprime, e })
}

/// The family of curves `X cup_P Y` as `P` moves on `X` of genus `g - i`:
/// `lambda -> 0`, `delta_i -> 2(1 - g + i)`.
pub fn gamma_functional(g: usize, i: usize) -> Result<TestFunctional> {
    if i < 1 || i > g / 2 {
        return Err(Error::InvalidArgument(format!("need 1 <= i <= {}, got {i}", g / 2)));
    }
    let mut on_delta = vec![BigQ::zero(); g / 2 + 1];
    on_delta[i] = q(2 * (1 - g as i64 + i as i64));
    Ok(TestFunctional { g, on_lambda: BigQ::zero(), on_delta })
}

/// A pencil of plane cubics glued to a fixed curve of genus `g - 1`:
/// `lambda -> 1`, `delta_0 -> 12`, `delta_1 -> -1`.
pub fn pencil_functional(g: usize) -> Result<TestFunctional> {
    check_genus(g)?;
    let mut on_delta = vec![BigQ::zero(); g / 2 + 1];
    on_delta[0] = q(12);
    on_delta[1] = q(-1);
    Ok(TestFunctional { g, on_lambda: q(1), on_delta })
}

/// Derived versus printed boundary coefficient of a special locus.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct BComparison {
    pub j: i64,
    pub i: usize,
    pub derived: BigQ,
    pub printed: BigQ,
    /// `printed / derived`.
    pub ratio: BigQ,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct EClasses {
    pub g: usize,
    pub e_minus: DivisorClass,
    pub e_plus: DivisorClass,
    pub comparison: Vec<BComparison>,
}

/// The closed form printed for `b_{j,i}`.
pub fn printed_b(g: i64, i: i64, j: i64) -> BigQ {
    let gj = g + j;
    q(i * (g - i) * (gj * gj * (g + 3) + 2 * gj - (g + 1)))
}

/// Solve for the classes of the two special loci: `b_{j,i}` from the
/// `gamma_i` test curves, `b_{j,0}` from `a_j - 12 b_{j,0} + b_{j,1} = 0`.
pub fn solve_e_classes(g: usize) -> Result<EClasses> {
    check_genus(g)?;
    let gi = g as i64;
    let mut classes = Vec::new();
    let mut comparison = Vec::new();
    for j in [-1i64, 1] {
        let a = a_coeff(j, gi)?;
        let mut b = vec![BigQ::zero(); g / 2 + 1];
        #[allow(clippy::needless_range_loop)]
        for i in 1..=g / 2 {
            let e = count_bundle(gi, i as i64, j)?.e;
            // pairing gives -b * 2(1 - g + i) = e
            let gamma = gamma_functional(g, i)?.on_delta[i].clone();
            let derived = e / (-gamma);
            let printed = printed_b(gi, i as i64, j);
            comparison.push(BComparison {
                j,
                i,
                ratio: printed.clone() / derived.clone(),
                derived: derived.clone(),
                printed,
            });
            b[i] = derived;
        }
        b[0] = (a.clone() + b[1].clone()) / q(12);
        classes.push(DivisorClass::new(g, a, b.into_iter().map(|x| -x).collect())?);
    }
    let e_plus = classes.pop().expect("two classes");
    let e_minus = classes.pop().expect("two classes");
    Ok(EClasses { g, e_minus, e_plus, comparison })
}

/// Multiplicities subtracted from the relative Weierstrass divisor.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Correction {
    /// `(binom(g-i+1, 2), binom(i+1, 2))` on the genus `i` and genus
    /// `g - i` components.
    Pair(BigQ, BigQ),
    /// `i(g-i)g/2` on the chain components `E_1..E_{g-1}`.
    Chain(Vec<BigQ>),
}

pub fn correction_coefficients(g: usize, i: usize) -> Result<Correction> {
    if i > g / 2 || g < 2 {
        return Err(Error::InvalidArgument(format!("need 0 <= i <= {}, got {i}", g / 2)));
    }
    let (gi, ii) = (g as i64, i as i64);
    if i == 0 {
        return Ok(Correction::Chain((1..gi).map(|k| BigQ::new((k * (gi - k) * gi).into(), 2.into())).collect()));
    }
    Ok(Correction::Pair(binomial(gi - ii + 1, 2), binomial(ii + 1, 2)))
}

/// Divisors on the total space of the test family.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord)]
pub enum Sym {
    /// First Chern class of the relative dualizing sheaf.
    Omega,
    /// Pullback of `lambda'`.
    Lambda,
    /// Genus `i` component over a `delta_i` fiber, unit weight.
    Y(usize),
    /// Genus `g - i` component over the same fiber.
    Z(usize),
    /// Normalization of the irreducible nodal fiber.
    Nu,
    /// Chain component `E_k`, `1 <= k <= g - 1`.
    E(usize),
}

/// Rule table for pushing intersection products down to the base, in the
/// basis `lambda', delta'_0, ..., delta'_{[g/2]}`.
///
/// A `delta_i` fiber of weight `w` adds `w` to `delta'_i`; the chain fiber
/// with per-node weight `w~` has `g` nodes and adds `g w~` to `delta'_0`.
/// The rules are stated for unit weights.
#[derive(Debug, Clone)]
pub struct IntersectionModel {
    pub g: usize,
}

pub type Divisor = Vec<(Sym, BigQ)>;

impl IntersectionModel {
    pub fn new(g: usize) -> Result<Self> {
        check_genus(g)?;
        Ok(IntersectionModel { g })
    }

    fn slots(&self) -> usize {
        self.g / 2 + 2
    }

    fn unit(&self, slot: usize, c: BigQ) -> Vec<BigQ> {
        let mut v = vec![BigQ::zero(); self.slots()];
        v[slot] = c;
        v
    }

    /// `pi_*(a . b)`.
    pub fn rule(&self, a: Sym, b: Sym) -> Vec<BigQ> {
        use Sym::*;
        let g = self.g as i64;
        let (a, b) = if a <= b { (a, b) } else { (b, a) };
        let chain = |c: BigQ| self.unit(1, c / q(g));
        match (a, b) {
            (Omega, Omega) => {
                let mut v = vec![q(-1); self.slots()];
                v[0] = q(12);
                v
            }
            (Omega, Lambda) => self.unit(0, q(2 * g - 2)),
            (Lambda, _) => self.unit(0, BigQ::zero()),
            (Omega, Y(i)) => self.unit(i + 1, q(2 * i as i64 - 1)),
            (Omega, Z(i)) => self.unit(i + 1, q(2 * (g - i as i64) - 1)),
            (Omega, Nu) => chain(q(2 * g - 2)),
            (Omega, E(_)) => self.unit(0, BigQ::zero()),
            (Y(i), Y(k)) | (Z(i), Z(k)) if i == k => self.unit(i + 1, q(-1)),
            (Y(i), Z(k)) if i == k => self.unit(i + 1, q(1)),
            (Nu, Nu) => chain(q(-2)),
            (Nu, E(k)) => chain(if k == 1 || k as i64 == g - 1 { q(1) } else { q(0) }),
            (E(k), E(l)) if k == l => chain(q(-2)),
            (E(k), E(l)) if k.abs_diff(l) == 1 => chain(q(1)),
            _ => self.unit(0, BigQ::zero()),
        }
    }

    pub fn intersect(&self, d1: &Divisor, d2: &Divisor) -> Vec<BigQ> {
        let mut acc = vec![BigQ::zero(); self.slots()];
        for (s1, c1) in d1 {
            for (s2, c2) in d2 {
                let coeff = c1.clone() * c2.clone();
                for (slot, v) in acc.iter_mut().zip(self.rule(*s1, *s2)) {
                    *slot = slot.clone() + coeff.clone() * v;
                }
            }
        }
        acc
    }

    /// The vertical divisors, grouped by fiber, with the full fiber class.
    pub fn fibers(&self) -> Vec<(Vec<Sym>, Divisor)> {
        let mut out = Vec::new();
        for i in 1..=self.g / 2 {
            out.push((vec![Sym::Y(i), Sym::Z(i)], vec![(Sym::Y(i), q(1)), (Sym::Z(i), q(1))]));
        }
        let mut comps = vec![Sym::Nu];
        comps.extend((1..self.g).map(Sym::E));
        let full = comps.iter().map(|s| (*s, q(1))).collect();
        out.push((comps, full));
        out
    }

    /// Every vertical divisor must meet its fiber trivially.
    pub fn check_fibers(&self) -> Result<()> {
        for (comps, full) in self.fibers() {
            for c in comps {
                if self.intersect(&vec![(c, q(1))], &full).iter().any(|v| !v.is_zero()) {
                    return Err(Error::Consistency(format!("{c:?} meets its fiber nontrivially")));
                }
            }
        }
        Ok(())
    }

    /// `W = binom(g+1,2) omega - lambda' - corrections`.
    pub fn corrected_weierstrass(&self) -> Result<Divisor> {
        let g = self.g;
        let mut w: Divisor = vec![(Sym::Omega, binomial(g as i64 + 1, 2)), (Sym::Lambda, q(-1))];
        for i in 1..=g / 2 {
            let Correction::Pair(cy, cz) = correction_coefficients(g, i)? else { unreachable!() };
            w.push((Sym::Y(i), -cy));
            w.push((Sym::Z(i), -cz));
        }
        let Correction::Chain(cs) = correction_coefficients(g, 0)? else { unreachable!() };
        for (k, c) in cs.into_iter().enumerate() {
            w.push((Sym::E(k + 1), -c));
        }
        Ok(w)
    }
}

/// `pi_*[W (W + omega)]` computed from the rule table.
pub fn derive_sw_by_intersection(g: usize) -> Result<DivisorClass> {
    let model = IntersectionModel::new(g)?;
    model.check_fibers()?;
    let w = model.corrected_weierstrass()?;
    let mut w_plus = w.clone();
    w_plus.push((Sym::Omega, q(1)));
    let v = model.intersect(&w, &w_plus);
    DivisorClass::new(g, v[0].clone(), v[1..].to_vec())
}

/// A named polynomial identity and whether it holds.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct IdentityCheck {
    pub name: &'static str,
    pub holds: bool,
}

/// Closed-form identities checked as polynomials in `g` (variable 0) and
/// `i` (variable 1).
pub fn symbolic_identities() -> Vec<IdentityCheck> {
    let g = MPoly::var(2, 0);
    let i = MPoly::var(2, 1);
    let c = |n: i64| MPoly::int(2, n);
    let half = |p: MPoly| p.scale(&BigQ::from_ratio(1, 2));
    let gi = &g - &i;
    let e_of = |j: i64| {
        let gj = &g + c(j);
        &i * &gi * (&gi - c(1)) * (gj.pow(2) * (&g + c(3)) + &gj * c(2) - (&g + c(1)))
    };
    let mut out = Vec::new();
    for (name, j) in [("count identity j=-1", -1), ("count identity j=+1", 1)] {
        let gj = &g + c(j);
        let d = &gi * (&gi - c(1)) * (gj.pow(2) * (&i + c(1)).pow(2) - (&gi + c(j)).pow(2));
        let dp = &i * gj.pow(2) - &i;
        let dpp = (&gi - c(1)) * &gi * (&gi + c(1));
        out.push(IdentityCheck { name, holds: (d + dpp * dp - e_of(j)).is_zero() });
    }
    let cubic = g.pow(3) + g.pow(2) * c(3) + &g * c(2) + c(2);
    let lam = g.pow(4) * c(3) + g.pow(3) * c(4) + g.pow(2) * c(9) + &g * c(6) + c(2);
    let d0 = (&g * (&g + c(1)) * (g.pow(2) * c(2) + &g + c(3))).scale(&BigQ::from_ratio(1, 6));
    let d1 = &cubic * (&g - c(1));
    out.push(IdentityCheck { name: "pencil pairing of the class", holds: (&lam - d0.scale(&q(12)) + d1).is_zero() });
    let a_minus = half(g.pow(2) * (&g - c(1)) * (&g * c(3) - c(1)));
    let a_plus = half((&g + c(1)) * (&g + c(2)) * (g.pow(2) * c(3) + &g * c(3) + c(2)));
    out.push(IdentityCheck { name: "lambda coefficients add up", holds: (a_minus + a_plus - &lam).is_zero() });
    let target = (&cubic * &i * &gi * (&gi - c(1))).scale(&q(2));
    out.push(IdentityCheck { name: "test curve pairing of the class", holds: (e_of(-1) + e_of(1) - target).is_zero() });
    // intersection route: lambda' and delta'_i coefficients
    let alpha = half(&g * (&g + c(1)));
    let two_alpha_1 = alpha.scale(&q(2)) + c(1);
    let lam_route = (&alpha * (&alpha + c(1))).scale(&q(12)) - (&g - c(1)).scale(&q(2)) * &two_alpha_1;
    out.push(IdentityCheck { name: "intersection lambda coefficient", holds: (lam_route - &lam).is_zero() });
    let cy = half((&gi + c(1)) * &gi);
    let cz = half((&i + c(1)) * &i);
    let omega_v = &cy * (i.scale(&q(2)) - c(1)) + &cz * (gi.scale(&q(2)) - c(1));
    let di_route = -(&alpha * (&alpha + c(1))) - two_alpha_1 * omega_v - (cy - cz).pow(2);
    let di_target = -(&cubic * &i * &gi);
    out.push(IdentityCheck { name: "intersection delta_i coefficient", holds: (di_route - di_target).is_zero() });
    out
}
