use std::cmp::Ordering;
use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, Zero};

use super::scalar::{BigQ, Ring, Scalar};
use crate::error::{Error, Result};

/// Degree of a polynomial; the zero polynomial sits at minus infinity so that
/// `deg(pq) = deg(p) + deg(q)` holds for every pair.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Degree {
    NegInfinity,
    Finite(usize),
}

impl Degree {
    pub fn finite(self) -> Option<usize> {
        match self {
            Degree::NegInfinity => None,
            Degree::Finite(d) => Some(d),
        }
    }
}

impl PartialOrd for Degree {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

impl Ord for Degree {
    fn cmp(&self, other: &Self) -> Ordering {
        match (self, other) {
            (Degree::NegInfinity, Degree::NegInfinity) => Ordering::Equal,
            (Degree::NegInfinity, _) => Ordering::Less,
            (_, Degree::NegInfinity) => Ordering::Greater,
            (Degree::Finite(a), Degree::Finite(b)) => a.cmp(b),
        }
    }
}

impl Add for Degree {
    type Output = Degree;
    fn add(self, rhs: Degree) -> Degree {
        match (self, rhs) {
            (Degree::Finite(a), Degree::Finite(b)) => Degree::Finite(a + b),
            _ => Degree::NegInfinity,
        }
    }
}

impl fmt::Display for Degree {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Degree::NegInfinity => write!(f, "-inf"),
            Degree::Finite(d) => write!(f, "{d}"),
        }
    }
}

/// Dense univariate polynomial, lowest degree first, no trailing zeros.
#[derive(Debug, Clone, PartialEq)]
pub struct DensePoly<R> {
    coeffs: Vec<R>,
}

impl<R: Ring> DensePoly<R> {
    pub fn new(mut coeffs: Vec<R>) -> Self {
        while coeffs.last().is_some_and(|c| c.is_zero()) {
            coeffs.pop();
        }
        DensePoly { coeffs }
    }

    pub fn zero() -> Self {
        DensePoly { coeffs: Vec::new() }
    }

    pub fn constant(c: R) -> Self {
        Self::new(vec![c])
    }

    /// The monomial `c·x^k`.
    pub fn monomial(c: R, k: usize) -> Self {
        let mut v = vec![R::zero(); k];
        v.push(c);
        Self::new(v)
    }

    pub fn x() -> Self {
        Self::monomial(R::one(), 1)
    }

    pub fn from_ints(ints: &[i64]) -> Self {
        Self::new(ints.iter().map(|&n| R::from_int(n)).collect())
    }

    pub fn coeffs(&self) -> &[R] {
        &self.coeffs
    }

    pub fn into_coeffs(self) -> Vec<R> {
        self.coeffs
    }

    pub fn coeff(&self, k: usize) -> R {
        self.coeffs.get(k).cloned().unwrap_or_else(R::zero)
    }

    pub fn degree(&self) -> Degree {
        if self.coeffs.is_empty() {
            Degree::NegInfinity
        } else {
            Degree::Finite(self.coeffs.len() - 1)
        }
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    pub fn leading(&self) -> Option<&R> {
        self.coeffs.last()
    }

    /// Order of vanishing at `x = 0`; `None` for the zero polynomial.
    pub fn valuation(&self) -> Option<usize> {
        self.coeffs.iter().position(|c| !c.is_zero())
    }

    pub fn scale(&self, c: &R) -> Self {
        Self::new(self.coeffs.iter().map(|a| a.clone() * c.clone()).collect())
    }

    pub fn shift(&self, k: usize) -> Self {
        if self.is_zero() {
            return Self::zero();
        }
        let mut v = vec![R::zero(); k];
        v.extend(self.coeffs.iter().cloned());
        Self::new(v)
    }

    pub fn derivative(&self) -> Self {
        Self::new(
            self.coeffs
                .iter()
                .enumerate()
                .skip(1)
                .map(|(k, c)| c.clone() * R::from_int(k as i64))
                .collect(),
        )
    }

    /// Horner evaluation in any ring the coefficients embed into.
    pub fn eval_with<S, F>(&self, x: &S, embed: F) -> S
    where
        S: Ring,
        F: Fn(&R) -> S,
    {
        let mut acc = S::zero();
        for c in self.coeffs.iter().rev() {
            acc = acc * x.clone() + embed(c);
        }
        acc
    }

    pub fn eval(&self, x: &R) -> R {
        self.eval_with(x, |c| c.clone())
    }

    /// `self(inner)`.
    pub fn compose(&self, inner: &Self) -> Self {
        self.eval_with(inner, |c| DensePoly::constant(c.clone()))
    }

    /// Multiply the variable by a scalar: `p(c·x)`.
    pub fn scale_variable(&self, c: &R) -> Self {
        let mut pw = R::one();
        let mut v = Vec::with_capacity(self.coeffs.len());
        for a in &self.coeffs {
            v.push(a.clone() * pw.clone());
            pw = pw * c.clone();
        }
        Self::new(v)
    }

    /// Exact division in `R[x]`; `None` if the divisor does not divide.
    pub fn exact_div_poly(&self, d: &Self) -> Option<Self> {
        let dl = d.leading()?;
        if self.is_zero() {
            return Some(Self::zero());
        }
        let dd = d.coeffs.len() - 1;
        let mut rem = self.coeffs.clone();
        if rem.len() < d.coeffs.len() {
            return None;
        }
        let mut q = vec![R::zero(); rem.len() - dd];
        for k in (0..q.len()).rev() {
            let top = rem[k + dd].clone();
            if top.is_zero() {
                continue;
            }
            let c = top.exact_div(dl)?;
            for (i, di) in d.coeffs.iter().enumerate() {
                rem[k + i] = rem[k + i].clone() - c.clone() * di.clone();
            }
            q[k] = c;
        }
        if rem.iter().all(|c| c.is_zero()) {
            Some(Self::new(q))
        } else {
            None
        }
    }
}

impl<T: Scalar> DensePoly<T> {
    /// Euclidean division over a field.
    pub fn div_rem(&self, d: &Self) -> Result<(Self, Self)> {
        let dl = d.leading().ok_or(Error::ZeroInput)?.clone();
        let dinv = dl.inv().ok_or(Error::ZeroInput)?;
        let dd = d.coeffs.len() - 1;
        let mut rem = self.coeffs.clone();
        if rem.len() <= dd {
            return Ok((Self::zero(), self.clone()));
        }
        let mut q = vec![T::zero(); rem.len() - dd];
        for k in (0..q.len()).rev() {
            let c = rem[k + dd].clone() * dinv.clone();
            if c.is_zero() {
                continue;
            }
            for (i, di) in d.coeffs.iter().enumerate() {
                rem[k + i] = rem[k + i].clone() - c.clone() * di.clone();
            }
            q[k] = c;
        }
        rem.truncate(dd);
        Ok((Self::new(q), Self::new(rem)))
    }

    pub fn monic(&self) -> Self {
        match self.leading() {
            None => Self::zero(),
            Some(l) => self.scale(&l.inv().expect("nonzero leading coefficient")),
        }
    }

    /// Monic gcd; `gcd(0, 0) = 0`.
    pub fn gcd(&self, other: &Self) -> Self {
        let mut a = self.clone();
        let mut b = other.clone();
        while !b.is_zero() {
            let (_, r) = a.div_rem(&b).expect("nonzero divisor");
            let mut c = r.coeffs;
            T::normalize_coeffs(&mut c);
            a = b;
            b = Self::new(c);
        }
        a.monic()
    }

    /// `p / gcd(p, p')`, monic. Same roots as `p`, each simple.
    pub fn squarefree_part(&self) -> Result<Self> {
        if self.is_zero() {
            return Err(Error::ZeroInput);
        }
        let g = self.gcd(&self.derivative());
        let (q, _) = self.div_rem(&g)?;
        Ok(q.monic())
    }

    pub fn is_squarefree(&self) -> bool {
        !self.is_zero() && self.gcd(&self.derivative()).degree() == Degree::Finite(0)
    }

    /// Multiplicity of the root `c`.
    pub fn root_multiplicity(&self, c: &T) -> Option<usize> {
        if self.is_zero() {
            return None;
        }
        let lin = DensePoly::new(vec![-c.clone(), T::one()]);
        let mut p = self.clone();
        let mut m = 0;
        loop {
            let (q, r) = p.div_rem(&lin).expect("linear divisor");
            if !r.is_zero() {
                return Some(m);
            }
            p = q;
            m += 1;
        }
    }

    /// Strip every factor shared with `q`: the largest divisor of `self`
    /// coprime to `q`, monic.
    pub fn remove_factors_of(&self, q: &Self) -> Self {
        let mut p = self.clone();
        loop {
            let g = p.gcd(q);
            if g.degree() <= Degree::Finite(0) {
                return p.monic();
            }
            p = p.div_rem(&g).expect("nonzero gcd").0;
        }
    }

    /// Split the roots of the squarefree `q` by the order at which `self`
    /// vanishes there: returns `(factor, order)` pairs whose factors multiply
    /// to `monic(q)`. Only nonconstant factors are listed.
    pub fn order_partition(&self, q: &Self) -> Vec<(Self, usize)> {
        let mut out = Vec::new();
        if self.is_zero() {
            return out;
        }
        let mut rest = q.monic();
        let mut cur = self.clone();
        let mut k = 0;
        while rest.degree() > Degree::Finite(0) {
            let g = cur.gcd(&rest);
            let exact_k = rest.div_rem(&g).expect("gcd divides").0.monic();
            if exact_k.degree() > Degree::Finite(0) {
                out.push((exact_k, k));
            }
            if g.degree() == Degree::Finite(0) {
                break;
            }
            cur = cur.div_rem(&g).expect("gcd divides").0;
            rest = g;
            k += 1;
        }
        out
    }
}

impl DensePoly<BigQ> {
    /// Integer-coefficient primitive form with positive leading coefficient,
    /// e.g. `x^4 - 2x^2 - 1/3` becomes `3x^4 - 6x^2 - 1`.
    pub fn primitive(&self) -> Self {
        if self.is_zero() {
            return Self::zero();
        }
        let mut den = BigInt::one();
        for c in &self.coeffs {
            den = den.lcm(c.denom());
        }
        let ints: Vec<BigInt> = self
            .coeffs
            .iter()
            .map(|c| (c * BigQ::from_integer(den.clone())).to_integer())
            .collect();
        let mut content = BigInt::zero();
        for n in &ints {
            content = content.gcd(n);
        }
        if ints.last().is_some_and(|l| l.is_negative()) {
            content = -content;
        }
        Self::new(
            ints.into_iter()
                .map(|n| BigQ::from_integer(n / content.clone()))
                .collect(),
        )
    }

    /// Rational roots via the rational root test on the primitive form.
    pub fn rational_roots(&self) -> Vec<BigQ> {
        let p = self.primitive();
        let Some(v) = p.valuation() else {
            return Vec::new();
        };
        let mut roots = Vec::new();
        if v > 0 {
            roots.push(<BigQ as Ring>::zero());
        }
        let reduced = DensePoly::new(p.coeffs[v..].to_vec());
        if reduced.degree() == Degree::Finite(0) {
            return roots;
        }
        let c0 = reduced.coeffs[0].to_integer().abs();
        let cn = reduced.leading().unwrap().to_integer().abs();
        let divisors = |n: &BigInt| -> Vec<BigInt> {
            let mut ds = Vec::new();
            let mut d = BigInt::one();
            while &d * &d <= *n {
                if (n % &d).is_zero() {
                    ds.push(d.clone());
                    if &d * &d != *n {
                        ds.push(n / &d);
                    }
                }
                d += 1;
            }
            ds
        };
        for a in divisors(&c0) {
            for b in divisors(&cn) {
                for s in [1i64, -1] {
                    let r = BigQ::new(a.clone() * s, b.clone());
                    if Ring::is_zero(&reduced.eval(&r)) && !roots.contains(&r) {
                        roots.push(r);
                    }
                }
            }
        }
        roots.sort();
        roots
    }

    /// Parse integer-coefficient input such as `x^5-1`, `3x^4 - 6*x^2 - 1`.
    pub fn parse(input: &str) -> Result<Self> {
        let s: String = input.chars().filter(|c| !c.is_whitespace()).collect();
        if s.is_empty() {
            return Err(Error::Parse("empty polynomial".into()));
        }
        let bad = |msg: &str| Error::Parse(format!("{msg} in {input:?}"));
        let mut terms: Vec<(BigInt, usize)> = Vec::new();
        let bytes = s.as_bytes();
        let mut i = 0;
        while i < bytes.len() {
            let mut sign = BigInt::one();
            if bytes[i] == b'+' || bytes[i] == b'-' {
                if bytes[i] == b'-' {
                    sign = -sign;
                }
                i += 1;
            } else if i != 0 {
                return Err(bad("expected + or -"));
            }
            let start = i;
            while i < bytes.len() && bytes[i].is_ascii_digit() {
                i += 1;
            }
            let coeff = if i > start {
                s[start..i].parse::<BigInt>().map_err(|_| bad("bad coefficient"))?
            } else {
                BigInt::one()
            };
            let mut exp = 0usize;
            if i < bytes.len() && bytes[i] == b'*' {
                i += 1;
                if i >= bytes.len() || bytes[i] != b'x' {
                    return Err(bad("expected x after *"));
                }
            }
            if i < bytes.len() && bytes[i] == b'x' {
                i += 1;
                exp = 1;
                if i < bytes.len() && bytes[i] == b'^' {
                    i += 1;
                    let es = i;
                    while i < bytes.len() && bytes[i].is_ascii_digit() {
                        i += 1;
                    }
                    if es == i {
                        return Err(bad("missing exponent"));
                    }
                    exp = s[es..i].parse().map_err(|_| bad("bad exponent"))?;
                }
            } else if i == start {
                return Err(bad("empty term"));
            }
            terms.push((sign * coeff, exp));
        }
        let deg = terms.iter().map(|t| t.1).max().unwrap_or(0);
        let mut coeffs = vec![<BigQ as Ring>::zero(); deg + 1];
        for (c, e) in terms {
            coeffs[e] += BigQ::from_integer(c);
        }
        Ok(Self::new(coeffs))
    }
}

impl<R: Ring> Ring for DensePoly<R> {
    fn zero() -> Self {
        DensePoly::zero()
    }
    fn one() -> Self {
        DensePoly::constant(R::one())
    }
    fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }
    fn from_int(n: i64) -> Self {
        DensePoly::constant(R::from_int(n))
    }
    fn exact_div(&self, rhs: &Self) -> Option<Self> {
        self.exact_div_poly(rhs)
    }
}

impl<R: Ring> Add for DensePoly<R> {
    type Output = Self;
    fn add(self, rhs: Self) -> Self {
        let (mut long, short) = if self.coeffs.len() >= rhs.coeffs.len() {
            (self.coeffs, rhs.coeffs)
        } else {
            (rhs.coeffs, self.coeffs)
        };
        for (a, b) in long.iter_mut().zip(short) {
            *a = a.clone() + b;
        }
        Self::new(long)
    }
}

impl<R: Ring> Neg for DensePoly<R> {
    type Output = Self;
    fn neg(self) -> Self {
        DensePoly { coeffs: self.coeffs.into_iter().map(|c| -c).collect() }
    }
}

impl<R: Ring> Sub for DensePoly<R> {
    type Output = Self;
    fn sub(self, rhs: Self) -> Self {
        self + (-rhs)
    }
}

impl<'a, R: Ring> Add<&'a DensePoly<R>> for &'a DensePoly<R> {
    type Output = DensePoly<R>;
    fn add(self, rhs: &DensePoly<R>) -> DensePoly<R> {
        self.clone() + rhs.clone()
    }
}

impl<'a, R: Ring> Sub<&'a DensePoly<R>> for &'a DensePoly<R> {
    type Output = DensePoly<R>;
    fn sub(self, rhs: &DensePoly<R>) -> DensePoly<R> {
        self.clone() - rhs.clone()
    }
}

impl<R: Ring> Mul for DensePoly<R> {
    type Output = Self;
    fn mul(self, rhs: Self) -> Self {
        &self * &rhs
    }
}

impl<'a, R: Ring> Mul<&'a DensePoly<R>> for &'a DensePoly<R> {
    type Output = DensePoly<R>;
    fn mul(self, rhs: &DensePoly<R>) -> DensePoly<R> {
        if self.is_zero() || rhs.is_zero() {
            return DensePoly::zero();
        }
        let mut out = vec![R::zero(); self.coeffs.len() + rhs.coeffs.len() - 1];
        for (i, a) in self.coeffs.iter().enumerate() {
            if a.is_zero() {
                continue;
            }
            for (j, b) in rhs.coeffs.iter().enumerate() {
                out[i + j] = out[i + j].clone() + a.clone() * b.clone();
            }
        }
        DensePoly::new(out)
    }
}

impl<R: Ring + fmt::Display> fmt::Display for DensePoly<R> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_zero() {
            return write!(f, "0");
        }
        let mut first = true;
        for (k, c) in self.coeffs.iter().enumerate().rev() {
            if c.is_zero() {
                continue;
            }
            let s = c.to_string();
            let (neg, body) = match s.strip_prefix('-') {
                Some(rest) => (true, rest.to_string()),
                None => (false, s),
            };
            if first {
                if neg {
                    write!(f, "-")?;
                }
            } else {
                write!(f, " {} ", if neg { '-' } else { '+' })?;
            }
            first = false;
            let unit = body == "1";
            match k {
                0 => write!(f, "{body}")?,
                1 if unit => write!(f, "x")?,
                1 => write!(f, "{body}*x")?,
                _ if unit => write!(f, "x^{k}")?,
                _ => write!(f, "{body}*x^{k}")?,
            }
        }
        Ok(())
    }
}
