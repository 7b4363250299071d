//! Exact arithmetic: rationals, dense polynomials, truncated series and
//! fraction-free determinants.

pub mod matrix;
pub mod mpoly;
pub mod poly;
pub mod scalar;
pub mod series;

pub use matrix::{combinations, exact_determinant, maximal_minors, nullspace, rank, rref, series_determinant, transpose};
pub use mpoly::MPoly;
pub use poly::{Degree, DensePoly};
pub use scalar::{binomial, BigQ, Ring, Scalar};
pub use series::{TruncSeries, Valuation, EXACT};

use crate::error::Result;

/// `p / gcd(p, p')`, monic.
pub fn squarefree_part<T: Scalar>(p: &DensePoly<T>) -> Result<DensePoly<T>> {
    p.squarefree_part()
}

/// Inverse of a unit series modulo `x^n`.
pub fn series_invert<T: Scalar>(s: &TruncSeries<T>, n: usize) -> Result<TruncSeries<T>> {
    s.invert(n)
}

/// Square root modulo `x^n` with the given constant term (nonnegative
/// rational root by default).
pub fn series_sqrt<T: Scalar>(s: &TruncSeries<T>, n: usize, root: Option<T>) -> Result<TruncSeries<T>> {
    s.sqrt(n, root)
}

/// `"p/q"`, or `"p"` when the denominator is one.
pub fn scalar_to_string(q: &BigQ) -> String {
    q.to_string()
}

/// Inverse of [`scalar_to_string`]; also accepts plain integers.
pub fn parse_scalar(s: &str) -> Result<BigQ> {
    s.trim()
        .parse::<BigQ>()
        .map_err(|_| crate::error::Error::Parse(format!("not a rational: {s:?}")))
}
