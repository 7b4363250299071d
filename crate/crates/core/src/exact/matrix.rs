//! Determinants and elimination over exact domains.

use super::poly::DensePoly;
use super::scalar::{Ring, Scalar};
use super::series::{TruncSeries, EXACT};
use crate::error::{Error, Result};

fn check_square<R>(m: &[Vec<R>]) -> Result<usize> {
    let n = m.len();
    for row in m {
        if row.len() != n {
            return Err(Error::NonSquare { rows: n, cols: row.len() });
        }
    }
    Ok(n)
}

/// Fraction-free (Bareiss) determinant over an integral domain.
///
/// Every division performed is exact in the domain; a failed division means
/// the entries do not form a domain and is reported as a consistency error.
pub fn exact_determinant<R: Ring>(m: &[Vec<R>]) -> Result<R> {
    let n = check_square(m)?;
    if n == 0 {
        return Ok(R::one());
    }
    let mut a: Vec<Vec<R>> = m.to_vec();
    let mut sign_flip = false;
    let mut prev = R::one();
    for k in 0..n {
        if a[k][k].is_zero() {
            match (k + 1..n).find(|&r| !a[r][k].is_zero()) {
                Some(r) => {
                    a.swap(k, r);
                    sign_flip = !sign_flip;
                }
                None => return Ok(R::zero()),
            }
        }
        for i in k + 1..n {
            for j in k + 1..n {
                let num = a[i][j].clone() * a[k][k].clone() - a[i][k].clone() * a[k][j].clone();
                a[i][j] = num
                    .exact_div(&prev)
                    .ok_or_else(|| Error::Consistency("inexact Bareiss division".into()))?;
            }
            a[i][k] = R::zero();
        }
        prev = a[k][k].clone();
    }
    let det = a[n - 1][n - 1].clone();
    Ok(if sign_flip { -det } else { det })
}

/// Determinant of a matrix of truncated series.
///
/// The known parts are multiplied out exactly as polynomials; the result is
/// then cut at the largest order certified by either the row or the column
/// rule: perturbing row `i` by `O(x^{N_i})` moves the determinant by terms of
/// valuation at least `N_i + sum_{k != i} v_k`.
pub fn series_determinant<R: Ring>(m: &[Vec<TruncSeries<R>>]) -> Result<TruncSeries<R>> {
    let n = check_square(m)?;
    if n == 0 {
        return Ok(TruncSeries::constant(R::one()));
    }
    let lifted: Vec<Vec<DensePoly<R>>> = m
        .iter()
        .map(|row| row.iter().map(|s| s.to_poly()).collect())
        .collect();
    let det = exact_determinant(&lifted)?;
    let rows: Vec<Vec<&TruncSeries<R>>> = m.iter().map(|row| row.iter().collect()).collect();
    let cols: Vec<Vec<&TruncSeries<R>>> = (0..n).map(|j| m.iter().map(|row| &row[j]).collect()).collect();
    let (rows, cols) = (truncation_bound(&rows), truncation_bound(&cols));
    Ok(TruncSeries::from_poly(&det, rows.max(cols)))
}

fn truncation_bound<R: Ring>(lines: &[Vec<&TruncSeries<R>>]) -> usize {
    let ords: Vec<usize> = lines
        .iter()
        .map(|l| l.iter().map(|s| s.order()).min().unwrap_or(EXACT))
        .collect();
    let vals: Vec<usize> = lines
        .iter()
        .map(|l| l.iter().map(|s| s.valuation().lower_bound()).min().unwrap_or(EXACT))
        .collect();
    let total = vals.iter().fold(0usize, |acc, v| acc.saturating_add(*v));
    (0..lines.len())
        .map(|i| {
            if ords[i] == EXACT {
                return EXACT;
            }
            let others = if total == EXACT { EXACT } else { total - vals[i] };
            ords[i].saturating_add(others)
        })
        .min()
        .unwrap_or(EXACT)
}

/// Reduced row echelon form; returns the reduced matrix and pivot columns.
pub fn rref<T: Scalar>(m: &[Vec<T>]) -> (Vec<Vec<T>>, Vec<usize>) {
    let mut a = m.to_vec();
    let rows = a.len();
    let cols = a.first().map_or(0, |r| r.len());
    let mut pivots = Vec::new();
    let mut r = 0;
    for c in 0..cols {
        if r == rows {
            break;
        }
        let Some(p) = (r..rows).find(|&i| !a[i][c].is_zero()) else {
            continue;
        };
        a.swap(r, p);
        let inv = a[r][c].inv().expect("nonzero pivot");
        for x in a[r].iter_mut() {
            *x = x.clone() * inv.clone();
        }
        for i in 0..rows {
            if i != r && !a[i][c].is_zero() {
                let f = a[i][c].clone();
                let pivot = a[r].clone();
                for (x, v) in a[i].iter_mut().zip(pivot) {
                    *x = x.clone() - f.clone() * v;
                }
            }
        }
        pivots.push(c);
        r += 1;
    }
    (a, pivots)
}

pub fn rank<T: Scalar>(m: &[Vec<T>]) -> usize {
    rref(m).1.len()
}

/// Basis of the right kernel `{v : M v = 0}`; `cols` is needed for empty `m`.
pub fn nullspace<T: Scalar>(m: &[Vec<T>], cols: usize) -> Vec<Vec<T>> {
    let (r, pivots) = rref(m);
    let mut basis = Vec::new();
    for free in (0..cols).filter(|c| !pivots.contains(c)) {
        let mut v = vec![T::zero(); cols];
        v[free] = T::one();
        for (row, &pc) in pivots.iter().enumerate() {
            v[pc] = -r[row][free].clone();
        }
        basis.push(v);
    }
    basis
}

pub fn transpose<R: Clone>(m: &[Vec<R>]) -> Vec<Vec<R>> {
    let cols = m.first().map_or(0, |r| r.len());
    (0..cols).map(|j| m.iter().map(|row| row[j].clone()).collect()).collect()
}

/// All maximal minors of a `rows x cols` matrix with `rows <= cols`.
pub fn maximal_minors<R: Ring>(m: &[Vec<R>]) -> Result<Vec<R>> {
    let rows = m.len();
    let cols = m.first().map_or(0, |r| r.len());
    if m.iter().any(|r| r.len() != cols) || rows > cols {
        return Err(Error::Shape(format!("{rows}x{cols} has no maximal row minors")));
    }
    let mut out = Vec::new();
    for subset in combinations(cols, rows) {
        let sub: Vec<Vec<R>> = m
            .iter()
            .map(|row| subset.iter().map(|&j| row[j].clone()).collect())
            .collect();
        out.push(exact_determinant(&sub)?);
    }
    Ok(out)
}

/// `k`-subsets of `0..n` in lexicographic order.
pub fn combinations(n: usize, k: usize) -> Vec<Vec<usize>> {
    let mut out = Vec::new();
    let mut cur = Vec::with_capacity(k);
    fn rec(start: usize, n: usize, k: usize, cur: &mut Vec<usize>, out: &mut Vec<Vec<usize>>) {
        if cur.len() == k {
            out.push(cur.clone());
            return;
        }
        for i in start..n {
            if n - i < k - cur.len() {
                break;
            }
            cur.push(i);
            rec(i + 1, n, k, cur, out);
            cur.pop();
        }
    }
    rec(0, n, k, &mut cur, &mut out);
    out
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::exact::scalar::BigQ;

    type P = DensePoly<BigQ>;

    fn p(c: &[i64]) -> P {
        P::from_ints(c)
    }

    #[test]
    fn determinant_examples() {
        let id = vec![vec![BigQ::from_int(1), BigQ::from_int(0)], vec![BigQ::from_int(0), BigQ::from_int(1)]];
        assert_eq!(exact_determinant(&id).unwrap(), BigQ::from_int(1));
        let m = vec![vec![p(&[1]), p(&[0, 0, 1])], vec![p(&[]), p(&[0, 2])]];
        assert_eq!(exact_determinant(&m).unwrap(), p(&[0, 2]));
        let m = vec![
            vec![p(&[0, 1]), p(&[0, 0, 1]), p(&[1, 0, 0, 1])],
            vec![p(&[1]), p(&[0, 2]), p(&[0, 0, 3])],
            vec![p(&[]), p(&[2]), p(&[0, 6])],
        ];
        assert_eq!(exact_determinant(&m).unwrap(), p(&[2, 0, 0, 2]));
    }

    #[test]
    fn non_square_is_rejected() {
        let m = vec![vec![BigQ::from_int(1), BigQ::from_int(2)]];
        assert_eq!(exact_determinant(&m), Err(Error::NonSquare { rows: 1, cols: 2 }));
    }

    #[test]
    fn pivoting_handles_zero_corner() {
        let m = vec![vec![BigQ::from_int(0), BigQ::from_int(1)], vec![BigQ::from_int(1), BigQ::from_int(0)]];
        assert_eq!(exact_determinant(&m).unwrap(), BigQ::from_int(-1));
    }

    #[test]
    fn series_determinant_truncation() {
        type S = TruncSeries<BigQ>;
        // [[1 + O(x^4), x], [0, x + O(x^3)]] = x + O(x^3) by the row rule on row 2
        let m = vec![
            vec![S::from_ints(&[1], 4), S::from_ints(&[0, 1], EXACT)],
            vec![S::from_ints(&[], EXACT), S::from_ints(&[0, 1], 3)],
        ];
        let d = series_determinant(&m).unwrap();
        assert_eq!(d, S::from_ints(&[0, 1], 3));
    }

    #[test]
    fn kernel_and_rank() {
        let q = |n: i64| BigQ::from_int(n);
        let m = vec![vec![q(1), q(2), q(3)], vec![q(2), q(4), q(6)]];
        assert_eq!(rank(&m), 1);
        let ker = nullspace(&m, 3);
        assert_eq!(ker.len(), 2);
        for v in ker {
            let dot: BigQ = m[0].iter().zip(&v).map(|(a, b)| a * b).sum();
            assert_eq!(dot, q(0));
        }
    }

    #[test]
    fn minors_enumeration() {
        assert_eq!(combinations(4, 2).len(), 6);
        assert_eq!(combinations(3, 3), vec![vec![0, 1, 2]]);
    }
}
