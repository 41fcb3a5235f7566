//! Small exact solvers over the rationals and fraction-free rank over Q[q].

use crate::error::{Error, Result};
use crate::qpoly::QPoly;
use crate::ring::{Rational, Ring};

/// Reduced row echelon form over the rationals; returns the pivot columns.
pub fn rref(m: &mut [Vec<Rational>]) -> Vec<usize> {
    let rows = m.len();
    let cols = m.first().map_or(0, Vec::len);
    let mut pivots = Vec::new();
    let mut r = 0;
    for c in 0..cols {
        if r == rows {
            break;
        }
        let Some(pr) = (r..rows).find(|&i| !Ring::is_zero(&m[i][c])) else {
            continue;
        };
        m.swap(r, pr);
        let inv = Rational::one()
            .checked_div(&m[r][c])
            .expect("nonzero pivot");
        for x in m[r].iter_mut() {
            *x = x.mul(&inv);
        }
        let prow = m[r].clone();
        for (i, row) in m.iter_mut().enumerate() {
            if i == r || Ring::is_zero(&row[c]) {
                continue;
            }
            let factor = row[c].clone();
            for (x, y) in row.iter_mut().zip(&prow) {
                *x = x.sub(&factor.mul(y));
            }
        }
        pivots.push(c);
        r += 1;
    }
    pivots
}

/// Determinant by Gaussian elimination.
pub fn det(m: &[Vec<Rational>]) -> Rational {
    let mut a = m.to_vec();
    let n = a.len();
    let mut d = Rational::one();
    for c in 0..n {
        let Some(pr) = (c..n).find(|&i| !Ring::is_zero(&a[i][c])) else {
            return Rational::zero();
        };
        if pr != c {
            a.swap(pr, c);
            d = d.neg();
        }
        d = d.mul(&a[c][c]);
        let inv = Rational::one()
            .checked_div(&a[c][c])
            .expect("nonzero pivot");
        let (top, bottom) = a.split_at_mut(c + 1);
        let pivot_row = &top[c];
        for row in bottom.iter_mut() {
            let factor = row[c].mul(&inv);
            if Ring::is_zero(&factor) {
                continue;
            }
            for (x, p) in row[c..].iter_mut().zip(&pivot_row[c..]) {
                *x = x.sub(&factor.mul(p));
            }
        }
    }
    d
}

/// The unique solution of a square nonsingular system.
pub fn solve(m: &[Vec<Rational>], rhs: &[Rational]) -> Result<Vec<Rational>> {
    let n = m.len();
    let mut aug: Vec<Vec<Rational>> = m
        .iter()
        .zip(rhs)
        .map(|(row, b)| {
            let mut r = row.clone();
            r.push(b.clone());
            r
        })
        .collect();
    let pivots = rref(&mut aug);
    if pivots.len() < n || pivots.iter().any(|&c| c >= n) {
        return Err(Error::Singular);
    }
    Ok(aug.into_iter().map(|r| r[n].clone()).collect())
}

/// Rank over Q(q) by Bareiss fraction-free elimination: every update is divided exactly
/// by the previous pivot, so entries stay polynomials of bounded degree.
pub fn rank_fraction_free(m: &[Vec<QPoly>]) -> usize {
    let mut a = m.to_vec();
    let rows = a.len();
    let cols = a.first().map_or(0, Vec::len);
    let mut prev = QPoly::one();
    let mut r = 0;
    for c in 0..cols {
        if r == rows {
            break;
        }
        let Some(pr) = (r..rows).find(|&i| !a[i][c].is_zero()) else {
            continue;
        };
        a.swap(r, pr);
        let piv = a[r][c].clone();
        let (top, rest) = a.split_at_mut(r + 1);
        let prow = &top[r];
        for row in rest.iter_mut() {
            let factor = row[c].clone();
            for j in c..cols {
                let num = piv.mul(&row[j]).sub(&factor.mul(&prow[j]));
                let (quot, rem) = num.div_rem(&prev);
                debug_assert!(rem.is_zero());
                row[j] = quot;
            }
            for x in row[..c].iter_mut() {
                *x = QPoly::zero();
            }
        }
        prev = piv;
        r += 1;
    }
    r
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::ring::int;

    fn mat(rows: &[&[i64]]) -> Vec<Vec<Rational>> {
        rows.iter()
            .map(|r| r.iter().map(|&x| int(x)).collect())
            .collect()
    }

    #[test]
    fn determinant_and_solve() {
        let m = mat(&[&[2, 1], &[1, 3]]);
        assert_eq!(det(&m), int(5));
        let x = solve(&m, &[int(3), int(4)]).unwrap();
        assert_eq!(x, vec![int(1), int(1)]);
        assert!(matches!(
            solve(&mat(&[&[1, 2], &[2, 4]]), &[int(1), int(2)]),
            Err(Error::Singular)
        ));
    }

    #[test]
    fn fraction_free_rank() {
        let q = QPoly::linear(int(0), int(1));
        let one = QPoly::one();
        // [[1, q], [q, q^2]] has rank 1; [[1, q], [q, 1]] has rank 2 over Q(q).
        let m = vec![vec![one.clone(), q.clone()], vec![q.clone(), q.mul(&q)]];
        assert_eq!(rank_fraction_free(&m), 1);
        let m = vec![vec![one.clone(), q.clone()], vec![q.clone(), one.clone()]];
        assert_eq!(rank_fraction_free(&m), 2);
    }
}
