//! Arithmetic and dense elimination over prime fields with 31-bit moduli.

use std::sync::OnceLock;

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::ToPrimitive;

use crate::ring::Rational;

/// A prime field `Z/p` with Barrett reduction.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct Fp {
    p: u64,
    m: u64,
}

impl Fp {
    /// `p` must be a prime below 2^31.
    pub fn new(p: u64) -> Self {
        assert!(p > 2 && p < (1 << 31));
        Fp {
            p,
            m: (u128::from(u64::MAX) / u128::from(p)) as u64,
        }
    }

    pub fn modulus(&self) -> u64 {
        self.p
    }

    /// Reduces any `x < 2^64`.
    #[inline(always)]
    pub fn reduce(&self, x: u64) -> u64 {
        let q = ((u128::from(x) * u128::from(self.m)) >> 64) as u64;
        let r = x - q * self.p;
        if r >= self.p {
            r - self.p
        } else {
            r
        }
    }

    #[inline(always)]
    pub fn add(&self, a: u64, b: u64) -> u64 {
        let s = a + b;
        if s >= self.p {
            s - self.p
        } else {
            s
        }
    }

    #[inline(always)]
    pub fn sub(&self, a: u64, b: u64) -> u64 {
        if a >= b {
            a - b
        } else {
            a + self.p - b
        }
    }

    #[inline(always)]
    pub fn neg(&self, a: u64) -> u64 {
        if a == 0 {
            0
        } else {
            self.p - a
        }
    }

    #[inline(always)]
    pub fn mul(&self, a: u64, b: u64) -> u64 {
        self.reduce(a * b)
    }

    pub fn pow(&self, mut a: u64, mut e: u64) -> u64 {
        let mut r = 1;
        while e > 0 {
            if e & 1 == 1 {
                r = self.mul(r, a);
            }
            a = self.mul(a, a);
            e >>= 1;
        }
        r
    }

    /// Inverse of a nonzero element.
    pub fn inv(&self, a: u64) -> u64 {
        debug_assert!(a != 0);
        self.pow(a, self.p - 2)
    }

    pub fn from_i64(&self, a: i64) -> u64 {
        a.rem_euclid(self.p as i64) as u64
    }

    pub fn from_bigint(&self, a: &BigInt) -> u64 {
        let p = BigInt::from(self.p);
        a.mod_floor(&p).to_u64().expect("residue fits")
    }

    /// `None` when the denominator vanishes modulo `p`.
    pub fn from_rational(&self, r: &Rational) -> Option<u64> {
        let d = self.from_bigint(r.denom());
        if d == 0 {
            return None;
        }
        Some(self.mul(self.from_bigint(r.numer()), self.inv(d)))
    }

    /// Symmetric representative in `(-p/2, p/2]`.
    pub fn signed(&self, a: u64) -> i64 {
        if a > self.p / 2 {
            a as i64 - self.p as i64
        } else {
            a as i64
        }
    }
}

fn is_prime(n: u64) -> bool {
    if n < 2 {
        return false;
    }
    if n.is_multiple_of(2) {
        return n == 2;
    }
    let mut d = 3;
    while d * d <= n {
        if n.is_multiple_of(d) {
            return false;
        }
        d += 2;
    }
    true
}

const PRIME_COUNT: usize = 1024;

/// The largest primes below 2^31, in decreasing order.
pub fn primes() -> &'static [u64] {
    static PRIMES: OnceLock<Vec<u64>> = OnceLock::new();
    PRIMES.get_or_init(|| {
        let mut out = Vec::with_capacity(PRIME_COUNT);
        let mut c = (1u64 << 31) - 1;
        while out.len() < PRIME_COUNT {
            if is_prime(c) {
                out.push(c);
            }
            c -= 2;
        }
        out
    })
}

/// A dense row-major matrix over `Fp`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Matrix {
    pub rows: usize,
    pub cols: usize,
    pub data: Vec<u64>,
}

impl Matrix {
    pub fn zeros(rows: usize, cols: usize) -> Self {
        Matrix {
            rows,
            cols,
            data: vec![0; rows * cols],
        }
    }

    pub fn from_rows(rows: &[Vec<u64>], cols: usize) -> Self {
        let mut m = Matrix::zeros(rows.len(), cols);
        for (i, r) in rows.iter().enumerate() {
            m.row_mut(i).copy_from_slice(r);
        }
        m
    }

    #[inline]
    pub fn get(&self, i: usize, j: usize) -> u64 {
        self.data[i * self.cols + j]
    }

    #[inline]
    pub fn set(&mut self, i: usize, j: usize, v: u64) {
        self.data[i * self.cols + j] = v;
    }

    pub fn row(&self, i: usize) -> &[u64] {
        &self.data[i * self.cols..(i + 1) * self.cols]
    }

    pub fn row_mut(&mut self, i: usize) -> &mut [u64] {
        &mut self.data[i * self.cols..(i + 1) * self.cols]
    }

    fn swap_rows(&mut self, a: usize, b: usize) {
        if a == b {
            return;
        }
        let (lo, hi) = (a.min(b), a.max(b));
        let (x, y) = self.data.split_at_mut(hi * self.cols);
        x[lo * self.cols..(lo + 1) * self.cols].swap_with_slice(&mut y[..self.cols]);
    }

    /// Reduced row echelon form in place, scanning columns left to right
    /// and stopping at column `col_limit`. Returns the pivot columns.
    pub fn rref(&mut self, f: &Fp, col_limit: usize) -> Vec<usize> {
        let cols = self.cols;
        let mut pivots = Vec::new();
        let mut r = 0;
        for c in 0..col_limit.min(cols) {
            if r == self.rows {
                break;
            }
            let Some(pr) = (r..self.rows).find(|&i| self.get(i, c) != 0) else {
                continue;
            };
            self.swap_rows(r, pr);
            let inv = f.inv(self.get(r, c));
            for x in self.row_mut(r)[c..].iter_mut() {
                *x = f.mul(*x, inv);
            }
            let (head, rest) = self.data.split_at_mut(r * cols);
            let (prow, tail) = rest.split_at_mut(cols);
            let prow = &prow[c..];
            let eliminate = |row: &mut [u64]| {
                let factor = row[c];
                if factor == 0 {
                    return;
                }
                let nf = f.neg(factor);
                for (x, &y) in row[c..].iter_mut().zip(prow) {
                    if y != 0 {
                        *x = f.reduce(*x + nf * y);
                    }
                }
            };
            for row in head.chunks_exact_mut(cols) {
                eliminate(row);
            }
            for row in tail.chunks_exact_mut(cols) {
                eliminate(row);
            }
            pivots.push(c);
            r += 1;
        }
        pivots
    }
}

/// Nullspace of a matrix already in reduced row echelon form, as the normal-form basis:
/// one vector per free column, equal to 1 there and 0 at every other free column.
/// Only the first `ncols` columns are treated as unknowns.
pub fn rref_nullspace(
    m: &Matrix,
    pivots: &[usize],
    ncols: usize,
    f: &Fp,
) -> (Vec<usize>, Vec<Vec<u64>>) {
    let mut is_pivot = vec![false; ncols];
    for &c in pivots.iter().filter(|&&c| c < ncols) {
        is_pivot[c] = true;
    }
    let free: Vec<usize> = (0..ncols).filter(|&c| !is_pivot[c]).collect();
    let basis = free
        .iter()
        .map(|&fc| {
            let mut v = vec![0; ncols];
            v[fc] = 1;
            for (i, &pc) in pivots.iter().enumerate().filter(|(_, &pc)| pc < ncols) {
                v[pc] = f.neg(m.get(i, fc));
            }
            v
        })
        .collect();
    (free, basis)
}

/// Rewrites a spanning set of a subspace in the canonical form that elimination on
/// columns left to right would produce for a matrix with that nullspace: the free
/// columns are the last nonzero positions of the reverse echelon form, and each
/// vector is 1 at its free column and 0 at the others. Returns free columns in
/// increasing order with their vectors.
pub fn canonical_subspace(
    vectors: Vec<Vec<u64>>,
    len: usize,
    f: &Fp,
) -> (Vec<usize>, Vec<Vec<u64>>) {
    if vectors.is_empty() {
        return (Vec::new(), Vec::new());
    }
    // Reverse the columns so the rightmost position is eliminated first.
    let rows: Vec<Vec<u64>> = vectors
        .into_iter()
        .map(|v| v.into_iter().rev().collect())
        .collect();
    let mut m = Matrix::from_rows(&rows, len);
    let pivots = m.rref(f, len);
    let mut out: Vec<(usize, Vec<u64>)> = pivots
        .iter()
        .enumerate()
        .map(|(i, &pc)| {
            let v: Vec<u64> = m.row(i).iter().rev().copied().collect();
            (len - 1 - pc, v)
        })
        .collect();
    out.sort_by_key(|(c, _)| *c);
    out.into_iter().unzip()
}

/// Dense univariate polynomial over `Fp`, ascending coefficients, no trailing zeros.
pub type PolyP = Vec<u64>;

fn trim(p: &mut PolyP) {
    while p.last() == Some(&0) {
        p.pop();
    }
}

pub fn poly_eval(f: &Fp, p: &[u64], t: u64) -> u64 {
    p.iter().rev().fold(0, |acc, &c| f.add(f.mul(acc, t), c))
}

pub fn poly_mul(f: &Fp, a: &[u64], b: &[u64]) -> PolyP {
    if a.is_empty() || b.is_empty() {
        return Vec::new();
    }
    let mut out = vec![0; a.len() + b.len() - 1];
    for (i, &x) in a.iter().enumerate() {
        if x == 0 {
            continue;
        }
        for (j, &y) in b.iter().enumerate() {
            out[i + j] = f.add(out[i + j], f.mul(x, y));
        }
    }
    trim(&mut out);
    out
}

pub fn poly_sub(f: &Fp, a: &[u64], b: &[u64]) -> PolyP {
    let mut out = vec![0; a.len().max(b.len())];
    for (i, o) in out.iter_mut().enumerate() {
        *o = f.sub(
            a.get(i).copied().unwrap_or(0),
            b.get(i).copied().unwrap_or(0),
        );
    }
    trim(&mut out);
    out
}

/// Quotient and remainder; `b` must be nonzero.
pub fn poly_divrem(f: &Fp, a: &[u64], b: &[u64]) -> (PolyP, PolyP) {
    let mut r: PolyP = a.to_vec();
    trim(&mut r);
    let db = b.len() - 1;
    let inv = f.inv(b[db]);
    if r.len() < b.len() {
        return (Vec::new(), r);
    }
    let mut q = vec![0; r.len() - db];
    for i in (0..q.len()).rev() {
        let c = f.mul(r[i + db], inv);
        q[i] = c;
        if c != 0 {
            for (j, &bj) in b.iter().enumerate() {
                r[i + j] = f.sub(r[i + j], f.mul(c, bj));
            }
        }
    }
    trim(&mut r);
    trim(&mut q);
    (q, r)
}

pub fn poly_monic(f: &Fp, a: &[u64]) -> PolyP {
    match a.last() {
        None => Vec::new(),
        Some(&lc) => {
            let inv = f.inv(lc);
            a.iter().map(|&c| f.mul(c, inv)).collect()
        }
    }
}

pub fn poly_gcd(f: &Fp, a: &[u64], b: &[u64]) -> PolyP {
    let mut x = a.to_vec();
    let mut y = b.to_vec();
    trim(&mut x);
    trim(&mut y);
    while !y.is_empty() {
        let (_, r) = poly_divrem(f, &x, &y);
        x = y;
        y = r;
    }
    poly_monic(f, &x)
}

pub fn poly_lcm(f: &Fp, a: &[u64], b: &[u64]) -> PolyP {
    let g = poly_gcd(f, a, b);
    let (q, _) = poly_divrem(f, a, &g);
    poly_monic(f, &poly_mul(f, &q, b))
}

/// Interpolating polynomial through `(xs[i], ys[i])` by Newton divided differences.
pub fn interpolate(f: &Fp, xs: &[u64], ys: &[u64]) -> PolyP {
    let k = xs.len();
    let mut coef = ys.to_vec();
    for j in 1..k {
        for i in (j..k).rev() {
            let num = f.sub(coef[i], coef[i - 1]);
            let den = f.sub(xs[i], xs[i - j]);
            coef[i] = f.mul(num, f.inv(den));
        }
    }
    let mut out: PolyP = vec![0; k.max(1)];
    for i in (0..k).rev() {
        // out = out * (x - xs[i]) + coef[i]
        let mut next = vec![0; out.len() + 1];
        for (d, &c) in out.iter().enumerate() {
            next[d + 1] = f.add(next[d + 1], c);
            next[d] = f.sub(next[d], f.mul(c, xs[i]));
        }
        next[0] = f.add(next[0], coef[i]);
        out = next;
    }
    trim(&mut out);
    out
}

/// Rational function `num/den` (den monic) with `deg num + deg den < xs.len()` matching
/// the samples, obtained from the extended Euclidean algorithm with balanced degrees.
pub fn pade(f: &Fp, xs: &[u64], ys: &[u64]) -> Option<(PolyP, PolyP)> {
    let k = xs.len();
    let interp = interpolate(f, xs, ys);
    if interp.is_empty() {
        return Some((Vec::new(), vec![1]));
    }
    let mut modulus: PolyP = vec![1];
    for &x in xs {
        modulus = poly_mul(f, &modulus, &[f.neg(x), 1]);
    }
    let num_bound = (k - 1) / 2;
    let (mut r0, mut r1) = (modulus, interp);
    let (mut t0, mut t1): (PolyP, PolyP) = (Vec::new(), vec![1]);
    while r1.len() > num_bound + 1 {
        let (q, r) = poly_divrem(f, &r0, &r1);
        let t2 = poly_sub(f, &t0, &poly_mul(f, &q, &t1));
        r0 = r1;
        r1 = r;
        t0 = t1;
        t1 = t2;
        if r1.is_empty() {
            break;
        }
    }
    if t1.is_empty() || t1.len() - 1 + r1.len().saturating_sub(1) >= k {
        return None;
    }
    if xs.iter().any(|&x| poly_eval(f, &t1, x) == 0) {
        return None;
    }
    let inv = f.inv(*t1.last().unwrap());
    let num = r1.iter().map(|&c| f.mul(c, inv)).collect();
    let den = t1.iter().map(|&c| f.mul(c, inv)).collect();
    Some((num, den))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::ring::rat;

    #[test]
    fn field_ops() {
        let f = Fp::new(primes()[0]);
        assert_eq!(primes()[0], 2_147_483_647);
        let a = 123_456_789;
        assert_eq!(f.mul(a, f.inv(a)), 1);
        assert_eq!(f.reduce(u64::MAX), u64::MAX % f.modulus());
        let x = f.from_rational(&rat(-1, 2)).unwrap();
        assert_eq!(f.mul(x, 2), f.modulus() - 1);
        assert!(primes().windows(2).all(|w| w[0] > w[1]));
    }

    #[test]
    fn rref_and_nullspace() {
        let f = Fp::new(primes()[1]);
        // x + y + z = 0, y - z = 0
        let rows = vec![vec![1, 1, 1], vec![0, 1, f.neg(1)]];
        let mut m = Matrix::from_rows(&rows, 3);
        let piv = m.rref(&f, 3);
        assert_eq!(piv, vec![0, 1]);
        let (free, basis) = rref_nullspace(&m, &piv, 3, &f);
        assert_eq!(free, vec![2]);
        assert_eq!(basis[0], vec![f.neg(2), 1, 1]);
        let (cf, cb) = canonical_subspace(vec![vec![f.neg(4), 2, 2]], 3, &f);
        assert_eq!(cf, free);
        assert_eq!(cb, basis);
    }

    #[test]
    fn pade_recovers_rational_function() {
        let f = Fp::new(primes()[2]);
        // (3t^2 + 1) / (t - 5)
        let xs: Vec<u64> = (10..22).collect();
        let ys: Vec<u64> = xs
            .iter()
            .map(|&t| f.mul(f.add(f.mul(3, f.mul(t, t)), 1), f.inv(f.sub(t, 5))))
            .collect();
        let (num, den) = pade(&f, &xs, &ys).unwrap();
        assert_eq!(num, vec![1, 0, 3]);
        assert_eq!(den, vec![f.neg(5), 1]);
        let (num, den) = pade(&f, &xs, &vec![7; xs.len()]).unwrap();
        assert_eq!((num, den), (vec![7], vec![1]));
    }
}
