//! Exponent vectors under the graded-lexicographic order with `x1 > x2 > … > xn`.

use std::cmp::Ordering;
use std::fmt;
use std::hash::{Hash, Hasher};

use smallvec::SmallVec;

pub type Exponents = SmallVec<[u16; 8]>;

#[derive(Clone, PartialEq, Eq)]
pub struct Monomial {
    exps: Exponents,
    degree: u32,
}

impl Monomial {
    pub fn new(exps: impl Into<Exponents>) -> Self {
        let exps = exps.into();
        let degree = exps.iter().map(|&e| e as u32).sum();
        Monomial { exps, degree }
    }

    pub fn from_slice(exps: &[u16]) -> Self {
        Monomial::new(Exponents::from_slice(exps))
    }

    pub fn one(n_vars: usize) -> Self {
        Monomial {
            exps: SmallVec::from_elem(0, n_vars),
            degree: 0,
        }
    }

    /// The monomial `x_i^e` (0-based `i`).
    pub fn var_power(n_vars: usize, i: usize, e: u16) -> Self {
        let mut m = Monomial::one(n_vars);
        m.exps[i] = e;
        m.degree = e as u32;
        m
    }

    pub fn n_vars(&self) -> usize {
        self.exps.len()
    }

    pub fn exps(&self) -> &[u16] {
        &self.exps
    }

    pub fn exp(&self, i: usize) -> u16 {
        self.exps[i]
    }

    pub fn degree(&self) -> usize {
        self.degree as usize
    }

    pub fn mul(&self, rhs: &Monomial) -> Monomial {
        debug_assert_eq!(self.exps.len(), rhs.exps.len());
        Monomial {
            exps: self
                .exps
                .iter()
                .zip(&rhs.exps)
                .map(|(a, b)| a + b)
                .collect(),
            degree: self.degree + rhs.degree,
        }
    }

    /// `self / rhs` when every exponent of `rhs` is at most that of `self`.
    pub fn div(&self, rhs: &Monomial) -> Option<Monomial> {
        let mut exps = Exponents::with_capacity(self.exps.len());
        for (a, b) in self.exps.iter().zip(&rhs.exps) {
            exps.push(a.checked_sub(*b)?);
        }
        Some(Monomial {
            exps,
            degree: self.degree - rhs.degree,
        })
    }

    /// Adds `delta` to exponent `i`; `None` if it would become negative.
    pub fn shift(&self, i: usize, delta: i32) -> Option<Monomial> {
        let e = self.exps[i] as i32 + delta;
        if e < 0 {
            return None;
        }
        let mut exps = self.exps.clone();
        exps[i] = e as u16;
        Some(Monomial {
            exps,
            degree: (self.degree as i32 + delta) as u32,
        })
    }
}

impl Hash for Monomial {
    fn hash<H: Hasher>(&self, state: &mut H) {
        self.exps.hash(state);
    }
}

impl Ord for Monomial {
    fn cmp(&self, other: &Self) -> Ordering {
        self.degree
            .cmp(&other.degree)
            .then_with(|| self.exps.cmp(&other.exps))
    }
}

impl PartialOrd for Monomial {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

impl fmt::Debug for Monomial {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{self}")
    }
}

/// `x1*x2^3`, or `1` for the unit monomial.
impl fmt::Display for Monomial {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let mut first = true;
        for (i, &e) in self.exps.iter().enumerate() {
            if e == 0 {
                continue;
            }
            if !first {
                f.write_str("*")?;
            }
            first = false;
            write!(f, "x{}", i + 1)?;
            if e > 1 {
                write!(f, "^{e}")?;
            }
        }
        if first {
            f.write_str("1")?;
        }
        Ok(())
    }
}

/// All monomials of degree `d` in `n` variables, in descending graded-lex order.
pub fn monomial_basis(n: usize, d: usize) -> Vec<Monomial> {
    let mut out = Vec::new();
    let mut cur = vec![0u16; n];
    fn rec(i: usize, left: usize, cur: &mut Vec<u16>, out: &mut Vec<Monomial>) {
        let n = cur.len();
        if i + 1 == n {
            cur[i] = left as u16;
            out.push(Monomial::new(Exponents::from_slice(cur)));
            return;
        }
        for e in (0..=left).rev() {
            cur[i] = e as u16;
            rec(i + 1, left - e, cur, out);
        }
        cur[i] = 0;
    }
    if n == 0 {
        if d == 0 {
            out.push(Monomial::one(0));
        }
        return out;
    }
    rec(0, d, &mut cur, &mut out);
    out
}
