//! Sparse multivariate polynomials over an exact coefficient ring.
//!
//! The library API indexes variables from 0; the text format uses `x1, x2, …`.

use std::collections::BTreeMap;
use std::ops::{Add, Mul, Neg, Sub};

use rustc_hash::FxHashMap;

use crate::error::{Error, Result};
use crate::monomial::Monomial;
use crate::perm::Perm;
use crate::qpoly::{QPoly, QRatFunc};
use crate::ring::{QRing, Rational, Ring, RingKind};

#[derive(Clone, PartialEq, Eq)]
pub struct Polynomial<R: Ring> {
    n_vars: usize,
    terms: BTreeMap<Monomial, R>,
}

/// Result of a homogeneity query.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Degree {
    /// The zero polynomial, whose degree is undefined.
    Zero,
    Homogeneous(usize),
    Inhomogeneous,
}

impl<R: Ring> Polynomial<R> {
    pub fn zero(n_vars: usize) -> Self {
        Polynomial {
            n_vars,
            terms: BTreeMap::new(),
        }
    }

    pub fn one(n_vars: usize) -> Self {
        Polynomial::constant(n_vars, R::one())
    }

    pub fn constant(n_vars: usize, c: R) -> Self {
        Polynomial::monomial(Monomial::one(n_vars), c)
    }

    pub fn monomial(m: Monomial, c: R) -> Self {
        let mut p = Polynomial::zero(m.n_vars());
        if !c.is_zero() {
            p.terms.insert(m, c);
        }
        p
    }

    /// The variable `x_i` (0-based).
    pub fn var(n_vars: usize, i: usize) -> Self {
        assert!(
            i < n_vars,
            "variable {i} out of range for {n_vars} variables"
        );
        Polynomial::monomial(Monomial::var_power(n_vars, i, 1), R::one())
    }

    /// Sums the given terms; repeated monomials accumulate and zeros are dropped.
    pub fn from_terms(n_vars: usize, terms: impl IntoIterator<Item = (Monomial, R)>) -> Self {
        let mut p = Polynomial::zero(n_vars);
        for (m, c) in terms {
            p.add_term(m, &c);
        }
        p
    }

    pub fn n_vars(&self) -> usize {
        self.n_vars
    }

    pub fn terms(&self) -> &BTreeMap<Monomial, R> {
        &self.terms
    }

    pub fn into_terms(self) -> BTreeMap<Monomial, R> {
        self.terms
    }

    pub fn len(&self) -> usize {
        self.terms.len()
    }

    pub fn is_empty(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn coeff(&self, m: &Monomial) -> R {
        self.terms.get(m).cloned().unwrap_or_else(R::zero)
    }

    /// Largest monomial under graded-lex order with its coefficient.
    pub fn leading_term(&self) -> Option<(&Monomial, &R)> {
        self.terms.last_key_value()
    }

    pub fn max_degree(&self) -> Option<usize> {
        self.terms.keys().next_back().map(Monomial::degree)
    }

    pub fn homogeneity(&self) -> Degree {
        let (Some(lo), Some(hi)) = (self.terms.keys().next(), self.terms.keys().next_back()) else {
            return Degree::Zero;
        };
        if lo.degree() == hi.degree() {
            Degree::Homogeneous(hi.degree())
        } else {
            Degree::Inhomogeneous
        }
    }

    pub fn homogeneous_component(&self, d: usize) -> Self {
        Polynomial {
            n_vars: self.n_vars,
            terms: self
                .terms
                .iter()
                .filter(|(m, _)| m.degree() == d)
                .map(|(m, c)| (m.clone(), c.clone()))
                .collect(),
        }
    }

    pub fn add_term(&mut self, m: Monomial, c: &R) {
        debug_assert_eq!(m.n_vars(), self.n_vars);
        if c.is_zero() {
            return;
        }
        use std::collections::btree_map::Entry;
        match self.terms.entry(m) {
            Entry::Vacant(v) => {
                v.insert(c.clone());
            }
            Entry::Occupied(mut o) => {
                o.get_mut().add_assign(c);
                if o.get().is_zero() {
                    o.remove();
                }
            }
        }
    }

    pub fn check_arity(&self, other: &Self) -> Result<()> {
        if self.n_vars == other.n_vars {
            Ok(())
        } else {
            Err(Error::ArityMismatch {
                left: self.n_vars,
                right: other.n_vars,
            })
        }
    }

    pub fn try_add(&self, other: &Self) -> Result<Self> {
        self.check_arity(other)?;
        let mut out = self.clone();
        for (m, c) in &other.terms {
            out.add_term(m.clone(), c);
        }
        Ok(out)
    }

    pub fn try_sub(&self, other: &Self) -> Result<Self> {
        self.check_arity(other)?;
        let mut out = self.clone();
        for (m, c) in &other.terms {
            out.add_term(m.clone(), &c.neg());
        }
        Ok(out)
    }

    pub fn try_mul(&self, other: &Self) -> Result<Self> {
        self.check_arity(other)?;
        if self.is_zero() || other.is_zero() {
            return Ok(Polynomial::zero(self.n_vars));
        }
        let (small, large) = if self.len() <= other.len() {
            (self, other)
        } else {
            (other, self)
        };
        let mut acc: FxHashMap<Monomial, R> = FxHashMap::default();
        acc.reserve(large.len() * small.len().min(64));
        for (ma, ca) in &small.terms {
            for (mb, cb) in &large.terms {
                let prod = ca.mul(cb);
                match acc.get_mut(&ma.mul(mb)) {
                    Some(slot) => slot.add_assign(&prod),
                    None => {
                        acc.insert(ma.mul(mb), prod);
                    }
                }
            }
        }
        Ok(Polynomial {
            n_vars: self.n_vars,
            terms: acc.into_iter().filter(|(_, c)| !c.is_zero()).collect(),
        })
    }

    pub fn scale(&self, c: &R) -> Self {
        if c.is_zero() {
            return Polynomial::zero(self.n_vars);
        }
        Polynomial {
            n_vars: self.n_vars,
            terms: self
                .terms
                .iter()
                .map(|(m, a)| (m.clone(), a.mul(c)))
                .filter(|(_, a)| !a.is_zero())
                .collect(),
        }
    }

    pub fn scale_rat(&self, c: &Rational) -> Self {
        self.scale(&R::from_rational(c))
    }

    pub fn mul_monomial(&self, m: &Monomial, c: &R) -> Self {
        if c.is_zero() {
            return Polynomial::zero(self.n_vars);
        }
        Polynomial {
            n_vars: self.n_vars,
            terms: self
                .terms
                .iter()
                .map(|(k, a)| (k.mul(m), a.mul(c)))
                .filter(|(_, a)| !a.is_zero())
                .collect(),
        }
    }

    pub fn pow(&self, e: u32) -> Self {
        let mut out = Polynomial::one(self.n_vars);
        for _ in 0..e {
            out = &out * self;
        }
        out
    }

    /// `∂_i^order f` (0-based `i`).
    pub fn partial(&self, i: usize, order: u32) -> Self {
        assert!(i < self.n_vars, "variable {i} out of range");
        let mut out = Polynomial::zero(self.n_vars);
        for (m, c) in &self.terms {
            let e = m.exp(i) as u32;
            if e < order {
                continue;
            }
            let falling: i64 = (0..order).map(|t| (e - t) as i64).product();
            let m2 = m.shift(i, -(order as i32)).unwrap();
            out.terms.insert(m2, c.mul(&R::from_int(falling)));
        }
        out
    }

    pub fn try_partial(&self, i: usize, order: u32) -> Result<Self> {
        if i >= self.n_vars {
            return Err(Error::VariableOutOfRange {
                index: i,
                n_vars: self.n_vars,
            });
        }
        Ok(self.partial(i, order))
    }

    /// `x_i^times f` (0-based `i`).
    pub fn mul_var(&self, i: usize, times: u16) -> Self {
        Polynomial {
            n_vars: self.n_vars,
            terms: self
                .terms
                .iter()
                .map(|(m, c)| (m.shift(i, times as i32).unwrap(), c.clone()))
                .collect(),
        }
    }

    /// `h` with `self = g·h`, or `NonExactDivision`.
    pub fn exact_divide(&self, g: &Self) -> Result<Self> {
        self.check_arity(g)?;
        let Some((lm_g, lc_g)) = g.leading_term() else {
            return Err(Error::invalid("division by the zero polynomial"));
        };
        let (lm_g, lc_g) = (lm_g.clone(), lc_g.clone());
        let mut rem = self.terms.clone();
        let mut quot = Polynomial::zero(self.n_vars);
        while let Some((m, c)) = rem.pop_last() {
            let Some(tm) = m.div(&lm_g) else {
                return Err(Error::NonExactDivision);
            };
            let Some(tc) = c.checked_div(&lc_g) else {
                return Err(Error::NonExactDivision);
            };
            for (gm, gc) in g.terms.iter().rev().skip(1) {
                let key = gm.mul(&tm);
                let delta = gc.mul(&tc).neg();
                use std::collections::btree_map::Entry;
                match rem.entry(key) {
                    Entry::Vacant(v) => {
                        v.insert(delta);
                    }
                    Entry::Occupied(mut o) => {
                        o.get_mut().add_assign(&delta);
                        if o.get().is_zero() {
                            o.remove();
                        }
                    }
                }
            }
            quot.terms.insert(tm, tc);
        }
        Ok(quot)
    }

    /// Substitutes `x_i -> x_{σ(i)}`.
    pub fn permute(&self, sigma: &Perm) -> Self {
        assert_eq!(sigma.len(), self.n_vars, "permutation size mismatch");
        Polynomial {
            n_vars: self.n_vars,
            terms: self
                .terms
                .iter()
                .map(|(m, c)| {
                    let mut exps = m.exps().to_vec();
                    for (i, &e) in m.exps().iter().enumerate() {
                        exps[sigma.image(i)] = e;
                    }
                    (Monomial::from_slice(&exps), c.clone())
                })
                .collect(),
        }
    }

    /// Swaps two variables.
    pub fn swap_vars(&self, i: usize, j: usize) -> Self {
        self.permute(&Perm::transposition(self.n_vars, i, j))
    }

    /// Whether every adjacent transposition within `vars` (sorted) fixes `self`.
    pub fn is_symmetric_in(&self, vars: &[usize]) -> bool {
        vars.windows(2).all(|w| self.swap_vars(w[0], w[1]) == *self)
    }

    pub fn map_coeffs<S: Ring>(&self, f: impl Fn(&R) -> S) -> Polynomial<S> {
        Polynomial {
            n_vars: self.n_vars,
            terms: self
                .terms
                .iter()
                .map(|(m, c)| (m.clone(), f(c)))
                .filter(|(_, c)| !c.is_zero())
                .collect(),
        }
    }

    pub fn try_map_coeffs<S: Ring>(&self, f: impl Fn(&R) -> Result<S>) -> Result<Polynomial<S>> {
        let mut terms = BTreeMap::new();
        for (m, c) in &self.terms {
            let s = f(c)?;
            if !s.is_zero() {
                terms.insert(m.clone(), s);
            }
        }
        Ok(Polynomial {
            n_vars: self.n_vars,
            terms,
        })
    }

    /// The same polynomial with rational coefficients, if all coefficients are constants.
    pub fn to_rational(&self) -> Option<Polynomial<Rational>> {
        self.try_map_coeffs(|c| c.as_rational().ok_or(Error::Singular))
            .ok()
    }
}

impl Polynomial<Rational> {
    /// Explicit move into a larger coefficient ring.
    pub fn promote<S: Ring>(&self) -> Polynomial<S> {
        self.map_coeffs(S::from_rational)
    }
}

impl Polynomial<QPoly> {
    pub fn to_qrat(&self) -> Polynomial<QRatFunc> {
        self.map_coeffs(|c| QRatFunc::from(c.clone()))
    }
}

impl<R: QRing> Polynomial<R> {
    /// Evaluates every coefficient at `q = q0`.
    pub fn specialize(&self, q0: &Rational) -> Result<Polynomial<Rational>> {
        self.try_map_coeffs(|c| c.evaluate(q0))
    }
}

impl<R: Ring> Add for &Polynomial<R> {
    type Output = Polynomial<R>;
    fn add(self, rhs: Self) -> Polynomial<R> {
        self.try_add(rhs).expect("arity mismatch")
    }
}

impl<R: Ring> Sub for &Polynomial<R> {
    type Output = Polynomial<R>;
    fn sub(self, rhs: Self) -> Polynomial<R> {
        self.try_sub(rhs).expect("arity mismatch")
    }
}

impl<R: Ring> Mul for &Polynomial<R> {
    type Output = Polynomial<R>;
    fn mul(self, rhs: Self) -> Polynomial<R> {
        self.try_mul(rhs).expect("arity mismatch")
    }
}

impl<R: Ring> Neg for &Polynomial<R> {
    type Output = Polynomial<R>;
    fn neg(self) -> Polynomial<R> {
        self.map_coeffs(R::neg)
    }
}

impl<R: Ring> Add for Polynomial<R> {
    type Output = Polynomial<R>;
    fn add(self, rhs: Self) -> Polynomial<R> {
        &self + &rhs
    }
}

impl<R: Ring> Sub for Polynomial<R> {
    type Output = Polynomial<R>;
    fn sub(self, rhs: Self) -> Polynomial<R> {
        &self - &rhs
    }
}

impl<R: Ring> Mul for Polynomial<R> {
    type Output = Polynomial<R>;
    fn mul(self, rhs: Self) -> Polynomial<R> {
        &self * &rhs
    }
}

impl<R: Ring> Neg for Polynomial<R> {
    type Output = Polynomial<R>;
    fn neg(self) -> Polynomial<R> {
        -&self
    }
}

/// Product of the given polynomials (the empty product is 1).
pub fn product<R: Ring>(
    n_vars: usize,
    factors: impl IntoIterator<Item = Polynomial<R>>,
) -> Polynomial<R> {
    factors
        .into_iter()
        .fold(Polynomial::one(n_vars), |acc, f| &acc * &f)
}

/// A polynomial whose coefficient ring is known only at run time.
#[derive(Clone, PartialEq, Eq, Debug)]
pub enum AnyPolynomial {
    Rat(Polynomial<Rational>),
    QPoly(Polynomial<QPoly>),
    QRat(Polynomial<QRatFunc>),
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum ArithOp {
    Add,
    Sub,
    Mul,
}

impl AnyPolynomial {
    pub fn kind(&self) -> RingKind {
        match self {
            AnyPolynomial::Rat(_) => RingKind::Rat,
            AnyPolynomial::QPoly(_) => RingKind::QPoly,
            AnyPolynomial::QRat(_) => RingKind::QRat,
        }
    }

    /// Ring operations on values of the same ring; mixed rings are rejected.
    pub fn arith(&self, rhs: &AnyPolynomial, op: ArithOp) -> Result<AnyPolynomial> {
        fn go<R: Ring>(a: &Polynomial<R>, b: &Polynomial<R>, op: ArithOp) -> Result<Polynomial<R>> {
            match op {
                ArithOp::Add => a.try_add(b),
                ArithOp::Sub => a.try_sub(b),
                ArithOp::Mul => a.try_mul(b),
            }
        }
        match (self, rhs) {
            (AnyPolynomial::Rat(a), AnyPolynomial::Rat(b)) => go(a, b, op).map(AnyPolynomial::Rat),
            (AnyPolynomial::QPoly(a), AnyPolynomial::QPoly(b)) => {
                go(a, b, op).map(AnyPolynomial::QPoly)
            }
            (AnyPolynomial::QRat(a), AnyPolynomial::QRat(b)) => {
                go(a, b, op).map(AnyPolynomial::QRat)
            }
            _ => Err(Error::RingMismatch {
                left: self.kind(),
                right: rhs.kind(),
            }),
        }
    }

    pub fn specialize(&self, q0: &Rational) -> Result<Polynomial<Rational>> {
        match self {
            AnyPolynomial::Rat(p) => Ok(p.clone()),
            AnyPolynomial::QPoly(p) => p.specialize(q0),
            AnyPolynomial::QRat(p) => p.specialize(q0),
        }
    }
}
