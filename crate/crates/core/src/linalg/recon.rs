//! Chinese remaindering and rational reconstruction.

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, Zero};

use crate::linalg::modp::Fp;
use crate::ring::Rational;

/// Residues of a vector of integers accumulated over several primes.
#[derive(Clone, Debug)]
pub struct Crt {
    modulus: BigInt,
    values: Vec<BigInt>,
}

impl Crt {
    pub fn new(len: usize) -> Self {
        Crt {
            modulus: BigInt::one(),
            values: vec![BigInt::zero(); len],
        }
    }

    pub fn len(&self) -> usize {
        self.values.len()
    }

    pub fn is_empty(&self) -> bool {
        self.values.is_empty()
    }

    pub fn modulus(&self) -> &BigInt {
        &self.modulus
    }

    /// Folds in residues modulo the prime of `f`.
    pub fn push(&mut self, f: &Fp, residues: &[u64]) {
        assert_eq!(residues.len(), self.values.len());
        let p = f.modulus();
        let m_mod_p = f.from_bigint(&self.modulus);
        let inv = f.inv(m_mod_p);
        for (x, &r) in self.values.iter_mut().zip(residues) {
            let xp = f.from_bigint(x);
            let t = f.mul(f.sub(r, xp), inv);
            if t != 0 {
                *x += &self.modulus * BigInt::from(t);
            }
        }
        self.modulus *= BigInt::from(p);
    }

    /// Rational reconstruction of every entry; `None` if any entry fails.
    pub fn reconstruct(&self) -> Option<Vec<Rational>> {
        self.values
            .iter()
            .map(|x| rational_reconstruct(x, &self.modulus))
            .collect()
    }
}

/// The unique `a/b` with `|a|, b <= sqrt(m/2)` congruent to `x` modulo `m`, if any.
pub fn rational_reconstruct(x: &BigInt, m: &BigInt) -> Option<Rational> {
    let x = x.mod_floor(m);
    if x.is_zero() {
        return Some(Rational::zero());
    }
    let bound = (m / 2u32).sqrt();
    if x <= bound {
        return Some(Rational::from_integer(x));
    }
    let neg = m - &x;
    if neg <= bound {
        return Some(Rational::from_integer(-neg));
    }
    let (mut r0, mut r1) = (m.clone(), x);
    let (mut t0, mut t1) = (BigInt::zero(), BigInt::one());
    while r1 > bound {
        let (q, r) = r0.div_rem(&r1);
        let t2 = &t0 - &q * &t1;
        r0 = r1;
        r1 = r;
        t0 = t1;
        t1 = t2;
    }
    if t1.is_zero() || t1.abs() > bound || !r1.gcd(&t1).is_one() {
        return None;
    }
    Some(Rational::new(r1, t1))
}
