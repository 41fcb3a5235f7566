//! Univariate polynomials and rational functions in the deformation parameter `q`.

use std::fmt;

use num_traits::Signed;

use crate::error::{Error, Result};
use crate::ring::{QRing, Rational, Ring, RingKind};

/// Element of ℚ[q]; `coeffs[i]` is the coefficient of `q^i`, no trailing zeros.
#[derive(Clone, PartialEq, Eq, Hash, Default)]
pub struct QPoly {
    coeffs: Vec<Rational>,
}

impl QPoly {
    pub fn new(mut coeffs: Vec<Rational>) -> Self {
        while coeffs.last().is_some_and(Ring::is_zero) {
            coeffs.pop();
        }
        QPoly { coeffs }
    }

    pub fn constant(c: Rational) -> Self {
        QPoly::new(vec![c])
    }

    /// `a + b q`
    pub fn linear(a: Rational, b: Rational) -> Self {
        QPoly::new(vec![a, b])
    }

    pub fn coeffs(&self) -> &[Rational] {
        &self.coeffs
    }

    pub fn coeff(&self, i: usize) -> Rational {
        self.coeffs.get(i).cloned().unwrap_or_else(Rational::zero)
    }

    /// `None` for the zero polynomial.
    pub fn degree(&self) -> Option<usize> {
        self.coeffs.len().checked_sub(1)
    }

    pub fn leading(&self) -> Option<&Rational> {
        self.coeffs.last()
    }

    pub fn is_constant(&self) -> bool {
        self.coeffs.len() <= 1
    }

    pub fn eval(&self, q0: &Rational) -> Rational {
        self.coeffs
            .iter()
            .rev()
            .fold(Rational::zero(), |acc, c| acc * q0 + c)
    }

    pub fn scale(&self, c: &Rational) -> Self {
        if c.is_zero() {
            return QPoly::default();
        }
        QPoly {
            coeffs: self.coeffs.iter().map(|a| a * c).collect(),
        }
    }

    pub fn monic(&self) -> Self {
        match self.leading() {
            None => self.clone(),
            Some(lc) => {
                let inv = lc.recip();
                self.scale(&inv)
            }
        }
    }

    /// Euclidean division; panics on a zero divisor.
    pub fn div_rem(&self, rhs: &QPoly) -> (QPoly, QPoly) {
        let d = rhs.degree().expect("division by zero polynomial");
        let lc_inv = rhs.coeffs[d].recip();
        let mut rem = self.coeffs.clone();
        if rem.len() <= d {
            return (QPoly::default(), self.clone());
        }
        let mut quot = vec![Rational::zero(); rem.len() - d];
        for i in (d..rem.len()).rev() {
            let c = &rem[i] * &lc_inv;
            if c.is_zero() {
                continue;
            }
            for (j, b) in rhs.coeffs.iter().enumerate() {
                let t = &c * b;
                rem[i - d + j] -= t;
            }
            quot[i - d] = c;
        }
        rem.truncate(d);
        (QPoly::new(quot), QPoly::new(rem))
    }

    /// Monic greatest common divisor (zero only if both inputs are zero).
    pub fn gcd(a: &QPoly, b: &QPoly) -> QPoly {
        let (mut a, mut b) = (a.clone(), b.clone());
        while !b.coeffs.is_empty() {
            let (_, r) = a.div_rem(&b);
            // keep the remainder sequence monic to curb coefficient growth
            a = b;
            b = r.monic();
        }
        a.monic()
    }
}

impl fmt::Debug for QPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "QPoly({self})")
    }
}

impl fmt::Display for QPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.coeffs.is_empty() {
            return f.write_str("0");
        }
        let mut first = true;
        for (i, c) in self.coeffs.iter().enumerate().rev() {
            if c.is_zero() {
                continue;
            }
            let neg = c.is_negative();
            let a = c.abs();
            if neg {
                f.write_str("-")?;
            } else if !first {
                f.write_str("+")?;
            }
            first = false;
            match i {
                0 => write!(f, "{a}")?,
                _ => {
                    if !a.is_one() {
                        write!(f, "{a}*")?;
                    }
                    if i == 1 {
                        f.write_str("q")?;
                    } else {
                        write!(f, "q^{i}")?;
                    }
                }
            }
        }
        Ok(())
    }
}

impl Ring for QPoly {
    const KIND: RingKind = RingKind::QPoly;

    fn zero() -> Self {
        QPoly::default()
    }
    fn one() -> Self {
        QPoly::constant(Rational::one())
    }
    fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }
    fn add(&self, rhs: &Self) -> Self {
        let n = self.coeffs.len().max(rhs.coeffs.len());
        QPoly::new((0..n).map(|i| self.coeff(i) + rhs.coeff(i)).collect())
    }
    fn sub(&self, rhs: &Self) -> Self {
        let n = self.coeffs.len().max(rhs.coeffs.len());
        QPoly::new((0..n).map(|i| self.coeff(i) - rhs.coeff(i)).collect())
    }
    fn mul(&self, rhs: &Self) -> Self {
        if self.coeffs.is_empty() || rhs.coeffs.is_empty() {
            return QPoly::default();
        }
        let mut out = vec![Rational::zero(); self.coeffs.len() + rhs.coeffs.len() - 1];
        for (i, a) in self.coeffs.iter().enumerate() {
            if a.is_zero() {
                continue;
            }
            for (j, b) in rhs.coeffs.iter().enumerate() {
                out[i + j] += a * b;
            }
        }
        QPoly::new(out)
    }
    fn neg(&self) -> Self {
        QPoly {
            coeffs: self.coeffs.iter().map(|c| -c).collect(),
        }
    }
    fn from_rational(r: &Rational) -> Self {
        QPoly::constant(r.clone())
    }
    fn checked_div(&self, rhs: &Self) -> Option<Self> {
        if rhs.is_zero() {
            return None;
        }
        let (q, r) = self.div_rem(rhs);
        r.is_zero().then_some(q)
    }
    fn as_rational(&self) -> Option<Rational> {
        match self.coeffs.len() {
            0 => Some(Rational::zero()),
            1 => Some(self.coeffs[0].clone()),
            _ => None,
        }
    }
    fn q() -> Option<Self> {
        Some(QPoly::linear(Rational::zero(), Rational::one()))
    }
}

impl QRing for QPoly {
    fn evaluate(&self, q0: &Rational) -> Result<Rational> {
        Ok(self.eval(q0))
    }
}

/// Element of ℚ(q) in canonical form: monic denominator, coprime to the numerator.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct QRatFunc {
    num: QPoly,
    den: QPoly,
}

impl QRatFunc {
    /// `None` when the denominator is zero.
    pub fn new(num: QPoly, den: QPoly) -> Option<Self> {
        if den.is_zero() {
            return None;
        }
        if num.is_zero() {
            return Some(QRatFunc::from(QPoly::default()));
        }
        let g = QPoly::gcd(&num, &den);
        let (num, den) = if g.degree() == Some(0) {
            (num, den)
        } else {
            (num.checked_div(&g).unwrap(), den.checked_div(&g).unwrap())
        };
        let lc = den.leading().unwrap().recip();
        Some(QRatFunc {
            num: num.scale(&lc),
            den: den.scale(&lc),
        })
    }

    pub fn numer(&self) -> &QPoly {
        &self.num
    }

    pub fn denom(&self) -> &QPoly {
        &self.den
    }

    pub fn is_polynomial(&self) -> bool {
        self.den.is_constant()
    }

    pub fn inv(&self) -> Option<Self> {
        QRatFunc::new(self.den.clone(), self.num.clone())
    }
}

impl From<QPoly> for QRatFunc {
    fn from(p: QPoly) -> Self {
        QRatFunc {
            num: p,
            den: QPoly::one(),
        }
    }
}

impl fmt::Debug for QRatFunc {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "QRatFunc({self})")
    }
}

impl fmt::Display for QRatFunc {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.den.is_one() {
            write!(f, "{}", self.num)
        } else {
            write!(f, "({})/({})", self.num, self.den)
        }
    }
}

impl Ring for QRatFunc {
    const KIND: RingKind = RingKind::QRat;

    fn zero() -> Self {
        QRatFunc::from(QPoly::default())
    }
    fn one() -> Self {
        QRatFunc::from(QPoly::one())
    }
    fn is_zero(&self) -> bool {
        self.num.is_zero()
    }
    fn add(&self, rhs: &Self) -> Self {
        if self.den == rhs.den {
            return QRatFunc::new(self.num.add(&rhs.num), self.den.clone()).unwrap();
        }
        let num = self.num.mul(&rhs.den).add(&rhs.num.mul(&self.den));
        QRatFunc::new(num, self.den.mul(&rhs.den)).unwrap()
    }
    fn sub(&self, rhs: &Self) -> Self {
        self.add(&rhs.neg())
    }
    fn mul(&self, rhs: &Self) -> Self {
        QRatFunc::new(self.num.mul(&rhs.num), self.den.mul(&rhs.den)).unwrap()
    }
    fn neg(&self) -> Self {
        QRatFunc {
            num: self.num.neg(),
            den: self.den.clone(),
        }
    }
    fn from_rational(r: &Rational) -> Self {
        QRatFunc::from(QPoly::constant(r.clone()))
    }
    fn checked_div(&self, rhs: &Self) -> Option<Self> {
        rhs.inv().map(|inv| self.mul(&inv))
    }
    fn as_rational(&self) -> Option<Rational> {
        if self.den.is_one() {
            self.num.as_rational()
        } else {
            None
        }
    }
    fn q() -> Option<Self> {
        QPoly::q().map(QRatFunc::from)
    }
}

impl QRing for QRatFunc {
    fn evaluate(&self, q0: &Rational) -> Result<Rational> {
        let d = self.den.eval(q0);
        if d.is_zero() {
            return Err(Error::PoleAtQ0 { q0: q0.to_string() });
        }
        Ok(self.num.eval(q0) / d)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::ring::{int, rat};

    fn qp(c: &[i64]) -> QPoly {
        QPoly::new(c.iter().map(|&x| int(x)).collect())
    }

    #[test]
    fn display() {
        let p = QPoly::new(vec![rat(-1, 2), int(0), int(1)]);
        assert_eq!(p.to_string(), "q^2-1/2");
        assert_eq!(qp(&[3, -1]).to_string(), "-q+3");
        assert_eq!(qp(&[]).to_string(), "0");
        let r = QRatFunc::new(qp(&[1, 1]), qp(&[-2, 1])).unwrap();
        assert_eq!(r.to_string(), "(q+1)/(q-2)");
    }

    #[test]
    fn division_and_gcd() {
        // (q^2 - 1) / (q - 1) = q + 1
        let a = qp(&[-1, 0, 1]);
        let b = qp(&[-1, 1]);
        assert_eq!(a.checked_div(&b), Some(qp(&[1, 1])));
        assert_eq!(qp(&[1, 0, 1]).checked_div(&b), None);
        assert_eq!(QPoly::gcd(&a, &qp(&[2, 2])), qp(&[1, 1]));
    }

    #[test]
    fn rational_function_canonical() {
        // (2q^2 - 2) / (4q - 4) = (q + 1)/2
        let r = QRatFunc::new(qp(&[-2, 0, 2]), qp(&[-4, 4])).unwrap();
        assert!(r.is_polynomial());
        assert_eq!(r.numer(), &QPoly::new(vec![rat(1, 2), rat(1, 2)]));
        let s = QRatFunc::new(qp(&[1]), qp(&[-2, 1])).unwrap();
        assert!(matches!(s.evaluate(&int(2)), Err(Error::PoleAtQ0 { .. })));
        let sum = s.add(&s.neg());
        assert!(sum.is_zero());
        assert_eq!(s.mul(&s.inv().unwrap()), QRatFunc::one());
    }
}
