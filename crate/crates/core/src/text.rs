//! Text format for polynomials: `4/3*x1*x2 - 1/3*x3^2`, `(q^2-1/2)*x1`.

use std::fmt;

use num_traits::Signed;

use crate::error::{Error, Result};
use crate::monomial::Monomial;
use crate::poly::Polynomial;
use crate::ring::{parse_rational, Rational, Ring};

impl<R: Ring> fmt::Display for Polynomial<R> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_zero() {
            return f.write_str("0");
        }
        for (idx, (m, c)) in self.terms().iter().rev().enumerate() {
            let is_one = m.degree() == 0;
            match c.as_rational() {
                Some(r) => {
                    let neg = r.is_negative();
                    let a = r.abs();
                    match (idx, neg) {
                        (0, true) => f.write_str("-")?,
                        (0, false) => {}
                        (_, true) => f.write_str(" - ")?,
                        (_, false) => f.write_str(" + ")?,
                    }
                    if is_one {
                        write!(f, "{a}")?;
                    } else if num_traits::One::is_one(&a) {
                        write!(f, "{m}")?;
                    } else {
                        write!(f, "{a}*{m}")?;
                    }
                }
                None => {
                    if idx > 0 {
                        f.write_str(" + ")?;
                    }
                    if is_one {
                        write!(f, "({c})")?;
                    } else {
                        write!(f, "({c})*{m}")?;
                    }
                }
            }
        }
        Ok(())
    }
}

impl<R: Ring> fmt::Debug for Polynomial<R> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "Polynomial[{}]({self})", self.n_vars())
    }
}

/// Parses a polynomial in `n_vars` variables; `None` infers the largest `x` index used.
pub fn parse_poly<R: Ring>(s: &str, n_vars: Option<usize>) -> Result<Polynomial<R>> {
    let n = match n_vars {
        Some(n) => n,
        None => max_var_index(s)?.max(1),
    };
    let mut p = Parser {
        s: s.as_bytes(),
        pos: 0,
        n,
    };
    let v = p.expr::<R>()?;
    p.skip_ws();
    if p.pos != p.s.len() {
        return Err(p.err("unexpected trailing input"));
    }
    Ok(v)
}

fn max_var_index(s: &str) -> Result<usize> {
    let b = s.as_bytes();
    let mut best = 0;
    let mut i = 0;
    while i < b.len() {
        if b[i] == b'x' {
            let start = i + 1;
            let mut j = start;
            while j < b.len() && b[j].is_ascii_digit() {
                j += 1;
            }
            if j > start {
                let idx: usize = s[start..j].parse().map_err(|_| Error::Parse {
                    pos: start,
                    msg: "bad variable index".into(),
                })?;
                best = best.max(idx);
            }
            i = j;
        } else {
            i += 1;
        }
    }
    Ok(best)
}

struct Parser<'a> {
    s: &'a [u8],
    pos: usize,
    n: usize,
}

impl Parser<'_> {
    fn err(&self, msg: &str) -> Error {
        Error::Parse {
            pos: self.pos,
            msg: msg.to_string(),
        }
    }

    fn skip_ws(&mut self) {
        while self.pos < self.s.len() && self.s[self.pos].is_ascii_whitespace() {
            self.pos += 1;
        }
    }

    fn peek(&mut self) -> Option<u8> {
        self.skip_ws();
        self.s.get(self.pos).copied()
    }

    fn expr<R: Ring>(&mut self) -> Result<Polynomial<R>> {
        let mut acc = self.term::<R>()?;
        loop {
            match self.peek() {
                Some(b'+') => {
                    self.pos += 1;
                    acc = &acc + &self.term::<R>()?;
                }
                Some(b'-') => {
                    self.pos += 1;
                    acc = &acc - &self.term::<R>()?;
                }
                _ => return Ok(acc),
            }
        }
    }

    fn term<R: Ring>(&mut self) -> Result<Polynomial<R>> {
        let mut acc = self.unary::<R>()?;
        loop {
            match self.peek() {
                Some(b'*') => {
                    self.pos += 1;
                    acc = &acc * &self.unary::<R>()?;
                }
                Some(b'/') => {
                    self.pos += 1;
                    let at = self.pos;
                    let d = self.unary::<R>()?;
                    let c = match (d.len(), d.leading_term()) {
                        (1, Some((m, c))) if m.degree() == 0 => c.clone(),
                        _ => {
                            return Err(Error::Parse {
                                pos: at,
                                msg: "divisor must be a nonzero constant".into(),
                            })
                        }
                    };
                    acc = divide_coeffs(&acc, &c).ok_or(Error::Parse {
                        pos: at,
                        msg: "divisor is not invertible in the coefficient ring".into(),
                    })?;
                }
                _ => return Ok(acc),
            }
        }
    }

    fn unary<R: Ring>(&mut self) -> Result<Polynomial<R>> {
        match self.peek() {
            Some(b'-') => {
                self.pos += 1;
                Ok(-&self.unary::<R>()?)
            }
            Some(b'+') => {
                self.pos += 1;
                self.unary::<R>()
            }
            _ => self.power::<R>(),
        }
    }

    fn power<R: Ring>(&mut self) -> Result<Polynomial<R>> {
        let base = self.atom::<R>()?;
        if self.peek() == Some(b'^') {
            self.pos += 1;
            self.skip_ws();
            let e = self.digits().ok_or_else(|| self.err("expected exponent"))?;
            let e: u32 = e.parse().map_err(|_| self.err("exponent too large"))?;
            return Ok(base.pow(e));
        }
        Ok(base)
    }

    fn digits(&mut self) -> Option<String> {
        let start = self.pos;
        while self.pos < self.s.len() && self.s[self.pos].is_ascii_digit() {
            self.pos += 1;
        }
        (self.pos > start).then(|| String::from_utf8_lossy(&self.s[start..self.pos]).into_owned())
    }

    fn atom<R: Ring>(&mut self) -> Result<Polynomial<R>> {
        match self.peek() {
            Some(b'(') => {
                self.pos += 1;
                let v = self.expr::<R>()?;
                if self.peek() != Some(b')') {
                    return Err(self.err("expected ')'"));
                }
                self.pos += 1;
                Ok(v)
            }
            Some(b'q') => {
                self.pos += 1;
                let q = R::q()
                    .ok_or_else(|| self.err("q is not available in this coefficient ring"))?;
                Ok(Polynomial::constant(self.n, q))
            }
            Some(b'x') => {
                self.pos += 1;
                let at = self.pos;
                let d = self
                    .digits()
                    .ok_or_else(|| self.err("expected variable index"))?;
                let i: usize = d.parse().map_err(|_| self.err("bad variable index"))?;
                if i == 0 || i > self.n {
                    return Err(Error::Parse {
                        pos: at,
                        msg: format!("variable x{i} out of range for {} variables", self.n),
                    });
                }
                Ok(Polynomial::var(self.n, i - 1))
            }
            Some(c) if c.is_ascii_digit() => {
                let d = self.digits().unwrap();
                let r = parse_rational(&d)?;
                Ok(Polynomial::constant(self.n, R::from_rational(&r)))
            }
            _ => Err(self.err("unexpected token")),
        }
    }
}

fn divide_coeffs<R: Ring>(p: &Polynomial<R>, c: &R) -> Option<Polynomial<R>> {
    let mut out = Polynomial::zero(p.n_vars());
    for (m, a) in p.terms() {
        out.add_term(m.clone(), &a.checked_div(c)?);
    }
    Some(out)
}

/// Writes a rational as `p` or `p/q`.
pub fn rational_text(r: &Rational) -> String {
    r.to_string()
}

/// The monomial text form (`x1^2*x3`).
pub fn monomial_text(m: &Monomial) -> String {
    m.to_string()
}
