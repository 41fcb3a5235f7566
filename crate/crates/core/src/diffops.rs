//! The differential and divided-difference operators acting on polynomials.

use std::fmt;
use std::str::FromStr;

use crate::error::{Error, Result};
use crate::monomial::Monomial;
use crate::poly::{AnyPolynomial, Polynomial};
use crate::qpoly::QPoly;
use crate::ring::{parse_rational, Rational, Ring};
use crate::symfun::{vandermonde, VarSubset};

/// The deformation parameter: an indeterminate or a rational number.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub enum QSpec {
    Generic,
    Value(Rational),
}

impl QSpec {
    /// The parameter as an element of `R`; `None` for generic `q` in a ring without one.
    pub fn in_ring<R: Ring>(&self) -> Option<R> {
        match self {
            QSpec::Generic => R::q(),
            QSpec::Value(q0) => Some(R::from_rational(q0)),
        }
    }
}

impl fmt::Display for QSpec {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            QSpec::Generic => f.write_str("generic"),
            QSpec::Value(q0) => write!(f, "{q0}"),
        }
    }
}

impl FromStr for QSpec {
    type Err = Error;
    fn from_str(s: &str) -> Result<Self> {
        if s.trim().eq_ignore_ascii_case("generic") {
            Ok(QSpec::Generic)
        } else {
            parse_rational(s).map(QSpec::Value)
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub enum Family {
    /// `∇_k = Σ ∂_i^k`
    Nabla(u32),
    /// `D̃_k = Σ x_i ∂_i^{k+1}`
    DTilde(u32),
    /// `D_{k;q} = q D̃_k + ∇_k`
    Dq(u32, QSpec),
    /// `∇_1` with `∂_j` omitted (0-based `j`).
    Nabla1Omit(usize),
    P1,
    P2,
    Q2,
    PTilde2,
}

/// An operator together with the variables it sums over (all variables by default).
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct OperatorSpec {
    pub family: Family,
    pub scope: Option<VarSubset>,
}

impl OperatorSpec {
    pub fn new(family: Family) -> Self {
        OperatorSpec {
            family,
            scope: None,
        }
    }

    pub fn scoped(mut self, scope: VarSubset) -> Self {
        self.scope = Some(scope);
        self
    }

    fn vars(&self, n_vars: usize) -> Result<VarSubset> {
        match &self.scope {
            None => Ok(VarSubset::all(n_vars)),
            Some(s) if s.n_vars() == n_vars => Ok(s.clone()),
            Some(s) => Err(Error::ArityMismatch {
                left: s.n_vars(),
                right: n_vars,
            }),
        }
    }

    /// Degree drop on homogeneous inputs.
    pub fn degree_drop(&self) -> u32 {
        match self.family {
            Family::Nabla(k) | Family::DTilde(k) | Family::Dq(k, _) => k,
            Family::Nabla1Omit(_) | Family::P1 => 1,
            Family::P2 | Family::Q2 | Family::PTilde2 => 2,
        }
    }
}

impl fmt::Display for OperatorSpec {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match &self.family {
            Family::Nabla(k) => write!(f, "nabla:{k}"),
            Family::DTilde(k) => write!(f, "dtilde:{k}"),
            Family::Dq(k, q) => write!(f, "dq:{k}@q={q}"),
            Family::Nabla1Omit(j) => write!(f, "nabla1-omit:{}", j + 1),
            Family::P1 => f.write_str("p1"),
            Family::P2 => f.write_str("p2"),
            Family::Q2 => f.write_str("q2"),
            Family::PTilde2 => f.write_str("ptilde2"),
        }
    }
}

impl FromStr for OperatorSpec {
    type Err = Error;
    fn from_str(s: &str) -> Result<Self> {
        let s = s.trim();
        let bad = || Error::invalid(format!("unknown operator {s:?}"));
        let index = |t: &str| -> Result<u32> {
            let k: u32 = t.parse().map_err(|_| bad())?;
            if k == 0 {
                return Err(Error::invalid("operator index must be at least 1"));
            }
            Ok(k)
        };
        let family = match s.split_once(':') {
            None => match s {
                "p1" => Family::P1,
                "p2" => Family::P2,
                "q2" => Family::Q2,
                "ptilde2" => Family::PTilde2,
                _ => return Err(bad()),
            },
            Some(("nabla", k)) => Family::Nabla(index(k)?),
            Some(("dtilde", k)) => Family::DTilde(index(k)?),
            Some(("nabla1-omit", j)) => Family::Nabla1Omit(index(j)? as usize - 1),
            Some(("dq", rest)) => {
                let (k, q) = rest
                    .split_once("@q=")
                    .ok_or_else(|| Error::invalid("dq requires @q=generic or @q=RATIONAL"))?;
                Family::Dq(index(k)?, q.parse()?)
            }
            _ => return Err(bad()),
        };
        Ok(OperatorSpec::new(family))
    }
}

/// `Σ_{i ∈ s} c_i(m) x^{m'}` built term by term from a per-variable monomial rule.
fn sum_rule<R: Ring>(
    f: &Polynomial<R>,
    s: &VarSubset,
    rule: impl Fn(&Monomial, usize) -> Option<(Monomial, i64)>,
) -> Polynomial<R> {
    let mut out = Polynomial::zero(f.n_vars());
    for (m, c) in f.terms() {
        for &i in s.members() {
            if let Some((m2, k)) = rule(m, i) {
                if k != 0 {
                    out.add_term(m2, &c.mul(&R::from_int(k)));
                }
            }
        }
    }
    out
}

fn falling(e: u16, k: u32) -> i64 {
    (0..k as i64).map(|t| e as i64 - t).product()
}

/// `Σ_{i∈s} ∂_i^k f`
pub fn nabla<R: Ring>(f: &Polynomial<R>, k: u32, s: &VarSubset) -> Polynomial<R> {
    sum_rule(f, s, |m, i| {
        let e = m.exp(i);
        (e as u32 >= k).then(|| (m.shift(i, -(k as i32)).unwrap(), falling(e, k)))
    })
}

/// `Σ_{i∈s} x_i ∂_i^{k+1} f`
pub fn dtilde<R: Ring>(f: &Polynomial<R>, k: u32, s: &VarSubset) -> Polynomial<R> {
    sum_rule(f, s, |m, i| {
        let e = m.exp(i);
        (e as u32 > k).then(|| (m.shift(i, -(k as i32)).unwrap(), falling(e, k + 1)))
    })
}

/// `D_{k;q} f = q D̃_k f + ∇_k f` with `q` an element of the coefficient ring.
pub fn dq<R: Ring>(f: &Polynomial<R>, k: u32, q: &R, s: &VarSubset) -> Polynomial<R> {
    sum_rule_ring(f, s, |m, i| {
        let e = m.exp(i);
        if (e as u32) < k {
            return None;
        }
        // x^a -> a(a-1)…(a-k+1) (1 + q(a-k)) x^{a - k e_i}
        let base = R::from_int(falling(e, k));
        let factor = R::one().add(&q.mul(&R::from_int(e as i64 - k as i64)));
        Some((m.shift(i, -(k as i32)).unwrap(), base.mul(&factor)))
    })
}

fn sum_rule_ring<R: Ring>(
    f: &Polynomial<R>,
    s: &VarSubset,
    rule: impl Fn(&Monomial, usize) -> Option<(Monomial, R)>,
) -> Polynomial<R> {
    let mut out = Polynomial::zero(f.n_vars());
    for (m, c) in f.terms() {
        for &i in s.members() {
            if let Some((m2, k)) = rule(m, i) {
                out.add_term(m2, &c.mul(&k));
            }
        }
    }
    out
}

fn require_symmetric<R: Ring>(f: &Polynomial<R>, s: &VarSubset) -> Result<()> {
    if f.is_symmetric_in(s.members()) {
        Ok(())
    } else {
        Err(Error::NotSymmetric)
    }
}

fn diff_var<R: Ring>(n: usize, i: usize, j: usize) -> Polynomial<R> {
    &Polynomial::var(n, i) - &Polynomial::var(n, j)
}

/// `Σ_{i<j} (A_i g - A_j g)/(x_i - x_j)` for a per-variable operator `A`.
fn pair_divided<R: Ring>(
    g: &Polynomial<R>,
    s: &VarSubset,
    a: impl Fn(&Polynomial<R>, usize) -> Polynomial<R>,
) -> Result<Polynomial<R>> {
    let n = g.n_vars();
    let parts: Vec<Polynomial<R>> = s.members().iter().map(|&i| a(g, i)).collect();
    let mut out = Polynomial::zero(n);
    for (x, &i) in s.members().iter().enumerate() {
        for (y, &j) in s.members().iter().enumerate().skip(x + 1) {
            let num = &parts[x] - &parts[y];
            if num.is_zero() {
                continue;
            }
            out = &out + &num.exact_divide(&diff_var(n, i, j))?;
        }
    }
    Ok(out)
}

/// `P_2 g = Σ_{i<j} (∂_i - ∂_j) g / (x_i - x_j)`; `g` must be symmetric in `s`.
pub fn p2<R: Ring>(g: &Polynomial<R>, s: &VarSubset) -> Result<Polynomial<R>> {
    require_symmetric(g, s)?;
    pair_divided(g, s, |g, i| g.partial(i, 1))
}

/// `P_1 g = Σ_{i<j} (x_i ∂_i - x_j ∂_j) g / (x_i - x_j)`; `g` must be symmetric in `s`.
pub fn p1<R: Ring>(g: &Polynomial<R>, s: &VarSubset) -> Result<Polynomial<R>> {
    require_symmetric(g, s)?;
    pair_divided(g, s, |g, i| g.partial(i, 1).mul_var(i, 1))
}

/// `P̃_2 g = Σ_{i<j} (x_i ∂_i² - x_j ∂_j²) g / (x_i - x_j)`.
pub fn ptilde2<R: Ring>(g: &Polynomial<R>, s: &VarSubset) -> Result<Polynomial<R>> {
    pair_divided(g, s, |g, i| g.partial(i, 2).mul_var(i, 1))
}

/// `Q_2 g = Σ_j Σ_{i<k, i,k≠j} x_j ∂_j g / ((x_j - x_i)(x_j - x_k))`, summed per triple.
pub fn q2<R: Ring>(g: &Polynomial<R>, s: &VarSubset) -> Result<Polynomial<R>> {
    let n = g.n_vars();
    let parts: Vec<Polynomial<R>> = s
        .members()
        .iter()
        .map(|&i| g.partial(i, 1).mul_var(i, 1))
        .collect();
    let m = s.members();
    let mut out = Polynomial::zero(n);
    for a in 0..m.len() {
        for b in a + 1..m.len() {
            for c in b + 1..m.len() {
                let (i, j, k) = (m[a], m[b], m[c]);
                let num = &(&(&diff_var(n, j, k) * &parts[a]) - &(&diff_var(n, i, k) * &parts[b]))
                    + &(&diff_var(n, i, j) * &parts[c]);
                if num.is_zero() {
                    continue;
                }
                let den = &(&diff_var(n, i, j) * &diff_var(n, i, k)) * &diff_var(n, j, k);
                out = &out + &num.exact_divide(&den)?;
            }
        }
    }
    Ok(out)
}

/// Applies an operator; generic `q` requires a coefficient ring containing `q`.
pub fn apply<R: Ring>(op: &OperatorSpec, f: &Polynomial<R>) -> Result<Polynomial<R>> {
    let s = op.vars(f.n_vars())?;
    match &op.family {
        Family::Nabla(k) => Ok(nabla(f, *k, &s)),
        Family::DTilde(k) => Ok(dtilde(f, *k, &s)),
        Family::Dq(k, q) => {
            let q = q.in_ring::<R>().ok_or_else(|| {
                Error::invalid("generic q needs polynomial coefficients; promote the input first")
            })?;
            Ok(dq(f, *k, &q, &s))
        }
        Family::Nabla1Omit(j) => {
            if *j >= f.n_vars() {
                return Err(Error::VariableOutOfRange {
                    index: *j,
                    n_vars: f.n_vars(),
                });
            }
            Ok(nabla(f, 1, &s.without(*j)))
        }
        Family::P1 => p1(f, &s),
        Family::P2 => p2(f, &s),
        Family::Q2 => q2(f, &s),
        Family::PTilde2 => ptilde2(f, &s),
    }
}

/// Applies an operator to a polynomial of run-time ring, promoting to ℚ[q] for generic `q`.
pub fn apply_any(op: &OperatorSpec, f: &AnyPolynomial) -> Result<AnyPolynomial> {
    let generic = matches!(op.family, Family::Dq(_, QSpec::Generic));
    match f {
        AnyPolynomial::Rat(p) if generic => {
            apply(op, &p.promote::<QPoly>()).map(AnyPolynomial::QPoly)
        }
        AnyPolynomial::Rat(p) => apply(op, p).map(AnyPolynomial::Rat),
        AnyPolynomial::QPoly(p) => apply(op, p).map(AnyPolynomial::QPoly),
        AnyPolynomial::QRat(p) => apply(op, p).map(AnyPolynomial::QRat),
    }
}

/// `[D_{k;q}, D_{h;q}] f - q(k-h) D_{k+h;q} f`, which vanishes identically.
pub fn commutator_defect<R: Ring>(
    k: u32,
    h: u32,
    q: &R,
    f: &Polynomial<R>,
) -> Result<Polynomial<R>> {
    if k == h {
        return Err(Error::invalid("commutator needs distinct indices"));
    }
    let s = VarSubset::all(f.n_vars());
    let kh = dq(&dq(f, h, q, &s), k, q, &s);
    let hk = dq(&dq(f, k, q, &s), h, q, &s);
    let coeff = q.mul(&R::from_int(k as i64 - h as i64));
    let rhs = dq(f, k + h, q, &s).scale(&coeff);
    Ok(&(&kh - &hk) - &rhs)
}

/// Second-order Leibniz rule defect for `∇_2` or `D̃_1`, which vanishes identically.
pub fn leibniz_defect<R: Ring>(
    op: &OperatorSpec,
    f: &Polynomial<R>,
    g: &Polynomial<R>,
) -> Result<Polynomial<R>> {
    f.check_arity(g)?;
    let s = op.vars(f.n_vars())?;
    let weight_x = match op.family {
        Family::Nabla(2) => false,
        Family::DTilde(1) => true,
        _ => {
            return Err(Error::invalid(
                "Leibniz defect is defined for nabla:2 and dtilde:1",
            ))
        }
    };
    let lhs = apply(op, &(f * g))?;
    let mut rhs = &(&apply(op, f)? * g) + &(f * &apply(op, g)?);
    for &i in s.members() {
        let mut cross = &f.partial(i, 1) * &g.partial(i, 1);
        if weight_x {
            cross = cross.mul_var(i, 1);
        }
        rhs = &rhs + &cross.scale(&R::from_int(2));
    }
    Ok(&lhs - &rhs)
}

/// `Δ^{-1} op (Δ g)` via the conjugation identities, for symmetric `g`.
pub fn conjugated_apply<R: Ring>(op: &OperatorSpec, g: &Polynomial<R>) -> Result<Polynomial<R>> {
    let s = op.vars(g.n_vars())?;
    require_symmetric(g, &s)?;
    let two = R::from_int(2);
    match op.family {
        Family::Nabla(1) => Ok(nabla(g, 1, &s)),
        Family::Nabla(2) => Ok(&nabla(g, 2, &s) + &p2(g, &s)?.scale(&two)),
        Family::DTilde(1) => Ok(&p1(g, &s)?.scale(&two) + &dtilde(g, 1, &s)),
        Family::DTilde(2) => {
            let q = q2(g, &s)?.scale(&R::from_int(6));
            let p = ptilde2(g, &s)?.scale(&R::from_int(3));
            Ok(&(&q + &p) + &dtilde(g, 2, &s))
        }
        _ => Err(Error::invalid(
            "conjugation identities cover nabla:1/2 and dtilde:1/2",
        )),
    }
}

/// `Δ^{-1} op (Δ g)` by direct application and exact division.
pub fn conjugated_direct<R: Ring>(op: &OperatorSpec, g: &Polynomial<R>) -> Result<Polynomial<R>> {
    let s = op.vars(g.n_vars())?;
    let delta = vandermonde::<R>(&s);
    apply(op, &(&delta * g))?.exact_divide(&delta)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::ring::{int, rat};
    use crate::symfun::elementary;
    use crate::text::parse_poly;

    type P = Polynomial<Rational>;

    fn p(s: &str, n: usize) -> P {
        parse_poly(s, Some(n)).unwrap()
    }

    fn op(s: &str) -> OperatorSpec {
        s.parse().unwrap()
    }

    #[test]
    fn spec_text_round_trip() {
        for t in [
            "nabla:1",
            "dtilde:2",
            "dq:2@q=-1/2",
            "dq:1@q=generic",
            "p1",
            "p2",
            "q2",
            "ptilde2",
            "nabla1-omit:3",
        ] {
            assert_eq!(op(t).to_string(), t);
        }
        assert!("nabla:0".parse::<OperatorSpec>().is_err());
        assert!("dq:1".parse::<OperatorSpec>().is_err());
        assert!("foo".parse::<OperatorSpec>().is_err());
    }

    #[test]
    fn vandermonde_is_killed() {
        for n in 1..=5 {
            let d = vandermonde::<Rational>(&VarSubset::all(n));
            for t in ["nabla:1", "nabla:2", "dtilde:1", "dtilde:2"] {
                assert!(apply(&op(t), &d).unwrap().is_zero(), "{t} n={n}");
            }
        }
    }

    #[test]
    fn basic_examples() {
        assert!(apply(&op("dtilde:1"), &p("x1-x2", 2)).unwrap().is_zero());
        let e2 = elementary::<Rational>(2, &VarSubset::all(4));
        assert_eq!(apply(&op("p2"), &e2).unwrap(), P::constant(4, int(-6)));
        assert_eq!(apply(&op("p2"), &p("x1", 2)), Err(Error::NotSymmetric));
        assert_eq!(
            apply(&op("nabla1-omit:2"), &p("x1^2+x2^2+x3", 3)).unwrap(),
            p("2*x1+1", 3)
        );
        let generic = apply_any(&op("dq:1@q=generic"), &AnyPolynomial::Rat(p("x1^2", 1))).unwrap();
        assert_eq!(generic.specialize(&rat(-1, 2)).unwrap(), p("x1", 1));
    }

    #[test]
    fn divided_difference_summand() {
        // (∂2 - ∂3) e2(x2,x3,x4) / (x2 - x3) = -1
        let s = VarSubset::new(4, vec![1, 2, 3]).unwrap();
        let e2 = elementary::<Rational>(2, &s);
        let num = &e2.partial(1, 1) - &e2.partial(2, 1);
        assert_eq!(
            num.exact_divide(&p("x2-x3", 4)).unwrap(),
            P::constant(4, int(-1))
        );
    }

    #[test]
    fn commutators_vanish() {
        let f = p("x1^3", 1);
        assert!(commutator_defect(1, 2, &int(0), &f).unwrap().is_zero());
        let fq = f.promote::<QPoly>();
        assert!(commutator_defect(1, 2, &QPoly::q().unwrap(), &fq)
            .unwrap()
            .is_zero());
        let g = p("x1^5 + 3*x1^2*x2^2*x3 - x2*x3^4 + 2/3*x1*x2^4", 3);
        assert!(commutator_defect(2, 1, &rat(-1, 2), &g).unwrap().is_zero());
    }

    #[test]
    fn leibniz_and_conjugation() {
        assert!(leibniz_defect(&op("nabla:2"), &p("x1", 2), &p("x2", 2))
            .unwrap()
            .is_zero());
        let e1 = elementary::<Rational>(1, &VarSubset::all(3));
        assert!(leibniz_defect(&op("dtilde:1"), &e1, &e1).unwrap().is_zero());
        let s4 = VarSubset::all(4);
        let d4 = vandermonde::<Rational>(&s4);
        let e2 = elementary::<Rational>(2, &s4);
        assert!(leibniz_defect(&op("nabla:2"), &d4, &e2).unwrap().is_zero());
        assert_eq!(
            conjugated_apply(&op("nabla:1"), &e1).unwrap(),
            P::constant(3, int(3))
        );
        assert!(conjugated_apply(&op("nabla:2"), &P::one(3))
            .unwrap()
            .is_zero());
        let g = &e2 * &elementary::<Rational>(1, &s4);
        for t in ["nabla:1", "nabla:2", "dtilde:1", "dtilde:2"] {
            assert_eq!(
                conjugated_apply(&op(t), &g).unwrap(),
                conjugated_direct(&op(t), &g).unwrap(),
                "{t}"
            );
        }
    }
}
