//! Elementary symmetric polynomials, Vandermonde determinants and the closed-form
//! action catalog of the operators on products of elementary symmetric polynomials.

use std::fmt;
use std::str::FromStr;

use rayon::prelude::*;

use crate::diffops::{self, Family, OperatorSpec};
use crate::error::{Error, Result};
use crate::monomial::Monomial;
use crate::poly::Polynomial;
use crate::ring::{binom, int, Rational, Ring};

type P = Polynomial<Rational>;

/// A set of variables (0-based, sorted) inside a polynomial ring in `n_vars` variables.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct VarSubset {
    n_vars: usize,
    members: Vec<usize>,
}

impl VarSubset {
    pub fn new(n_vars: usize, mut members: Vec<usize>) -> Result<Self> {
        members.sort_unstable();
        members.dedup();
        if let Some(&bad) = members.iter().find(|&&i| i >= n_vars) {
            return Err(Error::VariableOutOfRange { index: bad, n_vars });
        }
        Ok(VarSubset { n_vars, members })
    }

    pub fn all(n_vars: usize) -> Self {
        VarSubset {
            n_vars,
            members: (0..n_vars).collect(),
        }
    }

    /// Every variable except `j`.
    pub fn omitting(n_vars: usize, j: usize) -> Self {
        VarSubset {
            n_vars,
            members: (0..n_vars).filter(|&i| i != j).collect(),
        }
    }

    pub fn n_vars(&self) -> usize {
        self.n_vars
    }

    pub fn members(&self) -> &[usize] {
        &self.members
    }

    pub fn len(&self) -> usize {
        self.members.len()
    }

    pub fn is_empty(&self) -> bool {
        self.members.is_empty()
    }

    pub fn contains(&self, i: usize) -> bool {
        self.members.binary_search(&i).is_ok()
    }

    pub fn without(&self, j: usize) -> Self {
        VarSubset {
            n_vars: self.n_vars,
            members: self.members.iter().copied().filter(|&i| i != j).collect(),
        }
    }
}

impl fmt::Debug for VarSubset {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let one_based: Vec<usize> = self.members.iter().map(|i| i + 1).collect();
        write!(f, "{one_based:?}/{}", self.n_vars)
    }
}

/// Weakly decreasing positive parts.
#[derive(Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Partition(Vec<usize>);

impl Partition {
    pub fn new(mut parts: Vec<usize>) -> Self {
        parts.retain(|&p| p > 0);
        parts.sort_unstable_by(|a, b| b.cmp(a));
        Partition(parts)
    }

    pub fn parts(&self) -> &[usize] {
        &self.0
    }

    pub fn size(&self) -> usize {
        self.0.iter().sum()
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    pub fn conjugate(&self) -> Partition {
        let first = self.0.first().copied().unwrap_or(0);
        Partition(
            (1..=first)
                .map(|i| self.0.iter().filter(|&&p| p >= i).count())
                .collect(),
        )
    }
}

impl fmt::Debug for Partition {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{self}")
    }
}

/// `(3,1,1)`, or `()` for the empty partition.
impl fmt::Display for Partition {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let parts: Vec<String> = self.0.iter().map(|p| p.to_string()).collect();
        write!(f, "({})", parts.join(","))
    }
}

/// `e_k` in the variables of `s`; zero for `k < 0` or `k > |s|`.
pub fn elementary<R: Ring>(k: i64, s: &VarSubset) -> Polynomial<R> {
    let n = s.n_vars;
    if k < 0 || k as usize > s.len() {
        return Polynomial::zero(n);
    }
    let k = k as usize;
    let mut out = Polynomial::zero(n);
    let mut idx: Vec<usize> = (0..k).collect();
    let m = s.len();
    loop {
        let mut exps = vec![0u16; n];
        for &i in &idx {
            exps[s.members[i]] = 1;
        }
        out.add_term(Monomial::from_slice(&exps), &R::one());
        // advance to the next k-combination of 0..m
        let mut i = k;
        while i > 0 && idx[i - 1] == m - k + i - 1 {
            i -= 1;
        }
        if i == 0 {
            return out;
        }
        idx[i - 1] += 1;
        for j in i..k {
            idx[j] = idx[j - 1] + 1;
        }
    }
}

/// `∏_{i<j in s} (x_i - x_j)`.
pub fn vandermonde<R: Ring>(s: &VarSubset) -> Polynomial<R> {
    let n = s.n_vars;
    let mut out = Polynomial::one(n);
    for (a, &i) in s.members.iter().enumerate() {
        for &j in &s.members[a + 1..] {
            let factor = &Polynomial::var(n, i) - &Polynomial::var(n, j);
            out = &out * &factor;
        }
    }
    out
}

/// `e_λ = ∏ e_{λ_i}` in the variables of `s`.
pub fn e_product<R: Ring>(lambda: &Partition, s: &VarSubset) -> Polynomial<R> {
    e_product_raw(lambda.parts().iter().map(|&p| p as i64), s)
}

/// Product of `e_k` over arbitrary (possibly out-of-range) indices.
pub fn e_product_raw<R: Ring>(ks: impl IntoIterator<Item = i64>, s: &VarSubset) -> Polynomial<R> {
    let mut out = Polynomial::one(s.n_vars);
    for k in ks {
        if k == 0 {
            continue;
        }
        out = &out * &elementary(k, s);
        if out.is_zero() {
            break;
        }
    }
    out
}

/// Identifiers of the closed-form action catalog.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum FormulaId {
    Nabla1E,
    Nabla2EE,
    P2E,
    P1E,
    D1TildeEE,
    Q2E,
    PTilde2EE,
    D2TildeEEE,
}

impl FormulaId {
    pub const ALL: [FormulaId; 8] = [
        FormulaId::Nabla1E,
        FormulaId::Nabla2EE,
        FormulaId::P2E,
        FormulaId::P1E,
        FormulaId::D1TildeEE,
        FormulaId::Q2E,
        FormulaId::PTilde2EE,
        FormulaId::D2TildeEEE,
    ];

    pub fn name(self) -> &'static str {
        match self {
            FormulaId::Nabla1E => "NABLA1_E",
            FormulaId::Nabla2EE => "NABLA2_EE",
            FormulaId::P2E => "P2_E",
            FormulaId::P1E => "P1_E",
            FormulaId::D1TildeEE => "D1TILDE_EE",
            FormulaId::Q2E => "Q2_E",
            FormulaId::PTilde2EE => "PTILDE2_EE",
            FormulaId::D2TildeEEE => "D2TILDE_EEE",
        }
    }

    /// Number of elementary factors the formula acts on.
    pub fn arity(self) -> usize {
        match self {
            FormulaId::Nabla1E | FormulaId::P2E | FormulaId::P1E | FormulaId::Q2E => 1,
            FormulaId::Nabla2EE | FormulaId::D1TildeEE | FormulaId::PTilde2EE => 2,
            FormulaId::D2TildeEEE => 3,
        }
    }

    pub fn operator(self) -> Family {
        match self {
            FormulaId::Nabla1E => Family::Nabla(1),
            FormulaId::Nabla2EE => Family::Nabla(2),
            FormulaId::P2E => Family::P2,
            FormulaId::P1E => Family::P1,
            FormulaId::D1TildeEE => Family::DTilde(1),
            FormulaId::Q2E => Family::Q2,
            FormulaId::PTilde2EE => Family::PTilde2,
            FormulaId::D2TildeEEE => Family::DTilde(2),
        }
    }
}

impl fmt::Display for FormulaId {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

impl FromStr for FormulaId {
    type Err = Error;
    fn from_str(s: &str) -> Result<Self> {
        FormulaId::ALL
            .into_iter()
            .find(|id| id.name().eq_ignore_ascii_case(s))
            .ok_or_else(|| Error::invalid(format!("unknown formula id {s:?}")))
    }
}

/// Linear combination of products of elementary symmetric polynomials.
struct ECombo(Vec<(i64, Vec<i64>)>);

impl ECombo {
    fn push(&mut self, c: i64, ks: &[i64]) {
        if c != 0 {
            self.0.push((c, ks.to_vec()));
        }
    }

    fn expand(&self, s: &VarSubset) -> P {
        let mut out = P::zero(s.n_vars);
        for (c, ks) in &self.0 {
            let t = e_product_raw::<Rational>(ks.iter().copied(), s);
            out = &out + &t.scale(&int(*c));
        }
        out
    }
}

fn check_order(params: &[i64], arity: usize) -> Result<()> {
    if params.len() != arity {
        return Err(Error::invalid(format!(
            "expected {arity} parameters, got {}",
            params.len()
        )));
    }
    if params.iter().any(|&p| p < 0) {
        return Err(Error::ParamOrder(format!("negative index in {params:?}")));
    }
    if params.windows(2).any(|w| w[0] < w[1]) {
        return Err(Error::ParamOrder(format!(
            "indices must be weakly decreasing, got {params:?}"
        )));
    }
    Ok(())
}

fn combo(id: FormulaId, params: &[i64], n: i64) -> ECombo {
    let mut out = ECombo(Vec::new());
    match id {
        FormulaId::Nabla1E => {
            let k = params[0];
            out.push(n - k + 1, &[k - 1]);
        }
        FormulaId::P2E => {
            let k = params[0];
            out.push(-binom(n - k + 2, 2), &[k - 2]);
        }
        FormulaId::P1E => {
            let k = params[0];
            out.push(binom(n - k + 1, 2), &[k - 1]);
        }
        FormulaId::Q2E => {
            let k = params[0];
            out.push(-binom(n - k + 2, 3), &[k - 2]);
        }
        FormulaId::Nabla2EE => {
            let (k, h) = (params[0], params[1]);
            out.push(2 * (n - k + 1), &[k - 1, h - 1]);
            for i in 1..h {
                out.push(-2 * (k - h + 2 * i), &[k + i - 1, h - i - 1]);
            }
        }
        FormulaId::D1TildeEE => {
            let (k, h) = (params[0], params[1]);
            for i in 0..h {
                out.push(2 * (k - h + 1 + 2 * i), &[k + i, h - 1 - i]);
            }
        }
        FormulaId::PTilde2EE => {
            let (k, h) = (params[0], params[1]);
            out.push((n - k + 1) * (n - k), &[k - 1, h - 1]);
            for i in 1..h {
                out.push(
                    -(2 * n - h - k + 1) * (k - h + 2 * i),
                    &[k - 1 + i, h - 1 - i],
                );
            }
        }
        FormulaId::D2TildeEEE => {
            let (k, h, l) = (params[0], params[1], params[2]);
            for j in 0..l {
                for i in 0..h {
                    out.push(
                        6 * (k - h + 1 + j + 2 * i),
                        &[k + i + j, h - 1 - i, l - 1 - j],
                    );
                }
            }
            for j in 0..(l - 1).max(0) {
                for i in 1..(l - j) {
                    out.push(-6 * (h - l + j + 2 * i), &[k + j, h - 1 + i, l - 1 - i - j]);
                }
            }
        }
    }
    out
}

/// Right-hand side of a catalog formula, expanded, with `n = |s|`.
pub fn closed_form(id: FormulaId, params: &[i64], s: &VarSubset) -> Result<P> {
    check_order(params, id.arity())?;
    Ok(combo(id, params, s.len() as i64).expand(s))
}

/// The operator of a catalog formula applied directly to its product of elementaries.
pub fn direct_form(id: FormulaId, params: &[i64], s: &VarSubset) -> Result<P> {
    check_order(params, id.arity())?;
    let g = e_product_raw::<Rational>(params.iter().copied(), s);
    let op = OperatorSpec::new(id.operator()).scoped(s.clone());
    diffops::apply(&op, &g)
}

/// All valid parameter tuples with entries in `0..=n`.
pub fn parameter_tuples(id: FormulaId, n: usize) -> Vec<Vec<i64>> {
    let n = n as i64;
    let mut out = Vec::new();
    match id.arity() {
        1 => out.extend((0..=n).map(|k| vec![k])),
        2 => {
            for k in 0..=n {
                for h in 0..=k {
                    out.push(vec![k, h]);
                }
            }
        }
        _ => {
            for k in 0..=n {
                for h in 0..=k {
                    for l in 0..=h {
                        out.push(vec![k, h, l]);
                    }
                }
            }
        }
    }
    out
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct FormulaCheck {
    pub id: FormulaId,
    pub passed: usize,
    pub failed: usize,
    /// First failing parameters with the closed form and the direct value.
    pub counterexample: Option<(Vec<i64>, P, P)>,
}

/// Compares closed form and direct application over every parameter tuple.
pub fn verify_formula(id: FormulaId, s: &VarSubset) -> Result<FormulaCheck> {
    let tuples = parameter_tuples(id, s.len());
    let results: Vec<(Vec<i64>, P, P)> = tuples
        .into_par_iter()
        .map(|t| {
            let lhs = closed_form(id, &t, s)?;
            let rhs = direct_form(id, &t, s)?;
            Ok((t, lhs, rhs))
        })
        .collect::<Result<_>>()?;
    let mut check = FormulaCheck {
        id,
        passed: 0,
        failed: 0,
        counterexample: None,
    };
    for (t, lhs, rhs) in results {
        if lhs == rhs {
            check.passed += 1;
        } else {
            check.failed += 1;
            if check.counterexample.is_none() {
                check.counterexample = Some((t, lhs, rhs));
            }
        }
    }
    Ok(check)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::text::parse_poly;

    fn p(s: &str, n: usize) -> P {
        parse_poly(s, Some(n)).unwrap()
    }

    #[test]
    fn elementaries() {
        let all3 = VarSubset::all(3);
        assert_eq!(elementary::<Rational>(1, &all3), p("x1+x2+x3", 3));
        assert!(elementary::<Rational>(-1, &all3).is_zero());
        assert!(elementary::<Rational>(4, &all3).is_zero());
        assert_eq!(elementary::<Rational>(0, &all3), P::one(3));
        let s = VarSubset::new(4, vec![1, 2, 3]).unwrap();
        assert_eq!(elementary::<Rational>(2, &s), p("x2*x3+x2*x4+x3*x4", 4));
        assert_eq!(elementary::<Rational>(3, &s), p("x2*x3*x4", 4));
    }

    #[test]
    fn newton_recursion() {
        let s = VarSubset::all(5);
        for j in 0..5 {
            let t = s.without(j);
            for k in 0..=5 {
                let lhs = elementary::<Rational>(k, &s);
                let rhs = &elementary::<Rational>(k, &t)
                    + &elementary::<Rational>(k - 1, &t).mul_var(j, 1);
                assert_eq!(lhs, rhs, "k={k} j={j}");
            }
        }
    }

    #[test]
    fn vandermondes() {
        assert_eq!(vandermonde::<Rational>(&VarSubset::all(2)), p("x1-x2", 2));
        assert_eq!(
            vandermonde::<Rational>(&VarSubset::new(2, vec![0]).unwrap()),
            P::one(2)
        );
        let d3 = vandermonde::<Rational>(&VarSubset::all(3));
        assert_eq!(d3.len(), 6);
        assert_eq!(d3, p("(x1-x2)*(x1-x3)*(x2-x3)", 3));
    }

    #[test]
    fn products() {
        let s = VarSubset::all(2);
        assert_eq!(
            e_product::<Rational>(&Partition::new(vec![1, 1]), &s),
            p("(x1+x2)^2", 2)
        );
        assert_eq!(
            e_product::<Rational>(&Partition::new(vec![]), &s),
            P::one(2)
        );
    }

    #[test]
    fn closed_form_examples() {
        let s = VarSubset::all(4);
        let got = closed_form(FormulaId::Nabla1E, &[2], &s).unwrap();
        assert_eq!(got, elementary::<Rational>(1, &s).scale(&int(3)));
        assert!(closed_form(FormulaId::P2E, &[0], &s).unwrap().is_zero());
        assert!(matches!(
            closed_form(FormulaId::Nabla2EE, &[1, 2], &s),
            Err(Error::ParamOrder(_))
        ));
        let lhs = closed_form(FormulaId::D2TildeEEE, &[2, 2, 1], &s).unwrap();
        let rhs = direct_form(FormulaId::D2TildeEEE, &[2, 2, 1], &s).unwrap();
        assert_eq!(lhs, rhs);
    }

    #[test]
    fn catalog_small() {
        for n in 1..=4 {
            for id in FormulaId::ALL {
                let c = verify_formula(id, &VarSubset::all(n)).unwrap();
                assert_eq!(c.failed, 0, "{id} n={n}: {:?}", c.counterexample);
            }
        }
    }

    #[test]
    fn partition_basics() {
        let l = Partition::new(vec![1, 3, 1]);
        assert_eq!(l.to_string(), "(3,1,1)");
        assert_eq!(l.conjugate(), Partition::new(vec![3, 1, 1]));
        assert_eq!(
            Partition::new(vec![2, 2]).conjugate(),
            Partition::new(vec![2, 2])
        );
    }
}
