//! Explicit q0-harmonics: `Δ e_k`, `e_1^m(x_1..x_k)(x_1 - x_2)`, and the `p_{i,j}` module.

use crate::diffops::dq;
use crate::error::{Error, Result};
use crate::perm::Perm;
use crate::poly::Polynomial;
use crate::qpoly::QPoly;
use crate::ring::{binom, int, rat, QRing, Rational, Ring};
use crate::symfun::{elementary, vandermonde, VarSubset};

type P = Polynomial<Rational>;

/// Whether `D_{1;q0}` and `D_{2;q0}` both kill `f`.
pub fn is_harmonic_at(f: &P, q0: &Rational) -> bool {
    let all = VarSubset::all(f.n_vars());
    dq(f, 1, q0, &all).is_zero() && dq(f, 2, q0, &all).is_zero()
}

/// A polynomial claimed to be q0-harmonic, with the checks performed on it.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SpecialCertificate {
    pub q0: Rational,
    pub polynomial: P,
    pub degree: usize,
    /// `D_{1;q0} f = 0` and `D_{2;q0} f = 0`.
    pub annihilated: bool,
    /// The eigen-relations hold identically in `q`.
    pub eigen_relations: bool,
    /// A value different from `q0` and whether it (wrongly) annihilates `f`.
    pub control_q0: Rational,
    pub control_annihilated: bool,
}

impl SpecialCertificate {
    pub fn passed(&self) -> bool {
        self.annihilated && self.eigen_relations && !self.control_annihilated
    }
}

fn qlin(a: i64, b: i64) -> QPoly {
    QPoly::linear(int(a), int(b))
}

/// `Δ e_k` with `q0 = -1/(n-k)`; the control value is `-1/(n-k+1)`.
pub fn special_harmonic_delta_ek(n: usize, k: usize) -> Result<SpecialCertificate> {
    if k < 1 || k >= n {
        return Err(Error::invalid(format!("need 1 <= k < n, got k={k}, n={n}")));
    }
    let all = VarSubset::all(n);
    let delta: P = vandermonde(&all);
    let ek = |j: i64| elementary::<Rational>(j, &all);
    let f = &delta * &ek(k as i64);
    let r = (n - k) as i64;
    let q0 = rat(-1, r);
    let control_q0 = rat(-1, r + 1);

    let fq: Polynomial<QPoly> = f.promote();
    let q = QPoly::gen();
    let c1 = qlin(r + 1, 2 * binom(r + 1, 2));
    let c2 = qlin(-2 * binom(r + 2, 2), -6 * binom(r + 2, 3));
    let rhs1: Polynomial<QPoly> = (&delta * &ek(k as i64 - 1)).promote::<QPoly>().scale(&c1);
    let rhs2: Polynomial<QPoly> = (&delta * &ek(k as i64 - 2)).promote::<QPoly>().scale(&c2);
    let eigen_relations = dq(&fq, 1, &q, &all) == rhs1 && dq(&fq, 2, &q, &all) == rhs2;

    Ok(SpecialCertificate {
        annihilated: is_harmonic_at(&f, &q0),
        control_annihilated: is_harmonic_at(&f, &control_q0),
        degree: n * (n - 1) / 2 + k,
        q0,
        polynomial: f,
        eigen_relations,
        control_q0,
    })
}

/// `e_1^m(x_1..x_k)(x_1 - x_2)`.
pub fn e1m_polynomial(n: usize, k: usize, m: u32) -> P {
    let s = VarSubset::new(n, (0..k).collect()).expect("k <= n");
    let x12 = &P::var(n, 0) - &P::var(n, 1);
    &elementary::<Rational>(1, &s).pow(m) * &x12
}

/// `e_1^m(x_1..x_k)(x_1 - x_2)` with `q0 = -k/(m+1)`; the control value is `-k/(m+2)`.
pub fn special_harmonic_e1m(n: usize, k: usize, m: u32) -> Result<SpecialCertificate> {
    if k < 2 || k > n || m < 1 {
        return Err(Error::invalid(format!(
            "need 2 <= k <= n and m >= 1, got n={n}, k={k}, m={m}"
        )));
    }
    let f = e1m_polynomial(n, k, m);
    let (ki, mi) = (k as i64, i64::from(m));
    let q0 = rat(-ki, mi + 1);
    let control_q0 = rat(-ki, mi + 2);

    let all = VarSubset::all(n);
    let fq: Polynomial<QPoly> = f.promote();
    let q = QPoly::gen();
    let c1 = qlin(ki * mi, mi * (mi + 1));
    let c2 = qlin(mi * (mi - 1) * ki, (mi + 1) * mi * (mi - 1));
    let lower = |j: u32| -> Polynomial<QPoly> { e1m_polynomial(n, k, j).promote() };
    let rhs1 = lower(m - 1).scale(&c1);
    let rhs2 = if m >= 2 {
        lower(m - 2).scale(&c2)
    } else {
        Polynomial::zero(n)
    };
    let coefficients_vanish = c1.evaluate(&q0).is_ok_and(|v| Ring::is_zero(&v))
        && c2.evaluate(&q0).is_ok_and(|v| Ring::is_zero(&v));
    let eigen_relations =
        coefficients_vanish && dq(&fq, 1, &q, &all) == rhs1 && dq(&fq, 2, &q, &all) == rhs2;

    Ok(SpecialCertificate {
        annihilated: is_harmonic_at(&f, &q0),
        control_annihilated: is_harmonic_at(&f, &control_q0),
        degree: m as usize + 1,
        q0,
        polynomial: f,
        eigen_relations,
        control_q0,
    })
}

fn subsets_containing(n: usize, k: usize, a: usize, b: usize) -> Vec<Vec<usize>> {
    let rest: Vec<usize> = (0..n).filter(|&x| x != a && x != b).collect();
    let need = k - if a == b { 1 } else { 2 };
    let mut out = Vec::new();
    let mut pick = Vec::new();
    fn go(
        rest: &[usize],
        need: usize,
        start: usize,
        pick: &mut Vec<usize>,
        out: &mut Vec<Vec<usize>>,
    ) {
        if pick.len() == need {
            out.push(pick.clone());
            return;
        }
        for i in start..rest.len() {
            pick.push(rest[i]);
            go(rest, need, i + 1, pick, out);
            pick.pop();
        }
    }
    go(&rest, need, 0, &mut pick, &mut out);
    out.into_iter()
        .map(|mut s| {
            s.push(a);
            if a != b {
                s.push(b);
            }
            s.sort_unstable();
            s
        })
        .collect()
}

fn pij_half(n: usize, k: usize, m: u32, i: usize) -> P {
    let mut out = P::zero(n);
    for h in (0..n).filter(|&h| h != i) {
        let diff = &P::var(n, i) - &P::var(n, h);
        for s in subsets_containing(n, k, i, h) {
            let e1 = elementary::<Rational>(1, &VarSubset::new(n, s).expect("valid subset"));
            out = &out + &(&e1.pow(m) * &diff);
        }
    }
    out
}

/// `p_{i,j}` (0-based `i`, `j`).
pub fn pij(n: usize, k: usize, m: u32, i: usize, j: usize) -> Result<P> {
    if i == j || i >= n || j >= n || k < 2 || k > n || m < 1 {
        return Err(Error::invalid(format!(
            "need i != j < n, 2 <= k <= n and m >= 1, got n={n}, k={k}, m={m}, i={i}, j={j}"
        )));
    }
    Ok(&pij_half(n, k, m, i) - &pij_half(n, k, m, j))
}

/// Checks on the span of the `p_{i,j}`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct PijReport {
    pub q0: Rational,
    pub nonzero: bool,
    pub harmonic: bool,
    pub antisymmetric: bool,
    pub cocycle: bool,
    pub equivariant: bool,
}

impl PijReport {
    pub fn passed(&self) -> bool {
        self.nonzero && self.harmonic && self.antisymmetric && self.cocycle && self.equivariant
    }
}

pub fn pij_module_check(n: usize, k: usize, m: u32, i: usize, j: usize) -> Result<PijReport> {
    let p = |a: usize, b: usize| pij(n, k, m, a, b);
    let base = p(i, j)?;
    let q0 = rat(-(k as i64), i64::from(m) + 1);
    let harmonic = is_harmonic_at(&base, &q0);
    let antisymmetric = p(j, i)? == -&base;
    let mut cocycle = true;
    for l in (0..n).filter(|&l| l != i && l != j) {
        cocycle &= &base + &p(j, l)? == p(i, l)?;
    }
    let mut equivariant = true;
    for a in 0..n.saturating_sub(1) {
        let sigma = Perm::transposition(n, a, a + 1);
        equivariant &= base.permute(&sigma) == p(sigma.image(i), sigma.image(j))?;
    }
    Ok(PijReport {
        q0,
        nonzero: !base.is_zero(),
        harmonic,
        antisymmetric,
        cocycle,
        equivariant,
    })
}
