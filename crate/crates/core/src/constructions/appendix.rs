//! The coefficient machinery for a second lift of `f_{1;c}`.

use std::fmt;
use std::str::FromStr;

use crate::constructions::{
    assemble, check_n, e_tail, f1_family, gsc_coefficients, reduced_operator, special_c, tail,
};
use crate::diffops::{dtilde, nabla};
use crate::error::{Error, Result};
use crate::poly::Polynomial;
use crate::ring::{int, rat, sign, Rational};
use crate::symfun::{vandermonde, VarSubset};

type P = Polynomial<Rational>;

/// The eight coefficient families of `-D̃_1 f_{1;c}` (tilde) and `-D̃_2 f_{1;c}` (hat).
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum AppendixCoeff {
    ATilde,
    BTilde,
    CTilde,
    DTilde,
    AHat,
    BHat,
    CHat,
    DHat,
}

impl AppendixCoeff {
    pub const ALL: [AppendixCoeff; 8] = [
        AppendixCoeff::ATilde,
        AppendixCoeff::BTilde,
        AppendixCoeff::CTilde,
        AppendixCoeff::DTilde,
        AppendixCoeff::AHat,
        AppendixCoeff::BHat,
        AppendixCoeff::CHat,
        AppendixCoeff::DHat,
    ];

    pub fn name(self) -> &'static str {
        match self {
            AppendixCoeff::ATilde => "a-tilde",
            AppendixCoeff::BTilde => "b-tilde",
            AppendixCoeff::CTilde => "c-tilde",
            AppendixCoeff::DTilde => "d-tilde",
            AppendixCoeff::AHat => "a-hat",
            AppendixCoeff::BHat => "b-hat",
            AppendixCoeff::CHat => "c-hat",
            AppendixCoeff::DHat => "d-hat",
        }
    }

    fn is_hat(self) -> bool {
        matches!(
            self,
            AppendixCoeff::AHat | AppendixCoeff::BHat | AppendixCoeff::CHat | AppendixCoeff::DHat
        )
    }

    /// The e-product multiplying the coefficient at index `s`.
    pub fn basis(self, n: usize, s: usize) -> P {
        let (ni, si) = (n as i64, s as i64);
        let shift = if self.is_hat() { 1 } else { 0 };
        let ks: Vec<i64> = match self {
            AppendixCoeff::ATilde | AppendixCoeff::AHat => vec![ni - si - 3 - shift],
            AppendixCoeff::BTilde | AppendixCoeff::BHat => vec![ni - si - 4 - shift, 1],
            AppendixCoeff::CTilde | AppendixCoeff::CHat => vec![ni - si - 5 - shift, 1, 1],
            AppendixCoeff::DTilde | AppendixCoeff::DHat => vec![ni - si - 5 - shift, 2],
        };
        e_tail(n, &ks)
    }
}

impl fmt::Display for AppendixCoeff {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

impl FromStr for AppendixCoeff {
    type Err = Error;
    fn from_str(s: &str) -> Result<Self> {
        AppendixCoeff::ALL
            .into_iter()
            .find(|c| c.name() == s)
            .ok_or_else(|| Error::invalid(format!("unknown coefficient {s:?}")))
    }
}

fn prod(from: i64, to: i64) -> Rational {
    int((from..=to).product())
}

/// Closed form of an appendix coefficient.
pub fn appendix_coefficient(
    n: usize,
    c: &Rational,
    s: usize,
    which: AppendixCoeff,
) -> Result<Rational> {
    check_n(n, 5)?;
    let (ni, si) = (n as i64, s as i64);
    let sg = int(sign(si));
    let sn = int(sign(ni));
    let k = c * int(ni) + &sn;
    let den1 = int(2 * ni * (ni * ni - 7));
    let den2 = int(ni * ni - 7);
    let si_r = int(si);
    let value = match which {
        AppendixCoeff::ATilde => {
            let quad = int(3 * (ni - 1)) * &k * int(si * si);
            let lin = (int(21 * ni * (ni - 1)) * c - &sn * int(2 * ni * ni - 21 * ni + 7)) * &si_r;
            let cst =
                int(ni * (ni - 1) * (ni.pow(3) + ni - 28)) * c + &sn * int(12 * ni * (ni - 3));
            &sg * prod(si + 1, si + 2) / den1 * (quad + lin - cst)
        }
        AppendixCoeff::BTilde => {
            let inner = int(6) * &k * &si_r + int(24 * ni) * c + &sn * int(2 * ni * ni + 10);
            &sg * prod(si + 1, si + 3) / den1 * inner
        }
        AppendixCoeff::CTilde => &sg * prod(si + 1, si + 4) / den1 * int(3 * (ni - 1)) * &k,
        AppendixCoeff::DTilde => &sg * prod(si + 1, si + 4) / den2 * int(-3) * &k,
        AppendixCoeff::AHat => {
            let quad = int(-3 * (ni - 1)) * &k * int(si * si);
            let lin = (int(-ni * (ni - 1) * (ni * ni + 3 * ni + 23)) * c
                + &sn * int(-13 * ni - 2 * ni.pow(3) + 9))
                * &si_r;
            let cst = int(ni * (ni - 1) * (2 * ni.pow(3) - ni * ni - 15 * ni - 36)) * c
                + &sn * int(-3 * ni.pow(3) - 8 * ni * ni - 6 + 2 * ni.pow(4) - 21 * ni);
            // contribution of D̃_2 acting on the e_1² term of g_{s;c}
            let e11 = int(6 * (ni - 1) * (ni - 4 - si)) * &k;
            &sg * prod(si + 1, si + 3) / den1 * (quad + lin + cst + e11)
        }
        AppendixCoeff::BHat => {
            let inner = int(-6) * &k * &si_r + int(18) * int(sign(ni + 1)) + int(2 * ni.pow(3)) * c
                - int(32 * ni) * c;
            &sg * prod(si + 1, si + 4) / den1 * inner
        }
        AppendixCoeff::CHat => &sg * prod(si + 1, si + 5) / den1 * int(-3 * (ni - 1)) * &k,
        AppendixCoeff::DHat => &sg * prod(si + 1, si + 5) / den2 * int(3) * &k,
    };
    Ok(value)
}

/// The same coefficient from its defining combination of the `g_{s;c}` coefficients.
pub fn appendix_coefficient_from_definition(
    n: usize,
    c: &Rational,
    s: usize,
    which: AppendixCoeff,
) -> Result<Rational> {
    check_n(n, 5)?;
    let (ni, si) = (n as i64, s as i64);
    let g = |t: usize| gsc_coefficients(n, c, t);
    let [a0, b0, c0, d0] = g(s);
    let [a1, b1, c1, d1] = g(s + 1);
    let [a2, b2, c2, d2] = g(s + 2);
    let r = |x: i64| int(x);
    let shift1 = r((si + 1) * si);
    let shift2 = r((si + 2) * (si + 1) * si);
    let value = match which {
        AppendixCoeff::ATilde => {
            -(&shift1 * &a1)
                - r(2 * (ni - si - 3)) * &b0
                - r(2 * (ni - si - 3)) * &d0
                - r((si + 2) * (si + 1)) * &a0
                - r((ni - 1) * (ni - 2)) * &b0
        }
        AppendixCoeff::BTilde => {
            -(&shift1 * &b1)
                - r(4 * (ni - si - 4) + 2) * &c0
                - r(2 * (ni - si - 5)) * &d0
                - r((si + 3) * (si + 2)) * &b0
                - r(2 * (ni - 1) * (ni - 2)) * &c0
                - r((ni - 2) * (ni - 3)) * &d0
        }
        AppendixCoeff::CTilde => -(&shift1 * &c1) - r((si + 4) * (si + 3)) * &c0,
        AppendixCoeff::DTilde => -(&shift1 * &d1) - r((si + 4) * (si + 3)) * &d0,
        AppendixCoeff::AHat => {
            -(&shift2 * &a2) - r(6 * (ni - si - 4)) * &c0
                + r((si + 3) * (si + 2) * (si + 1)) * &a0
                + r((ni - 1) * (ni - 2) * (ni - 3)) * &d0
                - r(3 * (si + 3) * (si + 2)) * &b0
                - r(3 * (ni - 1) * (ni - 2)) * &c0
                + r(3 * (ni - si - 4) * (ni + si + 1)) * &d0
        }
        AppendixCoeff::BHat => {
            -(&shift2 * &b2) + r((si + 4) * (si + 3) * (si + 2)) * &b0
                - r(6 * (si + 4) * (si + 3)) * &c0
                - r(3 * (si + 4) * (si + 3)) * &d0
        }
        AppendixCoeff::CHat => -(&shift2 * &c2) + r((si + 5) * (si + 4) * (si + 3)) * &c0,
        AppendixCoeff::DHat => -(&shift2 * &d2) + r((si + 5) * (si + 4) * (si + 3)) * &d0,
    };
    Ok(value)
}

/// `(α, β, γ, δ)` at `c = special_c(n)`.
pub fn alpha_beta_gamma_delta(n: usize) -> Result<[Rational; 4]> {
    check_n(n, 5)?;
    let ni = n as i64;
    let sn = int(sign(ni));
    let q = ni * ni + ni + 2;
    Ok([
        &sn * rat(
            6 * ni.pow(4) + 7 * ni.pow(3) + 11 * ni * ni - 86 * ni - 36,
            6 * ni * q,
        ),
        &sn * rat((ni + 2) * (2 * ni * ni - 4 * ni - 3), 3 * ni * (ni - 1) * q),
        -(&sn * rat(1, 2 * q)),
        &sn * rat(ni, (ni - 1) * q),
    ])
}

/// Coefficients of `g_0 = u e_{n-3}e_1 + v e_{n-4}e_1² + w e_{n-4}e_2 + y e_{n-5}e_1³ + z e_{n-5}e_2 e_1`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct G0Coefficients {
    pub u: Rational,
    pub v: Rational,
    pub w: Rational,
    pub y: Rational,
    pub z: Rational,
}

impl G0Coefficients {
    pub fn polynomial(&self, n: usize) -> P {
        let ni = n as i64;
        [
            (&self.u, vec![ni - 3, 1]),
            (&self.v, vec![ni - 4, 1, 1]),
            (&self.w, vec![ni - 4, 2]),
            (&self.y, vec![ni - 5, 1, 1, 1]),
            (&self.z, vec![ni - 5, 2, 1]),
        ]
        .iter()
        .fold(P::zero(n), |acc, (k, ks)| &acc + &e_tail(n, ks).scale(k))
    }
}

/// `(α, β, γ, δ)` at `c = second_lift_c(n)`, re-derived with the `D̃_2 g_{s;c}` contribution.
pub fn second_lift_targets(n: usize) -> Result<[Rational; 4]> {
    check_n(n, 5)?;
    let ni = n as i64;
    let sn = int(sign(ni));
    Ok([
        &sn * rat((ni - 2) * (6 * ni * ni + 19 * ni + 31), 6 * ni * (ni + 1)),
        &sn * rat(2 * ni * ni - 17, 3 * ni * (ni - 1) * (ni + 1)),
        -(&sn * rat(1, 2 * ni * (ni + 1))),
        &sn * rat(1, (ni - 1) * (ni + 1)),
    ])
}

/// The value of `c` for which the second lift of `f_{1;c}` reduces to a single equation,
/// with `-D̃_2 f_{1;c}` expanded in full.
pub fn second_lift_c(n: usize) -> Result<Rational> {
    check_n(n, 2)?;
    let ni = n as i64;
    Ok(int(sign(ni - 1)) * rat(2 * (2 * ni * ni - 5), 3 * ni * (ni - 1) * (ni + 1)))
}

/// Solves `(∇_2 + 2P_2 + ∇_1²) g_0 = 3!α e_{n-4} + 4!β e_{n-5}e_1 + 5!γ e_{n-6}e_1² + 5!δ e_{n-6}e_2`
/// within the five-term ansatz, for a given `u`.
pub fn solve_g0(n: usize, u: &Rational, targets: &[Rational; 4]) -> Result<G0Coefficients> {
    check_n(n, 5)?;
    let ni = n as i64;
    let [alpha, beta, gamma, delta] = targets;
    // e_{n-6}e_2: 10n z;  e_{n-6}e_1²: 10(n-1) z + 30n y
    let z = int(12) * delta / int(ni);
    let y = (int(120) * gamma - int(10 * (ni - 1)) * &z) / int(30 * ni);
    // e_{n-5}e_1: (2n(n-2) - 2(n-5)) z + 6n(n-1) y + 8(n-1) w + 16n v
    // e_{n-4}:    -2(n-4) w + 2n(n-1) v + 6n u
    let r1 =
        int(24) * beta - int(2 * ni * (ni - 2) - 2 * (ni - 5)) * &z - int(6 * ni * (ni - 1)) * &y;
    let r2 = int(6) * alpha - int(6 * ni) * u;
    let m = vec![
        vec![int(8 * (ni - 1)), int(16 * ni)],
        vec![int(-2 * (ni - 4)), int(2 * ni * (ni - 1))],
    ];
    let wv = crate::linalg::exact::solve(&m, &[r1, r2])?;
    Ok(G0Coefficients {
        u: u.clone(),
        v: wv[1].clone(),
        w: wv[0].clone(),
        y,
        z,
    })
}

/// The family `g_{0;u}` for the targets `alpha_beta_gamma_delta(n)`.
pub fn appendix_g0_coefficients(n: usize, u: &Rational) -> Result<G0Coefficients> {
    solve_g0(n, u, &alpha_beta_gamma_delta(n)?)
}

/// The family `g_{0;u}` with the coefficients exactly as printed in the source derivation.
pub fn appendix_g0_coefficients_printed(n: usize, u: &Rational) -> Result<G0Coefficients> {
    check_n(n, 5)?;
    let ni = n as i64;
    let sn = int(sign(ni));
    let q = ni * ni + ni + 2;
    let n7 = ni * ni - 7;
    let z = &sn * rat(-6, ni * q);
    let y = &sn * rat(-2, ni * ni * q);
    let w = -((int(-12 * ni * ni * q) * u
        + int(12 * ni.pow(4) + 7 * ni.pow(3) + 31 * ni * ni - 168 * ni - 48))
        / int(2 * q * n7));
    let v_num = int(-6 * ni * ni * q * (ni - 1) * (ni - 1)) * u
        + int(
            6 * ni.pow(6) - 5 * ni.pow(5) + 10 * ni.pow(4) - 138 * ni.pow(3) + 179 * ni * ni
                - 22 * ni
                + 60,
        );
    let v = v_num / int(2 * (ni - 1) * n7 * q * ni * ni);
    Ok(G0Coefficients {
        u: u.clone(),
        v,
        w,
        y,
        z,
    })
}

/// Outcome of checking `(∇_2 + 2P_2 + ∇_1²) g_0 = 3!α e_{n-4} + 4!β e_{n-5}e_1 + 5!γ e_{n-6}e_1² + 5!δ e_{n-6}e_2`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct F2Report {
    pub n: usize,
    pub c: Rational,
    pub coefficients: G0Coefficients,
    pub alpha: Rational,
    pub beta: Rational,
    pub gamma: Rational,
    pub delta: Rational,
    /// Left side minus right side.
    pub defect: P,
}

impl F2Report {
    pub fn passed(&self) -> bool {
        self.defect.is_zero()
    }
}

/// Runs the check with the family `g_{0;u}`.
pub fn f2_rhs_check(n: usize, u: &Rational) -> Result<F2Report> {
    check_n(n, 6)?;
    f2_rhs_check_with(n, &appendix_g0_coefficients(n, u)?)
}

/// Runs the check with arbitrary `g_0` coefficients against `alpha_beta_gamma_delta(n)`.
pub fn f2_rhs_check_with(n: usize, g0: &G0Coefficients) -> Result<F2Report> {
    reduced_equation_check(n, &special_c(n)?, g0, &alpha_beta_gamma_delta(n)?)
}

/// Checks the reduced equation for `g0` against arbitrary targets `(α, β, γ, δ)`.
pub fn reduced_equation_check(
    n: usize,
    c: &Rational,
    g0: &G0Coefficients,
    targets: &[Rational; 4],
) -> Result<F2Report> {
    check_n(n, 6)?;
    let ni = n as i64;
    let [alpha, beta, gamma, delta] = targets.clone();
    let lhs = reduced_operator(&g0.polynomial(n))?;
    let rhs = [
        (int(6) * &alpha, vec![ni - 4]),
        (int(24) * &beta, vec![ni - 5, 1]),
        (int(120) * &gamma, vec![ni - 6, 1, 1]),
        (int(120) * &delta, vec![ni - 6, 2]),
    ]
    .iter()
    .fold(P::zero(n), |acc, (k, ks)| &acc + &e_tail(n, ks).scale(k));
    Ok(F2Report {
        n,
        c: c.clone(),
        coefficients: g0.clone(),
        alpha,
        beta,
        gamma,
        delta,
        defect: &lhs - &rhs,
    })
}

/// A candidate second lift `f_2 = Δ^{(1)} Σ_s h_s x_1^s` of `f_{1;c}` built from `h_0 = g_0`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SecondLift {
    pub n: usize,
    pub c: Rational,
    pub g0: G0Coefficients,
    pub f2: P,
    /// `∇_1 f_2 = -D̃_1 f_{1;c}` (holds by construction).
    pub first: bool,
    /// `∇_2 f_2 = -D̃_2 f_{1;c}`.
    pub second: bool,
}

impl SecondLift {
    pub fn passed(&self) -> bool {
        self.first && self.second
    }
}

/// Integrates `∇_1 f_2 = -D̃_1 f_{1;c}` from `h_0 = g_0` and tests the `∇_2` equation.
pub fn second_lift_from_g0(n: usize, c: &Rational, g0: &G0Coefficients) -> Result<SecondLift> {
    check_n(n, 5)?;
    let all = VarSubset::all(n);
    let f1 = f1_family(n, c)?;
    let target1 = -dtilde(&f1, 1, &all);
    let a = target1.exact_divide(&vandermonde(&tail(n)))?;
    let mut hs = vec![g0.polynomial(n)];
    for s in 0..n - 2 {
        let next = &x1_slice(&a, s) - &nabla(&hs[s], 1, &tail(n));
        hs.push(next.scale(&rat(1, s as i64 + 1)));
    }
    let f2 = assemble(n, &hs);
    Ok(SecondLift {
        n,
        c: c.clone(),
        g0: g0.clone(),
        first: nabla(&f2, 1, &all) == target1,
        second: nabla(&f2, 2, &all) == -dtilde(&f1, 2, &all),
        f2,
    })
}

/// The explicit `f_2` for `f_{1;c}` at `c = second_lift_c(n)` with free parameter `u`.
pub fn appendix_f2(n: usize, u: &Rational) -> Result<SecondLift> {
    let g0 = solve_g0(n, u, &second_lift_targets(n)?)?;
    second_lift_from_g0(n, &second_lift_c(n)?, &g0)
}

/// The coefficient of `x_1^s` in `p`, as a polynomial in the other variables.
pub(crate) fn x1_slice(p: &P, s: usize) -> P {
    P::from_terms(
        p.n_vars(),
        p.terms()
            .iter()
            .filter(|(m, _)| m.exp(0) as usize == s)
            .map(|(m, v)| (m.shift(0, -(s as i32)).unwrap(), v.clone())),
    )
}

/// `g_{s;c}` at `c = special_c(n)`, from its simplified four-term display.
pub fn gsc_special(n: usize, s: usize) -> Result<P> {
    check_n(n, 5)?;
    if s > n - 2 {
        return Err(Error::invalid(format!("need s <= n-2, got s={s}, n={n}")));
    }
    let (ni, si) = (n as i64, s as i64);
    let sg = int(sign(si + ni));
    let q = ni * ni + ni + 2;
    let a = &sg
        * rat(si + 1, 6 * ni * q)
        * int(ni * si * si + (2 * ni.pow(3) + 6 * ni * ni + 15 * ni + 6) * si);
    let b = &sg
        * rat((si + 2) * (si + 1), 3 * ni * (ni - 1) * q)
        * int(ni * si - 2 * ni.pow(3) + 2 * ni + 3);
    let c = &sg * rat((si + 3) * (si + 2) * (si + 1), 6 * q);
    let d = -(&sg * rat((si + 3) * (si + 2) * (si + 1) * ni, 3 * (ni - 1) * q));
    Ok([
        (a, vec![ni - si - 2]),
        (b, vec![ni - si - 3, 1]),
        (c, vec![ni - si - 4, 1, 1]),
        (d, vec![ni - si - 4, 2]),
    ]
    .iter()
    .fold(P::zero(n), |acc, (k, ks)| &acc + &e_tail(n, ks).scale(k)))
}

/// `-D̃_k f_{1;c}` divided by `Δ^{(1)}`, split by powers of `x_1` (`0..=n`).
pub(crate) fn direct_slices(n: usize, c: &Rational, k: u32) -> Result<Vec<P>> {
    let f = f1_family(n, c)?;
    let lhs = -dtilde(&f, k, &VarSubset::all(n));
    let quotient = lhs.exact_divide(&vandermonde(&tail(n)))?;
    Ok((0..=n).map(|s| x1_slice(&quotient, s)).collect())
}

fn combine(
    n: usize,
    s: usize,
    hat: bool,
    value: impl Fn(AppendixCoeff) -> Result<Rational>,
) -> Result<P> {
    AppendixCoeff::ALL
        .into_iter()
        .filter(|w| w.is_hat() == hat)
        .try_fold(P::zero(n), |acc, w| {
            Ok(&acc + &w.basis(n, s).scale(&value(w)?))
        })
}

/// Whether the closed-form coefficients reproduce `-D̃_1 f_{1;c}` (tilde family) and
/// `-D̃_2 f_{1;c}` (hat family) exactly, slice by slice in `x_1`.
pub fn appendix_operator_check(n: usize, c: &Rational) -> Result<bool> {
    check_n(n, 5)?;
    for (k, hat) in [(1, false), (2, true)] {
        for (s, slice) in direct_slices(n, c, k)?.iter().enumerate() {
            if &combine(n, s, hat, |w| appendix_coefficient(n, c, s, w))? != slice {
                return Ok(false);
            }
        }
    }
    Ok(true)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::constructions::gsc;

    fn from_coefficients(n: usize, c: &Rational, s: usize, hat: bool, closed: bool) -> P {
        let f = if closed {
            appendix_coefficient
        } else {
            appendix_coefficient_from_definition
        };
        combine(n, s, hat, |w| f(n, c, s, w)).unwrap()
    }

    #[test]
    fn definitions_reproduce_operator() {
        for n in [6, 7] {
            for c in [special_c(n).unwrap(), int(0), int(1)] {
                for (k, hat) in [(1, false), (2, true)] {
                    let slices = direct_slices(n, &c, k).unwrap();
                    for (s, slice) in slices.iter().enumerate() {
                        assert_eq!(
                            &from_coefficients(n, &c, s, hat, false),
                            slice,
                            "n={n} c={c} k={k} s={s}"
                        );
                    }
                }
            }
        }
    }

    #[test]
    fn gsc_special_matches_family() {
        for n in [5, 6, 7] {
            let c = special_c(n).unwrap();
            for s in 0..=n - 2 {
                assert_eq!(gsc_special(n, s).unwrap(), gsc(n, &c, s), "n={n} s={s}");
            }
        }
    }

    #[test]
    fn closed_forms_match_definitions() {
        for n in [5, 6, 7, 8] {
            for c in [special_c(n).unwrap(), int(0), int(1), rat(-2, 3)] {
                for w in AppendixCoeff::ALL {
                    for s in 0..n {
                        assert_eq!(
                            appendix_coefficient(n, &c, s, w).unwrap(),
                            appendix_coefficient_from_definition(n, &c, s, w).unwrap(),
                            "n={n} c={c} {w} s={s}"
                        );
                    }
                }
            }
        }
    }

    #[test]
    fn reduced_equation() {
        for n in [6, 7, 8] {
            for u in [int(0), int(1), rat(-2, 3)] {
                let r = f2_rhs_check(n, &u).unwrap();
                assert!(r.passed(), "n={n} u={u}: {}", r.defect);
            }
            let mut g = appendix_g0_coefficients(n, &rat(-2, 3)).unwrap();
            g.w += int(1);
            assert!(!f2_rhs_check_with(n, &g).unwrap().passed());
        }
    }

    #[test]
    fn printed_family_fails() {
        for n in [6, 7] {
            let g = appendix_g0_coefficients_printed(n, &int(0)).unwrap();
            assert!(!f2_rhs_check_with(n, &g).unwrap().passed());
        }
    }

    #[test]
    fn general_c_values_at_special_c() {
        // gamma and delta as functions of c, evaluated at the special value.
        for n in [5, 6, 9] {
            let ni = n as i64;
            let c = special_c(n).unwrap();
            let k = &c * int(ni) + int(sign(ni));
            let n7 = int(ni * ni - 7);
            let [_, beta, gamma, delta] = alpha_beta_gamma_delta(n).unwrap();
            assert_eq!(gamma, int(3 * (ni - 1)) * &k / (int(2 * ni) * &n7));
            assert_eq!(delta, int(-3) * &k / &n7);
            let b = (int(ni.pow(3) + 14 * ni) * &c + int(sign(ni) * (2 * ni * ni + 7)))
                / (int(ni) * &n7);
            assert_eq!(beta, b);
        }
    }

    #[test]
    fn second_lift() {
        for n in [5, 6, 7] {
            for u in [int(0), rat(-2, 3)] {
                let lift = appendix_f2(n, &u).unwrap();
                assert!(lift.passed(), "n={n} u={u}");
            }
        }
        // The printed special value admits no lift of this shape.
        for n in [6, 7] {
            let g0 = appendix_g0_coefficients(n, &int(0)).unwrap();
            let lift = second_lift_from_g0(n, &special_c(n).unwrap(), &g0).unwrap();
            assert!(lift.first && !lift.second);
        }
    }

    #[test]
    fn second_lift_closed_forms() {
        for n in [5, 6, 7, 8] {
            let ni = n as i64;
            let sn = int(sign(ni));
            let u = rat(3, 5);
            let g = solve_g0(n, &u, &second_lift_targets(n).unwrap()).unwrap();
            let n7 = int(ni * ni - 7);
            assert_eq!(g.z, &sn * rat(12, ni * (ni - 1) * (ni + 1)));
            assert_eq!(g.y, &sn * rat(-6, ni * ni * (ni + 1)));
            let w = int(6 * ni) * &u / &n7
                - &sn
                    * rat(
                        12 * ni.pow(3) + 7 * ni * ni - 14 * ni - 69,
                        2 * ni * (ni + 1),
                    )
                    / &n7;
            assert_eq!(g.w, w);
            let v = int(-3 * (ni - 1)) * &u / &n7
                + &sn
                    * rat(
                        6 * ni.pow(5) - 5 * ni.pow(4) - 8 * ni.pow(3) - 69 * ni * ni
                            + 62 * ni
                            + 158,
                        2 * ni * ni * (ni - 1) * (ni + 1),
                    )
                    / &n7;
            assert_eq!(g.v, v);
        }
    }

    #[test]
    fn vanishing_factor() {
        let n = 6;
        let c = rat(sign(n as i64 - 1), n as i64);
        for s in 0..3 {
            for w in [
                AppendixCoeff::CTilde,
                AppendixCoeff::DTilde,
                AppendixCoeff::CHat,
                AppendixCoeff::DHat,
            ] {
                assert_eq!(appendix_coefficient(n, &c, s, w).unwrap(), int(0));
            }
        }
    }
}
