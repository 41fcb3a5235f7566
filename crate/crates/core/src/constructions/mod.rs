//! Explicit lifts of the first q-harmonic equations for `∂_1 Δ` and friends.
//!
//! Throughout, `e_k` denotes the elementary symmetric polynomial in `x_2, …, x_n`
//! and `Δ^{(1)}` the Vandermonde in the same variables.

mod appendix;
mod lift;

pub use appendix::{
    alpha_beta_gamma_delta, appendix_coefficient, appendix_coefficient_from_definition,
    appendix_f2, appendix_g0_coefficients, appendix_g0_coefficients_printed,
    appendix_operator_check, f2_rhs_check, f2_rhs_check_with, gsc_special, reduced_equation_check,
    second_lift_c, second_lift_from_g0, second_lift_targets, solve_g0, AppendixCoeff, F2Report,
    G0Coefficients, SecondLift,
};
pub use lift::{adjust_for_next_step, lift_chain, lift_step, LiftSolution};

use crate::diffops::{nabla, p2};
use crate::error::{Error, Result};
use crate::linalg::exact::det;
use crate::perm::Perm;
use crate::poly::Polynomial;
use crate::ring::{binom, int, rat, sign, Rational};
use crate::symfun::{elementary, vandermonde, VarSubset};

type P = Polynomial<Rational>;

/// `∂^α` as a vector of exponents.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct MultiIndex(pub Vec<u32>);

impl MultiIndex {
    pub fn new(alpha: Vec<u32>) -> Self {
        MultiIndex(alpha)
    }

    /// The unit vector `v_i` (0-based `i`).
    pub fn unit(n: usize, i: usize) -> Self {
        let mut a = vec![0; n];
        a[i] = 1;
        MultiIndex(a)
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    pub fn order(&self) -> u32 {
        self.0.iter().sum()
    }

    pub fn apply(&self, f: &P) -> P {
        self.0.iter().enumerate().fold(
            f.clone(),
            |acc, (i, &a)| if a == 0 { acc } else { acc.partial(i, a) },
        )
    }
}

/// The variables `x_2, …, x_n`.
pub(crate) fn tail(n: usize) -> VarSubset {
    VarSubset::omitting(n, 0)
}

/// Products of `e_k(x_2..x_n)`; any negative index gives zero.
pub(crate) fn e_tail(n: usize, ks: &[i64]) -> P {
    let s = tail(n);
    ks.iter()
        .fold(P::one(n), |acc, &k| &acc * &elementary::<Rational>(k, &s))
}

/// `(∇_2 + 2 P_2 + ∇_1²) g` in the variables `x_2..x_n`; `g` must be symmetric there.
pub fn reduced_operator(g: &P) -> Result<P> {
    let s = tail(g.n_vars());
    let n1 = nabla(g, 1, &s);
    Ok(&(&nabla(g, 2, &s) + &p2(g, &s)?.scale(&int(2))) + &nabla(&n1, 1, &s))
}

pub(crate) fn check_n(n: usize, min: usize) -> Result<()> {
    if n < min {
        return Err(Error::invalid(format!("need n >= {min}, got n={n}")));
    }
    Ok(())
}

/// `Δ^{(1)} Σ_s g_s x_1^s`.
pub(crate) fn assemble(n: usize, gs: &[P]) -> P {
    let delta1: P = vandermonde(&tail(n));
    let g = gs
        .iter()
        .enumerate()
        .fold(P::zero(n), |acc, (s, gs)| &acc + &gs.mul_var(0, s as u16));
    &delta1 * &g
}

/// The explicit `f_1` with `∇_k f_1 = ∂_1^{k+1} Δ`, `k = 1, 2`.
pub fn f1_section2(n: usize) -> Result<P> {
    check_n(n, 3)?;
    let ni = n as i64;
    let gs: Vec<P> = (0..=ni - 2)
        .map(|s| {
            let first = e_tail(n, &[ni - 2 - s]).scale(&int((ni + 1) * binom(s + 1, 2)));
            let second = e_tail(n, &[ni - 3 - s, 1]).scale(&int(binom(s + 2, 2)));
            (&first - &second).scale(&rat(sign(ni - 2 - s), ni))
        })
        .collect();
    Ok(assemble(n, &gs))
}

/// `X = (-1)^{n-1} - c n`, the common factor of the family.
fn family_x(n: usize, c: &Rational) -> Rational {
    int(sign(n as i64 - 1)) - c * int(n as i64)
}

/// The coefficients `(a_s, b_s, c_s, d_s)` of `g_{s;c}` on
/// `e_{n-s-2}, e_{n-s-3} e_1, e_{n-s-4} e_1², e_{n-s-4} e_2`.
pub fn gsc_coefficients(n: usize, c: &Rational, s: usize) -> [Rational; 4] {
    let (ni, si) = (n as i64, s as i64);
    let x = family_x(n, c);
    let n7 = int(ni * ni - 7);
    let sg = int(sign(si));
    let p3 = int((si + 3) * (si + 2) * (si + 1));
    let d_s = -(&sg * &x * &p3 / &n7);
    let c_s = &sg * int(ni - 1) * &x * &p3 / (int(2 * ni) * &n7);
    let b_s = &sg * (int(si) * &x / (int(ni) * &n7) + c / int(2)) * int((si + 2) * (si + 1));
    let a_s = &sg
        * (&x / &n7 * rat(si * (si - 1), 2) * rat(ni - 1, ni)
            + c * rat(si * (ni - 1), 2)
            + int(si * sign(ni)))
        * int(si + 1);
    [a_s, b_s, c_s, d_s]
}

/// `g_{s;c}` as a polynomial in `x_2..x_n`.
pub fn gsc(n: usize, c: &Rational, s: usize) -> P {
    let (ni, si) = (n as i64, s as i64);
    let [a, b, cc, d] = gsc_coefficients(n, c, s);
    let terms = [
        (a, vec![ni - si - 2]),
        (b, vec![ni - si - 3, 1]),
        (cc, vec![ni - si - 4, 1, 1]),
        (d, vec![ni - si - 4, 2]),
    ];
    terms
        .iter()
        .fold(P::zero(n), |acc, (k, ks)| &acc + &e_tail(n, ks).scale(k))
}

/// `g_{0;c} = a e_{n-4} e_2 + b e_{n-4} e_1² + c e_{n-3} e_1`.
pub fn g0_family(n: usize, c: &Rational) -> Result<P> {
    check_n(n, 5)?;
    let ni = n as i64;
    let x = family_x(n, c);
    let n7 = int(ni * ni - 7);
    let a = -(int(6) * &x / &n7);
    let b = int(3 * (ni - 1)) * &x / (int(ni) * &n7);
    Ok(
        &(&e_tail(n, &[ni - 4, 2]).scale(&a) + &e_tail(n, &[ni - 4, 1, 1]).scale(&b))
            + &e_tail(n, &[ni - 3, 1]).scale(c),
    )
}

/// `f_{1;c} = Δ^{(1)} Σ_s g_{s;c} x_1^s`.
pub fn f1_family(n: usize, c: &Rational) -> Result<P> {
    check_n(n, 5)?;
    let gs: Vec<P> = (0..=n - 2).map(|s| gsc(n, c, s)).collect();
    Ok(assemble(n, &gs))
}

/// The value of `c` for which the second lift reduces to a single equation.
pub fn special_c(n: usize) -> Result<Rational> {
    check_n(n, 2)?;
    let ni = n as i64;
    Ok(int(sign(ni - 1))
        * rat(
            2 * (2 * ni.pow(3) - 2 * ni - 3),
            3 * ni * (ni - 1) * (ni * ni + ni + 2),
        ))
}

/// `(a x_j + b e_1^{(j)}) ∂^α Δ` with `∇_1 f = c ∂^α Δ` and `∇_2 f = d ∂_j ∂^α Δ`.
pub fn f1_affine(n: usize, j: usize, c: &Rational, d: &Rational, alpha: &MultiIndex) -> Result<P> {
    check_n(n, 2)?;
    if j >= n || alpha.len() != n {
        return Err(Error::invalid(format!(
            "need j < n and |alpha| = n, got j={j}, n={n}"
        )));
    }
    let half_d = d / int(2);
    let b = (c - &half_d) / int(n as i64);
    let a = &b + &half_d;
    let lin =
        &P::var(n, j).scale(&a) + &elementary::<Rational>(1, &VarSubset::omitting(n, j)).scale(&b);
    let delta: P = vandermonde(&VarSubset::all(n));
    Ok(&lin * &alpha.apply(&delta))
}

/// The 4×4 matrix of the quadratic ansatz for `f_2`.
pub fn f2_ansatz_matrix(n: usize) -> Result<Vec<Vec<Rational>>> {
    let ni = n as i64;
    let m: Vec<Vec<Rational>> = [
        [2, ni - 1, 0, 0],
        [0, 1, 2 * (ni - 1), ni - 2],
        [4, -2, 0, 2],
        [0, 2, -4, 2],
    ]
    .iter()
    .map(|row| row.iter().map(|&x| int(x)).collect())
    .collect();
    if num_traits::Zero::is_zero(&det(&m)) {
        return Err(Error::Singular);
    }
    Ok(m)
}

/// The 4×4 system actually satisfied by the quadratic ansatz for `f_2`.
/// It differs from `f2_ansatz_matrix` in the sign of the last entry and is singular for every `n`.
pub fn f2_ansatz_system(n: usize) -> Vec<Vec<Rational>> {
    let ni = n as i64;
    [
        [2, ni - 1, 0, 0],
        [0, 1, 2 * (ni - 1), ni - 2],
        [4, -2, 0, 2],
        [0, 2, -4, -2],
    ]
    .iter()
    .map(|row| row.iter().map(|&x| int(x)).collect())
    .collect()
}

/// Solves `∇_1 f_2 = (ã x_1 + b̃ e_1^{(1)}) ∂_1^k Δ`, `∇_2 f_2 = (c̃ x_1 + d̃ e_1^{(1)}) ∂_1^{k+1} Δ`
/// with the ansatz
/// `(a x_1² + b x_1 e_1 + c e_1² + d e_2) ∂_1^k Δ + (â x_1 + b̂ e_1) ∂_1^{k-1} Δ`.
///
/// Solvable exactly when `-2ã + 2b̃ + c̃ + (n-1)d̃ = 0`; otherwise `Error::Infeasible`.
/// The returned solution has `d = 0`.
pub fn f2_ansatz(n: usize, k: u32, targets: &[Rational; 4]) -> Result<P> {
    if k < 1 {
        return Err(Error::invalid("need k >= 1"));
    }
    if n < 2 {
        return Err(Error::Singular);
    }
    let m = f2_ansatz_system(n);
    let sub: Vec<Vec<Rational>> = m[..3].iter().map(|r| r[..3].to_vec()).collect();
    let mut x = crate::linalg::exact::solve(&sub, &targets[..3])?;
    x.push(int(0));
    let last: Rational = m[3].iter().zip(&x).map(|(p, q)| p * q).sum();
    if last != targets[3] {
        return Err(Error::Infeasible);
    }
    let (a, b, c, d) = (&x[0], &x[1], &x[2], &x[3]);
    let ni = n as i64;
    let nm1 = int(ni - 1);
    // Euler degree of ∂_1^k Δ
    let deg = int(ni * (ni - 1) / 2 - i64::from(k));
    let b_hat = (a + &(&nm1 * c) - &(d * &deg)) / int(ni);
    let a_hat = -(&nm1 * &b_hat);
    let delta: P = vandermonde(&VarSubset::all(n));
    let x1 = P::var(n, 0);
    let e1 = e_tail(n, &[1]);
    let quad = [
        (a, x1.pow(2)),
        (b, &x1 * &e1),
        (c, e1.pow(2)),
        (d, e_tail(n, &[2])),
    ]
    .iter()
    .fold(P::zero(n), |acc, (k, p)| &acc + &p.scale(k));
    let lin = &x1.scale(&a_hat) + &e1.scale(&b_hat);
    Ok(&(&quad * &delta.partial(0, k)) + &(&lin * &delta.partial(0, k - 1)))
}

/// `f_1^{(i)}` for `∂_i Δ`, obtained from the one for `∂_1 Δ` by swapping `x_1` and `x_i`.
pub fn f1_for_variable(n: usize, i: usize) -> Result<P> {
    if i >= n {
        return Err(Error::invalid(format!(
            "variable {i} out of range for n={n}"
        )));
    }
    let f = f1_section2(n)?;
    Ok(if i == 0 {
        f
    } else {
        -f.permute(&Perm::transposition(n, 0, i))
    })
}

/// `f_1^α = Σ_{α_i ≠ 0} α_i ∂^{α - v_i} f_1^{(i)}`.
pub fn reduce_multiindex(alpha: &MultiIndex, f1_per_variable: &[P]) -> Result<P> {
    if alpha.len() != f1_per_variable.len() || alpha.is_empty() {
        return Err(Error::invalid("one f_1 per variable is required"));
    }
    let n = alpha.len();
    let mut out = P::zero(f1_per_variable[0].n_vars());
    for (i, &ai) in alpha.0.iter().enumerate() {
        if ai == 0 {
            continue;
        }
        let mut lower = alpha.clone();
        lower.0[i] -= 1;
        out = &out + &lower.apply(&f1_per_variable[i]).scale(&int(i64::from(ai)));
    }
    debug_assert_eq!(out.n_vars(), f1_per_variable[n - 1].n_vars());
    Ok(out)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::diffops::dtilde;
    use crate::text::parse_poly;

    fn delta(n: usize) -> P {
        vandermonde(&VarSubset::all(n))
    }

    fn contracts(f: &P, n: usize) -> bool {
        let all = VarSubset::all(n);
        let d = delta(n);
        nabla(f, 1, &all) == d.partial(0, 2) && nabla(f, 2, &all) == d.partial(0, 3)
    }

    #[test]
    fn section2_small() {
        let f = f1_section2(3).unwrap();
        let expected =
            parse_poly::<Rational>("1/3*x2^2 - 1/3*x3^2 + 4/3*x1*x2 - 4/3*x1*x3", Some(3)).unwrap();
        assert_eq!(f, expected);
        for n in 3..=6 {
            assert!(contracts(&f1_section2(n).unwrap(), n), "n={n}");
        }
    }

    #[test]
    fn family() {
        for n in 5..=6 {
            let sigma = int(sign(n as i64 - 1));
            for c in [int(0), int(1), rat(-2, 3), special_c(n).unwrap()] {
                let g0 = g0_family(n, &c).unwrap();
                assert_eq!(
                    reduced_operator(&g0).unwrap(),
                    e_tail(n, &[n as i64 - 4]).scale(&(&sigma * int(6)))
                );
                assert_eq!(gsc(n, &c, 0), g0);
                assert!(contracts(&f1_family(n, &c).unwrap(), n), "n={n} c={c}");
            }
            let c = &sigma / int(n as i64);
            assert_eq!(f1_family(n, &c).unwrap(), f1_section2(n).unwrap());
        }
    }

    #[test]
    fn special_values() {
        assert_eq!(special_c(3).unwrap(), rat(5, 14));
        assert_eq!(special_c(5).unwrap(), rat(79, 320));
        assert_eq!(special_c(2).unwrap(), rat(-3, 8));
    }

    #[test]
    fn affine() {
        let all = |n| VarSubset::all(n);
        let cases = [
            (2, 0, int(1), int(0), MultiIndex::new(vec![1, 0])),
            (4, 1, int(1), int(2), MultiIndex::new(vec![0, 1, 0, 0])),
            (
                4,
                3,
                rat(2, 3),
                rat(-5, 7),
                MultiIndex::new(vec![1, 0, 1, 0]),
            ),
        ];
        for (n, j, c, d, alpha) in cases {
            let f = f1_affine(n, j, &c, &d, &alpha).unwrap();
            let base = alpha.apply(&delta(n));
            assert_eq!(nabla(&f, 1, &all(n)), base.scale(&c));
            assert_eq!(nabla(&f, 2, &all(n)), base.partial(j, 1).scale(&d));
        }
        let zero = f1_affine(3, 0, &int(0), &int(0), &MultiIndex::new(vec![1, 0, 0])).unwrap();
        assert!(zero.is_zero());
    }

    #[test]
    fn ansatz_matrix() {
        for (n, want) in [(2, 64), (3, 192), (5, 640)] {
            assert_eq!(det(&f2_ansatz_matrix(n).unwrap()), int(want));
        }
        assert_eq!(f2_ansatz_matrix(1), Err(Error::Singular));
        for n in 2..8 {
            assert_eq!(det(&f2_ansatz_system(n)), int(0));
        }
    }

    #[test]
    fn ansatz_solution() {
        let n = 4;
        let all = VarSubset::all(n);
        let t = [int(1), rat(-2, 3), rat(11, 6), rat(1, 2)];
        assert!(f2_ansatz(n, 1, &[int(1), rat(-2, 3), int(5), rat(1, 2)]).is_err());
        for k in 1..=2 {
            let f = f2_ansatz(n, k, &t).unwrap();
            let d = delta(n);
            let x1 = P::var(n, 0);
            let e1 = e_tail(n, &[1]);
            let lhs1 = &(&x1.scale(&t[0]) + &e1.scale(&t[1])) * &d.partial(0, k);
            let lhs2 = &(&x1.scale(&t[2]) + &e1.scale(&t[3])) * &d.partial(0, k + 1);
            assert_eq!(nabla(&f, 1, &all), lhs1);
            assert_eq!(nabla(&f, 2, &all), lhs2);
        }
    }

    #[test]
    fn multiindex() {
        let n = 4;
        let all = VarSubset::all(n);
        let fs: Vec<P> = (0..n).map(|i| f1_for_variable(n, i).unwrap()).collect();
        for (i, f) in fs.iter().enumerate() {
            let d = delta(n);
            assert_eq!(nabla(f, 1, &all), d.partial(i, 2));
            assert_eq!(nabla(f, 2, &all), d.partial(i, 3));
        }
        assert_eq!(
            reduce_multiindex(&MultiIndex::unit(n, 0), &fs).unwrap(),
            fs[0]
        );
        for alpha in [vec![2, 0, 0, 0], vec![1, 1, 0, 0], vec![0, 1, 0, 2]] {
            let alpha = MultiIndex::new(alpha);
            let f = reduce_multiindex(&alpha, &fs).unwrap();
            let base = alpha.apply(&delta(n));
            for k in 1..=2 {
                assert_eq!(
                    nabla(&f, k, &all),
                    -dtilde(&base, k, &all),
                    "alpha={alpha:?} k={k}"
                );
            }
        }
    }
}
