//! One step of the graded lifting system `∇_k f_i = -D̃_k f_{i-1}`, `k = 1, 2`.

use crate::diffops::dtilde;
use crate::error::{Error, Result};
use crate::harmonics::{solve_rational, DegreeSystem};
use crate::linalg::exact::rref;
use crate::poly::{Degree, Polynomial};
use crate::ring::{int, Rational};
use crate::symfun::VarSubset;

type P = Polynomial<Rational>;

/// All solutions of one lifting step: `particular + span(kernel_basis)`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct LiftSolution {
    /// The solution vanishing on the free monomials of the reduced row-echelon form.
    pub particular: P,
    pub kernel_dim: usize,
    /// A basis of the common kernel of `∇_1` and `∇_2` in this degree.
    pub kernel_basis: Vec<P>,
}

/// Solves `∇_k f = -D̃_k f_prev` (`k = 1, 2`) for `f` of the same degree as `f_prev`.
pub fn lift_step(n: usize, f_prev: &P) -> Result<LiftSolution> {
    if f_prev.n_vars() != n {
        return Err(Error::ArityMismatch {
            left: n,
            right: f_prev.n_vars(),
        });
    }
    let d = match f_prev.homogeneity() {
        Degree::Homogeneous(d) => d,
        Degree::Zero => 0,
        Degree::Inhomogeneous => return Err(Error::invalid("f_prev must be homogeneous")),
    };
    let sys = DegreeSystem::new(n, d, 2);
    let all = VarSubset::all(n);
    let rhs: Vec<Vec<Rational>> = (1..=2u32)
        .map(|k| {
            let target = -dtilde(f_prev, k, &all);
            sys.rows[k as usize - 1]
                .iter()
                .map(|m| target.coeff(m))
                .collect()
        })
        .collect();
    let sol = solve_rational(&sys, &int(0), Some(&rhs))?;
    let to_poly =
        |v: &[Rational]| P::from_terms(n, sys.columns.iter().cloned().zip(v.iter().cloned()));
    let particular = match sol.particular {
        Some(Some(x)) => to_poly(&x),
        _ => return Err(Error::Infeasible),
    };
    let kernel_basis: Vec<P> = sol.kernel.iter().map(|v| to_poly(v)).collect();
    Ok(LiftSolution {
        particular,
        kernel_dim: kernel_basis.len(),
        kernel_basis,
    })
}

/// Picks `f = prev.particular + Σ λ_i prev.kernel_basis[i]` for which the next step
/// `∇_k g = -D̃_k f` (`k = 1, 2`) is solvable. Exact dense elimination; meant for small systems.
pub fn adjust_for_next_step(n: usize, prev: &LiftSolution) -> Result<P> {
    let base = &prev.particular;
    let d = match base.homogeneity() {
        Degree::Homogeneous(d) => d,
        Degree::Zero if prev.kernel_basis.is_empty() => return Ok(base.clone()),
        Degree::Zero => prev.kernel_basis[0].max_degree().unwrap_or(0),
        Degree::Inhomogeneous => return Err(Error::invalid("lift must be homogeneous")),
    };
    let sys = DegreeSystem::new(n, d, 2);
    let all = VarSubset::all(n);
    let ncols = sys.columns.len();
    let nk = prev.kernel_basis.len();
    let mut m: Vec<Vec<Rational>> = sys
        .dense()
        .into_iter()
        .map(|row| {
            let mut r: Vec<Rational> = row.into_iter().map(|(a, _)| int(a)).collect();
            r.resize(ncols + nk + 1, int(0));
            r
        })
        .collect();
    let mut offset = 0;
    for (k, rows) in (1..=2u32).zip(&sys.rows) {
        let rhs = -dtilde(base, k, &all);
        for (r, mono) in rows.iter().enumerate() {
            for (i, b) in prev.kernel_basis.iter().enumerate() {
                m[offset + r][ncols + i] = dtilde(b, k, &all).coeff(mono);
            }
            m[offset + r][ncols + nk] = rhs.coeff(mono);
        }
        offset += rows.len();
    }
    let pivots = rref(&mut m);
    if pivots.last() == Some(&(ncols + nk)) {
        return Err(Error::Infeasible);
    }
    let mut lambda = vec![int(0); nk];
    for (row, &c) in pivots.iter().enumerate() {
        if c >= ncols {
            lambda[c - ncols] = m[row][ncols + nk].clone();
        }
    }
    Ok(prev
        .kernel_basis
        .iter()
        .zip(&lambda)
        .fold(base.clone(), |acc, (b, l)| &acc + &b.scale(l)))
}

/// Repeated lifting from `f0`. Each step continues with the particular solution; when the
/// next step is infeasible, the previous lift is first corrected within its kernel.
pub fn lift_chain(n: usize, f0: &P, steps: usize) -> Result<Vec<LiftSolution>> {
    let mut out: Vec<LiftSolution> = Vec::with_capacity(steps);
    let mut prev = f0.clone();
    for _ in 0..steps {
        let step = match (lift_step(n, &prev), out.last_mut()) {
            (Err(Error::Infeasible), Some(last)) => {
                last.particular = adjust_for_next_step(n, last)?;
                prev = last.particular.clone();
                lift_step(n, &prev)?
            }
            (r, _) => r?,
        };
        prev = step.particular.clone();
        out.push(step);
    }
    Ok(out)
}
