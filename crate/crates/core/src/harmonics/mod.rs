//! q-harmonic spaces degree by degree: kernel bases, Hilbert series, characters and
//! Frobenius characteristics, special harmonic families, and the singular-value scan.

mod scan;
mod solve;
mod special;
mod system;

use std::collections::BTreeMap;

use num_bigint::BigInt;
use num_traits::ToPrimitive;
use rayon::prelude::*;

pub use crate::diffops::QSpec;
use crate::error::{Error, Result};
use crate::monomial::Monomial;
use crate::perm::Perm;
use crate::poly::Polynomial;
use crate::qpoly::{QPoly, QRatFunc};
use crate::repr::{class_size, cocharge, mn_character, partitions, standard_tableaux, Partition};
use crate::ring::{factorial, Rational, Ring};
pub use scan::{singular_scan, ScanEntry, ScanOptions};
pub(crate) use solve::solve_rational;
pub use special::{
    pij, pij_module_check, special_harmonic_delta_ek, special_harmonic_e1m, PijReport,
    SpecialCertificate,
};
pub(crate) use system::DegreeSystem;

/// Seed for the evaluation points used when interpolating in `q`; results do not depend on it.
pub const DEFAULT_SEED: u64 = 0x51ee_d5ee_d000_0001;

/// Dimensions indexed by degree `0..=cutoff`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct GradedSeries {
    pub dims: Vec<u64>,
}

impl GradedSeries {
    pub fn cutoff(&self) -> usize {
        self.dims.len().saturating_sub(1)
    }

    pub fn total(&self) -> u64 {
        self.dims.iter().sum()
    }

    /// Coefficient-wise `self <= other`, treating missing degrees as zero.
    pub fn le(&self, other: &GradedSeries) -> bool {
        self.dims
            .iter()
            .enumerate()
            .all(|(d, &x)| x <= other.dims.get(d).copied().unwrap_or(0))
    }
}

/// Exact basis of the q-harmonics of one degree. Basis vector `i` is 1 at column
/// `free_columns[i]` and 0 at the other free columns; columns are the degree-`d`
/// monomials in decreasing graded-lexicographic order.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct KernelBasis<R: Ring> {
    pub n: usize,
    pub q: QSpec,
    pub degree: usize,
    pub columns: Vec<Monomial>,
    pub free_columns: Vec<usize>,
    pub coordinates: Vec<Vec<R>>,
}

impl<R: Ring> KernelBasis<R> {
    pub fn dim(&self) -> usize {
        self.coordinates.len()
    }

    pub fn basis(&self) -> Vec<Polynomial<R>> {
        self.coordinates
            .iter()
            .map(|v| self.polynomial(v))
            .collect()
    }

    fn polynomial(&self, v: &[R]) -> Polynomial<R> {
        Polynomial::from_terms(self.n, self.columns.iter().cloned().zip(v.iter().cloned()))
    }

    fn coords(&self, f: &Polynomial<R>) -> Option<Vec<R>> {
        let mut v = vec![R::zero(); self.columns.len()];
        for (m, c) in f.terms() {
            let i = self.columns.binary_search_by(|x| m.cmp(x)).ok()?;
            v[i] = c.clone();
        }
        Some(v)
    }

    /// Coefficients of `f` in the basis, or `None` if `f` is not in the span.
    pub fn express(&self, f: &Polynomial<R>) -> Option<Vec<R>> {
        if f.n_vars() != self.n {
            return None;
        }
        let mut v = self.coords(f)?;
        let weights: Vec<R> = self.free_columns.iter().map(|&c| v[c].clone()).collect();
        for (w, b) in weights.iter().zip(&self.coordinates) {
            if w.is_zero() {
                continue;
            }
            for (x, y) in v.iter_mut().zip(b) {
                if !y.is_zero() {
                    *x = x.sub(&w.mul(y));
                }
            }
        }
        v.iter().all(Ring::is_zero).then_some(weights)
    }

    pub fn contains(&self, f: &Polynomial<R>) -> bool {
        self.express(f).is_some()
    }

    /// Trace of `σ` on the space; `Inconsistent` if the space is not `σ`-stable.
    pub fn trace(&self, sigma: &Perm) -> Result<R> {
        let mut tr = R::zero();
        for (i, b) in self.basis().iter().enumerate() {
            let image = b.permute(sigma);
            let w = self.express(&image).ok_or(Error::Inconsistent)?;
            tr = tr.add(&w[i]);
        }
        Ok(tr)
    }
}

/// A kernel over the rationals (numeric `q`) or over `Q(q)`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum AnyKernel {
    Rational(KernelBasis<Rational>),
    Generic(KernelBasis<QRatFunc>),
}

impl AnyKernel {
    pub fn dim(&self) -> usize {
        match self {
            AnyKernel::Rational(k) => k.dim(),
            AnyKernel::Generic(k) => k.dim(),
        }
    }

    pub fn degree(&self) -> usize {
        match self {
            AnyKernel::Rational(k) => k.degree,
            AnyKernel::Generic(k) => k.degree,
        }
    }

    /// Basis polynomials in text form.
    pub fn basis_text(&self) -> Vec<String> {
        match self {
            AnyKernel::Rational(k) => k.basis().iter().map(ToString::to_string).collect(),
            AnyKernel::Generic(k) => k.basis().iter().map(ToString::to_string).collect(),
        }
    }

    /// The trace of `σ`, which is a rational number in both cases.
    pub fn trace(&self, sigma: &Perm) -> Result<Rational> {
        match self {
            AnyKernel::Rational(k) => k.trace(sigma),
            AnyKernel::Generic(k) => k.trace(sigma)?.as_rational().ok_or(Error::Inconsistent),
        }
    }
}

/// Operators needed to cut out the q-harmonics: `D_{1;q}` and `D_{2;q}` generate the
/// rest through their commutators unless `q = 0`, where every `∇_k` with `k <= n` is needed.
pub fn operator_count(n: usize, q: &QSpec) -> usize {
    match q {
        QSpec::Value(q0) if Ring::is_zero(q0) => n.max(1),
        _ => 2,
    }
}

fn check_n(n: usize) -> Result<()> {
    if n == 0 {
        return Err(Error::invalid("the number of variables must be positive"));
    }
    Ok(())
}

/// The q-harmonics of degree `d` at a rational value `q0`.
pub fn kernel_basis_at(n: usize, q0: &Rational, d: usize) -> Result<KernelBasis<Rational>> {
    check_n(n)?;
    let sys = DegreeSystem::new(n, d, operator_count(n, &QSpec::Value(q0.clone())));
    let sol = solve_rational(&sys, q0, None)?;
    Ok(KernelBasis {
        n,
        q: QSpec::Value(q0.clone()),
        degree: d,
        columns: sys.columns,
        free_columns: sol.free,
        coordinates: sol.kernel,
    })
}

/// The q-harmonics of degree `d` over `Q(q)`.
pub fn kernel_basis_generic(n: usize, d: usize) -> Result<KernelBasis<QRatFunc>> {
    check_n(n)?;
    let sys = DegreeSystem::new(n, d, 2);
    let sol = solve::solve_generic(&sys, DEFAULT_SEED)?;
    let coordinates = sol
        .numer
        .iter()
        .zip(&sol.den)
        .map(|(row, den)| {
            row.iter()
                .map(|x| QRatFunc::new(x.clone(), den.clone()).expect("nonzero denominator"))
                .collect()
        })
        .collect();
    Ok(KernelBasis {
        n,
        q: QSpec::Generic,
        degree: d,
        columns: sys.columns,
        free_columns: sol.free,
        coordinates,
    })
}

/// The stacked matrix `[D_{1;q}; D_{2;q}]` on degree `d` over `Q[q]`, columns in
/// decreasing graded-lexicographic order.
pub fn operator_matrix_generic(n: usize, d: usize) -> Result<Vec<Vec<QPoly>>> {
    check_n(n)?;
    Ok(DegreeSystem::new(n, d, 2)
        .dense()
        .into_iter()
        .map(|row| {
            row.into_iter()
                .map(|(a, b)| {
                    QPoly::linear(
                        Rational::from_integer(a.into()),
                        Rational::from_integer(b.into()),
                    )
                })
                .collect()
        })
        .collect())
}

/// Dimension of the generic q-harmonics of degree `d` by fraction-free elimination over `Q[q]`.
/// Independent of the modular route; practical only for small systems.
pub fn generic_dim_fraction_free(n: usize, d: usize) -> Result<usize> {
    let m = operator_matrix_generic(n, d)?;
    let cols = crate::monomial::monomial_basis(n, d).len();
    Ok(cols - crate::linalg::exact::rank_fraction_free(&m))
}

pub fn kernel_basis(n: usize, q: &QSpec, d: usize) -> Result<AnyKernel> {
    match q {
        QSpec::Generic => kernel_basis_generic(n, d).map(AnyKernel::Generic),
        QSpec::Value(q0) => kernel_basis_at(n, q0, d).map(AnyKernel::Rational),
    }
}

/// Kernels for every degree `0..=max_degree`, computed in parallel.
pub fn kernels(n: usize, q: &QSpec, max_degree: usize) -> Result<Vec<AnyKernel>> {
    check_n(n)?;
    (0..=max_degree)
        .into_par_iter()
        .map(|d| kernel_basis(n, q, d))
        .collect()
}

pub fn hilbert_series(n: usize, q: &QSpec, max_degree: usize) -> Result<GradedSeries> {
    let ks = kernels(n, q, max_degree)?;
    Ok(GradedSeries {
        dims: ks.iter().map(|k| k.dim() as u64).collect(),
    })
}

/// Coefficients of `Π_{k=1}^{n} (1 + t + … + t^{k-1})`.
pub fn t_factorial(n: usize) -> GradedSeries {
    let mut dims = vec![1u64];
    for k in 1..=n {
        let mut next = vec![0; dims.len() + k - 1];
        for (i, &c) in dims.iter().enumerate() {
            for x in &mut next[i..i + k] {
                *x += c;
            }
        }
        dims = next;
    }
    GradedSeries { dims }
}

/// Trace of a permutation of cycle type `mu` on the degree-`d` q-harmonics.
pub fn character_trace(n: usize, q: &QSpec, d: usize, mu: &Partition) -> Result<Rational> {
    if mu.size() != n {
        return Err(Error::invalid(format!(
            "cycle type {mu} is not a partition of {n}"
        )));
    }
    kernel_basis(n, q, d)?.trace(&Perm::of_cycle_type(mu.parts()))
}

/// Graded multiplicities of the irreducible characters.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SchurExpansion {
    pub n: usize,
    /// Per degree: partition to positive multiplicity.
    pub degrees: Vec<BTreeMap<Partition, u64>>,
}

impl SchurExpansion {
    pub fn multiplicity(&self, d: usize, lambda: &Partition) -> u64 {
        self.degrees
            .get(d)
            .and_then(|m| m.get(lambda))
            .copied()
            .unwrap_or(0)
    }
}

/// Decomposes a class function given by its values on every cycle type.
pub fn decompose(
    n: usize,
    traces: &BTreeMap<Partition, Rational>,
) -> Result<BTreeMap<Partition, u64>> {
    let nf = Rational::from_integer(factorial(n as u64));
    let mut out = BTreeMap::new();
    for lambda in partitions(n) {
        let mut s = Rational::from_integer(BigInt::from(0));
        for (mu, tr) in traces {
            let w = class_size(mu) * BigInt::from(mn_character(&lambda, mu));
            s += tr * Rational::from_integer(w);
        }
        let m = s / &nf;
        let ok = m.is_integer() && m.numer().to_i64().is_some_and(|x| x >= 0);
        if !ok {
            return Err(Error::NonIntegralMultiplicity {
                partition: lambda.to_string(),
                value: m.to_string(),
            });
        }
        let m = m.numer().to_u64().unwrap();
        if m > 0 {
            out.insert(lambda, m);
        }
    }
    Ok(out)
}

/// Frobenius characteristic of the kernels of degrees `0..=max_degree`.
pub fn frobenius(n: usize, q: &QSpec, max_degree: usize) -> Result<SchurExpansion> {
    let ks = kernels(n, q, max_degree)?;
    frobenius_of(n, &ks)
}

pub fn frobenius_of(n: usize, kernels: &[AnyKernel]) -> Result<SchurExpansion> {
    let types = partitions(n);
    let degrees = kernels
        .par_iter()
        .map(|k| {
            let traces = types
                .iter()
                .map(|mu| Ok((mu.clone(), k.trace(&Perm::of_cycle_type(mu.parts()))?)))
                .collect::<Result<BTreeMap<_, _>>>()?;
            decompose(n, &traces)
        })
        .collect::<Result<Vec<_>>>()?;
    Ok(SchurExpansion { n, degrees })
}

/// `Σ_λ s_λ Σ_{T ∈ ST(λ)} t^{co(T)}`.
pub fn cocharge_frobenius(n: usize) -> SchurExpansion {
    let top = n * n.saturating_sub(1) / 2;
    let mut degrees = vec![BTreeMap::new(); top + 1];
    for lambda in partitions(n) {
        for t in standard_tableaux(&lambda) {
            *degrees[cocharge(&t)].entry(lambda.clone()).or_insert(0) += 1;
        }
    }
    SchurExpansion { n, degrees }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::ring::{int, rat};

    #[test]
    fn spec_examples() {
        let k = kernel_basis_generic(2, 1).unwrap();
        assert_eq!(k.dim(), 1);
        assert_eq!(k.basis()[0].to_string(), "-x1 + x2");
        let x = Polynomial::<QRatFunc>::var(2, 0)
            .try_sub(&Polynomial::var(2, 1))
            .unwrap();
        assert!(k.contains(&x));
        for n in 1..4 {
            assert_eq!(
                kernel_basis(n, &QSpec::Value(rat(3, 7)), 0).unwrap().dim(),
                1
            );
        }
        assert_eq!(
            hilbert_series(2, &QSpec::Generic, 3).unwrap().dims,
            vec![1, 1, 0, 0]
        );
        assert_eq!(
            hilbert_series(3, &QSpec::Generic, 4).unwrap().dims,
            vec![1, 2, 2, 1, 0]
        );
        assert_eq!(
            hilbert_series(3, &QSpec::Value(int(0)), 3).unwrap().dims,
            vec![1, 2, 2, 1]
        );
    }

    #[test]
    fn fraction_free_agrees() {
        for (n, top) in [(2, 3), (3, 5), (4, 4)] {
            for d in 0..=top {
                assert_eq!(
                    generic_dim_fraction_free(n, d).unwrap(),
                    kernel_basis_generic(n, d).unwrap().dim(),
                    "n={n} d={d}"
                );
            }
        }
    }

    #[test]
    fn t_factorials() {
        assert_eq!(t_factorial(2).dims, vec![1, 1]);
        assert_eq!(t_factorial(3).dims, vec![1, 2, 2, 1]);
        assert_eq!(t_factorial(4).dims, vec![1, 3, 5, 6, 5, 3, 1]);
    }

    #[test]
    fn traces() {
        let p = |v: &[usize]| Partition::new(v.to_vec());
        assert_eq!(
            character_trace(2, &QSpec::Generic, 1, &p(&[2])).unwrap(),
            int(-1)
        );
        assert_eq!(
            character_trace(3, &QSpec::Value(int(0)), 3, &p(&[1, 1, 1])).unwrap(),
            int(1)
        );
        let f = frobenius(3, &QSpec::Value(int(0)), 3).unwrap();
        assert_eq!(
            f.degrees[0].iter().collect::<Vec<_>>(),
            vec![(&p(&[3]), &1)]
        );
        assert_eq!(
            f.degrees[3].iter().collect::<Vec<_>>(),
            vec![(&p(&[1, 1, 1]), &1)]
        );
        assert_eq!(f, cocharge_frobenius(3));
        let g = frobenius(2, &QSpec::Generic, 1).unwrap();
        assert_eq!(g.multiplicity(0, &p(&[2])), 1);
        assert_eq!(g.multiplicity(1, &p(&[1, 1])), 1);
    }
}
