//! Exact solutions assembled from modular ones: Chinese remaindering with rational
//! reconstruction for rational `q`, plus rational-function interpolation in `q` for
//! the generic case. Every result is checked by exact operator application, and the
//! dimension is certified by the fact that specialisation can only enlarge a kernel.

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;
use rustc_hash::FxHashMap;

use crate::diffops::dq;
use crate::error::{Error, Result};
use crate::harmonics::system::{DegreeSystem, PointSolution};
use crate::linalg::modp::{pade, poly_divrem, poly_eval, poly_lcm, poly_mul, primes, Fp, PolyP};
use crate::linalg::recon::Crt;
use crate::poly::Polynomial;
use crate::qpoly::QPoly;
use crate::ring::{QRing, Rational, Ring};
use crate::symfun::VarSubset;

const MAX_PRIMES: usize = 512;

fn to_poly<R: Ring>(n: usize, monomials: &[crate::monomial::Monomial], v: &[R]) -> Polynomial<R> {
    Polynomial::from_terms(n, monomials.iter().cloned().zip(v.iter().cloned()))
}

/// Picks the modular results that agree with the smallest kernel: minimal dimension,
/// then the most common set of free columns.
fn lucky<T>(items: &[T], dim: impl Fn(&T) -> usize, free: impl Fn(&T) -> &Vec<usize>) -> Vec<&T> {
    let Some(min) = items.iter().map(&dim).min() else {
        return Vec::new();
    };
    let mut counts: FxHashMap<&Vec<usize>, usize> = FxHashMap::default();
    for it in items.iter().filter(|it| dim(it) == min) {
        *counts.entry(free(it)).or_default() += 1;
    }
    let best = counts
        .into_iter()
        .max_by(|a, b| a.1.cmp(&b.1).then_with(|| b.0.cmp(a.0)))
        .map(|(k, _)| k.clone())
        .unwrap();
    items
        .iter()
        .filter(|it| dim(it) == min && *free(it) == best)
        .collect()
}

/// Exact solution over the rationals.
#[derive(Clone, Debug)]
pub(crate) struct RationalSolution {
    pub free: Vec<usize>,
    pub kernel: Vec<Vec<Rational>>,
    /// For an inhomogeneous system: the solution vanishing on the free columns, or
    /// `None` when the system is certified inconsistent.
    pub particular: Option<Option<Vec<Rational>>>,
}

pub(crate) fn solve_rational(
    sys: &DegreeSystem,
    q0: &Rational,
    rhs: Option<&[Vec<Rational>]>,
) -> Result<RationalSolution> {
    let all = VarSubset::all(sys.n);
    let ks = 1..=sys.k_max() as u32;
    let kernel_ok = |v: &[Rational]| {
        let p = to_poly(sys.n, &sys.columns, v);
        ks.clone().all(|k| dq(&p, k, q0, &all).is_zero())
    };
    let particular_ok = |v: &[Rational], b: &[Vec<Rational>]| {
        let p = to_poly(sys.n, &sys.columns, v);
        ks.clone()
            .zip(b.iter().zip(&sys.rows))
            .all(|(k, (bk, rows))| dq(&p, k, q0, &all) == to_poly(sys.n, rows, bk))
    };
    let len = sys.len();
    let mut results: Vec<(Fp, PointSolution)> = Vec::new();
    let mut next = 0;
    let mut target = 2;
    loop {
        if next >= MAX_PRIMES {
            return Err(Error::invalid("modular reconstruction did not converge"));
        }
        let batch: Vec<u64> = primes()[next..target.min(MAX_PRIMES)].to_vec();
        next = target.min(MAX_PRIMES);
        let fresh: Vec<(Fp, PointSolution)> = batch
            .into_par_iter()
            .filter_map(|p| {
                let f = Fp::new(p);
                let t = f.from_rational(q0)?;
                let reduced = match rhs {
                    Some(b) => Some(
                        b.iter()
                            .map(|bk| {
                                bk.iter()
                                    .map(|x| f.from_rational(x))
                                    .collect::<Option<Vec<u64>>>()
                            })
                            .collect::<Option<Vec<Vec<u64>>>>()?,
                    ),
                    None => None,
                };
                let sol = sys.solve_at(&f, t, reduced.as_deref());
                Some((f, sol))
            })
            .collect();
        results.extend(fresh);
        target *= 2;

        let good = lucky(&results, |r| r.1.kernel.len(), |r| &r.1.free);
        if good.is_empty() {
            continue;
        }
        let dim = good[0].1.kernel.len();
        let mut crt = Crt::new(dim * len);
        for (f, sol) in &good {
            let flat: Vec<u64> = sol.kernel.iter().flatten().copied().collect();
            crt.push(f, &flat);
        }
        let Some(flat) = crt.reconstruct() else {
            continue;
        };
        let kernel: Vec<Vec<Rational>> = flat
            .chunks(len.max(1))
            .take(dim)
            .map(<[Rational]>::to_vec)
            .collect();
        if !kernel.par_iter().all(|v| kernel_ok(v)) {
            continue;
        }
        let free = good[0].1.free.clone();
        let Some(rhs) = rhs else {
            return Ok(RationalSolution {
                free,
                kernel,
                particular: None,
            });
        };
        if good.iter().any(|(_, s)| s.particular == Some(None)) {
            return Ok(RationalSolution {
                free,
                kernel,
                particular: Some(None),
            });
        }
        let mut crt = Crt::new(len);
        for (f, sol) in &good {
            crt.push(f, sol.particular.as_ref().unwrap().as_ref().unwrap());
        }
        if let Some(x) = crt.reconstruct() {
            if particular_ok(&x, rhs) {
                return Ok(RationalSolution {
                    free,
                    kernel,
                    particular: Some(Some(x)),
                });
            }
        }
    }
}

/// Exact kernel over Q(q): vector `f` is `numer[f] / den[f]`, with `numer[f][free[f]] = den[f]`.
#[derive(Clone, Debug)]
pub(crate) struct GenericSolution {
    pub free: Vec<usize>,
    pub den: Vec<QPoly>,
    pub numer: Vec<Vec<QPoly>>,
}

struct ModpGeneric {
    f: Fp,
    free: Vec<usize>,
    den: Vec<PolyP>,
    numer: Vec<Vec<PolyP>>,
}

impl ModpGeneric {
    fn shape(&self) -> Vec<usize> {
        self.den
            .iter()
            .chain(self.numer.iter().flatten())
            .map(Vec::len)
            .collect()
    }
}

const VALIDATION_POINTS: usize = 4;
const MAX_POINTS: usize = 4096;

/// Interpolates the canonical kernel as rational functions of `q` modulo one prime.
fn generic_mod_p(sys: &DegreeSystem, f: Fp, seed: u64) -> Option<ModpGeneric> {
    let p = f.modulus();
    let mut rng = ChaCha8Rng::seed_from_u64(seed ^ p);
    let mut used = rustc_hash::FxHashSet::default();
    let mut points: Vec<(u64, PointSolution)> = Vec::new();
    let mut k = 16;
    loop {
        let need = k + VALIDATION_POINTS;
        let good = loop {
            let good: Vec<&(u64, PointSolution)> =
                lucky(&points, |x| x.1.kernel.len(), |x| &x.1.free);
            if good.len() >= need {
                break good;
            }
            if points.len() >= MAX_POINTS {
                return None;
            }
            let mut ts = Vec::new();
            while ts.len() < need - good.len() + 2 {
                let t = rng.gen_range(1..p);
                if used.insert(t) {
                    ts.push(t);
                }
            }
            let fresh: Vec<(u64, PointSolution)> = ts
                .into_par_iter()
                .map(|t| (t, sys.solve_at(&f, t, None)))
                .collect();
            points.extend(fresh);
        };
        let (fit, check) = good.split_at(k);
        let xs: Vec<u64> = fit.iter().map(|x| x.0).collect();
        let free = fit[0].1.free.clone();
        let len = sys.len();
        let fitted: Option<Vec<(PolyP, Vec<PolyP>)>> = (0..free.len())
            .into_par_iter()
            .map(|b| {
                let mut entries: Vec<(PolyP, PolyP)> = Vec::with_capacity(len);
                for j in 0..len {
                    let ys: Vec<u64> = fit.iter().map(|x| x.1.kernel[b][j]).collect();
                    let (num, den) = pade(&f, &xs, &ys)?;
                    for (t, sol) in check {
                        let d = poly_eval(&f, &den, *t);
                        if d == 0 || f.mul(sol.kernel[b][j], d) != poly_eval(&f, &num, *t) {
                            return None;
                        }
                    }
                    entries.push((num, den));
                }
                let l = entries
                    .iter()
                    .fold(vec![1], |acc, (_, d)| poly_lcm(&f, &acc, d));
                let numer = entries
                    .iter()
                    .map(|(num, den)| poly_mul(&f, num, &poly_divrem(&f, &l, den).0))
                    .collect();
                Some((l, numer))
            })
            .collect();
        match fitted {
            Some(v) => {
                let (den, numer) = v.into_iter().unzip();
                return Some(ModpGeneric {
                    f,
                    free,
                    den,
                    numer,
                });
            }
            None => {
                k *= 2;
                if k + VALIDATION_POINTS > MAX_POINTS {
                    return None;
                }
            }
        }
    }
}

pub(crate) fn solve_generic(sys: &DegreeSystem, seed: u64) -> Result<GenericSolution> {
    let all = VarSubset::all(sys.n);
    let q = QPoly::gen();
    let mut results: Vec<ModpGeneric> = Vec::new();
    let mut next = 0;
    let mut target = 1;
    loop {
        if next >= MAX_PRIMES {
            return Err(Error::invalid(
                "rational function reconstruction did not converge",
            ));
        }
        for &p in &primes()[next..target.min(MAX_PRIMES)] {
            if let Some(r) = generic_mod_p(sys, Fp::new(p), seed) {
                results.push(r);
            }
        }
        next = target.min(MAX_PRIMES);
        target *= 2;

        let good = lucky(&results, |r| r.free.len(), |r| &r.free);
        if good.is_empty() {
            continue;
        }
        let mut shapes: FxHashMap<Vec<usize>, usize> = FxHashMap::default();
        for r in &good {
            *shapes.entry(r.shape()).or_default() += 1;
        }
        let shape = shapes
            .into_iter()
            .max_by(|a, b| a.1.cmp(&b.1).then_with(|| b.0.cmp(&a.0)))
            .unwrap()
            .0;
        let good: Vec<&&ModpGeneric> = good.iter().filter(|r| r.shape() == shape).collect();
        let total: usize = shape.iter().sum();
        let mut crt = Crt::new(total);
        for r in &good {
            let flat: Vec<u64> = r
                .den
                .iter()
                .chain(r.numer.iter().flatten())
                .flat_map(|c| c.iter().copied())
                .collect();
            crt.push(&r.f, &flat);
        }
        let Some(flat) = crt.reconstruct() else {
            continue;
        };
        let mut polys = Vec::with_capacity(shape.len());
        let mut at = 0;
        for &l in &shape {
            polys.push(QPoly::new(flat[at..at + l].to_vec()));
            at += l;
        }
        let dim = good[0].free.len();
        let len = sys.len();
        let den: Vec<QPoly> = polys[..dim].to_vec();
        let numer: Vec<Vec<QPoly>> = polys[dim..]
            .chunks(len.max(1))
            .take(dim)
            .map(<[QPoly]>::to_vec)
            .collect();
        let free = good[0].free.clone();
        let verified = (0..dim).into_par_iter().all(|b| {
            let structural = den[b].leading().is_some_and(|c| c.is_one())
                && free.iter().enumerate().all(|(c, &fc)| {
                    if c == b {
                        numer[b][fc] == den[b]
                    } else {
                        numer[b][fc].is_zero()
                    }
                });
            let p = to_poly(sys.n, &sys.columns, &numer[b]);
            structural && (1..=sys.k_max() as u32).all(|k| dq(&p, k, &q, &all).is_zero())
        });
        if verified {
            return Ok(GenericSolution { free, den, numer });
        }
    }
}
