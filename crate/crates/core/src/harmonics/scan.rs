//! Search for singular values `q0 = -a/b` by comparison with the classical harmonics.

use std::collections::BTreeMap;

use rayon::prelude::*;

use crate::error::{Error, Result};
use crate::harmonics::{frobenius_of, kernels, QSpec};
use crate::ring::{int, rat, Rational};

#[derive(Clone, Copy, Debug, Default, PartialEq, Eq)]
pub struct ScanOptions {
    /// Also compare graded Frobenius characteristics when the dimensions agree.
    pub frobenius: bool,
}

/// One scanned value. A value without a witness is only "not refuted up to the cutoff".
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ScanEntry {
    pub q0: Rational,
    pub a: u64,
    pub b: u64,
    /// First degree where the q0-harmonics differ from the classical ones.
    pub witness_degree: Option<usize>,
    /// Dimension difference at the witness degree (0 for a character-only difference).
    pub excess_dim: i64,
    pub dims: Vec<u64>,
}

impl ScanEntry {
    pub fn is_singular(&self) -> bool {
        self.witness_degree.is_some()
    }

    pub fn status(&self, max_degree: usize) -> String {
        match self.witness_degree {
            Some(_) => "singular".to_string(),
            None => format!("not refuted up to degree {max_degree}"),
        }
    }
}

struct Profile {
    dims: Vec<u64>,
    frobenius: Option<Vec<BTreeMap<crate::repr::Partition, u64>>>,
}

fn profile(n: usize, q: &QSpec, max_degree: usize, opts: ScanOptions) -> Result<Profile> {
    let ks = kernels(n, q, max_degree)?;
    let dims = ks.iter().map(|k| k.dim() as u64).collect();
    let frobenius = if opts.frobenius {
        Some(frobenius_of(n, &ks)?.degrees)
    } else {
        None
    };
    Ok(Profile { dims, frobenius })
}

/// Scans `q0 = -a/b` for `1 <= a <= a_max`, `1 <= b <= b_max`.
pub fn singular_scan(
    n: usize,
    a_max: u64,
    b_max: u64,
    max_degree: usize,
    opts: ScanOptions,
) -> Result<Vec<ScanEntry>> {
    if a_max < 1 || a_max > n as u64 || b_max < 1 {
        return Err(Error::invalid(format!(
            "need 1 <= a_max <= n and b_max >= 1, got a_max={a_max}, b_max={b_max}"
        )));
    }
    let classical = profile(n, &QSpec::Value(int(0)), max_degree, opts)?;
    let pairs: Vec<(u64, u64)> = (1..=a_max)
        .flat_map(|a| (1..=b_max).map(move |b| (a, b)))
        .collect();
    let mut values: Vec<Rational> = pairs
        .iter()
        .map(|&(a, b)| rat(-(a as i64), b as i64))
        .collect();
    values.sort();
    values.dedup();
    let profiles: BTreeMap<Rational, Profile> = values
        .into_par_iter()
        .map(|q0| Ok((q0.clone(), profile(n, &QSpec::Value(q0), max_degree, opts)?)))
        .collect::<Result<_>>()?;
    Ok(pairs
        .into_iter()
        .map(|(a, b)| {
            let q0 = rat(-(a as i64), b as i64);
            let p = &profiles[&q0];
            let dim_witness = (0..=max_degree).find(|&d| p.dims[d] != classical.dims[d]);
            let (witness_degree, excess_dim) = match dim_witness {
                Some(d) => (Some(d), p.dims[d] as i64 - classical.dims[d] as i64),
                None => {
                    let char_witness = match (&p.frobenius, &classical.frobenius) {
                        (Some(x), Some(y)) => (0..=max_degree).find(|&d| x[d] != y[d]),
                        _ => None,
                    };
                    (char_witness, 0)
                }
            };
            ScanEntry {
                q0,
                a,
                b,
                witness_degree,
                excess_dim,
                dims: p.dims.clone(),
            }
        })
        .collect())
}
