//! Partitions, standard Young tableaux, cocharge, and symmetric-group characters.

use std::fmt;

use num_bigint::BigInt;
use num_traits::One;

use crate::ring::{binom, factorial};
pub use crate::symfun::Partition;

/// All partitions of `d` in reverse lexicographic order: `(d)` first, `(1^d)` last.
pub fn partitions(d: usize) -> Vec<Partition> {
    fn go(rem: usize, max: usize, cur: &mut Vec<usize>, out: &mut Vec<Partition>) {
        if rem == 0 {
            out.push(Partition::new(cur.clone()));
            return;
        }
        for part in (1..=rem.min(max)).rev() {
            cur.push(part);
            go(rem - part, part, cur, out);
            cur.pop();
        }
    }
    let mut out = Vec::new();
    go(d, d, &mut Vec::new(), &mut out);
    out
}

/// A standard Young tableau in English notation.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct StandardTableau {
    shape: Partition,
    rows: Vec<Vec<usize>>,
}

impl StandardTableau {
    pub fn shape(&self) -> &Partition {
        &self.shape
    }

    pub fn rows(&self) -> &[Vec<usize>] {
        &self.rows
    }

    pub fn size(&self) -> usize {
        self.shape.size()
    }

    /// Rows read from bottom to top, each left to right.
    pub fn reading_word(&self) -> Vec<usize> {
        self.rows.iter().rev().flatten().copied().collect()
    }
}

impl fmt::Debug for StandardTableau {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{:?}", self.rows)
    }
}

/// Every standard tableau of shape `lambda`, filling `1..=n` in order.
pub fn standard_tableaux(lambda: &Partition) -> Vec<StandardTableau> {
    fn go(
        shape: &[usize],
        next: usize,
        n: usize,
        rows: &mut Vec<Vec<usize>>,
        out: &mut Vec<Vec<Vec<usize>>>,
    ) {
        if next > n {
            out.push(rows.clone());
            return;
        }
        for i in 0..shape.len() {
            let len = rows[i].len();
            if len < shape[i] && (i == 0 || rows[i - 1].len() > len) {
                rows[i].push(next);
                go(shape, next + 1, n, rows, out);
                rows[i].pop();
            }
        }
    }
    let shape = lambda.parts();
    let mut out = Vec::new();
    go(
        shape,
        1,
        lambda.size(),
        &mut vec![Vec::new(); shape.len()],
        &mut out,
    );
    out.into_iter()
        .map(|rows| StandardTableau {
            shape: lambda.clone(),
            rows,
        })
        .collect()
}

/// Charge of a standard word: the letter `k+1` gets the index of `k`, plus one when it
/// appears to the right of `k`; the charge is the sum of the indices.
pub fn charge(word: &[usize]) -> usize {
    let n = word.len();
    let mut pos = vec![0; n + 1];
    for (i, &w) in word.iter().enumerate() {
        pos[w] = i;
    }
    let mut index = 0;
    let mut total = 0;
    for k in 2..=n {
        if pos[k] > pos[k - 1] {
            index += 1;
        }
        total += index;
    }
    total
}

/// `C(n,2)` minus the charge of the reading word.
pub fn cocharge(t: &StandardTableau) -> usize {
    let n = t.size() as i64;
    binom(n, 2) as usize - charge(&t.reading_word())
}

/// `χ^λ(μ)` by the Murnaghan–Nakayama rule on beta-numbers.
pub fn mn_character(lambda: &Partition, mu: &Partition) -> i64 {
    assert_eq!(lambda.size(), mu.size(), "partitions of different sizes");
    let l = lambda.len();
    let beta: Vec<usize> = lambda
        .parts()
        .iter()
        .enumerate()
        .map(|(i, &p)| p + l - 1 - i)
        .collect();
    mn_beta(beta, mu.parts())
}

fn mn_beta(beta: Vec<usize>, mu: &[usize]) -> i64 {
    let Some((&r, rest)) = mu.split_first() else {
        return 1;
    };
    let mut total = 0;
    for (i, &b) in beta.iter().enumerate() {
        if b < r || beta.contains(&(b - r)) {
            continue;
        }
        let target = b - r;
        let crossed = beta.iter().filter(|&&x| x > target && x < b).count();
        let mut next = beta.clone();
        next[i] = target;
        let sign = if crossed % 2 == 0 { 1 } else { -1 };
        total += sign * mn_beta(next, rest);
    }
    total
}

/// `z_μ = Π i^{m_i} m_i!`.
pub fn z_mu(mu: &Partition) -> BigInt {
    let mut out = BigInt::one();
    let parts = mu.parts();
    let mut i = 0;
    while i < parts.len() {
        let j = parts[i..].iter().take_while(|&&x| x == parts[i]).count();
        out *= BigInt::from(parts[i]).pow(j as u32) * factorial(j as u64);
        i += j;
    }
    out
}

/// Size `n!/z_μ` of the conjugacy class of cycle type `μ`.
pub fn class_size(mu: &Partition) -> BigInt {
    factorial(mu.size() as u64) / z_mu(mu)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn p(parts: &[usize]) -> Partition {
        Partition::new(parts.to_vec())
    }

    #[test]
    fn partition_counts() {
        assert_eq!(partitions(0), vec![p(&[])]);
        assert_eq!(partitions(4).len(), 5);
        assert_eq!(partitions(6).len(), 11);
        assert_eq!(partitions(3), vec![p(&[3]), p(&[2, 1]), p(&[1, 1, 1])]);
    }

    #[test]
    fn tableau_counts() {
        assert_eq!(standard_tableaux(&p(&[4])).len(), 1);
        assert_eq!(standard_tableaux(&p(&[2, 1])).len(), 2);
        assert_eq!(standard_tableaux(&p(&[2, 2])).len(), 2);
        for n in 1..=8u64 {
            let total: usize = partitions(n as usize)
                .iter()
                .map(|l| standard_tableaux(l).len().pow(2))
                .sum();
            assert_eq!(BigInt::from(total), factorial(n));
        }
    }

    #[test]
    fn characters() {
        assert_eq!(mn_character(&p(&[2, 1]), &p(&[3])), -1);
        assert_eq!(mn_character(&p(&[2, 1]), &p(&[1, 1, 1])), 2);
        for mu in partitions(4) {
            assert_eq!(mn_character(&p(&[4]), &mu), 1);
            let sign = if (4 - mu.len()) % 2 == 0 { 1 } else { -1 };
            assert_eq!(mn_character(&p(&[1, 1, 1, 1]), &mu), sign);
        }
    }

    #[test]
    fn column_orthogonality() {
        for n in 1..=6usize {
            let parts = partitions(n);
            let nf = factorial(n as u64);
            for a in &parts {
                for b in &parts {
                    let s: BigInt = parts
                        .iter()
                        .map(|mu| class_size(mu) * mn_character(a, mu) * mn_character(b, mu))
                        .sum();
                    let expect = if a == b { nf.clone() } else { BigInt::from(0) };
                    assert_eq!(s, expect);
                }
            }
        }
    }

    #[test]
    fn cocharge_grading_is_t_factorial() {
        assert_eq!(cocharge(&standard_tableaux(&p(&[1]))[0]), 0);
        for n in 1..=6usize {
            let top = binom(n as i64, 2) as usize;
            let mut series = vec![0usize; top + 1];
            for l in partitions(n) {
                let ts = standard_tableaux(&l);
                for t in &ts {
                    series[cocharge(t)] += ts.len();
                }
            }
            let mut expect = vec![1usize];
            for k in 1..=n {
                let mut next = vec![0; expect.len() + k - 1];
                for (i, &c) in expect.iter().enumerate() {
                    for j in 0..k {
                        next[i + j] += c;
                    }
                }
                expect = next;
            }
            assert_eq!(series, expect, "n={n}");
        }
        let n3: Vec<usize> = standard_tableaux(&p(&[2, 1]))
            .iter()
            .map(cocharge)
            .collect();
        assert_eq!(n3, vec![1, 2]);
    }
}
