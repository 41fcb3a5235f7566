//! Permutations of variable indices.

use std::fmt;

use crate::error::{Error, Result};

/// A bijection of `{0, …, n-1}`; acts on polynomials by `x_i -> x_{σ(i)}`.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct Perm {
    images: Vec<usize>,
}

impl Perm {
    pub fn new(images: Vec<usize>) -> Result<Self> {
        let n = images.len();
        let mut seen = vec![false; n];
        for &i in &images {
            if i >= n || seen[i] {
                return Err(Error::invalid(format!("not a permutation: {images:?}")));
            }
            seen[i] = true;
        }
        Ok(Perm { images })
    }

    pub fn identity(n: usize) -> Self {
        Perm {
            images: (0..n).collect(),
        }
    }

    pub fn transposition(n: usize, i: usize, j: usize) -> Self {
        let mut p = Perm::identity(n);
        p.images.swap(i, j);
        p
    }

    /// Permutation from 1-based one-line notation.
    pub fn from_one_line(images: &[usize]) -> Result<Self> {
        if images.contains(&0) {
            return Err(Error::invalid("one-line notation is 1-based"));
        }
        Perm::new(images.iter().map(|i| i - 1).collect())
    }

    /// A permutation whose cycle lengths are the given parts, in consecutive blocks.
    pub fn of_cycle_type(parts: &[usize]) -> Self {
        let n = parts.iter().sum();
        let mut images: Vec<usize> = (0..n).collect();
        let mut start = 0;
        for &len in parts {
            for i in 0..len {
                images[start + i] = start + (i + 1) % len;
            }
            start += len;
        }
        Perm { images }
    }

    pub fn len(&self) -> usize {
        self.images.len()
    }

    pub fn is_empty(&self) -> bool {
        self.images.is_empty()
    }

    pub fn image(&self, i: usize) -> usize {
        self.images[i]
    }

    pub fn images(&self) -> &[usize] {
        &self.images
    }

    pub fn inverse(&self) -> Perm {
        let mut inv = vec![0; self.images.len()];
        for (i, &s) in self.images.iter().enumerate() {
            inv[s] = i;
        }
        Perm { images: inv }
    }

    /// Acting by `self` first and then by `next`: `(self.then(next))(i) = next(self(i))`.
    pub fn then(&self, next: &Perm) -> Perm {
        Perm {
            images: self.images.iter().map(|&i| next.images[i]).collect(),
        }
    }

    /// Cycle lengths sorted in decreasing order.
    pub fn cycle_type(&self) -> Vec<usize> {
        let mut seen = vec![false; self.images.len()];
        let mut out = Vec::new();
        for start in 0..self.images.len() {
            if seen[start] {
                continue;
            }
            let mut len = 0;
            let mut i = start;
            while !seen[i] {
                seen[i] = true;
                i = self.images[i];
                len += 1;
            }
            out.push(len);
        }
        out.sort_unstable_by(|a, b| b.cmp(a));
        out
    }
}

impl fmt::Debug for Perm {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let one_based: Vec<usize> = self.images.iter().map(|i| i + 1).collect();
        write!(f, "Perm{one_based:?}")
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn composition_and_cycles() {
        let s = Perm::from_one_line(&[2, 3, 1]).unwrap();
        assert_eq!(s.cycle_type(), vec![3]);
        assert_eq!(s.then(&s.inverse()), Perm::identity(3));
        let t = Perm::transposition(3, 0, 1);
        assert_eq!(s.then(&t).image(0), t.image(s.image(0)));
        assert_eq!(Perm::of_cycle_type(&[2, 1, 1]).cycle_type(), vec![2, 1, 1]);
        assert!(Perm::new(vec![0, 0]).is_err());
    }
}
