//! The stacked operator matrix `[D_{1;q}; D_{2;q}]` on one homogeneous degree and its
//! solution modulo a prime at a single value of `q`.

use rustc_hash::FxHashMap;

use crate::linalg::modp::{canonical_subspace, rref_nullspace, Fp, Matrix};
use crate::monomial::{monomial_basis, Monomial};

/// An entry `a + b q`.
pub(crate) type Pencil = (i64, i64);

/// Sparse columns of the operators `D_{k;q}`, `k = 1..=k_max`, on degree `d` in `n` variables.
pub(crate) struct DegreeSystem {
    pub n: usize,
    pub d: usize,
    pub columns: Vec<Monomial>,
    /// Row monomials (degree `d - k`) of block `k - 1`.
    pub rows: Vec<Vec<Monomial>>,
    /// Per block, per column: `(row, entry)`.
    blocks: Vec<Vec<Vec<(usize, Pencil)>>>,
    /// Columns sorted by increasing exponent of `x1`.
    order: Vec<usize>,
    /// Per column: `(target column, exponent)` moving one unit of `x_i` (`i > 1`) onto `x1`.
    transfers: Vec<Vec<(usize, u16)>>,
    /// Per `D_1` row: the column of `x1` times that row monomial.
    lift_row1: Vec<usize>,
}

/// The coefficient of `x^{a - k e_i}` in `D_{k;q} x^a` where `a_i = e`.
fn entry(e: u16, k: u16) -> Option<Pencil> {
    if e < k {
        return None;
    }
    let falling: i64 = (0..k).map(|j| i64::from(e - j)).product();
    Some((falling, falling * i64::from(e - k)))
}

impl DegreeSystem {
    /// Stacks `D_{1;q}, …, D_{k_max;q}` (`k_max >= 1`).
    pub fn new(n: usize, d: usize, k_max: usize) -> Self {
        let columns = monomial_basis(n, d);
        let index: FxHashMap<Monomial, usize> = columns
            .iter()
            .enumerate()
            .map(|(i, m)| (m.clone(), i))
            .collect();
        let mut rows = Vec::new();
        let mut blocks = Vec::new();
        for k in 1..=k_max as u16 {
            let r = if d >= usize::from(k) {
                monomial_basis(n, d - usize::from(k))
            } else {
                Vec::new()
            };
            let idx: FxHashMap<&Monomial, usize> =
                r.iter().enumerate().map(|(i, m)| (m, i)).collect();
            let block = columns
                .iter()
                .map(|m| {
                    (0..n)
                        .filter_map(|i| {
                            let e = entry(m.exp(i), k)?;
                            let target = m.shift(i, -i32::from(k))?;
                            Some((idx[&target], e))
                        })
                        .collect()
                })
                .collect();
            blocks.push(block);
            rows.push(r);
        }
        let mut order: Vec<usize> = (0..columns.len()).collect();
        order.sort_by_key(|&c| columns[c].exp(0));
        let transfers = columns
            .iter()
            .map(|m| {
                (1..n)
                    .filter(|&i| m.exp(i) > 0)
                    .map(|i| {
                        let t = m.shift(i, -1).and_then(|t| t.shift(0, 1)).unwrap();
                        (index[&t], m.exp(i))
                    })
                    .collect()
            })
            .collect();
        let lift_row1 = rows[0]
            .iter()
            .map(|r| index[&r.shift(0, 1).unwrap()])
            .collect();
        DegreeSystem {
            n,
            d,
            columns,
            rows,
            blocks,
            order,
            transfers,
            lift_row1,
        }
    }

    pub fn len(&self) -> usize {
        self.columns.len()
    }

    /// The stacked blocks as dense rows of entries `a + b q`.
    pub fn dense(&self) -> Vec<Vec<Pencil>> {
        let mut out = Vec::new();
        for (block, rows) in self.blocks.iter().zip(&self.rows) {
            let mut dense = vec![vec![(0, 0); self.columns.len()]; rows.len()];
            for (c, col) in block.iter().enumerate() {
                for &(r, e) in col {
                    dense[r][c] = e;
                }
            }
            out.extend(dense);
        }
        out
    }

    pub fn k_max(&self) -> usize {
        self.blocks.len()
    }

    /// Solves `D_k f = b_k` for every block (or the homogeneous system) modulo `p` at `q = t`.
    pub fn solve_at(&self, f: &Fp, t: u64, rhs: Option<&[Vec<u64>]>) -> PointSolution {
        let c = |j: u16| f.mul(u64::from(j), f.add(1, f.mul(t, u64::from(j - 1))));
        let extendable = self.n >= 2 && (1..=self.d as u16).all(|j| c(j) != 0);
        if extendable {
            self.solve_extension(f, t, rhs, &c)
        } else {
            self.solve_dense(f, t, rhs)
        }
    }

    fn eval(f: &Fp, t: u64, (a, b): Pencil) -> u64 {
        f.add(f.from_i64(a), f.mul(f.from_i64(b), t))
    }

    /// Reduces to the kernel of `D_1`, which is parametrised by its part free of `x1`:
    /// writing `f = Σ x1^k f_k`, `D_1 f = 0` forces `f_{k+1} = -D_1' f_k / c(k+1)`.
    fn solve_extension(
        &self,
        f: &Fp,
        t: u64,
        rhs: Option<&[Vec<u64>]>,
        c: &dyn Fn(u16) -> u64,
    ) -> PointSolution {
        let len = self.len();
        let inv_c: Vec<u64> = (0..=self.d as u16)
            .map(|j| if j == 0 { 0 } else { f.inv(c(j)) })
            .collect();
        let propagate = |v: &mut Vec<u64>| {
            for &col in &self.order {
                let x = v[col];
                if x == 0 || self.transfers[col].is_empty() {
                    continue;
                }
                let k = self.columns[col].exp(0);
                let scale = f.mul(x, inv_c[usize::from(k) + 1]);
                for &(target, e) in &self.transfers[col] {
                    v[target] = f.sub(v[target], f.mul(scale, c(e)));
                }
            }
        };
        let sources: Vec<usize> = (0..len).filter(|&i| self.columns[i].exp(0) == 0).collect();
        let ext: Vec<Vec<u64>> = sources
            .iter()
            .map(|&s| {
                let mut v = vec![0; len];
                v[s] = 1;
                propagate(&mut v);
                v
            })
            .collect();
        let base = rhs.map(|b| {
            let mut v = vec![0; len];
            for (r, &x) in b[0].iter().enumerate() {
                if x != 0 {
                    let k = self.rows[0][r].exp(0);
                    v[self.lift_row1[r]] = f.mul(x, inv_c[usize::from(k) + 1]);
                }
            }
            propagate(&mut v);
            v
        });
        // The remaining blocks applied to a vector, stacked.
        let offsets: Vec<usize> = self.rows[1..]
            .iter()
            .scan(0, |acc, r| {
                let o = *acc;
                *acc += r.len();
                Some(o)
            })
            .collect();
        let height: usize = self.rows[1..].iter().map(Vec::len).sum();
        let apply_rest = |v: &[u64]| -> Vec<u64> {
            let mut out = vec![0; height];
            for (col, &x) in v.iter().enumerate() {
                if x == 0 {
                    continue;
                }
                for (block, &off) in self.blocks[1..].iter().zip(&offsets) {
                    for &(row, e) in &block[col] {
                        out[off + row] = f.add(out[off + row], f.mul(x, Self::eval(f, t, e)));
                    }
                }
            }
            out
        };
        let nf = sources.len();
        let aug = usize::from(rhs.is_some());
        let mut s = Matrix::zeros(height, nf + aug);
        for (j, v) in ext.iter().enumerate() {
            for (row, x) in apply_rest(v).into_iter().enumerate() {
                s.set(row, j, x);
            }
        }
        if let (Some(b), Some(base)) = (rhs, &base) {
            let r = apply_rest(base);
            let target = b[1..].iter().flatten();
            for (row, (&x, &y)) in target.zip(&r).enumerate() {
                s.set(row, nf, f.sub(x, y));
            }
        }
        let pivots = s.rref(f, nf + aug);
        let (_, small) = rref_nullspace(&s, &pivots, nf, f);
        let combine = |u: &[u64], start: Option<&Vec<u64>>| -> Vec<u64> {
            let mut out = start.cloned().unwrap_or_else(|| vec![0; len]);
            for (j, &x) in u.iter().enumerate() {
                if x == 0 {
                    continue;
                }
                for (o, &e) in out.iter_mut().zip(&ext[j]) {
                    if e != 0 {
                        *o = f.add(*o, f.mul(x, e));
                    }
                }
            }
            out
        };
        let kernel: Vec<Vec<u64>> = small.iter().map(|u| combine(u, None)).collect();
        let (free, kernel) = canonical_subspace(kernel, len, f);
        let particular = rhs.map(|_| {
            if pivots.last() == Some(&nf) {
                return None;
            }
            let mut u = vec![0; nf];
            for (i, &pc) in pivots.iter().enumerate() {
                u[pc] = s.get(i, nf);
            }
            let mut x = combine(&u, base.as_ref());
            normalize(f, &mut x, &free, &kernel);
            Some(x)
        });
        PointSolution {
            free,
            kernel,
            particular,
        }
    }

    fn solve_dense(&self, f: &Fp, t: u64, rhs: Option<&[Vec<u64>]>) -> PointSolution {
        let len = self.len();
        let height: usize = self.rows.iter().map(Vec::len).sum();
        let aug = usize::from(rhs.is_some());
        let mut m = Matrix::zeros(height, len + aug);
        let mut off = 0;
        for (block, rows) in self.blocks.iter().zip(&self.rows) {
            for (col, entries) in block.iter().enumerate() {
                for &(row, e) in entries {
                    m.set(off + row, col, Self::eval(f, t, e));
                }
            }
            off += rows.len();
        }
        if let Some(b) = rhs {
            for (row, &x) in b.iter().flatten().enumerate() {
                m.set(row, len, x);
            }
        }
        let pivots = m.rref(f, len + aug);
        let (free, kernel) = rref_nullspace(&m, &pivots, len, f);
        let particular = rhs.map(|_| {
            if pivots.last() == Some(&len) {
                return None;
            }
            let mut x = vec![0; len];
            for (i, &pc) in pivots.iter().enumerate() {
                x[pc] = m.get(i, len);
            }
            Some(x)
        });
        PointSolution {
            free,
            kernel,
            particular,
        }
    }
}

/// Subtracts the kernel component so the vector vanishes on the free columns.
fn normalize(f: &Fp, x: &mut [u64], free: &[usize], kernel: &[Vec<u64>]) {
    for (&fc, v) in free.iter().zip(kernel) {
        let a = x[fc];
        if a == 0 {
            continue;
        }
        for (o, &e) in x.iter_mut().zip(v) {
            if e != 0 {
                *o = f.sub(*o, f.mul(a, e));
            }
        }
    }
}

/// Canonical solution of the system modulo one prime at one value of `q`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub(crate) struct PointSolution {
    /// Free columns in increasing order.
    pub free: Vec<usize>,
    /// One vector per free column: 1 there, 0 at the other free columns.
    pub kernel: Vec<Vec<u64>>,
    /// For an inhomogeneous system: the solution vanishing on the free columns,
    /// or `None` when inconsistent.
    pub particular: Option<Option<Vec<u64>>>,
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::linalg::modp::primes;

    #[test]
    fn both_routes_agree() {
        let f = Fp::new(primes()[3]);
        for (n, d, k) in [(2, 1, 2), (3, 3, 2), (3, 4, 3), (4, 5, 2), (4, 5, 4)] {
            let sys = DegreeSystem::new(n, d, k);
            for t in [0, 5, 12345] {
                let a = sys.solve_extension(&f, t, None, &|j: u16| {
                    f.mul(u64::from(j), f.add(1, f.mul(t, u64::from(j - 1))))
                });
                let b = sys.solve_dense(&f, t, None);
                assert_eq!(a, b, "n={n} d={d} t={t}");
            }
        }
    }

    #[test]
    fn classical_dimensions() {
        let f = Fp::new(primes()[0]);
        let dims: Vec<usize> = (0..5)
            .map(|d| {
                DegreeSystem::new(3, d, 3)
                    .solve_at(&f, 0, None)
                    .kernel
                    .len()
            })
            .collect();
        assert_eq!(dims, vec![1, 2, 2, 1, 0]);
    }

    #[test]
    fn inhomogeneous_routes_agree() {
        let f = Fp::new(primes()[5]);
        let sys = DegreeSystem::new(3, 4, 2);
        let b1: Vec<u64> = (0..sys.rows[0].len() as u64).map(|i| i * i + 1).collect();
        let b2: Vec<u64> = (0..sys.rows[1].len() as u64).map(|i| 3 * i + 2).collect();
        let rhs = vec![b1, b2];
        let c = |j: u16| u64::from(j);
        let a = sys.solve_extension(&f, 0, Some(&rhs), &c);
        let b = sys.solve_dense(&f, 0, Some(&rhs));
        assert_eq!(a, b);
    }
}
