//! Quotients `F_p^M / rowspan` by sparse Markowitz elimination plus a dense core.

use std::cmp::Reverse;
use std::collections::{BinaryHeap, HashMap};
use std::time::Instant;

use serde::Serialize;

use super::dense::DenseEchelon;
use super::{is_prime, mod_inv, SparseMatrix, SparseVec};
use crate::error::{Error, Result};

const NONE: u32 = u32::MAX;

/// Counters describing one elimination, for reports and tuning.
#[derive(Clone, Debug, Default, Serialize)]
pub struct ElimStats {
    pub rows: usize,
    pub cols: usize,
    pub nnz: usize,
    pub sparse_pivots: usize,
    pub dense_rows: usize,
    pub dense_cols: usize,
    pub dense_rank: usize,
    pub peak_nnz: usize,
    pub elapsed_ms: u128,
}

/// The quotient of `F_p^M` by the row space of a matrix, with a canonical reduction map.
#[derive(Clone, Debug)]
pub struct ModQuotient {
    p: u64,
    ncols: usize,
    /// Column -> position in `pivot_rows`, chronological.
    pivot_of: Vec<u32>,
    pivot_cols: Vec<u32>,
    /// Pivot rows normalized to a unit at the pivot, which is omitted.
    pivot_rows: Vec<Vec<(u32, u32)>>,
    dense_of: Vec<u32>,
    dense_cols: Vec<u32>,
    dense: DenseEchelon,
    stats: ElimStats,
}

#[inline]
fn reduce_i64(v: i64, p: u64) -> u32 {
    v.rem_euclid(p as i64) as u32
}

struct Active {
    p: u64,
    rows: Vec<Vec<(u32, u32)>>,
    alive: Vec<bool>,
    col_rows: Vec<Vec<u32>>,
    col_count: Vec<u32>,
    nnz: usize,
}

impl Active {
    fn contains(&self, r: u32, c: u32) -> Option<u32> {
        let row = &self.rows[r as usize];
        row.binary_search_by_key(&c, |e| e.0).ok().map(|i| row[i].1)
    }

    /// `row_i -= f * pivot`, keeping column bookkeeping; returns columns whose count dropped.
    fn axpy(&mut self, i: u32, f: u64, pivot: &[(u32, u32)], touched: &mut Vec<u32>) {
        let p = self.p;
        let g = p - f;
        let old = std::mem::take(&mut self.rows[i as usize]);
        let mut out = Vec::with_capacity(old.len() + pivot.len());
        let (mut a, mut b) = (0usize, 0usize);
        while a < old.len() || b < pivot.len() {
            let ca = old.get(a).map_or(NONE, |e| e.0);
            let cb = pivot.get(b).map_or(NONE, |e| e.0);
            if ca < cb {
                out.push(old[a]);
                a += 1;
            } else if cb < ca {
                let v = (g * pivot[b].1 as u64 % p) as u32;
                out.push((cb, v));
                self.col_count[cb as usize] += 1;
                self.col_rows[cb as usize].push(i);
                touched.push(cb);
                b += 1;
            } else {
                let v = ((old[a].1 as u64 + g * pivot[b].1 as u64) % p) as u32;
                if v != 0 {
                    out.push((ca, v));
                } else {
                    self.col_count[ca as usize] -= 1;
                    touched.push(ca);
                }
                a += 1;
                b += 1;
            }
        }
        self.nnz = self.nnz + out.len() - old.len();
        self.rows[i as usize] = out;
    }
}

impl ModQuotient {
    /// Eliminates `matrix` over `F_p`.
    pub fn new(matrix: &SparseMatrix, p: u64) -> Result<Self> {
        if !is_prime(p) {
            return Err(Error::NotPrime(p));
        }
        if p >= 1 << 31 {
            return Err(Error::GuardExceeded(format!("prime {p} exceeds 2^31")));
        }
        let start = Instant::now();
        let ncols = matrix.ncols();
        let mut rows: Vec<Vec<(u32, u32)>> = matrix
            .rows()
            .iter()
            .map(|r| {
                r.entries()
                    .iter()
                    .map(|&(c, v)| (c, reduce_i64(v, p)))
                    .filter(|e| e.1 != 0)
                    .collect::<Vec<_>>()
            })
            .filter(|r| !r.is_empty())
            .collect();
        rows.sort_unstable();
        rows.dedup();
        let mut stats = ElimStats {
            rows: matrix.nrows(),
            cols: ncols,
            nnz: matrix.nnz(),
            ..Default::default()
        };

        let mut col_rows: Vec<Vec<u32>> = vec![Vec::new(); ncols];
        let mut col_count = vec![0u32; ncols];
        for (i, r) in rows.iter().enumerate() {
            for &(c, _) in r {
                col_rows[c as usize].push(i as u32);
                col_count[c as usize] += 1;
            }
        }
        let nnz = rows.iter().map(Vec::len).sum();
        let nrows = rows.len();
        let mut act = Active { p, rows, alive: vec![true; nrows], col_rows, col_count, nnz };

        let mut pivot_of = vec![NONE; ncols];
        let mut pivot_cols = Vec::new();
        let mut pivot_rows = Vec::new();

        let mut heap: BinaryHeap<Reverse<(u32, u32)>> = (0..ncols as u32)
            .filter(|&c| act.col_count[c as usize] > 0)
            .map(|c| Reverse((act.col_count[c as usize], c)))
            .collect();
        // Columns carrying a row of weight one: eliminating them never creates fill.
        let mut light: Vec<u32> = Vec::new();
        for r in act.rows.iter() {
            if r.len() == 1 {
                light.push(r[0].0);
            }
        }
        let mut limit: u64 = 8;
        let max_limit: u64 = 4096;
        let nnz_budget = (act.nnz * 8).max(1 << 20);
        let mut deferred: Vec<u32> = Vec::new();
        let mut touched: Vec<u32> = Vec::new();
        stats.peak_nnz = act.nnz;

        loop {
            let c = if let Some(c) = light.pop() {
                c
            } else if let Some(Reverse((cnt, c))) = heap.pop() {
                if cnt != act.col_count[c as usize] || pivot_of[c as usize] != NONE {
                    continue;
                }
                c
            } else if !deferred.is_empty() && limit < max_limit && act.nnz <= nnz_budget {
                limit *= 4;
                for c in deferred.drain(..) {
                    if pivot_of[c as usize] == NONE && act.col_count[c as usize] > 0 {
                        heap.push(Reverse((act.col_count[c as usize], c)));
                    }
                }
                continue;
            } else {
                break;
            };
            if pivot_of[c as usize] != NONE || act.col_count[c as usize] == 0 {
                continue;
            }
            // Live rows of column c, compacting the stale list.
            let mut live: Vec<u32> = std::mem::take(&mut act.col_rows[c as usize]);
            live.sort_unstable();
            live.dedup();
            live.retain(|&r| act.alive[r as usize] && act.contains(r, c).is_some());
            debug_assert_eq!(live.len() as u32, act.col_count[c as usize]);
            let &best = live
                .iter()
                .min_by_key(|&&r| (act.rows[r as usize].len(), r))
                .expect("column count is positive");
            let w = act.rows[best as usize].len() as u64;
            let cost = (live.len() as u64 - 1) * (w - 1);
            if cost > 0 && (cost > limit || act.nnz > nnz_budget) {
                act.col_rows[c as usize] = live;
                deferred.push(c);
                continue;
            }
            // Normalize the pivot row.
            let pivot_row = std::mem::take(&mut act.rows[best as usize]);
            act.alive[best as usize] = false;
            let pv = pivot_row.iter().find(|e| e.0 == c).expect("pivot entry").1 as u64;
            let inv = mod_inv(pv, p);
            let normalized: Vec<(u32, u32)> =
                pivot_row.iter().map(|&(j, v)| (j, (v as u64 * inv % p) as u32)).collect();
            for &(j, _) in &pivot_row {
                act.col_count[j as usize] -= 1;
                touched.push(j);
            }
            act.nnz -= pivot_row.len();
            for &r in &live {
                if r == best {
                    continue;
                }
                let f = act.contains(r, c).expect("live row") as u64;
                act.axpy(r, f, &normalized, &mut touched);
                let len = act.rows[r as usize].len();
                if len == 0 {
                    act.alive[r as usize] = false;
                } else if len == 1 {
                    light.push(act.rows[r as usize][0].0);
                }
            }
            debug_assert_eq!(act.col_count[c as usize], 0);
            pivot_of[c as usize] = pivot_cols.len() as u32;
            pivot_cols.push(c);
            pivot_rows.push(normalized.into_iter().filter(|e| e.0 != c).collect::<Vec<_>>());
            touched.sort_unstable();
            touched.dedup();
            for &j in &touched {
                let cnt = act.col_count[j as usize];
                if cnt > 0 && pivot_of[j as usize] == NONE {
                    heap.push(Reverse((cnt, j)));
                }
            }
            touched.clear();
            stats.peak_nnz = stats.peak_nnz.max(act.nnz);
        }

        // Dense core.
        let mut dense_of = vec![NONE; ncols];
        let mut dense_cols = Vec::new();
        for c in 0..ncols {
            if pivot_of[c] == NONE && act.col_count[c] > 0 {
                dense_of[c] = dense_cols.len() as u32;
                dense_cols.push(c as u32);
            }
        }
        let core: Vec<Vec<(u32, u32)>> = act
            .rows
            .iter()
            .zip(&act.alive)
            .filter(|(r, &a)| a && !r.is_empty())
            .map(|(r, _)| r.iter().map(|&(c, v)| (dense_of[c as usize], v)).collect())
            .collect();
        stats.dense_rows = core.len();
        stats.dense_cols = dense_cols.len();
        drop(act);
        let dense = DenseEchelon::build(p, dense_cols.len(), &core);
        stats.sparse_pivots = pivot_cols.len();
        stats.dense_rank = dense.rank();
        stats.elapsed_ms = start.elapsed().as_millis();
        Ok(ModQuotient { p, ncols, pivot_of, pivot_cols, pivot_rows, dense_of, dense_cols, dense, stats })
    }

    pub fn prime(&self) -> u64 {
        self.p
    }

    pub fn ncols(&self) -> usize {
        self.ncols
    }

    pub fn rank(&self) -> usize {
        self.pivot_cols.len() + self.dense.rank()
    }

    /// Dimension of the quotient.
    pub fn dim(&self) -> usize {
        self.ncols - self.rank()
    }

    pub fn stats(&self) -> &ElimStats {
        &self.stats
    }

    /// Canonical representative of the class of `v`: equal classes give equal outputs.
    pub fn normal_form(&self, v: &SparseVec) -> Vec<(u32, u32)> {
        let p = self.p;
        let mut work: HashMap<u32, u32> = HashMap::new();
        let mut heap: BinaryHeap<Reverse<u32>> = BinaryHeap::new();
        for &(c, x) in v.entries() {
            assert!((c as usize) < self.ncols, "vector column out of range");
            let x = reduce_i64(x, p);
            if x != 0 {
                work.insert(c, x);
                if self.pivot_of[c as usize] != NONE {
                    heap.push(Reverse(self.pivot_of[c as usize]));
                }
            }
        }
        while let Some(Reverse(pi)) = heap.pop() {
            let c = self.pivot_cols[pi as usize];
            let Some(x) = work.remove(&c) else { continue };
            let g = (p - x as u64) % p;
            for &(j, a) in &self.pivot_rows[pi as usize] {
                let e = work.entry(j).or_insert(0);
                let was_zero = *e == 0;
                *e = ((*e as u64 + g * a as u64) % p) as u32;
                if *e == 0 {
                    work.remove(&j);
                } else if was_zero && self.pivot_of[j as usize] != NONE {
                    heap.push(Reverse(self.pivot_of[j as usize]));
                }
            }
        }
        let mut out: Vec<(u32, u32)> = Vec::new();
        let mut dense_vec = vec![0u32; self.dense_cols.len()];
        let mut any_dense = false;
        for (c, x) in work {
            let d = self.dense_of[c as usize];
            if d == NONE {
                out.push((c, x));
            } else {
                dense_vec[d as usize] = x;
                any_dense = true;
            }
        }
        if any_dense {
            self.dense.reduce(&mut dense_vec);
            out.extend(
                dense_vec
                    .iter()
                    .enumerate()
                    .filter(|e| *e.1 != 0)
                    .map(|(d, &x)| (self.dense_cols[d], x)),
            );
        }
        out.sort_unstable();
        out
    }

    /// Is `v` in the row space?
    pub fn contains(&self, v: &SparseVec) -> bool {
        self.normal_form(v).is_empty()
    }

    /// Do `u` and `v` have the same class?
    pub fn equal(&self, u: &SparseVec, v: &SparseVec) -> bool {
        self.contains(&(u - v))
    }

    #[allow(dead_code)]
    pub(crate) fn dense_ncols(&self) -> usize {
        self.dense.ncols()
    }
}

/// Rank of `matrix` over `F_p`.
pub fn rank_mod_p(matrix: &SparseMatrix, p: u64) -> Result<usize> {
    Ok(ModQuotient::new(matrix, p)?.rank())
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    fn dense_rank_oracle(rows: &[Vec<i64>], ncols: usize, p: u64) -> usize {
        let mut m: Vec<Vec<u64>> =
            rows.iter().map(|r| r.iter().map(|&x| x.rem_euclid(p as i64) as u64).collect()).collect();
        let mut rank = 0;
        for c in 0..ncols {
            let Some(piv) = (rank..m.len()).find(|&i| m[i][c] != 0) else { continue };
            m.swap(rank, piv);
            let inv = mod_inv(m[rank][c], p);
            for i in 0..m.len() {
                if i != rank && m[i][c] != 0 {
                    let f = m[i][c] * inv % p;
                    for j in 0..ncols {
                        m[i][j] = (m[i][j] + p * p - f * m[rank][j]) % p;
                    }
                }
            }
            rank += 1;
        }
        rank
    }

    fn to_sparse(rows: &[Vec<i64>], ncols: usize) -> SparseMatrix {
        SparseMatrix::from_rows(
            ncols,
            rows.iter()
                .map(|r| SparseVec::from_pairs(r.iter().enumerate().map(|(j, &x)| (j as u32, x))))
                .collect(),
        )
    }

    #[test]
    fn zero_matrix() {
        let m = SparseMatrix::new(5);
        let q = ModQuotient::new(&m, 2).unwrap();
        assert_eq!(q.rank(), 0);
        assert_eq!(q.dim(), 5);
        assert!(q.contains(&SparseVec::new()));
        assert!(!q.contains(&SparseVec::unit(3)));
    }

    #[test]
    fn composite_rejected() {
        assert!(matches!(rank_mod_p(&SparseMatrix::new(1), 4), Err(Error::NotPrime(4))));
    }

    proptest! {
        #[test]
        fn rank_matches_dense_oracle(
            rows in proptest::collection::vec(proptest::collection::vec(-2i64..3, 9), 0..14),
            pidx in 0usize..4,
        ) {
            let p = [2u64, 3, 5, 1_000_003][pidx];
            let m = to_sparse(&rows, 9);
            let q = ModQuotient::new(&m, p).unwrap();
            prop_assert_eq!(q.rank(), dense_rank_oracle(&rows, 9, p));
            for r in m.rows() {
                prop_assert!(q.contains(r));
            }
            // membership agrees with the rank test
            let v = SparseVec::from_pairs([(0, 1), (4, 2), (8, -1)]);
            let mut with_v = rows.clone();
            with_v.push((0..9).map(|j| v.get(j as u32)).collect());
            let in_span = dense_rank_oracle(&with_v, 9, p) == q.rank();
            prop_assert_eq!(q.contains(&v), in_span);
        }
    }
}
