//! Exact sparse linear algebra over `F_p`, `Q` and `Z`.
//!
//! Every routine works on the cokernel `F^M / rowspan(rows)` of a sparse integer
//! matrix, because that is the group every dimension table and vanishing claim is
//! about. The F_p engine ([`ModQuotient`]) eliminates sparsely with Markowitz pivoting
//! and finishes on a dense core (bit-packed when `p = 2`); the rational layer runs it
//! at independent large primes; the integral layer ([`IntQuotient`]) uses unimodular
//! sparse pivots followed by a dense Smith form.

mod dense;
mod modp;
mod rational;
mod smith;

pub use modp::{rank_mod_p, ElimStats, ModQuotient};
pub use rational::{in_row_space_rational, rank_rational, RationalOptions, RationalQuotient};
pub use smith::{IntQuotient, Order, SmithForm, DEFAULT_SNF_GUARD};

use serde::{Deserialize, Serialize};

/// A sparse integer vector: strictly increasing columns, no zero coefficients.
#[derive(Clone, Debug, Default, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub struct SparseVec {
    entries: Vec<(u32, i64)>,
}

impl SparseVec {
    pub fn new() -> Self {
        SparseVec { entries: Vec::new() }
    }

    /// Sorts, merges repeated columns and drops zeros.
    pub fn from_pairs<I: IntoIterator<Item = (u32, i64)>>(pairs: I) -> Self {
        let mut entries: Vec<(u32, i64)> = pairs.into_iter().collect();
        entries.sort_unstable_by_key(|e| e.0);
        let mut out: Vec<(u32, i64)> = Vec::with_capacity(entries.len());
        for (c, v) in entries {
            match out.last_mut() {
                Some(last) if last.0 == c => last.1 += v,
                _ => out.push((c, v)),
            }
        }
        out.retain(|e| e.1 != 0);
        SparseVec { entries: out }
    }

    pub fn unit(col: u32) -> Self {
        SparseVec { entries: vec![(col, 1)] }
    }

    pub fn entries(&self) -> &[(u32, i64)] {
        &self.entries
    }

    pub fn is_zero(&self) -> bool {
        self.entries.is_empty()
    }

    pub fn len(&self) -> usize {
        self.entries.len()
    }

    pub fn is_empty(&self) -> bool {
        self.entries.is_empty()
    }

    pub fn max_col(&self) -> Option<u32> {
        self.entries.last().map(|e| e.0)
    }

    pub fn get(&self, col: u32) -> i64 {
        self.entries
            .binary_search_by_key(&col, |e| e.0)
            .map(|i| self.entries[i].1)
            .unwrap_or(0)
    }

    /// `self + k * other`.
    pub fn add_scaled(&self, other: &SparseVec, k: i64) -> SparseVec {
        SparseVec::from_pairs(
            self.entries
                .iter()
                .copied()
                .chain(other.entries.iter().map(|&(c, v)| (c, v * k))),
        )
    }

    pub fn scaled(&self, k: i64) -> SparseVec {
        SparseVec::from_pairs(self.entries.iter().map(|&(c, v)| (c, v * k)))
    }

    pub fn neg(&self) -> SparseVec {
        self.scaled(-1)
    }
}

impl std::ops::Add for &SparseVec {
    type Output = SparseVec;
    fn add(self, rhs: &SparseVec) -> SparseVec {
        self.add_scaled(rhs, 1)
    }
}

impl std::ops::Sub for &SparseVec {
    type Output = SparseVec;
    fn sub(self, rhs: &SparseVec) -> SparseVec {
        self.add_scaled(rhs, -1)
    }
}

/// Sparse integer matrix stored by rows.
#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct SparseMatrix {
    ncols: usize,
    rows: Vec<SparseVec>,
}

impl SparseMatrix {
    pub fn new(ncols: usize) -> Self {
        SparseMatrix { ncols, rows: Vec::new() }
    }

    pub fn from_rows(ncols: usize, rows: Vec<SparseVec>) -> Self {
        assert!(rows.iter().all(|r| r.max_col().is_none_or(|c| (c as usize) < ncols)));
        SparseMatrix { ncols, rows }
    }

    pub fn push(&mut self, row: SparseVec) {
        assert!(row.max_col().is_none_or(|c| (c as usize) < self.ncols), "column out of range");
        self.rows.push(row);
    }

    pub fn ncols(&self) -> usize {
        self.ncols
    }

    pub fn nrows(&self) -> usize {
        self.rows.len()
    }

    pub fn rows(&self) -> &[SparseVec] {
        &self.rows
    }

    pub fn nnz(&self) -> usize {
        self.rows.iter().map(SparseVec::len).sum()
    }

    pub fn max_abs_entry(&self) -> i64 {
        self.rows
            .iter()
            .flat_map(|r| r.entries().iter().map(|e| e.1.abs()))
            .max()
            .unwrap_or(0)
    }

    /// Stacks the rows of `other` below `self`.
    pub fn stacked(&self, other: &SparseMatrix) -> SparseMatrix {
        assert_eq!(self.ncols, other.ncols);
        let mut rows = self.rows.clone();
        rows.extend(other.rows.iter().cloned());
        SparseMatrix { ncols: self.ncols, rows }
    }

    /// Renumbers columns by `perm[old] = new`.
    pub fn permute_columns(&self, perm: &[u32]) -> SparseMatrix {
        assert_eq!(perm.len(), self.ncols);
        SparseMatrix {
            ncols: self.ncols,
            rows: self
                .rows
                .iter()
                .map(|r| SparseVec::from_pairs(r.entries().iter().map(|&(c, v)| (perm[c as usize], v))))
                .collect(),
        }
    }
}

pub fn is_prime(n: u64) -> bool {
    if n < 2 {
        return false;
    }
    if n.is_multiple_of(2) {
        return n == 2;
    }
    let mut d = 3u64;
    while d * d <= n {
        if n.is_multiple_of(d) {
            return false;
        }
        d += 2;
    }
    true
}

pub(crate) fn mod_pow(mut b: u64, mut e: u64, p: u64) -> u64 {
    let mut acc = 1u64;
    b %= p;
    while e > 0 {
        if e & 1 == 1 {
            acc = acc * b % p;
        }
        b = b * b % p;
        e >>= 1;
    }
    acc
}

pub(crate) fn mod_inv(a: u64, p: u64) -> u64 {
    mod_pow(a, p - 2, p)
}
