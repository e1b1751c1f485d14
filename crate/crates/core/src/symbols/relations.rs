//! Relation matrices: blow-up rows, their general `r`-entry form, and antisymmetry.

use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use super::SymbolBasis;
use crate::error::{Error, Result};
use crate::linalg::{SparseMatrix, SparseVec};

/// The rule that produced a row.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub enum RelationTag {
    Blowup,
    GeneralBlowup(usize),
    Antisymmetry,
    Imported,
}

/// How the antisymmetry relation negates entries.
#[derive(Clone, Copy, Debug, Default, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub enum AntisymmetryMode {
    /// `[-a_1, a_2, …] = -[a_1, a_2, …]`, for every position.
    #[default]
    SingleEntry,
    /// `[-a_1, …, -a_n] = -[a_1, …, a_n]`.
    AllEntries,
}

/// Sparse relation rows in basis coordinates, with a tag per row.
#[derive(Clone, Debug, PartialEq)]
pub struct RelationMatrix {
    matrix: SparseMatrix,
    tags: Vec<RelationTag>,
}

impl RelationMatrix {
    pub fn new(matrix: SparseMatrix, tags: Vec<RelationTag>) -> Self {
        assert_eq!(matrix.nrows(), tags.len());
        RelationMatrix { matrix, tags }
    }

    pub fn empty(ncols: usize) -> Self {
        RelationMatrix { matrix: SparseMatrix::new(ncols), tags: Vec::new() }
    }

    fn from_rows(ncols: usize, mut rows: Vec<SparseVec>, tag: RelationTag) -> Self {
        rows.retain(|r| !r.is_zero());
        rows.par_sort_unstable();
        rows.dedup();
        let tags = vec![tag; rows.len()];
        RelationMatrix { matrix: SparseMatrix::from_rows(ncols, rows), tags }
    }

    pub fn matrix(&self) -> &SparseMatrix {
        &self.matrix
    }

    pub fn tags(&self) -> &[RelationTag] {
        &self.tags
    }

    pub fn ncols(&self) -> usize {
        self.matrix.ncols()
    }

    pub fn nrows(&self) -> usize {
        self.matrix.nrows()
    }

    pub fn rows(&self) -> &[SparseVec] {
        self.matrix.rows()
    }

    /// Rows of `self` followed by rows of `other`.
    pub fn stacked(&self, other: &RelationMatrix) -> RelationMatrix {
        let mut tags = self.tags.clone();
        tags.extend_from_slice(&other.tags);
        RelationMatrix { matrix: self.matrix.stacked(&other.matrix), tags }
    }
}

fn emit<F>(basis: &SymbolBasis, per_symbol: F, tag: RelationTag) -> RelationMatrix
where
    F: Fn(&[u32], &mut Vec<(u32, i64)>, &mut Vec<SparseVec>) + Sync,
{
    let rows: Vec<SparseVec> = (0..basis.len())
        .into_par_iter()
        .fold(Vec::new, |mut acc, i| {
            let mut scratch = Vec::new();
            per_symbol(basis.codes(i), &mut scratch, &mut acc);
            acc
        })
        .flatten()
        .collect();
    RelationMatrix::from_rows(basis.len(), rows, tag)
}

fn column(basis: &SymbolBasis, codes: &mut [u32]) -> u32 {
    basis
        .index_of_codes(codes)
        .expect("blow-up and antisymmetry moves preserve the generated subgroup")
}

/// Relation (B): for each symbol and each pair of positions `(a_1, a_2)`,
/// `[a_1,a_2,b] - [a_1,a_2-a_1,b] - [a_1-a_2,a_2,b]`, or `[a,a,b] - [0,a,b]`.
pub fn blowup_relations(basis: &SymbolBasis) -> RelationMatrix {
    let n = basis.n();
    if n < 2 {
        return RelationMatrix::empty(basis.len());
    }
    let codec = basis.codec().clone();
    emit(
        basis,
        |s, _, out| {
            let me = column(basis, &mut s.to_vec());
            let mut buf = s.to_vec();
            for i in 0..n {
                for j in i + 1..n {
                    // repeated values at other positions give the same row
                    if (i > 0 && s[i - 1] == s[i]) || (j > i + 1 && s[j - 1] == s[j]) {
                        continue;
                    }
                    let (a1, a2) = (s[i], s[j]);
                    let mut terms = vec![(me, 1i64)];
                    if a1 == a2 {
                        buf.copy_from_slice(s);
                        buf[i] = 0;
                        terms.push((column(basis, &mut buf), -1));
                    } else {
                        buf.copy_from_slice(s);
                        buf[j] = codec.sub(a2, a1);
                        terms.push((column(basis, &mut buf), -1));
                        buf.copy_from_slice(s);
                        buf[i] = codec.sub(a1, a2);
                        terms.push((column(basis, &mut buf), -1));
                    }
                    out.push(SparseVec::from_pairs(terms));
                }
            }
        },
        RelationTag::Blowup,
    )
}

fn subsets(n: usize, r: usize) -> Vec<Vec<usize>> {
    let mut out = Vec::new();
    let mut cur: Vec<usize> = (0..r).collect();
    loop {
        out.push(cur.clone());
        let mut i = r;
        loop {
            if i == 0 {
                return out;
            }
            i -= 1;
            if cur[i] < n - r + i {
                cur[i] += 1;
                for k in i + 1..r {
                    cur[k] = cur[k - 1] + 1;
                }
                break;
            }
        }
    }
}

/// Relation (B_r): for each symbol and each set of `r` positions with values
/// `a_1..a_r`, `[a, b] - Σ_i [a_1-a_i, …, a_i, …, a_r-a_i, b]`, where `i` runs over
/// positions whose value has not appeared at an earlier chosen position.
pub fn general_blowup_relations(basis: &SymbolBasis, r: usize) -> Result<RelationMatrix> {
    let n = basis.n();
    if r < 2 || r > n {
        return Err(Error::DimensionMismatch(format!("relation order r = {r} must satisfy 2 <= r <= {n}")));
    }
    let codec = basis.codec().clone();
    let choices = subsets(n, r);
    Ok(emit(
        basis,
        |s, _, out| {
            let me = column(basis, &mut s.to_vec());
            let mut buf = s.to_vec();
            for pos in &choices {
                let mut terms = vec![(me, 1i64)];
                for (k, &pi) in pos.iter().enumerate() {
                    if pos[..k].iter().any(|&q| s[q] == s[pi]) {
                        continue;
                    }
                    buf.copy_from_slice(s);
                    for &q in pos {
                        if q != pi {
                            buf[q] = codec.sub(s[q], s[pi]);
                        }
                    }
                    terms.push((column(basis, &mut buf), -1));
                }
                out.push(SparseVec::from_pairs(terms));
            }
        },
        RelationTag::GeneralBlowup(r),
    ))
}

/// Antisymmetry rows `e[s'] + e[s]`, where `s'` negates one entry (or all entries).
/// Rows `2 e[s]` from self-negating moves are kept: they kill `s` away from 2.
pub fn antisymmetry_relations(basis: &SymbolBasis, mode: AntisymmetryMode) -> RelationMatrix {
    let codec = basis.codec().clone();
    emit(
        basis,
        |s, _, out| {
            let me = column(basis, &mut s.to_vec());
            let mut buf = s.to_vec();
            match mode {
                AntisymmetryMode::SingleEntry => {
                    for i in 0..s.len() {
                        if i > 0 && s[i - 1] == s[i] {
                            continue;
                        }
                        buf.copy_from_slice(s);
                        buf[i] = codec.neg(s[i]);
                        out.push(SparseVec::from_pairs([(me, 1), (column(basis, &mut buf), 1)]));
                    }
                }
                AntisymmetryMode::AllEntries => {
                    for (b, &a) in buf.iter_mut().zip(s) {
                        *b = codec.neg(a);
                    }
                    out.push(SparseVec::from_pairs([(me, 1), (column(basis, &mut buf), 1)]));
                }
            }
        },
        RelationTag::Antisymmetry,
    )
}

/// Blow-up rows followed by antisymmetry rows: the relations of `B_n^-`.
pub fn minus_relations(basis: &SymbolBasis, mode: AntisymmetryMode) -> RelationMatrix {
    blowup_relations(basis).stacked(&antisymmetry_relations(basis, mode))
}
