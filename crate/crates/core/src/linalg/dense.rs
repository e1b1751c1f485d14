//! Dense row-echelon forms for the core left over by sparse elimination.

use rayon::prelude::*;

use super::mod_inv;

const PAR_THRESHOLD: usize = 256;

/// Row echelon form in column order: row `k` has a unit at `pivots[k]` and zeros at
/// `pivots[..k]`, so sequential reduction by increasing `k` is exact.
#[derive(Clone, Debug)]
pub(crate) enum DenseEchelon {
    Gf2 { ncols: usize, words: usize, rows: Vec<Vec<u64>>, pivots: Vec<u32> },
    Fp { ncols: usize, p: u64, rows: Vec<Vec<u32>>, pivots: Vec<u32> },
}

impl DenseEchelon {
    pub(crate) fn rank(&self) -> usize {
        match self {
            DenseEchelon::Gf2 { pivots, .. } | DenseEchelon::Fp { pivots, .. } => pivots.len(),
        }
    }

    pub(crate) fn ncols(&self) -> usize {
        match self {
            DenseEchelon::Gf2 { ncols, .. } | DenseEchelon::Fp { ncols, .. } => *ncols,
        }
    }

    /// Builds the echelon form of the given sparse rows (`(col, value mod p)` entries).
    pub(crate) fn build(p: u64, ncols: usize, sparse_rows: &[Vec<(u32, u32)>]) -> DenseEchelon {
        if p == 2 {
            gf2_echelon(ncols, sparse_rows)
        } else {
            fp_echelon(p, ncols, sparse_rows)
        }
    }

    /// Reduces a dense residue vector in place; afterwards it is zero at every pivot column.
    pub(crate) fn reduce(&self, v: &mut [u32]) {
        match self {
            DenseEchelon::Gf2 { words, rows, pivots, .. } => {
                let mut bits = vec![0u64; *words];
                for (j, &x) in v.iter().enumerate() {
                    if x & 1 == 1 {
                        bits[j / 64] |= 1 << (j % 64);
                    }
                }
                for (row, &pc) in rows.iter().zip(pivots) {
                    let pc = pc as usize;
                    if bits[pc / 64] >> (pc % 64) & 1 == 1 {
                        for (b, r) in bits[pc / 64..].iter_mut().zip(&row[pc / 64..]) {
                            *b ^= r;
                        }
                    }
                }
                for (j, x) in v.iter_mut().enumerate() {
                    *x = ((bits[j / 64] >> (j % 64)) & 1) as u32;
                }
            }
            DenseEchelon::Fp { p, rows, pivots, .. } => {
                for (row, &pc) in rows.iter().zip(pivots) {
                    let pc = pc as usize;
                    let f = v[pc] as u64;
                    if f != 0 {
                        let g = p - f;
                        for (x, &r) in v[pc..].iter_mut().zip(&row[pc..]) {
                            *x = ((*x as u64 + g * r as u64) % p) as u32;
                        }
                    }
                }
            }
        }
    }
}

fn gf2_echelon(ncols: usize, sparse_rows: &[Vec<(u32, u32)>]) -> DenseEchelon {
    let words = ncols.div_ceil(64).max(1);
    let mut rows: Vec<Vec<u64>> = sparse_rows
        .iter()
        .map(|r| {
            let mut w = vec![0u64; words];
            for &(c, v) in r {
                if v & 1 == 1 {
                    w[c as usize / 64] ^= 1 << (c % 64);
                }
            }
            w
        })
        .filter(|w| w.iter().any(|&x| x != 0))
        .collect();
    let mut pivots = Vec::new();
    let mut k = 0usize;
    for col in 0..ncols {
        if k == rows.len() {
            break;
        }
        let (wi, bit) = (col / 64, 1u64 << (col % 64));
        let Some(found) = (k..rows.len()).find(|&i| rows[i][wi] & bit != 0) else {
            continue;
        };
        rows.swap(k, found);
        let (head, tail) = rows.split_at_mut(k + 1);
        let pivot = &head[k][wi..];
        let update = |row: &mut Vec<u64>| {
            if row[wi] & bit != 0 {
                for (x, &y) in row[wi..].iter_mut().zip(pivot) {
                    *x ^= y;
                }
            }
        };
        if tail.len() >= PAR_THRESHOLD {
            tail.par_iter_mut().for_each(update);
        } else {
            tail.iter_mut().for_each(update);
        }
        pivots.push(col as u32);
        k += 1;
    }
    rows.truncate(k);
    DenseEchelon::Gf2 { ncols, words, rows, pivots }
}

fn fp_echelon(p: u64, ncols: usize, sparse_rows: &[Vec<(u32, u32)>]) -> DenseEchelon {
    let mut rows: Vec<Vec<u32>> = sparse_rows
        .iter()
        .map(|r| {
            let mut w = vec![0u32; ncols];
            for &(c, v) in r {
                w[c as usize] = ((w[c as usize] as u64 + v as u64) % p) as u32;
            }
            w
        })
        .filter(|w| w.iter().any(|&x| x != 0))
        .collect();
    let mut pivots = Vec::new();
    let mut k = 0usize;
    for col in 0..ncols {
        if k == rows.len() {
            break;
        }
        let Some(found) = (k..rows.len()).find(|&i| rows[i][col] != 0) else {
            continue;
        };
        rows.swap(k, found);
        let inv = mod_inv(rows[k][col] as u64, p);
        for x in rows[k][col..].iter_mut() {
            *x = (*x as u64 * inv % p) as u32;
        }
        let (head, tail) = rows.split_at_mut(k + 1);
        let pivot = &head[k][col..];
        let update = |row: &mut Vec<u32>| {
            let f = row[col] as u64;
            if f != 0 {
                let g = p - f;
                for (x, &y) in row[col..].iter_mut().zip(pivot) {
                    *x = ((*x as u64 + g * y as u64) % p) as u32;
                }
            }
        };
        if tail.len() >= PAR_THRESHOLD {
            tail.par_iter_mut().for_each(update);
        } else {
            tail.iter_mut().for_each(update);
        }
        pivots.push(col as u32);
        k += 1;
    }
    rows.truncate(k);
    DenseEchelon::Fp { ncols, p, rows, pivots }
}
