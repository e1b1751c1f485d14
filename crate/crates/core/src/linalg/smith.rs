//! Integral cokernels `Z^M / rowspan`: invariant factors, element orders, membership.

use std::cmp::Reverse;
use std::collections::{BinaryHeap, HashMap};
use std::fmt;

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, Zero};
use serde::Serialize;

use super::{SparseMatrix, SparseVec};
use crate::error::{Error, Result};

/// Default column limit for integral computations.
pub const DEFAULT_SNF_GUARD: usize = 5000;

const NONE: u32 = u32::MAX;

/// Order of an element of a finitely generated abelian group.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Order {
    Finite(BigInt),
    Infinite,
}

impl Order {
    pub fn is_zero_class(&self) -> bool {
        matches!(self, Order::Finite(n) if n.is_one())
    }
}

impl fmt::Display for Order {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Order::Finite(n) => write!(f, "{n}"),
            Order::Infinite => write!(f, "infinite"),
        }
    }
}

/// The cokernel as `Z/d_1 ⊕ … ⊕ Z/d_r ⊕ Z^free_rank`, with `d_1 | d_2 | …` and unit
/// factors kept so that `diagonal.len() + free_rank` is the number of columns.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct SmithForm {
    #[serde(serialize_with = "ser_bigs")]
    pub diagonal: Vec<BigInt>,
    pub free_rank: usize,
}

fn ser_bigs<S: serde::Serializer>(v: &[BigInt], s: S) -> std::result::Result<S::Ok, S::Error> {
    s.collect_seq(v.iter().map(|x| x.to_string()))
}

impl SmithForm {
    /// Invariant factors greater than one.
    pub fn torsion(&self) -> Vec<BigInt> {
        self.diagonal.iter().filter(|d| !d.is_one()).cloned().collect()
    }

    pub fn is_free(&self) -> bool {
        self.diagonal.iter().all(One::is_one)
    }
}

impl fmt::Display for SmithForm {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let t = self.torsion();
        let mut parts: Vec<String> = t.iter().map(|d| format!("Z/{d}")).collect();
        if self.free_rank > 0 {
            parts.push(if self.free_rank == 1 { "Z".into() } else { format!("Z^{}", self.free_rank) });
        }
        if parts.is_empty() {
            write!(f, "0")
        } else {
            write!(f, "{}", parts.join(" x "))
        }
    }
}

fn overflow() -> Error {
    Error::GuardExceeded("integer coefficient overflow during sparse elimination".into())
}

/// `Z^M / rowspan(matrix)` with normal-form coordinates for every element.
#[derive(Clone, Debug)]
pub struct IntQuotient {
    ncols: usize,
    pivot_of: Vec<u32>,
    pivot_cols: Vec<u32>,
    /// Pivot row with unit `u` at the pivot, stored without it: `e_c = -u * Σ a_j e_j`.
    pivot_rows: Vec<(i64, Vec<(u32, i64)>)>,
    dense_of: Vec<u32>,
    /// Column transform of the dense core: coordinates are `w · v`.
    transform: Vec<Vec<BigInt>>,
    core_diag: Vec<BigInt>,
    smith: SmithForm,
}

impl IntQuotient {
    pub fn new(matrix: &SparseMatrix) -> Result<Self> {
        Self::with_guard(matrix, DEFAULT_SNF_GUARD)
    }

    pub fn with_guard(matrix: &SparseMatrix, guard: usize) -> Result<Self> {
        let ncols = matrix.ncols();
        if ncols > guard {
            return Err(Error::GuardExceeded(format!(
                "{ncols} columns exceed the integral limit of {guard}; use modular ranks"
            )));
        }
        let mut rows: Vec<Vec<(u32, i64)>> =
            matrix.rows().iter().filter(|r| !r.is_empty()).map(|r| r.entries().to_vec()).collect();
        rows.sort_unstable();
        rows.dedup();
        let nrows = rows.len();
        let mut alive = vec![true; nrows];
        let mut col_rows: Vec<Vec<u32>> = vec![Vec::new(); ncols];
        let mut col_count = vec![0u32; ncols];
        for (i, r) in rows.iter().enumerate() {
            for &(c, _) in r {
                col_rows[c as usize].push(i as u32);
                col_count[c as usize] += 1;
            }
        }
        let mut pivot_of = vec![NONE; ncols];
        let mut pivot_cols = Vec::new();
        let mut pivot_rows = Vec::new();
        let mut heap: BinaryHeap<Reverse<(u32, u32)>> =
            (0..ncols as u32).filter(|&c| col_count[c as usize] > 0).map(|c| Reverse((col_count[c as usize], c))).collect();
        let get = |row: &Vec<(u32, i64)>, c: u32| row.binary_search_by_key(&c, |e| e.0).ok().map(|k| row[k].1);

        while let Some(Reverse((cnt, c))) = heap.pop() {
            if cnt != col_count[c as usize] || pivot_of[c as usize] != NONE || cnt == 0 {
                continue;
            }
            let mut live = std::mem::take(&mut col_rows[c as usize]);
            live.sort_unstable();
            live.dedup();
            live.retain(|&r| alive[r as usize] && get(&rows[r as usize], c).is_some());
            let best = live
                .iter()
                .copied()
                .filter(|&r| get(&rows[r as usize], c).is_some_and(|x| x.abs() == 1))
                .min_by_key(|&r| (rows[r as usize].len(), r));
            let Some(best) = best else {
                col_rows[c as usize] = live;
                continue;
            };
            let pivot = std::mem::take(&mut rows[best as usize]);
            alive[best as usize] = false;
            let u = get(&pivot, c).expect("pivot entry");
            for &(j, _) in &pivot {
                col_count[j as usize] -= 1;
            }
            let mut touched: Vec<u32> = pivot.iter().map(|e| e.0).collect();
            for &r in &live {
                if r == best {
                    continue;
                }
                let a = get(&rows[r as usize], c).expect("live row");
                let f = a.checked_mul(u).ok_or_else(overflow)?;
                let old = std::mem::take(&mut rows[r as usize]);
                let mut out = Vec::with_capacity(old.len() + pivot.len());
                let (mut x, mut y) = (0usize, 0usize);
                while x < old.len() || y < pivot.len() {
                    let cx = old.get(x).map_or(NONE, |e| e.0);
                    let cy = pivot.get(y).map_or(NONE, |e| e.0);
                    if cx < cy {
                        out.push(old[x]);
                        x += 1;
                    } else if cy < cx {
                        let v = pivot[y].1.checked_mul(f).ok_or_else(overflow)?.checked_neg().ok_or_else(overflow)?;
                        out.push((cy, v));
                        col_count[cy as usize] += 1;
                        col_rows[cy as usize].push(r);
                        touched.push(cy);
                        y += 1;
                    } else {
                        let v = old[x].1.checked_sub(pivot[y].1.checked_mul(f).ok_or_else(overflow)?).ok_or_else(overflow)?;
                        if v != 0 {
                            out.push((cx, v));
                        } else {
                            col_count[cx as usize] -= 1;
                            touched.push(cx);
                        }
                        x += 1;
                        y += 1;
                    }
                }
                if out.is_empty() {
                    alive[r as usize] = false;
                }
                rows[r as usize] = out;
            }
            pivot_of[c as usize] = pivot_cols.len() as u32;
            pivot_cols.push(c);
            pivot_rows.push((u, pivot.into_iter().filter(|e| e.0 != c).collect::<Vec<_>>()));
            touched.sort_unstable();
            touched.dedup();
            for j in touched {
                let k = col_count[j as usize];
                if k > 0 && pivot_of[j as usize] == NONE {
                    heap.push(Reverse((k, j)));
                }
            }
        }

        let mut dense_of = vec![NONE; ncols];
        let mut dense_cols = 0usize;
        for c in 0..ncols {
            if pivot_of[c] == NONE {
                dense_of[c] = dense_cols as u32;
                dense_cols += 1;
            }
        }
        let core: Vec<Vec<BigInt>> = rows
            .iter()
            .zip(&alive)
            .filter(|(r, &a)| a && !r.is_empty())
            .map(|(r, _)| {
                let mut d = vec![BigInt::zero(); dense_cols];
                for &(c, v) in r {
                    d[dense_of[c as usize] as usize] = BigInt::from(v);
                }
                d
            })
            .collect();
        let (core_diag, transform) = dense_smith(core, dense_cols);
        let mut diagonal: Vec<BigInt> = vec![BigInt::one(); pivot_cols.len()];
        diagonal.extend(core_diag.iter().cloned());
        let free_rank = ncols - diagonal.len();
        Ok(IntQuotient {
            ncols,
            pivot_of,
            pivot_cols,
            pivot_rows,
            dense_of,
            transform,
            core_diag,
            smith: SmithForm { diagonal, free_rank },
        })
    }

    pub fn ncols(&self) -> usize {
        self.ncols
    }

    pub fn smith(&self) -> &SmithForm {
        &self.smith
    }

    /// Coordinates of the class of `v`: residues modulo each non-unit invariant factor,
    /// then the free coordinates.
    pub fn coordinates(&self, v: &SparseVec) -> Vec<BigInt> {
        let w = self.core_vector(v);
        let (torsion, free) = self.core_coordinates(&w);
        let mut out: Vec<BigInt> = torsion
            .into_iter()
            .zip(&self.core_diag)
            .filter(|(_, d)| !d.is_one())
            .map(|(x, d)| x.mod_floor(d))
            .collect();
        out.extend(free);
        out
    }

    /// Order of the class of `v` in the cokernel.
    pub fn element_order(&self, v: &SparseVec) -> Order {
        let w = self.core_vector(v);
        let (torsion, free) = self.core_coordinates(&w);
        if free.iter().any(|x| !x.is_zero()) {
            return Order::Infinite;
        }
        let mut order = BigInt::one();
        for (x, d) in torsion.iter().zip(&self.core_diag) {
            let g = x.gcd(d);
            order = order.lcm(&(d / g));
        }
        Order::Finite(order)
    }

    /// Is `v` in the integral row space?
    pub fn contains(&self, v: &SparseVec) -> bool {
        self.element_order(v).is_zero_class()
    }

    /// Substitutes pivot columns away, leaving a vector on the dense core.
    fn core_vector(&self, v: &SparseVec) -> Vec<BigInt> {
        let mut work: HashMap<u32, BigInt> = HashMap::new();
        let mut heap: BinaryHeap<Reverse<u32>> = BinaryHeap::new();
        for &(c, x) in v.entries() {
            assert!((c as usize) < self.ncols, "vector column out of range");
            work.insert(c, BigInt::from(x));
            if self.pivot_of[c as usize] != NONE {
                heap.push(Reverse(self.pivot_of[c as usize]));
            }
        }
        while let Some(Reverse(pi)) = heap.pop() {
            let c = self.pivot_cols[pi as usize];
            let Some(x) = work.remove(&c) else { continue };
            let (u, row) = &self.pivot_rows[pi as usize];
            let f = x * u;
            for &(j, a) in row {
                let e = work.entry(j).or_insert_with(BigInt::zero);
                let was_zero = e.is_zero();
                *e -= &f * a;
                if e.is_zero() {
                    work.remove(&j);
                } else if was_zero && self.pivot_of[j as usize] != NONE {
                    heap.push(Reverse(self.pivot_of[j as usize]));
                }
            }
        }
        let mut out = vec![BigInt::zero(); self.transform.len()];
        for (c, x) in work {
            let d = self.dense_of[c as usize];
            debug_assert!(d != NONE);
            out[d as usize] = x;
        }
        out
    }

    fn core_coordinates(&self, w: &[BigInt]) -> (Vec<BigInt>, Vec<BigInt>) {
        let m = self.transform.len();
        let mut coords = vec![BigInt::zero(); m];
        for (i, x) in w.iter().enumerate() {
            if x.is_zero() {
                continue;
            }
            for (k, t) in self.transform[i].iter().enumerate() {
                if !t.is_zero() {
                    coords[k] += x * t;
                }
            }
        }
        let free = coords.split_off(self.core_diag.len());
        (coords, free)
    }
}

/// Smith form `D = U A V` of a dense integer matrix. Returns the nonzero diagonal
/// (divisibility chain) and `V`.
fn dense_smith(mut a: Vec<Vec<BigInt>>, ncols: usize) -> (Vec<BigInt>, Vec<Vec<BigInt>>) {
    let mut v: Vec<Vec<BigInt>> = (0..ncols)
        .map(|i| (0..ncols).map(|j| if i == j { BigInt::one() } else { BigInt::zero() }).collect())
        .collect();
    a.retain(|r| r.iter().any(|x| !x.is_zero()));
    let nrows = a.len();
    let mut diag = Vec::new();
    let col_op = |a: &mut Vec<Vec<BigInt>>, v: &mut Vec<Vec<BigInt>>, dst: usize, src: usize, q: &BigInt, from: usize| {
        // column dst -= q * column src
        for row in a[from..].iter_mut() {
            if !row[src].is_zero() {
                let t = &row[src] * q;
                row[dst] -= t;
            }
        }
        for row in v.iter_mut() {
            if !row[src].is_zero() {
                let t = &row[src] * q;
                row[dst] -= t;
            }
        }
    };
    let swap_cols = |a: &mut Vec<Vec<BigInt>>, v: &mut Vec<Vec<BigInt>>, i: usize, j: usize| {
        if i != j {
            for row in a.iter_mut() {
                row.swap(i, j);
            }
            for row in v.iter_mut() {
                row.swap(i, j);
            }
        }
    };
    let mut t = 0usize;
    while t < nrows.min(ncols) {
        // smallest nonzero entry of the remaining block
        let mut best: Option<(usize, usize)> = None;
        for (i, row) in a.iter().enumerate().skip(t) {
            for (j, x) in row.iter().enumerate().skip(t) {
                if !x.is_zero() && best.is_none_or(|(bi, bj)| x.abs() < a[bi][bj].abs()) {
                    best = Some((i, j));
                    if x.abs().is_one() {
                        break;
                    }
                }
            }
            if best.is_some_and(|(bi, bj)| a[bi][bj].abs().is_one()) {
                break;
            }
        }
        let Some((bi, bj)) = best else { break };
        a.swap(t, bi);
        swap_cols(&mut a, &mut v, t, bj);
        loop {
            let mut clean = true;
            // clear column t below the pivot
            for i in t + 1..nrows {
                if a[i][t].is_zero() {
                    continue;
                }
                let q = a[i][t].div_floor(&a[t][t]);
                if !q.is_zero() {
                    let (head, tail) = a.split_at_mut(i);
                    let pivot = &head[t];
                    for (x, y) in tail[0][t..].iter_mut().zip(&pivot[t..]) {
                        if !y.is_zero() {
                            *x -= &q * y;
                        }
                    }
                }
                if !a[i][t].is_zero() {
                    a.swap(t, i);
                    clean = false;
                }
            }
            // clear row t right of the pivot
            for j in t + 1..ncols {
                if a[t][j].is_zero() {
                    continue;
                }
                let q = a[t][j].div_floor(&a[t][t]);
                if !q.is_zero() {
                    col_op(&mut a, &mut v, j, t, &q, t);
                }
                if !a[t][j].is_zero() {
                    swap_cols(&mut a, &mut v, t, j);
                    clean = false;
                }
            }
            if clean {
                // divisibility: the pivot must divide every remaining entry
                let p = a[t][t].clone();
                let bad = (t + 1..nrows).find(|&i| a[i][t + 1..].iter().any(|x| !(x % &p).is_zero()));
                match bad {
                    Some(i) => {
                        let (head, tail) = a.split_at_mut(i);
                        for (x, y) in head[t][t..].iter_mut().zip(&tail[0][t..]) {
                            *x += y;
                        }
                    }
                    None => break,
                }
            }
        }
        if a[t][t].is_negative() {
            for row in a.iter_mut() {
                row[t] = -&row[t];
            }
            for row in v.iter_mut() {
                row[t] = -&row[t];
            }
        }
        diag.push(a[t][t].clone());
        t += 1;
    }
    (diag, v)
}
