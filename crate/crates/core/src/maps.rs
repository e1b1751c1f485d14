//! Structure maps between symbol groups: multiplication `∇`, comultiplication `Δ⁻`
//! and zero padding.
//!
//! Maps are defined on symbol bases; whether they descend to the quotients is a
//! property checked by membership tests, not assumed.

use std::collections::BTreeMap;

use crate::error::{Error, Result};
use crate::group::{Character, DualSurjection};
use crate::linalg::{ModQuotient, SparseVec};
use crate::symbols::{Symbol, SymbolBasis};

/// A sparse element of `S_{n'}(G') ⊗ S_{n''}(G'')` as `(left, right, coefficient)` triples.
#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct TensorVec {
    entries: Vec<(u32, u32, i64)>,
}

impl TensorVec {
    pub fn from_triples<I: IntoIterator<Item = (u32, u32, i64)>>(triples: I) -> Self {
        let mut acc: BTreeMap<(u32, u32), i64> = BTreeMap::new();
        for (l, r, c) in triples {
            *acc.entry((l, r)).or_insert(0) += c;
        }
        TensorVec { entries: acc.into_iter().filter(|e| e.1 != 0).map(|((l, r), c)| (l, r, c)).collect() }
    }

    pub fn entries(&self) -> &[(u32, u32, i64)] {
        &self.entries
    }

    pub fn is_zero(&self) -> bool {
        self.entries.is_empty()
    }

    pub fn add(&self, other: &TensorVec) -> TensorVec {
        TensorVec::from_triples(self.entries.iter().chain(&other.entries).copied())
    }

    pub fn sub(&self, other: &TensorVec) -> TensorVec {
        TensorVec::from_triples(
            self.entries.iter().copied().chain(other.entries.iter().map(|&(l, r, c)| (l, r, -c))),
        )
    }

    /// `left ⊗ right` for single vectors.
    pub fn outer(left: &SparseVec, right: &SparseVec) -> TensorVec {
        TensorVec::from_triples(
            left.entries()
                .iter()
                .flat_map(|&(l, a)| right.entries().iter().map(move |&(r, b)| (l, r, a * b))),
        )
    }

    /// Is the class zero in `(S'/R') ⊗ (S''/R'')` over `F_p`? Both reductions are
    /// linear projections onto complements of the row spaces, so the class vanishes
    /// exactly when the reduced tensor does.
    pub fn vanishes_in(&self, left: &ModQuotient, right: &ModQuotient) -> Result<bool> {
        if left.prime() != right.prime() {
            return Err(Error::DimensionMismatch("tensor factors over different primes".into()));
        }
        let p = left.prime();
        let mut acc: BTreeMap<(u32, u32), u64> = BTreeMap::new();
        let mut cache_l: BTreeMap<u32, Vec<(u32, u32)>> = BTreeMap::new();
        let mut cache_r: BTreeMap<u32, Vec<(u32, u32)>> = BTreeMap::new();
        for &(l, r, c) in &self.entries {
            let nl = cache_l.entry(l).or_insert_with(|| left.normal_form(&SparseVec::unit(l))).clone();
            let nr = cache_r.entry(r).or_insert_with(|| right.normal_form(&SparseVec::unit(r))).clone();
            let c = c.rem_euclid(p as i64) as u64;
            for &(i, x) in &nl {
                for &(j, y) in &nr {
                    let e = acc.entry((i, j)).or_insert(0);
                    *e = (*e + c * (x as u64 * y as u64 % p)) % p;
                }
            }
        }
        Ok(acc.values().all(|&v| v == 0))
    }
}

/// `∇`: `[a'_1..a'_{n'}] ⊗ [a''_1..a''_{n''}] ↦ Σ [a_1..a_{n'}, a''_1..a''_{n''}]` over all
/// lifts `a_i` of `a'_i`, with `a''_j` embedded into `A`.
pub struct Multiplication<'a> {
    seq: &'a DualSurjection,
    left: &'a SymbolBasis,
    right: &'a SymbolBasis,
    target: &'a SymbolBasis,
}

impl<'a> Multiplication<'a> {
    pub fn new(
        seq: &'a DualSurjection,
        left: &'a SymbolBasis,
        right: &'a SymbolBasis,
        target: &'a SymbolBasis,
    ) -> Result<Self> {
        if left.group() != seq.target() || right.group() != seq.kernel() || target.group() != seq.source() {
            return Err(Error::DimensionMismatch("bases do not match the exact sequence".into()));
        }
        if left.n() + right.n() != target.n() {
            return Err(Error::DimensionMismatch(format!(
                "n' + n'' = {} + {} differs from n = {}",
                left.n(),
                right.n(),
                target.n()
            )));
        }
        Ok(Multiplication { seq, left, right, target })
    }

    fn on_symbols(&self, l: &Symbol, r: &Symbol) -> Result<SparseVec> {
        let embedded: Vec<Character> = r.entries().iter().map(|c| self.seq.embed_kernel(c)).collect();
        let lifts: Vec<Vec<Character>> =
            l.entries().iter().map(|a| self.seq.enumerate_lifts(a)).collect::<Result<_>>()?;
        let mut out = Vec::new();
        let mut choice = vec![0usize; lifts.len()];
        loop {
            let mut entries = embedded.clone();
            entries.extend(choice.iter().zip(&lifts).map(|(&k, ls)| ls[k].clone()));
            let s = Symbol::new(self.target.group(), entries)?;
            let idx = self
                .target
                .index_of(&s)
                .unwrap_or_else(|| panic!("product symbol {s} must generate the character group"));
            out.push((idx as u32, 1i64));
            let mut i = 0;
            loop {
                if i == choice.len() {
                    return Ok(SparseVec::from_pairs(out));
                }
                choice[i] += 1;
                if choice[i] < lifts[i].len() {
                    break;
                }
                choice[i] = 0;
                i += 1;
            }
        }
    }

    pub fn apply(&self, left: &SparseVec, right: &SparseVec) -> Result<SparseVec> {
        let mut acc = SparseVec::new();
        for &(l, a) in left.entries() {
            for &(r, b) in right.entries() {
                let img = self.on_symbols(&self.left.symbol(l as usize), &self.right.symbol(r as usize))?;
                acc = acc.add_scaled(&img, a * b);
            }
        }
        Ok(acc)
    }
}

/// `Δ⁻`: `[a_1..a_n] ↦ Σ [a_{I'} mod A''] ⊗ [a_{I''}]` over subdivisions with every
/// `a_j, j ∈ I''`, in `A''` and generating it.
pub struct Comultiplication<'a> {
    seq: &'a DualSurjection,
    source: &'a SymbolBasis,
    left: &'a SymbolBasis,
    right: &'a SymbolBasis,
}

impl<'a> Comultiplication<'a> {
    pub fn new(
        seq: &'a DualSurjection,
        source: &'a SymbolBasis,
        left: &'a SymbolBasis,
        right: &'a SymbolBasis,
    ) -> Result<Self> {
        if left.group() != seq.target() || right.group() != seq.kernel() || source.group() != seq.source() {
            return Err(Error::DimensionMismatch("bases do not match the exact sequence".into()));
        }
        if left.n() + right.n() != source.n() {
            return Err(Error::DimensionMismatch(format!(
                "n' + n'' = {} + {} differs from n = {}",
                left.n(),
                right.n(),
                source.n()
            )));
        }
        Ok(Comultiplication { seq, source, left, right })
    }

    pub fn on_symbol(&self, s: &Symbol) -> Result<TensorVec> {
        let n = s.len();
        let n2 = self.right.n();
        let pre: Vec<Option<Character>> = s.entries().iter().map(|a| self.seq.kernel_preimage(a)).collect();
        let mut out = Vec::new();
        for mask in 0u32..(1 << n) {
            if mask.count_ones() as usize != n2 {
                continue;
            }
            let mut right = Vec::with_capacity(n2);
            let mut left = Vec::with_capacity(n - n2);
            let mut ok = true;
            for (i, a) in s.entries().iter().enumerate() {
                if mask >> i & 1 == 1 {
                    match &pre[i] {
                        Some(c) => right.push(c.clone()),
                        None => {
                            ok = false;
                            break;
                        }
                    }
                } else {
                    left.push(self.seq.project(a));
                }
            }
            if !ok || !self.seq.kernel().generates(&right)? {
                continue;
            }
            let rs = Symbol::new(self.seq.kernel(), right)?;
            let ls = Symbol::new(self.seq.target(), left)?;
            let r = self.right.index_of(&rs).expect("right factor generates A''");
            let l = self
                .left
                .index_of(&ls)
                .unwrap_or_else(|| panic!("left factor {ls} must generate A'"));
            out.push((l as u32, r as u32, 1));
        }
        Ok(TensorVec::from_triples(out))
    }

    pub fn apply(&self, v: &SparseVec) -> Result<TensorVec> {
        let mut triples = Vec::new();
        for &(c, x) in v.entries() {
            let t = self.on_symbol(&self.source.symbol(c as usize))?;
            triples.extend(t.entries().iter().map(|&(l, r, y)| (l, r, x * y)));
        }
        Ok(TensorVec::from_triples(triples))
    }

    /// Renders a tensor as `[l] ⊗ [r]` terms.
    pub fn format(&self, t: &TensorVec) -> String {
        format_tensor(self.left, self.right, t)
    }
}

pub fn format_tensor(left: &SymbolBasis, right: &SymbolBasis, t: &TensorVec) -> String {
    if t.is_zero() {
        return "0".into();
    }
    let mut parts = Vec::new();
    for &(l, r, c) in t.entries() {
        let term = format!("{}⊗{}", left.symbol(l as usize), right.symbol(r as usize));
        parts.push(match c {
            1 => format!("+ {term}"),
            -1 => format!("- {term}"),
            c if c < 0 => format!("- {}{term}", -c),
            c => format!("+ {c}{term}"),
        });
    }
    let s = parts.join(" ");
    s.strip_prefix("+ ").map(str::to_string).unwrap_or(s)
}

/// Appends zeros to every symbol of `v` (from basis `from`, length `m`) to land in
/// `to` (length `n >= m`).
pub fn pad_with_zeros(from: &SymbolBasis, v: &SparseVec, to: &SymbolBasis) -> Result<SparseVec> {
    if from.group() != to.group() || from.n() > to.n() {
        return Err(Error::DimensionMismatch(format!("cannot pad length {} to {}", from.n(), to.n())));
    }
    let pairs = v
        .entries()
        .iter()
        .map(|&(c, x)| {
            let s = from.symbol(c as usize).padded(to.group(), to.n());
            let idx = to.index_of(&s).unwrap_or_else(|| panic!("padded symbol {s} must stay admissible"));
            (idx as u32, x)
        })
        .collect::<Vec<_>>();
    Ok(SparseVec::from_pairs(pairs))
}
