//! Symbols `[a_1,…,a_n]`, the basis they span and the relations cutting out the
//! symbol groups.
//!
//! A symbol is an unordered tuple of characters; it is stored sorted by the
//! mixed-radix code of each character, which is the lexicographic order on residue
//! tuples. Bases are enumerated in lexicographic order of the sorted code tuples, so
//! indices are stable across runs and machines.

mod format;
mod relations;

pub use format::{read_matrix, write_matrix, MatrixHeader};
pub use relations::{
    antisymmetry_relations, blowup_relations, general_blowup_relations, minus_relations, AntisymmetryMode,
    RelationMatrix, RelationTag,
};

use std::fmt;

use num_integer::Integer;

use crate::error::{Error, Result};
use crate::group::{Automorphism, Character, FinAbGroup};
use crate::linalg::SparseVec;

const NONE: u32 = u32::MAX;
const LOOKUP_LIMIT: u64 = 100_000_000;

/// Which multisets of characters form the basis.
#[derive(Clone, Copy, Debug, Default, PartialEq, Eq, Hash, serde::Serialize, serde::Deserialize)]
pub enum Admissibility {
    /// Only symbols whose entries generate the character group.
    #[default]
    Generating,
    /// Every multiset of characters. Blow-up relations preserve the generated
    /// subgroup, so this splits as a direct sum over subgroups.
    All,
}

/// A canonical symbol: entries sorted lexicographically.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Symbol {
    entries: Vec<Character>,
}

impl Symbol {
    pub fn new(group: &FinAbGroup, mut entries: Vec<Character>) -> Result<Self> {
        for e in &entries {
            group.check(e)?;
        }
        entries.sort();
        Ok(Symbol { entries })
    }

    /// Builds a symbol of a cyclic group from signed integers.
    pub fn cyclic(group: &FinAbGroup, values: &[i64]) -> Result<Self> {
        let entries = values.iter().map(|&v| group.character(&[v])).collect::<Result<Vec<_>>>()?;
        Symbol::new(group, entries)
    }

    pub fn entries(&self) -> &[Character] {
        &self.entries
    }

    pub fn len(&self) -> usize {
        self.entries.len()
    }

    pub fn is_empty(&self) -> bool {
        self.entries.is_empty()
    }

    /// Condition (G).
    pub fn is_admissible(&self, group: &FinAbGroup) -> Result<bool> {
        group.generates(&self.entries)
    }

    /// Canonical image under an automorphism applied entrywise.
    pub fn map(&self, sigma: &Automorphism) -> Symbol {
        let mut entries: Vec<Character> = self.entries.iter().map(|a| sigma.apply(a)).collect();
        entries.sort();
        Symbol { entries }
    }

    /// Appends zero entries up to length `n`.
    pub fn padded(&self, group: &FinAbGroup, n: usize) -> Symbol {
        let mut entries = self.entries.clone();
        while entries.len() < n {
            entries.push(group.zero());
        }
        entries.sort();
        Symbol { entries }
    }

    /// Parses `[1,2,3]` (cyclic groups, signed values allowed) or `[(1,0),(0,1)]`.
    pub fn parse(group: &FinAbGroup, s: &str) -> Result<Self> {
        let err = || Error::Parse { what: "symbol", input: s.to_string() };
        let body = s.trim().strip_prefix('[').and_then(|t| t.strip_suffix(']')).ok_or_else(err)?;
        let body = body.trim();
        if body.is_empty() {
            return Symbol::new(group, Vec::new());
        }
        let mut entries = Vec::new();
        if body.contains('(') {
            let mut rest = body;
            while let Some(open) = rest.find('(') {
                let close = rest[open..].find(')').ok_or_else(err)? + open;
                let vals = rest[open + 1..close]
                    .split(',')
                    .map(|t| t.trim().parse::<i64>().map_err(|_| err()))
                    .collect::<Result<Vec<_>>>()?;
                entries.push(group.character(&vals)?);
                rest = &rest[close + 1..];
            }
        } else {
            for t in body.split(',') {
                let v: i64 = t.trim().parse().map_err(|_| err())?;
                entries.push(group.character(&[v])?);
            }
        }
        Symbol::new(group, entries)
    }
}

impl fmt::Display for Symbol {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "[")?;
        for (i, e) in self.entries.iter().enumerate() {
            if i > 0 {
                write!(f, ",")?;
            }
            write!(f, "{e}")?;
        }
        write!(f, "]")
    }
}

/// Element arithmetic on mixed-radix codes.
#[derive(Clone, Debug)]
pub(crate) struct Codec {
    factors: Vec<u32>,
    order: u32,
}

impl Codec {
    pub(crate) fn new(group: &FinAbGroup) -> Self {
        Codec { factors: group.factors().to_vec(), order: group.order() as u32 }
    }

    #[inline]
    pub(crate) fn add(&self, a: u32, b: u32) -> u32 {
        if self.factors.len() <= 1 {
            let s = a + b;
            return if s >= self.order { s - self.order } else { s };
        }
        let (mut a, mut b) = (a, b);
        let mut out = 0u32;
        let mut mul = 1u32;
        for &n in self.factors.iter().rev() {
            out += ((a % n + b % n) % n) * mul;
            mul *= n;
            a /= n;
            b /= n;
        }
        out
    }

    #[inline]
    pub(crate) fn neg(&self, a: u32) -> u32 {
        if self.factors.len() <= 1 {
            return if a == 0 { 0 } else { self.order - a };
        }
        let mut a = a;
        let mut out = 0u32;
        let mut mul = 1u32;
        for &n in self.factors.iter().rev() {
            out += ((n - a % n) % n) * mul;
            mul *= n;
            a /= n;
        }
        out
    }

    #[inline]
    pub(crate) fn sub(&self, a: u32, b: u32) -> u32 {
        self.add(a, self.neg(b))
    }
}

fn binomial_table(rows: usize, cols: usize) -> Vec<Vec<u64>> {
    let mut t = vec![vec![0u64; cols + 1]; rows + 1];
    for i in 0..=rows {
        t[i][0] = 1;
        for j in 1..=cols.min(i) {
            t[i][j] = t[i - 1][j - 1].saturating_add(if j < i { t[i - 1][j] } else { 0 });
        }
    }
    t
}

/// Dense indexing of the admissible symbols of length `n`.
#[derive(Clone, Debug)]
pub struct SymbolBasis {
    group: FinAbGroup,
    n: usize,
    mode: Admissibility,
    codec: Codec,
    /// Sorted entry codes, `n` per symbol, in basis order.
    codes: Vec<u32>,
    /// Multiset rank -> basis index.
    lookup: Vec<u32>,
    binom: Vec<Vec<u64>>,
}

impl SymbolBasis {
    /// All symbols satisfying the generation condition.
    pub fn new(group: &FinAbGroup, n: usize) -> Result<Self> {
        Self::with_mode(group, n, Admissibility::Generating)
    }

    pub fn with_mode(group: &FinAbGroup, n: usize, mode: Admissibility) -> Result<Self> {
        if n == 0 {
            return Err(Error::DimensionMismatch("symbols need n >= 1".into()));
        }
        let order = group.order();
        let binom = binomial_table(order as usize + n, n);
        let total = binom[order as usize + n - 1][n];
        if total > LOOKUP_LIMIT {
            return Err(Error::GuardExceeded(format!("{total} multisets of size {n} over {group}")));
        }
        let codec = Codec::new(group);
        let mut basis = SymbolBasis {
            group: group.clone(),
            n,
            mode,
            codec,
            codes: Vec::new(),
            lookup: vec![NONE; total as usize],
            binom,
        };
        let cyclic_order = if group.is_cyclic() { Some(order as u32) } else { None };
        let mut cur = vec![0u32; n];
        let mut count = 0u32;
        loop {
            let keep = match mode {
                Admissibility::All => true,
                Admissibility::Generating => match cyclic_order {
                    Some(m) => cur.iter().fold(m, |g, &a| g.gcd(&a)) == 1,
                    None => {
                        let chars: Vec<Character> = cur.iter().map(|&c| group.from_index(c)).collect();
                        group.generates(&chars)?
                    }
                },
            };
            if keep {
                let r = basis.multiset_rank(&cur);
                basis.lookup[r] = count;
                basis.codes.extend_from_slice(&cur);
                count += 1;
            }
            // next nondecreasing tuple in lexicographic order
            let mut i = n;
            loop {
                if i == 0 {
                    return Ok(basis);
                }
                i -= 1;
                if cur[i] + 1 < order as u32 {
                    let v = cur[i] + 1;
                    for slot in cur[i..].iter_mut() {
                        *slot = v;
                    }
                    break;
                }
            }
        }
    }

    pub fn group(&self) -> &FinAbGroup {
        &self.group
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn mode(&self) -> Admissibility {
        self.mode
    }

    pub fn len(&self) -> usize {
        self.codes.len() / self.n
    }

    pub fn is_empty(&self) -> bool {
        self.codes.is_empty()
    }

    pub(crate) fn codec(&self) -> &Codec {
        &self.codec
    }

    /// Sorted entry codes of basis element `i`.
    pub(crate) fn codes(&self, i: usize) -> &[u32] {
        &self.codes[i * self.n..(i + 1) * self.n]
    }

    fn multiset_rank(&self, sorted: &[u32]) -> usize {
        sorted
            .iter()
            .enumerate()
            .map(|(i, &a)| self.binom[a as usize + i][i + 1])
            .sum::<u64>() as usize
    }

    /// Index of the multiset with the given codes (any order).
    pub(crate) fn index_of_codes(&self, codes: &mut [u32]) -> Option<u32> {
        codes.sort_unstable();
        let r = self.lookup[self.multiset_rank(codes)];
        (r != NONE).then_some(r)
    }

    pub fn symbol(&self, i: usize) -> Symbol {
        Symbol { entries: self.codes(i).iter().map(|&c| self.group.from_index(c)).collect() }
    }

    pub fn symbols(&self) -> impl Iterator<Item = Symbol> + '_ {
        (0..self.len()).map(move |i| self.symbol(i))
    }

    pub fn index_of(&self, s: &Symbol) -> Option<usize> {
        if s.len() != self.n || s.entries.iter().any(|e| !self.group.contains(e)) {
            return None;
        }
        let mut codes: Vec<u32> = s.entries.iter().map(|e| self.group.index_of(e)).collect();
        self.index_of_codes(&mut codes).map(|i| i as usize)
    }

    /// Basis index of `s`, or an error naming the inadmissible symbol.
    pub fn require(&self, s: &Symbol) -> Result<usize> {
        if s.len() != self.n {
            return Err(Error::DimensionMismatch(format!("symbol {s} has length {}, expected {}", s.len(), self.n)));
        }
        self.index_of(s).ok_or_else(|| Error::Inadmissible(s.to_string()))
    }

    /// The vector `Σ c_i e(s_i)`.
    pub fn vector(&self, terms: &[(i64, Symbol)]) -> Result<SparseVec> {
        let pairs = terms
            .iter()
            .map(|(c, s)| Ok((self.require(s)? as u32, *c)))
            .collect::<Result<Vec<_>>>()?;
        Ok(SparseVec::from_pairs(pairs))
    }

    /// Parses a signed sum such as `[1,2] - 2[0,3] + [2,2]`.
    pub fn parse_vector(&self, s: &str) -> Result<SparseVec> {
        let err = || Error::Parse { what: "symbol combination", input: s.to_string() };
        let mut terms = Vec::new();
        let mut rest = s.trim();
        let mut sign = 1i64;
        while !rest.is_empty() {
            if let Some(r) = rest.strip_prefix('+') {
                rest = r.trim_start();
                continue;
            }
            if let Some(r) = rest.strip_prefix('-') {
                sign = -sign;
                rest = r.trim_start();
                continue;
            }
            let open = rest.find('[').ok_or_else(err)?;
            let coef_text = rest[..open].trim().trim_end_matches('*').trim();
            let coef: i64 = if coef_text.is_empty() { 1 } else { coef_text.parse().map_err(|_| err())? };
            let close = rest.find(']').ok_or_else(err)?;
            terms.push((sign * coef, Symbol::parse(&self.group, &rest[open..=close])?));
            sign = 1;
            rest = rest[close + 1..].trim_start();
        }
        self.vector(&terms)
    }

    /// Renders a vector as a signed sum of symbols.
    pub fn format_vector(&self, v: &SparseVec) -> String {
        if v.is_zero() {
            return "0".into();
        }
        let mut out = String::new();
        for (k, &(c, x)) in v.entries().iter().enumerate() {
            let s = self.symbol(c as usize);
            match (k, x) {
                (0, 1) => out.push_str(&s.to_string()),
                (0, -1) => out.push_str(&format!("-{s}")),
                (0, _) => out.push_str(&format!("{x}{s}")),
                (_, 1) => out.push_str(&format!(" + {s}")),
                (_, -1) => out.push_str(&format!(" - {s}")),
                (_, x) if x < 0 => out.push_str(&format!(" - {}{s}", -x)),
                (_, x) => out.push_str(&format!(" + {x}{s}")),
            }
        }
        out
    }

    /// The permutation `i -> index(canon(σ(s_i)))` induced by an automorphism.
    pub fn apply_automorphism(&self, sigma: &Automorphism) -> Result<Vec<u32>> {
        if sigma.group() != &self.group {
            return Err(Error::DimensionMismatch("automorphism of a different group".into()));
        }
        let images: Vec<u32> =
            (0..self.group.order() as u32).map(|c| self.group.index_of(&sigma.apply(&self.group.from_index(c)))).collect();
        let mut perm = Vec::with_capacity(self.len());
        let mut buf = vec![0u32; self.n];
        for i in 0..self.len() {
            for (b, &c) in buf.iter_mut().zip(self.codes(i)) {
                *b = images[c as usize];
            }
            perm.push(self.index_of_codes(&mut buf).ok_or_else(|| Error::NotInvertible("image leaves the basis".into()))?);
        }
        Ok(perm)
    }
}
