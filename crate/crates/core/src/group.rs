//! Finite abelian groups in invariant-factor form, their characters, automorphisms
//! and the dual surjections `A -> A'` attached to a subgroup `G' ⊂ G`.
//!
//! A group and its character group are both stored as `Z/n_1 x ... x Z/n_k` with
//! `n_1 | n_2 | ... | n_k`. Elements are residue tuples; for fast indexing an element
//! is also encoded as a mixed-radix integer whose numeric order agrees with the
//! lexicographic order on residue tuples.

use std::fmt;
use std::str::FromStr;

use num_integer::Integer;

use crate::error::{Error, Result};

/// A finite abelian group `Z/n_1 x ... x Z/n_k`, `n_i | n_{i+1}`, `n_i >= 2`.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct FinAbGroup {
    factors: Vec<u32>,
}

/// An element of a [`FinAbGroup`], usually a character of the dual group.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Character {
    residues: Vec<u32>,
}

impl Character {
    pub fn new(residues: Vec<u32>) -> Self {
        Character { residues }
    }

    pub fn residues(&self) -> &[u32] {
        &self.residues
    }

    pub fn is_zero(&self) -> bool {
        self.residues.iter().all(|&r| r == 0)
    }
}

impl fmt::Display for Character {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self.residues.len() {
            0 => write!(f, "0"),
            1 => write!(f, "{}", self.residues[0]),
            _ => {
                write!(f, "(")?;
                for (i, r) in self.residues.iter().enumerate() {
                    if i > 0 {
                        write!(f, ",")?;
                    }
                    write!(f, "{r}")?;
                }
                write!(f, ")")
            }
        }
    }
}

fn prime_power_parts(mut n: u32) -> Vec<(u32, u32)> {
    let mut out = Vec::new();
    let mut d = 2u32;
    while (d as u64) * (d as u64) <= n as u64 {
        if n.is_multiple_of(d) {
            let mut q = 1;
            while n.is_multiple_of(d) {
                n /= d;
                q *= d;
            }
            out.push((d, q));
        }
        d += 1;
    }
    if n > 1 {
        out.push((n, n));
    }
    out
}

impl FinAbGroup {
    pub fn trivial() -> Self {
        FinAbGroup { factors: Vec::new() }
    }

    /// The cyclic group `C_N`.
    pub fn cyclic(n: i64) -> Result<Self> {
        if n <= 0 || n > u32::MAX as i64 {
            return Err(Error::InvalidGroup(format!("cyclic order must be positive, got {n}")));
        }
        Self::from_cyclic_orders(&[n as u32])
    }

    /// Normalizes an arbitrary product of cyclic groups into invariant-factor form.
    pub fn from_cyclic_orders(orders: &[u32]) -> Result<Self> {
        if orders.contains(&0) {
            return Err(Error::InvalidGroup("cyclic factor of order 0".into()));
        }
        let mut by_prime: std::collections::BTreeMap<u32, Vec<u32>> = Default::default();
        for &n in orders {
            for (p, q) in prime_power_parts(n) {
                by_prime.entry(p).or_default().push(q);
            }
        }
        let k = by_prime.values().map(Vec::len).max().unwrap_or(0);
        let mut factors = vec![1u32; k];
        for powers in by_prime.values_mut() {
            powers.sort_unstable_by(|a, b| b.cmp(a));
            for (i, q) in powers.iter().enumerate() {
                factors[k - 1 - i] = factors[k - 1 - i]
                    .checked_mul(*q)
                    .ok_or_else(|| Error::InvalidGroup("group order overflows".into()))?;
            }
        }
        Ok(FinAbGroup { factors })
    }

    pub fn product(&self, other: &FinAbGroup) -> Result<Self> {
        let mut all = self.factors.clone();
        all.extend_from_slice(&other.factors);
        Self::from_cyclic_orders(&all)
    }

    pub fn factors(&self) -> &[u32] {
        &self.factors
    }

    /// Number of invariant factors (minimal number of generators).
    pub fn rank(&self) -> usize {
        self.factors.len()
    }

    pub fn order(&self) -> u64 {
        self.factors.iter().map(|&n| n as u64).product()
    }

    pub fn is_cyclic(&self) -> bool {
        self.factors.len() <= 1
    }

    /// Exponent of the group (largest invariant factor).
    pub fn exponent(&self) -> u32 {
        self.factors.last().copied().unwrap_or(1)
    }

    pub fn zero(&self) -> Character {
        Character { residues: vec![0; self.factors.len()] }
    }

    /// Builds a character from integers, reducing each coordinate.
    pub fn character(&self, values: &[i64]) -> Result<Character> {
        if values.len() != self.factors.len() {
            return Err(Error::CharacterMismatch {
                character: format!("{values:?}"),
                group: self.to_string(),
            });
        }
        Ok(Character {
            residues: values
                .iter()
                .zip(&self.factors)
                .map(|(&v, &n)| v.rem_euclid(n as i64) as u32)
                .collect(),
        })
    }

    pub fn contains(&self, c: &Character) -> bool {
        c.residues.len() == self.factors.len()
            && c.residues.iter().zip(&self.factors).all(|(&r, &n)| r < n)
    }

    pub fn check(&self, c: &Character) -> Result<()> {
        if self.contains(c) {
            Ok(())
        } else {
            Err(Error::CharacterMismatch { character: c.to_string(), group: self.to_string() })
        }
    }

    pub fn add(&self, a: &Character, b: &Character) -> Character {
        Character {
            residues: a
                .residues
                .iter()
                .zip(&b.residues)
                .zip(&self.factors)
                .map(|((&x, &y), &n)| ((x as u64 + y as u64) % n as u64) as u32)
                .collect(),
        }
    }

    pub fn neg(&self, a: &Character) -> Character {
        Character {
            residues: a
                .residues
                .iter()
                .zip(&self.factors)
                .map(|(&x, &n)| if x == 0 { 0 } else { n - x })
                .collect(),
        }
    }

    pub fn sub(&self, a: &Character, b: &Character) -> Character {
        self.add(a, &self.neg(b))
    }

    pub fn scale(&self, a: &Character, k: i64) -> Character {
        Character {
            residues: a
                .residues
                .iter()
                .zip(&self.factors)
                .map(|(&x, &n)| ((x as i64 * k.rem_euclid(n as i64)) % n as i64) as u32)
                .collect(),
        }
    }

    pub fn element_order(&self, a: &Character) -> u32 {
        a.residues
            .iter()
            .zip(&self.factors)
            .map(|(&x, &n)| n / n.gcd(&x))
            .fold(1, |acc, o| acc.lcm(&o))
    }

    /// Mixed-radix index; the numeric order agrees with lexicographic order on residues.
    pub fn index_of(&self, a: &Character) -> u32 {
        a.residues.iter().zip(&self.factors).fold(0u32, |acc, (&x, &n)| acc * n + x)
    }

    pub fn from_index(&self, mut idx: u32) -> Character {
        let mut residues = vec![0u32; self.factors.len()];
        for (slot, &n) in residues.iter_mut().zip(&self.factors).rev() {
            *slot = idx % n;
            idx /= n;
        }
        Character { residues }
    }

    pub fn elements(&self) -> impl Iterator<Item = Character> + '_ {
        (0..self.order() as u32).map(move |i| self.from_index(i))
    }

    /// Index of the subgroup generated by `chars`.
    pub fn subgroup_index(&self, chars: &[Character]) -> Result<u64> {
        for c in chars {
            self.check(c)?;
        }
        let k = self.factors.len();
        if k == 0 {
            return Ok(1);
        }
        if k == 1 {
            let n = self.factors[0];
            let g = chars.iter().fold(n, |g, c| g.gcd(&c.residues[0]));
            return Ok(g as u64);
        }
        // Lattice spanned by the characters and n_i e_i; the index is its covolume.
        let mut rows: Vec<Vec<i64>> = chars
            .iter()
            .map(|c| c.residues.iter().map(|&x| x as i64).collect())
            .collect();
        for (i, &n) in self.factors.iter().enumerate() {
            let mut r = vec![0i64; k];
            r[i] = n as i64;
            rows.push(r);
        }
        let mut index = 1u64;
        for col in 0..k {
            // Euclid on column `col` among remaining rows.
            loop {
                let mut nz: Vec<usize> = (0..rows.len()).filter(|&r| rows[r][col] != 0).collect();
                if nz.len() <= 1 {
                    break;
                }
                nz.sort_by_key(|&r| rows[r][col].abs());
                let p = nz[0];
                let pv = rows[p][col];
                for &r in &nz[1..] {
                    let q = rows[r][col].div_euclid(pv);
                    if q != 0 {
                        for j in col..k {
                            let v = rows[r][j] - q * rows[p][j];
                            // n_j e_j stays in the span of the unreduced rows.
                            rows[r][j] = if j > col { v.rem_euclid(self.factors[j] as i64) } else { v };
                        }
                    }
                }
            }
            match (0..rows.len()).find(|&r| rows[r][col] != 0) {
                Some(p) => {
                    index *= rows[p][col].unsigned_abs();
                    rows.swap_remove(p);
                }
                None => unreachable!("n_i e_i keeps every column nonzero"),
            }
        }
        Ok(index)
    }

    /// Condition (G): do `chars` generate the whole group?
    pub fn generates(&self, chars: &[Character]) -> Result<bool> {
        Ok(self.subgroup_index(chars)? == 1)
    }

    pub fn negation(&self) -> Automorphism {
        let images = (0..self.rank())
            .map(|j| {
                let mut e = self.zero();
                e.residues[j] = 1;
                self.neg(&e)
            })
            .collect();
        Automorphism { group: self.clone(), images }
    }

    pub fn identity_automorphism(&self) -> Automorphism {
        let images = (0..self.rank())
            .map(|j| {
                let mut e = self.zero();
                e.residues[j] = 1;
                e
            })
            .collect();
        Automorphism { group: self.clone(), images }
    }

    /// Multiplication by an integer unit `u`, an automorphism whenever `gcd(u, exponent) = 1`.
    pub fn scalar_automorphism(&self, u: i64) -> Result<Automorphism> {
        let id = self.identity_automorphism();
        Automorphism::new(self, id.images.iter().map(|e| self.scale(e, u)).collect())
    }

    /// Every automorphism, by brute force over images of the standard generators.
    pub fn automorphisms(&self) -> Result<Vec<Automorphism>> {
        let k = self.rank();
        let candidates = (self.order() as f64).powi(k as i32);
        if candidates > 5.0e7 {
            return Err(Error::GuardExceeded(format!(
                "automorphism enumeration of {self} needs {candidates:.0} candidates"
            )));
        }
        let per_gen: Vec<Vec<Character>> = self
            .factors
            .iter()
            .map(|&n| {
                self.elements()
                    .filter(|a| n % self.element_order(a) == 0)
                    .collect()
            })
            .collect();
        let mut out = Vec::new();
        let mut choice = vec![0usize; k];
        loop {
            let images: Vec<Character> = (0..k).map(|j| per_gen[j][choice[j]].clone()).collect();
            if self.generates(&images)? {
                out.push(Automorphism { group: self.clone(), images });
            }
            let mut j = 0;
            loop {
                if j == k {
                    return Ok(out);
                }
                choice[j] += 1;
                if choice[j] < per_gen[j].len() {
                    break;
                }
                choice[j] = 0;
                j += 1;
            }
        }
    }
}

impl fmt::Display for FinAbGroup {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.factors.is_empty() {
            return write!(f, "C1");
        }
        for (i, n) in self.factors.iter().enumerate() {
            if i > 0 {
                write!(f, "x")?;
            }
            write!(f, "C{n}")?;
        }
        Ok(())
    }
}

impl FromStr for FinAbGroup {
    type Err = Error;

    /// Parses `C<N>` factors joined by `x`, case-insensitively, e.g. `C2xC4`.
    fn from_str(s: &str) -> Result<Self> {
        let err = || Error::Parse { what: "group spec", input: s.to_string() };
        let lower = s.trim().to_ascii_lowercase();
        if lower.is_empty() {
            return Err(err());
        }
        let mut orders = Vec::new();
        for part in lower.split('x') {
            let digits = part.trim().strip_prefix('c').ok_or_else(err)?;
            let n: u32 = digits.parse().map_err(|_| err())?;
            if n == 0 {
                return Err(err());
            }
            orders.push(n);
        }
        FinAbGroup::from_cyclic_orders(&orders)
    }
}

/// An automorphism of a [`FinAbGroup`], given by the images of the standard generators.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Automorphism {
    group: FinAbGroup,
    images: Vec<Character>,
}

impl Automorphism {
    pub fn new(group: &FinAbGroup, images: Vec<Character>) -> Result<Self> {
        if images.len() != group.rank() {
            return Err(Error::DimensionMismatch(format!(
                "automorphism of {group} needs {} images",
                group.rank()
            )));
        }
        for (img, &n) in images.iter().zip(group.factors()) {
            group.check(img)?;
            if n % group.element_order(img) != 0 {
                return Err(Error::NotInvertible(format!("image {img} has order not dividing {n}")));
            }
        }
        if !group.generates(&images)? {
            return Err(Error::NotInvertible("images do not generate the group".into()));
        }
        Ok(Automorphism { group: group.clone(), images })
    }

    pub fn group(&self) -> &FinAbGroup {
        &self.group
    }

    pub fn apply(&self, a: &Character) -> Character {
        let mut acc = self.group.zero();
        for (&x, img) in a.residues.iter().zip(&self.images) {
            acc = self.group.add(&acc, &self.group.scale(img, x as i64));
        }
        acc
    }
}

/// Smith form with column transform for small integer matrices:
/// returns the diagonal and an unimodular `v` with `rowspan(m) * v = rowspan(diag)`.
fn small_snf(mut a: Vec<Vec<i128>>, cols: usize) -> (Vec<i128>, Vec<Vec<i128>>) {
    let rows = a.len();
    let mut v: Vec<Vec<i128>> = (0..cols)
        .map(|i| (0..cols).map(|j| (i == j) as i128).collect())
        .collect();
    let col_op = |a: &mut Vec<Vec<i128>>, v: &mut Vec<Vec<i128>>, dst: usize, src: usize, q: i128| {
        for row in a.iter_mut() {
            row[dst] -= q * row[src];
        }
        for row in v.iter_mut() {
            row[dst] -= q * row[src];
        }
    };
    let col_swap = |a: &mut Vec<Vec<i128>>, v: &mut Vec<Vec<i128>>, x: usize, y: usize| {
        for row in a.iter_mut() {
            row.swap(x, y);
        }
        for row in v.iter_mut() {
            row.swap(x, y);
        }
    };
    let mut diag = Vec::new();
    for t in 0..rows.min(cols) {
        'pivot: loop {
            let mut best: Option<(usize, usize)> = None;
            for i in t..rows {
                for j in t..cols {
                    if a[i][j] != 0 && best.is_none_or(|(bi, bj)| a[i][j].abs() < a[bi][bj].abs()) {
                        best = Some((i, j));
                    }
                }
            }
            let Some((bi, bj)) = best else { break 'pivot };
            a.swap(t, bi);
            col_swap(&mut a, &mut v, t, bj);
            let mut clean = true;
            for i in t + 1..rows {
                let q = a[i][t].div_euclid(a[t][t]);
                if q != 0 {
                    let pivot_row = a[t].clone();
                    for (x, y) in a[i].iter_mut().zip(&pivot_row) {
                        *x -= q * y;
                    }
                }
                if a[i][t] != 0 {
                    clean = false;
                }
            }
            for j in t + 1..cols {
                let q = a[t][j].div_euclid(a[t][t]);
                if q != 0 {
                    col_op(&mut a, &mut v, j, t, q);
                }
                if a[t][j] != 0 {
                    clean = false;
                }
            }
            if !clean {
                continue;
            }
            let d = a[t][t];
            let bad = (t + 1..rows).find(|&i| (t + 1..cols).any(|j| a[i][j] % d != 0));
            match bad {
                Some(i) => {
                    let r = a[i].clone();
                    for (x, y) in a[t].iter_mut().zip(&r) {
                        *x += y;
                    }
                }
                None => break 'pivot,
            }
        }
        if t < rows && a[t][t] != 0 {
            diag.push(a[t][t].abs());
        } else {
            break;
        }
    }
    while diag.len() < cols {
        diag.push(0);
    }
    (diag, v)
}

/// The dual surjection `A -> A'` with kernel `A''` attached to `0 -> G' -> G -> G'' -> 0`.
///
/// `A' = (G')^∨` is the target, `A'' = (G'')^∨` embeds into `A`.
#[derive(Clone, Debug)]
pub struct DualSurjection {
    source: FinAbGroup,
    target: FinAbGroup,
    kernel: FinAbGroup,
    /// `proj[i][l]`: target coordinate `i` is `sum_l proj[i][l] * a_l mod target factor i`.
    proj: Vec<Vec<i64>>,
    /// `embed[i][l]`: kernel generator `i` maps to the character with coordinates `embed[i][*]`.
    embed: Vec<Vec<i64>>,
    /// Index in `target` -> index of one lift in `source`.
    section: Vec<u32>,
    kernel_elements: Vec<Character>,
}

impl DualSurjection {
    /// For `G = C_N` and its subgroup of order `d`: `A -> Z/d` by reduction, kernel `Z/(N/d)`
    /// embedded by multiplication with `d`.
    pub fn cyclic(n: u32, d: u32) -> Result<Self> {
        if n == 0 || d == 0 || !n.is_multiple_of(d) {
            return Err(Error::InvalidGroup(format!("C{d} is not a subgroup of C{n}")));
        }
        let source = FinAbGroup::cyclic(n as i64)?;
        let target = FinAbGroup::cyclic(d as i64)?;
        let kernel = FinAbGroup::cyclic((n / d) as i64)?;
        let proj = if target.rank() == 1 { vec![vec![1]] } else { vec![] };
        let embed = if kernel.rank() == 1 { vec![vec![d as i64]] } else { vec![] };
        Self::assemble(source, target, kernel, proj, embed)
    }

    /// General construction from generators of the subgroup `G'` (elements of `G`,
    /// written in the coordinates of the invariant-factor decomposition of `G`).
    pub fn from_subgroup(group: &FinAbGroup, generators: &[Vec<i64>]) -> Result<Self> {
        if group.is_cyclic() && group.rank() == 1 {
            let n = group.factors()[0];
            let gens: Vec<u32> = generators
                .iter()
                .map(|g| {
                    if g.len() != 1 {
                        return Err(Error::DimensionMismatch("subgroup generator".into()));
                    }
                    Ok(g[0].rem_euclid(n as i64) as u32)
                })
                .collect::<Result<_>>()?;
            let h = gens.iter().fold(n, |acc, &g| acc.gcd(&g));
            return Self::cyclic(n, n / h);
        }
        let k = group.rank();
        let n = group.factors();
        for g in generators {
            if g.len() != k {
                return Err(Error::DimensionMismatch("subgroup generator".into()));
            }
        }
        // G'' = Z^k / (diag(n) + generators).
        let mut pres: Vec<Vec<i128>> = (0..k)
            .map(|i| (0..k).map(|j| if i == j { n[i] as i128 } else { 0 }).collect())
            .collect();
        pres.extend(generators.iter().map(|g| g.iter().map(|&x| x as i128).collect()));
        let (d, v) = small_snf(pres, k);
        let mut embed: Vec<Vec<i64>> = Vec::new();
        let mut kernel_orders = Vec::new();
        for (i, &di) in d.iter().enumerate() {
            if di > 1 {
                kernel_orders.push(di as u32);
                embed.push(
                    (0..k)
                        .map(|l| ((n[l] as i128 * v[l][i]) / di).rem_euclid(n[l] as i128) as i64)
                        .collect(),
                );
            }
        }
        let kernel = FinAbGroup::from_cyclic_orders(&kernel_orders)?;
        if kernel.factors() != kernel_orders.as_slice() {
            return Err(Error::InvalidGroup("kernel not in invariant-factor form".into()));
        }
        // A' = Z^k / (diag(n) + embedded kernel).
        let mut pres2: Vec<Vec<i128>> = (0..k)
            .map(|i| (0..k).map(|j| if i == j { n[i] as i128 } else { 0 }).collect())
            .collect();
        pres2.extend(embed.iter().map(|e| e.iter().map(|&x| x as i128).collect()));
        let (d2, v2) = small_snf(pres2, k);
        let mut proj = Vec::new();
        let mut target_orders = Vec::new();
        for (j, &ej) in d2.iter().enumerate() {
            if ej > 1 {
                target_orders.push(ej as u32);
                proj.push((0..k).map(|l| v2[l][j].rem_euclid(ej) as i64).collect());
            }
        }
        let target = FinAbGroup::from_cyclic_orders(&target_orders)?;
        if target.factors() != target_orders.as_slice() {
            return Err(Error::InvalidGroup("target not in invariant-factor form".into()));
        }
        Self::assemble(group.clone(), target, kernel, proj, embed)
    }

    fn assemble(
        source: FinAbGroup,
        target: FinAbGroup,
        kernel: FinAbGroup,
        proj: Vec<Vec<i64>>,
        embed: Vec<Vec<i64>>,
    ) -> Result<Self> {
        if source.order() > 4_000_000 {
            return Err(Error::GuardExceeded(format!("dual surjection on {source}")));
        }
        let mut s = DualSurjection {
            source,
            target,
            kernel,
            proj,
            embed,
            section: Vec::new(),
            kernel_elements: Vec::new(),
        };
        let mut section = vec![u32::MAX; s.target.order() as usize];
        for a in s.source.elements() {
            let t = s.target.index_of(&s.project(&a)) as usize;
            if section[t] == u32::MAX {
                section[t] = s.source.index_of(&a);
            }
        }
        if section.contains(&u32::MAX) {
            return Err(Error::InvalidGroup("projection is not surjective".into()));
        }
        s.section = section;
        s.kernel_elements = s.kernel.elements().map(|c| s.embed_kernel(&c)).collect();
        if s.kernel_elements.iter().any(|c| !s.project(c).is_zero()) {
            return Err(Error::InvalidGroup("kernel does not map to zero".into()));
        }
        if s.source.order() != s.target.order() * s.kernel.order() {
            return Err(Error::InvalidGroup("orders do not multiply".into()));
        }
        Ok(s)
    }

    pub fn source(&self) -> &FinAbGroup {
        &self.source
    }

    pub fn target(&self) -> &FinAbGroup {
        &self.target
    }

    pub fn kernel(&self) -> &FinAbGroup {
        &self.kernel
    }

    pub fn project(&self, a: &Character) -> Character {
        let vals: Vec<i64> = self
            .proj
            .iter()
            .map(|row| row.iter().zip(a.residues()).map(|(&c, &x)| c * x as i64).sum())
            .collect();
        self.target.character(&vals).expect("projection has target rank")
    }

    pub fn embed_kernel(&self, c: &Character) -> Character {
        let mut vals = vec![0i64; self.source.rank()];
        for (row, &x) in self.embed.iter().zip(c.residues()) {
            for (v, &e) in vals.iter_mut().zip(row) {
                *v += e * x as i64;
            }
        }
        self.source.character(&vals).expect("embedding has source rank")
    }

    /// If `a` lies in the image of `A''`, its preimage.
    pub fn kernel_preimage(&self, a: &Character) -> Option<Character> {
        self.kernel
            .elements()
            .find(|c| &self.embed_kernel(c) == a)
    }

    /// All lifts of `a'` to `A`, sorted by index; exactly `|A''|` of them.
    pub fn enumerate_lifts(&self, a_prime: &Character) -> Result<Vec<Character>> {
        self.target.check(a_prime)?;
        let base = self.source.from_index(self.section[self.target.index_of(a_prime) as usize]);
        let mut lifts: Vec<Character> =
            self.kernel_elements.iter().map(|k| self.source.add(&base, k)).collect();
        lifts.sort();
        Ok(lifts)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn ch(g: &FinAbGroup, v: &[i64]) -> Character {
        g.character(v).unwrap()
    }

    #[test]
    fn normal_form() {
        assert_eq!(FinAbGroup::cyclic(36).unwrap().factors(), &[36]);
        assert_eq!(FinAbGroup::cyclic(1).unwrap().factors(), &[] as &[u32]);
        assert_eq!(FinAbGroup::cyclic(1).unwrap().order(), 1);
        assert!(FinAbGroup::cyclic(0).is_err());
        assert!(FinAbGroup::cyclic(-3).is_err());
        let g: FinAbGroup = "C4xC2".parse().unwrap();
        assert_eq!(g.factors(), &[2, 4]);
        let g: FinAbGroup = "c2xC3".parse().unwrap();
        assert_eq!(g.factors(), &[6]);
        let g: FinAbGroup = "C6xC4xC2".parse().unwrap();
        assert_eq!(g.factors(), &[2, 2, 12]);
        assert_eq!(g.to_string(), "C2xC2xC12");
        assert!("D6".parse::<FinAbGroup>().is_err());
        assert!("C0".parse::<FinAbGroup>().is_err());
    }

    #[test]
    fn generation() {
        let c2 = FinAbGroup::cyclic(2).unwrap();
        assert!(c2.generates(&[ch(&c2, &[0]), ch(&c2, &[1])]).unwrap());
        let k: FinAbGroup = "C2xC2".parse().unwrap();
        let x1 = ch(&k, &[1, 0]);
        let x2 = ch(&k, &[0, 1]);
        assert!(k.generates(&[x1.clone(), x2.clone()]).unwrap());
        assert!(!k.generates(&[x1.clone(), x1.clone()]).unwrap());
        let c8 = FinAbGroup::cyclic(8).unwrap();
        assert!(!c8.generates(&[ch(&c8, &[2]), ch(&c8, &[4])]).unwrap());
        assert_eq!(c8.subgroup_index(&[ch(&c8, &[2]), ch(&c8, &[4])]).unwrap(), 2);
        let bad = Character::new(vec![9]);
        assert!(c8.generates(&[bad]).is_err());
    }

    #[test]
    fn index_matches_closure() {
        let g: FinAbGroup = "C2xC6".parse().unwrap();
        let elems: Vec<_> = g.elements().collect();
        for a in &elems {
            for b in &elems {
                let mut closure = std::collections::BTreeSet::new();
                for i in 0..6 {
                    for j in 0..6 {
                        closure.insert(g.add(&g.scale(a, i), &g.scale(b, j)));
                    }
                }
                let idx = g.subgroup_index(&[a.clone(), b.clone()]).unwrap();
                assert_eq!(idx * closure.len() as u64, g.order(), "{a} {b}");
            }
        }
    }

    #[test]
    fn automorphism_counts() {
        let k: FinAbGroup = "C2xC2".parse().unwrap();
        assert_eq!(k.automorphisms().unwrap().len(), 6);
        let c12 = FinAbGroup::cyclic(12).unwrap();
        assert_eq!(c12.automorphisms().unwrap().len(), 4);
        assert!(c12.scalar_automorphism(2).is_err());
        let neg = c12.negation();
        assert_eq!(neg.apply(&ch(&c12, &[5])), ch(&c12, &[7]));
    }

    #[test]
    fn cyclic_lifts() {
        let s = DualSurjection::cyclic(4, 2).unwrap();
        let one = ch(s.target(), &[1]);
        let lifts = s.enumerate_lifts(&one).unwrap();
        assert_eq!(lifts, vec![ch(s.source(), &[1]), ch(s.source(), &[3])]);
        let zero = s.target().zero();
        let lifts = s.enumerate_lifts(&zero).unwrap();
        assert_eq!(lifts, vec![ch(s.source(), &[0]), ch(s.source(), &[2])]);

        let s = DualSurjection::cyclic(48, 3).unwrap();
        let lifts = s.enumerate_lifts(&ch(s.target(), &[1])).unwrap();
        let expected: Vec<_> = (0..48).filter(|a| a % 3 == 1).map(|a| ch(s.source(), &[a])).collect();
        assert_eq!(lifts, expected);
        assert_eq!(s.embed_kernel(&ch(s.kernel(), &[5])), ch(s.source(), &[15]));
    }

    #[test]
    fn subgroup_surjection_general() {
        // G = C2 x C4, G' generated by (0,2): G'' = C2 x C2, A' = C2.
        let g: FinAbGroup = "C2xC4".parse().unwrap();
        let s = DualSurjection::from_subgroup(&g, &[vec![0, 2]]).unwrap();
        assert_eq!(s.target().factors(), &[2]);
        assert_eq!(s.kernel().factors(), &[2, 2]);
        for a in s.target().elements() {
            let lifts = s.enumerate_lifts(&a).unwrap();
            assert_eq!(lifts.len(), 4);
            assert!(lifts.iter().all(|l| s.project(l) == a));
        }
        // From a cyclic subgroup spec.
        let c48 = FinAbGroup::cyclic(48).unwrap();
        let s = DualSurjection::from_subgroup(&c48, &[vec![16]]).unwrap();
        assert_eq!(s.target().factors(), &[3]);
        assert_eq!(s.kernel().factors(), &[16]);
    }
}
