//! Ranks and row-space membership over `Q`, by agreement of large random primes or
//! by exact fraction-free elimination.

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{Signed, Zero};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use super::{is_prime, ModQuotient, SparseMatrix, SparseVec};
use crate::error::{Error, Result};

/// How rational answers are obtained.
#[derive(Clone, Debug)]
pub struct RationalOptions {
    /// Seeds the choice of primes; verdicts do not depend on it.
    pub seed: u64,
    /// Use exact integer elimination instead of modular agreement.
    pub certify: bool,
    /// Total number of primes tried before reporting a disagreement.
    pub max_primes: usize,
}

impl Default for RationalOptions {
    fn default() -> Self {
        RationalOptions { seed: 0x5eed, certify: false, max_primes: 3 }
    }
}

fn random_primes(seed: u64, count: usize) -> Vec<u64> {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut out: Vec<u64> = Vec::with_capacity(count);
    while out.len() < count {
        let c = rng.gen_range((1u64 << 30)..(1u64 << 31)) | 1;
        if is_prime(c) && !out.contains(&c) {
            out.push(c);
        }
    }
    out
}

enum Engine {
    Modular(Vec<ModQuotient>),
    Exact(ExactQuotient),
}

/// `Q^M / rowspan` with a membership test.
pub struct RationalQuotient {
    ncols: usize,
    rank: usize,
    engine: Engine,
}

impl RationalQuotient {
    pub fn new(matrix: &SparseMatrix, opts: &RationalOptions) -> Result<Self> {
        if opts.certify {
            let exact = ExactQuotient::new(matrix);
            return Ok(RationalQuotient { ncols: matrix.ncols(), rank: exact.rank(), engine: Engine::Exact(exact) });
        }
        let primes = random_primes(opts.seed, opts.max_primes.max(2));
        let mut done: Vec<ModQuotient> = Vec::new();
        for &p in &primes {
            done.push(ModQuotient::new(matrix, p)?);
            if done.len() < 2 {
                continue;
            }
            // A modular rank never exceeds the rational one, so two primes meeting
            // at the largest value seen settle it.
            let best = done.iter().map(ModQuotient::rank).max().unwrap_or(0);
            let agreeing: Vec<ModQuotient> = done.iter().filter(|q| q.rank() == best).cloned().collect();
            if agreeing.len() >= 2 {
                return Ok(RationalQuotient { ncols: matrix.ncols(), rank: best, engine: Engine::Modular(agreeing) });
            }
        }
        Err(Error::RankDisagreement {
            attempts: done.len(),
            ranks: done.iter().map(|q| (q.prime(), q.rank())).collect(),
        })
    }

    pub fn rank(&self) -> usize {
        self.rank
    }

    pub fn dim(&self) -> usize {
        self.ncols - self.rank
    }

    pub fn ncols(&self) -> usize {
        self.ncols
    }

    /// Primes behind the answer (empty for exact elimination).
    pub fn primes(&self) -> Vec<u64> {
        match &self.engine {
            Engine::Modular(qs) => qs.iter().map(ModQuotient::prime).collect(),
            Engine::Exact(_) => Vec::new(),
        }
    }

    /// Is `v` in the rational row space? Modular answers must agree at every prime.
    pub fn contains(&self, v: &SparseVec) -> Result<bool> {
        match &self.engine {
            Engine::Modular(qs) => {
                let answers: Vec<bool> = qs.iter().map(|q| q.contains(v)).collect();
                if answers.iter().all(|&a| a == answers[0]) {
                    Ok(answers[0])
                } else {
                    Err(Error::RankDisagreement {
                        attempts: qs.len(),
                        ranks: qs.iter().map(|q| (q.prime(), q.rank())).collect(),
                    })
                }
            }
            Engine::Exact(e) => Ok(e.contains(v)),
        }
    }
}

/// Rank of `matrix` over `Q`.
pub fn rank_rational(matrix: &SparseMatrix, opts: &RationalOptions) -> Result<usize> {
    Ok(RationalQuotient::new(matrix, opts)?.rank())
}

/// Is `v` a rational combination of the rows of `matrix`?
pub fn in_row_space_rational(matrix: &SparseMatrix, v: &SparseVec, opts: &RationalOptions) -> Result<bool> {
    RationalQuotient::new(matrix, opts)?.contains(v)
}

/// Fraction-free sparse echelon form over `Z`: each stored row is primitive and
/// its leading column is not the leading column of any other row.
struct ExactQuotient {
    rows: Vec<Vec<(u32, BigInt)>>,
    lead: std::collections::BTreeMap<u32, usize>,
}

fn primitive(row: &mut Vec<(u32, BigInt)>) {
    let mut g = BigInt::zero();
    for (_, x) in row.iter() {
        g = g.gcd(x);
    }
    if g > BigInt::from(1) {
        for (_, x) in row.iter_mut() {
            *x /= &g;
        }
    }
    if row.first().is_some_and(|e| e.1.is_negative()) {
        for (_, x) in row.iter_mut() {
            *x = -&*x;
        }
    }
}

/// `a*x - b*y` on sorted sparse rows.
fn combine(x: &[(u32, BigInt)], a: &BigInt, y: &[(u32, BigInt)], b: &BigInt) -> Vec<(u32, BigInt)> {
    let mut out = Vec::with_capacity(x.len() + y.len());
    let (mut i, mut j) = (0, 0);
    while i < x.len() || j < y.len() {
        let ci = x.get(i).map_or(u32::MAX, |e| e.0);
        let cj = y.get(j).map_or(u32::MAX, |e| e.0);
        if ci < cj {
            out.push((ci, a * &x[i].1));
            i += 1;
        } else if cj < ci {
            out.push((cj, -(b * &y[j].1)));
            j += 1;
        } else {
            let v = a * &x[i].1 - b * &y[j].1;
            if !v.is_zero() {
                out.push((ci, v));
            }
            i += 1;
            j += 1;
        }
    }
    out
}

impl ExactQuotient {
    fn new(matrix: &SparseMatrix) -> Self {
        let mut q = ExactQuotient { rows: Vec::new(), lead: Default::default() };
        let mut order: Vec<&SparseVec> = matrix.rows().iter().collect();
        order.sort_by_key(|r| r.len());
        for r in order {
            let row = q.reduce(to_big(r));
            if let Some(&(c, _)) = row.first() {
                q.lead.insert(c, q.rows.len());
                q.rows.push(row);
            }
        }
        q
    }

    fn rank(&self) -> usize {
        self.rows.len()
    }

    /// Removes, repeatedly, the leading entry of `v` against the stored rows.
    /// The result is zero exactly when `v` lies in the rational span.
    fn reduce(&self, mut v: Vec<(u32, BigInt)>) -> Vec<(u32, BigInt)> {
        let mut start = 0usize;
        loop {
            primitive(&mut v);
            let Some(pos) = (start..v.len()).find(|&k| self.lead.contains_key(&v[k].0)) else {
                return v;
            };
            let c = v[pos].0;
            let pivot = &self.rows[self.lead[&c]];
            let (pa, va) = (&pivot[0].1, &v[pos].1);
            let g = pa.gcd(va);
            v = combine(&v, &(pa / &g), pivot, &(va / &g));
            start = pos;
        }
    }

    fn contains(&self, v: &SparseVec) -> bool {
        self.reduce(to_big(v)).is_empty()
    }
}

fn to_big(v: &SparseVec) -> Vec<(u32, BigInt)> {
    v.entries().iter().map(|&(c, x)| (c, BigInt::from(x))).collect()
}
