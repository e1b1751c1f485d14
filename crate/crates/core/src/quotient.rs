//! `B_n(G) ⊗ F` and `B_n^-(G) ⊗ F` as ready-to-query objects.

use std::fmt;
use std::str::FromStr;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::group::FinAbGroup;
use crate::linalg::{ModQuotient, RationalOptions, RationalQuotient, SparseVec};
use crate::symbols::{
    antisymmetry_relations, blowup_relations, Admissibility, AntisymmetryMode, RelationMatrix, Symbol, SymbolBasis,
};

/// Coefficient field: `Q` or `F_p`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub enum Coefficients {
    Rational,
    Prime(u64),
}

impl fmt::Display for Coefficients {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Coefficients::Rational => write!(f, "Q"),
            Coefficients::Prime(p) => write!(f, "F{p}"),
        }
    }
}

impl FromStr for Coefficients {
    type Err = Error;

    /// `Q`, `F2`, `F7`, `GF(7)`.
    fn from_str(s: &str) -> Result<Self> {
        let t = s.trim().to_ascii_uppercase();
        if t == "Q" {
            return Ok(Coefficients::Rational);
        }
        let digits = t
            .strip_prefix("GF(")
            .and_then(|r| r.strip_suffix(')'))
            .or_else(|| t.strip_prefix('F'))
            .ok_or_else(|| Error::Parse { what: "coefficient field", input: s.to_string() })?;
        let p: u64 = digits.parse().map_err(|_| Error::Parse { what: "coefficient field", input: s.to_string() })?;
        if !crate::linalg::is_prime(p) {
            return Err(Error::NotPrime(p));
        }
        Ok(Coefficients::Prime(p))
    }
}

/// Which quotient of the free symbol group.
#[derive(Clone, Copy, Debug, Default, PartialEq, Eq, Serialize, Deserialize)]
pub enum Variant {
    /// `B_n(G)`: blow-up relations only.
    #[default]
    Plain,
    /// `B_n^-(G)`: blow-up and antisymmetry relations.
    Minus(AntisymmetryMode),
}

enum Engine {
    Rational(RationalQuotient),
    Modular(ModQuotient),
}

/// A symbol basis together with an eliminated relation matrix.
pub struct SymbolQuotient {
    basis: SymbolBasis,
    relations: usize,
    coeff: Coefficients,
    engine: Engine,
}

impl SymbolQuotient {
    pub fn new(group: &FinAbGroup, n: usize, variant: Variant, coeff: Coefficients, opts: &RationalOptions) -> Result<Self> {
        let basis = SymbolBasis::with_mode(group, n, Admissibility::Generating)?;
        Self::from_basis(basis, variant, coeff, opts)
    }

    pub fn from_basis(basis: SymbolBasis, variant: Variant, coeff: Coefficients, opts: &RationalOptions) -> Result<Self> {
        let rel = relations_for(&basis, variant);
        Self::from_relations(basis, &rel, coeff, opts)
    }

    /// Uses precomputed relation rows, e.g. read back from a matrix file.
    pub fn from_relations(basis: SymbolBasis, rel: &RelationMatrix, coeff: Coefficients, opts: &RationalOptions) -> Result<Self> {
        if rel.ncols() != basis.len() {
            return Err(Error::DimensionMismatch(format!(
                "relation matrix has {} columns, basis has {} symbols",
                rel.ncols(),
                basis.len()
            )));
        }
        let engine = match coeff {
            Coefficients::Rational => Engine::Rational(RationalQuotient::new(rel.matrix(), opts)?),
            Coefficients::Prime(p) => Engine::Modular(ModQuotient::new(rel.matrix(), p)?),
        };
        Ok(SymbolQuotient { basis, relations: rel.nrows(), coeff, engine })
    }

    pub fn basis(&self) -> &SymbolBasis {
        &self.basis
    }

    pub fn coefficients(&self) -> Coefficients {
        self.coeff
    }

    /// Number of distinct relation rows.
    pub fn relations(&self) -> usize {
        self.relations
    }

    pub fn rank(&self) -> usize {
        match &self.engine {
            Engine::Rational(q) => q.rank(),
            Engine::Modular(q) => q.rank(),
        }
    }

    pub fn dim(&self) -> usize {
        self.basis.len() - self.rank()
    }

    /// Does `v` vanish in the quotient?
    pub fn is_zero(&self, v: &SparseVec) -> Result<bool> {
        match &self.engine {
            Engine::Rational(q) => q.contains(v),
            Engine::Modular(q) => Ok(q.contains(v)),
        }
    }

    /// Does `Σ c·s` vanish in the quotient?
    pub fn is_zero_sum(&self, terms: &[(i64, Symbol)]) -> Result<bool> {
        self.is_zero(&self.basis.vector(terms)?)
    }

    pub fn equal(&self, u: &SparseVec, v: &SparseVec) -> Result<bool> {
        self.is_zero(&(u - v))
    }
}

/// Relation rows of the chosen quotient.
pub fn relations_for(basis: &SymbolBasis, variant: Variant) -> RelationMatrix {
    match variant {
        Variant::Plain => blowup_relations(basis),
        Variant::Minus(mode) => blowup_relations(basis).stacked(&antisymmetry_relations(basis, mode)),
    }
}
