//! Invariant classes of group actions from fixed-point data.
//!
//! An [`ActionDescription`] lists the components of the fixed locus `X^G` with their
//! normal weights. From it we get `β` (one symbol per component, zeros filling the
//! fixed directions) and the refined `β_k`, which sorts components by the opaque
//! birational label of the fixed stratum.

mod hypersurface;
mod presets;

pub use hypersurface::{CoordinatePoint, DiagonalHypersurface};
pub use presets::{preset, preset_names, Preset};

use std::collections::BTreeMap;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::group::{Automorphism, Character, FinAbGroup};
use crate::linalg::SparseVec;
use crate::symbols::{Symbol, SymbolBasis};

/// Label used for isolated points and for rational fixed strata.
pub const POINT_LABEL: &str = "point";

/// One component `F_α` of the fixed locus.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct FixedComponent {
    /// Nonzero weights on the normal space, one per codimension.
    pub weights: Vec<Character>,
    pub fixed_dim: usize,
    /// Birational class of `F_α`, compared as a string.
    pub label: Option<String>,
    /// The `m` with `[F_α × A^{n-1-dim F_α}] ∈ Bir_{n-1,m}`.
    pub m: Option<usize>,
    /// Number of components sharing this data.
    pub count: i64,
}

impl FixedComponent {
    pub fn point(weights: Vec<Character>) -> Self {
        FixedComponent { weights, fixed_dim: 0, label: None, m: None, count: 1 }
    }

    pub fn with_label(mut self, label: &str, m: usize) -> Self {
        self.label = Some(label.to_string());
        self.m = Some(m);
        self
    }

    pub fn times(mut self, count: i64) -> Self {
        self.count = count;
        self
    }

    fn symbol(&self, group: &FinAbGroup, n: usize) -> Result<Symbol> {
        let s = Symbol::new(group, self.weights.clone())?.padded(group, n);
        if !s.is_admissible(group)? {
            return Err(Error::Inadmissible(s.to_string()));
        }
        Ok(s)
    }
}

/// `X ⟲ G` through its fixed locus.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ActionDescription {
    pub name: String,
    pub group: FinAbGroup,
    pub n: usize,
    pub components: Vec<FixedComponent>,
}

/// One summand of `β_k`: the symbols attached to a birational label.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct RefinedSummand {
    pub label: String,
    pub m: usize,
    pub terms: Vec<(i64, Symbol)>,
}

impl RefinedSummand {
    /// Length of the symbols in this summand, `m + 1`.
    pub fn length(&self) -> usize {
        self.m + 1
    }
}

impl ActionDescription {
    pub fn new(name: &str, group: FinAbGroup, n: usize, components: Vec<FixedComponent>) -> Result<Self> {
        for (i, c) in components.iter().enumerate() {
            for w in &c.weights {
                group.check(w)?;
                if w.is_zero() {
                    return Err(Error::Malformed(format!("component {i}: normal weights must be nonzero")));
                }
            }
            if c.weights.len() + c.fixed_dim != n {
                return Err(Error::DimensionMismatch(format!(
                    "component {i}: {} weights and fixed dimension {} do not add up to n = {n}",
                    c.weights.len(),
                    c.fixed_dim
                )));
            }
            if let Some(m) = c.m {
                if m >= n || m + c.fixed_dim + 1 < n {
                    return Err(Error::Malformed(format!(
                        "component {i}: m = {m} must lie in [{}, {}]",
                        n - 1 - c.fixed_dim,
                        n - 1
                    )));
                }
            }
        }
        Ok(ActionDescription { name: name.to_string(), group, n, components })
    }

    /// `β` as a list of symbols with multiplicities.
    pub fn beta_terms(&self) -> Result<Vec<(i64, Symbol)>> {
        self.components.iter().map(|c| Ok((c.count, c.symbol(&self.group, self.n)?))).collect()
    }

    /// `β` in the coordinates of `basis`.
    pub fn beta(&self, basis: &SymbolBasis) -> Result<SparseVec> {
        if basis.group() != &self.group || basis.n() != self.n {
            return Err(Error::DimensionMismatch(format!(
                "action lives in S_{}({}), basis is S_{}({})",
                self.n,
                self.group,
                basis.n(),
                basis.group()
            )));
        }
        basis.vector(&self.beta_terms()?)
    }

    /// `β_k`: summands keyed by `(label, m)`, in label order.
    pub fn beta_k(&self) -> Result<Vec<RefinedSummand>> {
        let mut out: BTreeMap<(String, usize), Vec<(i64, Symbol)>> = BTreeMap::new();
        for (i, c) in self.components.iter().enumerate() {
            let (label, m) = match (&c.label, c.m) {
                (Some(l), Some(m)) => (l.clone(), m),
                (None, None) if c.fixed_dim == 0 => (POINT_LABEL.to_string(), self.n - 1),
                _ => return Err(Error::MissingLabel(i)),
            };
            let len = m + 1 + c.weights.len() + c.fixed_dim - self.n;
            let s = c.symbol(&self.group, len)?;
            out.entry((label, m)).or_default().push((c.count, s));
        }
        Ok(out.into_iter().map(|((label, m), terms)| RefinedSummand { label, m, terms }).collect())
    }

    /// The same action with every weight moved by `sigma`.
    pub fn mapped(&self, sigma: &Automorphism) -> ActionDescription {
        let mut out = self.clone();
        for c in &mut out.components {
            for w in &mut c.weights {
                *w = sigma.apply(w);
            }
        }
        out
    }

    pub fn from_json(text: &str) -> Result<Self> {
        match serde_json::from_str::<ClassFile>(text)? {
            ClassFile::Action(a) => a.build(),
            ClassFile::Hypersurface(_) => {
                Err(Error::Malformed("expected an action description, found a hypersurface".into()))
            }
        }
    }

    pub fn to_json(&self) -> String {
        let file = ClassFile::Action(ActionFile::from_action(self));
        serde_json::to_string_pretty(&file).expect("action descriptions serialize")
    }
}

/// The diagonal action of `C_N` on `P^n` with the given weights.
///
/// Coordinates with equal weight span a fixed linear subspace; its normal weights are
/// `w_j - w_i` over the coordinates with a different weight.
pub fn linear_pn_class(order: u32, weights: &[i64]) -> Result<ActionDescription> {
    let group = FinAbGroup::cyclic(order as i64)?;
    if weights.len() < 2 {
        return Err(Error::DimensionMismatch("P^n needs at least two coordinates".into()));
    }
    let n = weights.len() - 1;
    let w: Vec<Character> = weights.iter().map(|&x| group.character(&[x])).collect::<Result<_>>()?;
    let diffs: Vec<Character> = w.iter().map(|x| group.sub(x, &w[0])).collect();
    if !group.generates(&diffs)? {
        return Err(Error::Malformed(format!("weights {weights:?} do not act faithfully on P^{n}")));
    }
    let mut classes: Vec<Character> = w.clone();
    classes.sort();
    classes.dedup();
    let mut components = Vec::new();
    for c in &classes {
        let normal: Vec<Character> = w.iter().filter(|x| *x != c).map(|x| group.sub(x, c)).collect();
        let fixed_dim = n - normal.len();
        let comp = FixedComponent { weights: normal, fixed_dim, label: None, m: None, count: 1 };
        components.push(if fixed_dim > 0 { comp.with_label(POINT_LABEL, n - 1) } else { comp });
    }
    let name = format!("P{n}-C{order}-{weights:?}");
    ActionDescription::new(&name, group, n, components)
}

#[derive(Clone, Debug, Serialize, Deserialize)]
#[serde(untagged)]
pub(crate) enum WeightSpec {
    Scalar(i64),
    Tuple(Vec<i64>),
}

impl WeightSpec {
    fn to_character(&self, group: &FinAbGroup) -> Result<Character> {
        match self {
            WeightSpec::Scalar(v) => group.character(&[*v]),
            WeightSpec::Tuple(vs) => group.character(vs),
        }
    }

    fn from_character(c: &Character) -> Self {
        match c.residues() {
            [v] => WeightSpec::Scalar(*v as i64),
            vs => WeightSpec::Tuple(vs.iter().map(|&v| v as i64).collect()),
        }
    }
}

fn one() -> i64 {
    1
}

#[derive(Clone, Debug, Serialize, Deserialize)]
pub(crate) struct ComponentFile {
    weights: Vec<WeightSpec>,
    #[serde(default)]
    fixed_dim: usize,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    label: Option<String>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    m: Option<usize>,
    #[serde(default = "one")]
    count: i64,
}

#[derive(Clone, Debug, Serialize, Deserialize)]
pub(crate) struct ActionFile {
    format: u32,
    name: String,
    group: String,
    n: usize,
    components: Vec<ComponentFile>,
}

impl ActionFile {
    fn build(&self) -> Result<ActionDescription> {
        check_format(self.format)?;
        let group: FinAbGroup = self.group.parse()?;
        let components = self
            .components
            .iter()
            .map(|c| {
                Ok(FixedComponent {
                    weights: c.weights.iter().map(|w| w.to_character(&group)).collect::<Result<_>>()?,
                    fixed_dim: c.fixed_dim,
                    label: c.label.clone(),
                    m: c.m,
                    count: c.count,
                })
            })
            .collect::<Result<Vec<_>>>()?;
        ActionDescription::new(&self.name, group, self.n, components)
    }

    fn from_action(a: &ActionDescription) -> Self {
        ActionFile {
            format: 1,
            name: a.name.clone(),
            group: a.group.to_string(),
            n: a.n,
            components: a
                .components
                .iter()
                .map(|c| ComponentFile {
                    weights: c.weights.iter().map(WeightSpec::from_character).collect(),
                    fixed_dim: c.fixed_dim,
                    label: c.label.clone(),
                    m: c.m,
                    count: c.count,
                })
                .collect(),
        }
    }
}

#[derive(Clone, Debug, Serialize, Deserialize)]
#[serde(tag = "kind", rename_all = "lowercase")]
pub(crate) enum ClassFile {
    Action(ActionFile),
    Hypersurface(hypersurface::HypersurfaceFile),
}

fn check_format(format: u32) -> Result<()> {
    if format != 1 {
        return Err(Error::Malformed(format!("unsupported format version {format}")));
    }
    Ok(())
}

/// Reads either kind of class file.
pub fn load_class(text: &str) -> Result<Preset> {
    match serde_json::from_str::<ClassFile>(text)? {
        ClassFile::Action(a) => Ok(Preset::Action(a.build()?)),
        ClassFile::Hypersurface(h) => Ok(Preset::Hypersurface(h.build()?)),
    }
}
