//! Finitely presented abelian groups of Burnside symbols `(H, N_G(H)/H ⟲ K, β)`.
//!
//! Generators carry opaque labels for the stabilizer, the residual group and the
//! function algebra `K`; two generators are the same only when their ids match.
//! The quotient is computed over `Z` with the Smith form engine.

use std::collections::{BTreeMap, HashMap};
use std::fmt;

use serde::{Deserialize, Serialize};
use sha2::{Digest, Sha256};

use crate::error::{Error, Result};
use crate::group::FinAbGroup;
use crate::linalg::{IntQuotient, Order, SparseMatrix, SparseVec};
use crate::symbols::{Symbol, SymbolBasis};

/// Largest `N` accepted by [`burn2_cyclic_relations`].
pub const CYCLIC_GUARD: u32 = 12;

fn yes() -> bool {
    true
}

fn is_true(b: &bool) -> bool {
    *b
}

fn is_false(b: &bool) -> bool {
    !*b
}

/// A symbol `(H, residual ⟲ field, weights)`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct BurnGenerator {
    pub id: String,
    /// Generator family, for listings that group instances.
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub family: Option<u32>,
    pub stabilizer: String,
    pub residual: String,
    #[serde(default = "yes", skip_serializing_if = "is_true")]
    pub residual_cyclic: bool,
    pub field: String,
    pub weights: Vec<Vec<i64>>,
    /// Carries the function field of a curve of positive genus.
    #[serde(default, skip_serializing_if = "is_false")]
    pub positive_genus: bool,
}

impl fmt::Display for BurnGenerator {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let ws: Vec<String> = self
            .weights
            .iter()
            .map(|w| match w.as_slice() {
                [x] => x.to_string(),
                xs => format!("({})", xs.iter().map(|x| x.to_string()).collect::<Vec<_>>().join(",")),
            })
            .collect();
        write!(f, "({}, {} ⟲ {}, ({}))", self.stabilizer, self.residual, self.field, ws.join(","))
    }
}

#[derive(Clone, Debug, Serialize, Deserialize)]
struct RelationFile {
    lhs: Vec<String>,
    rhs: Vec<String>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    note: Option<String>,
}

#[derive(Clone, Debug, Serialize, Deserialize)]
struct ClassFile {
    name: String,
    terms: Vec<String>,
    #[serde(default, skip_serializing_if = "Vec::is_empty")]
    unknown: Vec<String>,
}

#[derive(Clone, Debug, Serialize, Deserialize)]
struct PresentationFile {
    format: u32,
    name: String,
    group: String,
    /// Readable names for stabilizer labels, e.g. `"center": "C2"`.
    #[serde(default, skip_serializing_if = "BTreeMap::is_empty")]
    subgroups: BTreeMap<String, String>,
    generators: Vec<BurnGenerator>,
    relations: Vec<RelationFile>,
    #[serde(default)]
    classes: Vec<ClassFile>,
}

/// A relation row `lhs - rhs = 0`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct BurnRelation {
    pub row: SparseVec,
    pub note: Option<String>,
}

/// A stored class: known generator terms plus named terms whose symbols are not known.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct BurnClass {
    pub name: String,
    pub terms: Vec<(usize, i64)>,
    pub unknown: Vec<String>,
}

/// Generators, integer relations and a few named classes.
#[derive(Clone, Debug)]
pub struct BurnPresentation {
    pub name: String,
    pub group: String,
    generators: Vec<BurnGenerator>,
    relations: Vec<BurnRelation>,
    classes: Vec<BurnClass>,
    subgroups: BTreeMap<String, String>,
    index: HashMap<String, usize>,
}

fn parse_term(t: &str) -> (i64, &str) {
    if let Some((k, id)) = t.split_once('*') {
        if let Ok(k) = k.trim().parse::<i64>() {
            return (k, id.trim());
        }
    }
    (1, t.trim())
}

impl BurnPresentation {
    pub fn new(name: &str, group: &str, generators: Vec<BurnGenerator>) -> Result<Self> {
        let mut index = HashMap::new();
        for (i, g) in generators.iter().enumerate() {
            if index.insert(g.id.clone(), i).is_some() {
                return Err(Error::Malformed(format!("duplicate generator id {:?}", g.id)));
            }
        }
        Ok(BurnPresentation {
            name: name.to_string(),
            group: group.to_string(),
            generators,
            relations: Vec::new(),
            classes: Vec::new(),
            subgroups: BTreeMap::new(),
            index,
        })
    }

    pub fn generators(&self) -> &[BurnGenerator] {
        &self.generators
    }

    pub fn relations(&self) -> &[BurnRelation] {
        &self.relations
    }

    pub fn classes(&self) -> &[BurnClass] {
        &self.classes
    }

    pub fn index_of(&self, id: &str) -> Result<usize> {
        self.index.get(id).copied().ok_or_else(|| Error::Unknown {
            kind: "generator",
            name: id.to_string(),
            available: self.generators.iter().map(|g| g.id.as_str()).collect::<Vec<_>>().join(", "),
        })
    }

    /// The stabilizer label behind a subgroup name; labels map to themselves.
    pub fn resolve_subgroup<'a>(&'a self, name: &'a str) -> &'a str {
        self.subgroups.get(name).map(String::as_str).unwrap_or(name)
    }

    pub fn generator(&self, id: &str) -> Result<&BurnGenerator> {
        Ok(&self.generators[self.index_of(id)?])
    }

    /// Appends the relation `Σ lhs = Σ rhs`; terms may carry a `k*` multiplier.
    pub fn add_relation(&mut self, lhs: &[&str], rhs: &[&str], note: Option<&str>) -> Result<()> {
        let mut pairs = Vec::new();
        for t in lhs {
            let (k, id) = parse_term(t);
            pairs.push((self.index_of(id)? as u32, k));
        }
        for t in rhs {
            let (k, id) = parse_term(t);
            pairs.push((self.index_of(id)? as u32, -k));
        }
        self.relations.push(BurnRelation { row: SparseVec::from_pairs(pairs), note: note.map(str::to_string) });
        Ok(())
    }

    /// `[X ⟲ G]` from `(generator id, multiplicity)` pairs.
    pub fn evaluate_class(&self, components: &[(&str, i64)]) -> Result<SparseVec> {
        let pairs = components.iter().map(|&(id, k)| Ok((self.index_of(id)? as u32, k))).collect::<Result<Vec<_>>>()?;
        Ok(SparseVec::from_pairs(pairs))
    }

    pub fn class(&self, name: &str) -> Result<&BurnClass> {
        self.classes.iter().find(|c| c.name == name).ok_or_else(|| Error::Unknown {
            kind: "class",
            name: name.to_string(),
            available: self.classes.iter().map(|c| c.name.as_str()).collect::<Vec<_>>().join(", "),
        })
    }

    /// Known part of a stored class.
    pub fn class_vector(&self, name: &str) -> Result<SparseVec> {
        let c = self.class(name)?;
        Ok(SparseVec::from_pairs(c.terms.iter().map(|&(i, k)| (i as u32, k))))
    }

    pub fn matrix(&self) -> SparseMatrix {
        SparseMatrix::from_rows(self.generators.len(), self.relations.iter().map(|r| r.row.clone()).collect())
    }

    pub fn quotient(&self) -> Result<IntQuotient> {
        IntQuotient::new(&self.matrix())
    }

    /// The quotient after also killing `extra`.
    pub fn quotient_with(&self, extra: &[SparseVec]) -> Result<IntQuotient> {
        let mut m = self.matrix();
        for v in extra {
            m.push(v.clone());
        }
        IntQuotient::new(&m)
    }

    pub fn is_zero(&self, v: &SparseVec) -> Result<bool> {
        Ok(self.quotient()?.contains(v))
    }

    pub fn order(&self, v: &SparseVec) -> Result<Order> {
        Ok(self.quotient()?.element_order(v))
    }

    pub fn format_vector(&self, v: &SparseVec) -> String {
        if v.is_zero() {
            return "0".into();
        }
        let mut s = String::new();
        for (i, &(c, k)) in v.entries().iter().enumerate() {
            let id = &self.generators[c as usize].id;
            let sign = if k < 0 { "-" } else { "+" };
            if i > 0 || k < 0 {
                s.push_str(if i > 0 { " " } else { "" });
                s.push_str(sign);
                s.push(' ');
            }
            match k.abs() {
                1 => s.push_str(id),
                a => s.push_str(&format!("{a}*{id}")),
            }
        }
        s
    }

    /// Image in `B_2` of a presentation whose group is cyclic: points with full
    /// stabilizer go to their weight symbol, fixed curves `k(t)` with full stabilizer
    /// to `[a,0]`, everything else to 0.
    pub fn to_symbols(&self, v: &SparseVec, basis: &SymbolBasis) -> Result<SparseVec> {
        let group = basis.group();
        let full = group.to_string();
        let mut terms = Vec::new();
        for &(c, k) in v.entries() {
            let g = &self.generators[c as usize];
            if g.stabilizer != full {
                continue;
            }
            let chars = g.weights.iter().map(|w| group.character(w)).collect::<Result<Vec<_>>>()?;
            let s = match g.field.as_str() {
                "k" => Symbol::new(group, chars)?,
                "k(t)" => Symbol::new(group, chars)?.padded(group, basis.n()),
                _ => continue,
            };
            terms.push((k, s));
        }
        basis.vector(&terms)
    }

    pub fn from_json(text: &str) -> Result<Self> {
        let file: PresentationFile = serde_json::from_str(text)?;
        if file.format != 1 {
            return Err(Error::Malformed(format!("unsupported format version {}", file.format)));
        }
        let mut p = BurnPresentation::new(&file.name, &file.group, file.generators)?;
        p.subgroups = file.subgroups;
        for r in &file.relations {
            let lhs: Vec<&str> = r.lhs.iter().map(String::as_str).collect();
            let rhs: Vec<&str> = r.rhs.iter().map(String::as_str).collect();
            p.add_relation(&lhs, &rhs, r.note.as_deref())?;
        }
        for c in file.classes {
            let mut terms = Vec::new();
            for t in &c.terms {
                let (k, id) = parse_term(t);
                terms.push((p.index_of(id)?, k));
            }
            p.classes.push(BurnClass { name: c.name, terms, unknown: c.unknown });
        }
        Ok(p)
    }

    pub fn to_json(&self) -> String {
        let term = |i: usize, k: i64| match k {
            1 => self.generators[i].id.clone(),
            k => format!("{k}*{}", self.generators[i].id),
        };
        let relations = self
            .relations
            .iter()
            .map(|r| {
                let (mut lhs, mut rhs) = (Vec::new(), Vec::new());
                for &(c, k) in r.row.entries() {
                    if k > 0 {
                        lhs.push(term(c as usize, k));
                    } else {
                        rhs.push(term(c as usize, -k));
                    }
                }
                RelationFile { lhs, rhs, note: r.note.clone() }
            })
            .collect();
        let classes = self
            .classes
            .iter()
            .map(|c| ClassFile {
                name: c.name.clone(),
                terms: c.terms.iter().map(|&(i, k)| term(i, k)).collect(),
                unknown: c.unknown.clone(),
            })
            .collect();
        let file = PresentationFile {
            format: 1,
            name: self.name.clone(),
            group: self.group.clone(),
            subgroups: self.subgroups.clone(),
            generators: self.generators.clone(),
            relations,
            classes,
        };
        serde_json::to_string_pretty(&file).expect("presentations serialize")
    }

    /// The projection onto pair classes `[(H', a)]` for generators with stabilizer
    /// `spec.stabilizer` and function algebra `spec.field`, checked against every
    /// relation.
    pub fn projection_functional(&self, spec: &ProjectionSpec) -> Result<ProjectionFunctional> {
        let mut targets = Vec::new();
        for (i, g) in self.generators.iter().enumerate() {
            let base = g.field.split(':').next().unwrap_or_default();
            if g.stabilizer != self.resolve_subgroup(&spec.stabilizer) || (g.field != spec.field && base != spec.field) {
                continue;
            }
            if spec.noncyclic_only && g.residual_cyclic {
                continue;
            }
            let ws: Vec<String> = g.weights.iter().map(|w| format!("{w:?}")).collect();
            targets.push((i, format!("({}, {})", g.residual, ws.join(","))));
        }
        let f = ProjectionFunctional { targets };
        for (row, r) in self.relations.iter().enumerate() {
            let image = f.apply(&r.row);
            if image.values().any(|&x| x != 0) {
                return Err(Error::IllDefinedFunctional { row, detail: self.format_vector(&r.row) });
            }
        }
        Ok(f)
    }
}

/// Which generators a projection functional reads. `field` matches a generator's
/// field label, or its part before the first `:`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ProjectionSpec {
    pub stabilizer: String,
    pub field: String,
    pub noncyclic_only: bool,
}

/// A well-defined linear map from the presentation to `⊕ Z` over pair classes.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ProjectionFunctional {
    targets: Vec<(usize, String)>,
}

impl ProjectionFunctional {
    pub fn apply(&self, v: &SparseVec) -> BTreeMap<String, i64> {
        let mut out = BTreeMap::new();
        for (i, key) in &self.targets {
            *out.entry(key.clone()).or_insert(0) += v.get(*i as u32);
        }
        out
    }

    /// Sum of all coordinates.
    pub fn total(&self, v: &SparseVec) -> i64 {
        self.apply(v).values().sum()
    }

    pub fn generators(&self) -> impl Iterator<Item = usize> + '_ {
        self.targets.iter().map(|t| t.0)
    }
}

fn gcd(a: i64, b: i64) -> i64 {
    if b == 0 {
        a.abs()
    } else {
        gcd(b, a % b)
    }
}

fn orbit_field(points: bool, copies: u32) -> String {
    match (points, copies) {
        (true, 1) => "k".into(),
        (true, c) => format!("k^{c}"),
        (false, 1) => "k(t)".into(),
        (false, c) => format!("k^{c}(t)"),
    }
}

fn residual_name(order: u32) -> String {
    if order == 1 {
        "triv".into()
    } else {
        format!("C{order}")
    }
}

/// Point generator id: stabilizer `C_d`, weights `b1 <= b2`, orbit of length `N/d`.
pub fn point_id(n: u32, d: u32, b1: i64, b2: i64) -> String {
    let (b1, b2) = (b1.rem_euclid(d as i64), b2.rem_euclid(d as i64));
    let (b1, b2) = (b1.min(b2), b1.max(b2));
    format!("pt{d}({b1},{b2}){}", if n == d { String::new() } else { orbit_field(true, n / d) })
}

/// Curve generator id: stabilizer `C_d`, weight `b`, `copies` components.
pub fn curve_id(d: u32, b: i64, copies: u32) -> String {
    format!("cv{d}({}){}", b.rem_euclid(d as i64), orbit_field(false, copies))
}

/// The points-and-rational-curves sector of `Burn_2(C_N)`.
///
/// Generators, for every subgroup `H = C_d`, `d > 1`:
/// * orbits of `N/d` points with stabilizer `H` and nonzero weights `(b1, b2)`
///   generating `H^∨`;
/// * orbits of rational curves with generic stabilizer `H`, weight `b` and `c`
///   components, each stabilized by a `C_{N/(dc)}` acting on `t` by a primitive root.
///
/// Relations: blowing up each point orbit, and blowing up a general orbit on each
/// curve (which kills the exceptional point with weights `(b, -b)`).
pub fn burn2_cyclic_relations(n: u32) -> Result<BurnPresentation> {
    if !(2..=CYCLIC_GUARD).contains(&n) {
        return Err(Error::GuardExceeded(format!("cyclic Burnside presentations need 2 <= N <= {CYCLIC_GUARD}, got {n}")));
    }
    let divisors: Vec<u32> = (2..=n).filter(|d| n.is_multiple_of(*d)).collect();
    let mut gens = Vec::new();
    for &d in &divisors {
        let residual = residual_name(n / d);
        let di = d as i64;
        for b1 in 1..di {
            for b2 in b1..di {
                if gcd(gcd(b1, b2), di) != 1 {
                    continue;
                }
                gens.push(BurnGenerator {
                    id: point_id(n, d, b1, b2),
                    family: None,
                    stabilizer: format!("C{d}"),
                    residual: residual.clone(),
                    residual_cyclic: true,
                    field: orbit_field(true, n / d),
                    weights: vec![vec![b1], vec![b2]],
                    positive_genus: false,
                });
            }
        }
        for b in (1..di).filter(|&b| gcd(b, di) == 1) {
            for copies in (1..=n / d).filter(|c| (n / d).is_multiple_of(*c)) {
                let e = n / d / copies;
                let mut field = orbit_field(false, copies);
                if e > 1 {
                    field.push_str(&format!(":t-by-primitive-root-of-order-{e}"));
                }
                gens.push(BurnGenerator {
                    id: curve_id(d, b, copies),
                    family: None,
                    stabilizer: format!("C{d}"),
                    residual: residual.clone(),
                    residual_cyclic: true,
                    field,
                    weights: vec![vec![b]],
                    positive_genus: false,
                });
            }
        }
    }
    let mut p = BurnPresentation::new(&format!("burn2-C{n}-sector"), &format!("C{n}"), gens.clone())?;
    for g in &gens {
        let d: u32 = g.stabilizer[1..].parse().expect("stabilizer is C<d>");
        let di = d as i64;
        if g.weights.len() == 2 {
            let (b1, b2) = (g.weights[0][0], g.weights[1][0]);
            if b1 == b2 {
                p.add_relation(&[&g.id], &[&curve_id(d, b1, n / d)], Some("blow up a point with equal weights"))?;
            } else {
                let q1 = point_id(n, d, b1, b2 - b1);
                let q2 = point_id(n, d, b2, b1 - b2);
                let dd = gcd(b1 - b2, di) as u32;
                if dd == 1 {
                    p.add_relation(&[&g.id], &[&q1, &q2], Some("blow up a point, trivial stabilizer on E"))?;
                } else {
                    let e = curve_id(dd, b1, n / d);
                    p.add_relation(&[&g.id], &[&e, &q1, &q2], Some("blow up a point, E has a nontrivial stabilizer"))?;
                }
            }
        } else {
            let b = g.weights[0][0];
            let q = point_id(n, d, b, -b);
            p.add_relation(&[&g.id], &[&g.id, &q], Some("blow up a general orbit on the curve"))?;
        }
    }
    Ok(p)
}

const PRESETS: [(&str, &str); 3] = [
    ("burn2-C4", include_str!("../data/burnside/burn2-C4.json")),
    ("burn2-C2xC2", include_str!("../data/burnside/burn2-C2xC2.json")),
    ("burn2-D6", include_str!("../data/burnside/burn2-D6.json")),
];

const CHECKSUMS: &str = include_str!("../data/burnside/SHA256SUMS");

pub fn preset_presentation_names() -> Vec<String> {
    PRESETS.iter().map(|p| p.0.to_string()).collect()
}

/// Recorded digest of a preset's data file.
fn recorded_digest(name: &str) -> Option<&'static str> {
    let file = format!("{name}.json");
    CHECKSUMS.lines().find_map(|l| {
        let (digest, f) = l.split_once(char::is_whitespace)?;
        (f.trim() == file).then_some(digest)
    })
}

/// Checks a preset's text against the recorded digest.
pub fn verify_fixture(name: &str, text: &str) -> Result<()> {
    let want = recorded_digest(name).ok_or_else(|| Error::FixtureDrift(format!("no recorded digest for {name}")))?;
    let got = hex::encode(Sha256::digest(text.as_bytes()));
    if got != want {
        return Err(Error::FixtureDrift(format!("{name}: digest {got} differs from recorded {want}")));
    }
    Ok(())
}

/// A transcribed presentation, verified against its recorded digest.
pub fn preset_presentation(name: &str) -> Result<BurnPresentation> {
    let (_, text) = PRESETS.iter().find(|p| p.0 == name).ok_or_else(|| Error::Unknown {
        kind: "presentation",
        name: name.to_string(),
        available: preset_presentation_names().join(", "),
    })?;
    verify_fixture(name, text)?;
    BurnPresentation::from_json(text)
}

/// `B_2(C_N)` basis used to compare a cyclic presentation with the symbol group.
pub fn symbol_basis_for(n: u32) -> Result<SymbolBasis> {
    SymbolBasis::new(&FinAbGroup::cyclic(n as i64)?, 2)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn c4_sector_shape() {
        let p = burn2_cyclic_relations(4).unwrap();
        assert_eq!(p.generators().len(), 10);
        assert_eq!(p.relations().len(), 10);
        assert!(burn2_cyclic_relations(13).is_err());
        assert!(burn2_cyclic_relations(1).is_err());
    }

    #[test]
    fn c2_sector_collapses() {
        let p = burn2_cyclic_relations(2).unwrap();
        let q = p.quotient().unwrap();
        assert_eq!(q.smith().free_rank, 0);
        assert!(q.smith().torsion().is_empty());
    }

    #[test]
    fn presets_match_digests() {
        for name in preset_presentation_names() {
            let p = preset_presentation(&name).unwrap();
            assert_eq!(p.name, name);
        }
        assert!(matches!(verify_fixture("burn2-C4", "{}"), Err(Error::FixtureDrift(_))));
    }

    #[test]
    fn json_round_trip() {
        let p = preset_presentation("burn2-D6").unwrap();
        let back = BurnPresentation::from_json(&p.to_json()).unwrap();
        assert_eq!(back.generators(), p.generators());
        assert_eq!(back.relations(), p.relations());
        assert_eq!(back.classes(), p.classes());
    }

    #[test]
    fn ill_defined_functional_is_reported() {
        let p = preset_presentation("burn2-C2xC2").unwrap();
        let spec = ProjectionSpec { stabilizer: "<g1>".into(), field: "k(t)".into(), noncyclic_only: false };
        assert!(matches!(p.projection_functional(&spec), Err(Error::IllDefinedFunctional { .. })));
    }
}
