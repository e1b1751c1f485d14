use std::fs;
use std::io::BufReader;
use std::path::{Path, PathBuf};
use std::str::FromStr;
use std::time::Instant;

use birsym::burnside::{burn2_cyclic_relations, preset_presentation, BurnPresentation, ProjectionSpec};
use birsym::classes::{load_class, preset, ActionDescription, Preset};
use birsym::linalg::{IntQuotient, ModQuotient, RationalOptions, SparseVec};
use birsym::maps::Comultiplication;
use birsym::quotient::{relations_for, Coefficients, SymbolQuotient, Variant};
use birsym::symbols::{read_matrix, write_matrix, Admissibility, AntisymmetryMode, RelationMatrix, SymbolBasis};
use birsym::{DualSurjection, Error, FinAbGroup, Result};
use clap::Args;
use serde_json::json;

use crate::report::emit;
use crate::Global;

/// Directory for cached relation matrices.
pub const CACHE_ENV: &str = "BIRSYM_CACHE_DIR";

/// Rough bytes per stored nonzero during elimination, including fill-in headroom.
const BYTES_PER_ENTRY: u64 = 48;

#[derive(Args, Clone, Debug)]
pub struct SystemArgs {
    /// Group, e.g. C36 or C2xC8.
    pub group: String,
    /// Symbol length n.
    pub n: usize,
    /// Impose the antisymmetry relation.
    #[arg(long)]
    pub minus: bool,
    /// Negate all entries at once in the antisymmetry relation.
    #[arg(long, requires = "minus")]
    pub all_entries: bool,
    /// Use all multisets of characters, not only generating ones.
    #[arg(long)]
    pub all_symbols: bool,
}

impl SystemArgs {
    fn variant(&self) -> Variant {
        match (self.minus, self.all_entries) {
            (false, _) => Variant::Plain,
            (true, false) => Variant::Minus(AntisymmetryMode::SingleEntry),
            (true, true) => Variant::Minus(AntisymmetryMode::AllEntries),
        }
    }

    fn basis(&self) -> Result<SymbolBasis> {
        let mode = if self.all_symbols { Admissibility::All } else { Admissibility::Generating };
        SymbolBasis::with_mode(&self.group.parse()?, self.n, mode)
    }
}

#[derive(Args, Debug)]
pub struct DimArgs {
    #[command(flatten)]
    pub system: SystemArgs,
    /// Q or F<p>.
    #[arg(long, default_value = "Q")]
    pub coeff: String,
}

#[derive(Args, Debug)]
pub struct ClassArgs {
    /// Preset name or path to a class file.
    pub input: String,
    /// Z, Q or F<p>.
    #[arg(long, default_value = "Z")]
    pub coeff: String,
    /// Evaluate in B_n^-(G).
    #[arg(long)]
    pub minus: bool,
    /// Evaluate the refined invariant, one summand per label.
    #[arg(long)]
    pub refined: bool,
}

#[derive(Args, Debug)]
pub struct SnfArgs {
    #[command(flatten)]
    pub system: SystemArgs,
}

#[derive(Args, Debug)]
pub struct OrderArgs {
    #[command(flatten)]
    pub system: SystemArgs,
    /// Signed sum of symbols, e.g. "[1,0] + [3,0]".
    pub vector: String,
}

#[derive(Args, Debug)]
pub struct ComultArgs {
    /// Preset name or path to a class file.
    pub input: String,
    /// Subgroup G': C<d> for cyclic groups, or generators such as "1,0;0,2".
    #[arg(long)]
    pub sub: String,
    /// Length n' of the left factor.
    #[arg(long, default_value_t = 1)]
    pub split: usize,
    /// F<p>.
    #[arg(long, default_value = "F2")]
    pub coeff: String,
}

#[derive(Args, Debug)]
pub struct BurnArgs {
    /// Preset name, path to a presentation file, or C<N> for the generated sector of Burn_2(C_N).
    pub input: String,
    /// Projection onto pair classes for a stabilizer, as H=<name>.
    #[arg(long)]
    pub project: Option<String>,
    /// Field label read by the projection (full label or the part before ':').
    #[arg(long, default_value = "k(P1)")]
    pub field: String,
    /// Only read generators whose residual group is not cyclic.
    #[arg(long)]
    pub noncyclic: bool,
    /// Print the generators and relations.
    #[arg(long)]
    pub list: bool,
}

fn options(global: &Global) -> RationalOptions {
    RationalOptions { seed: global.seed, certify: global.certify, ..RationalOptions::default() }
}

fn parse_budget(s: &str) -> Result<u64> {
    let t = s.trim().to_ascii_uppercase();
    let (digits, scale) = match t.chars().last() {
        Some('K') => (&t[..t.len() - 1], 1u64 << 10),
        Some('M') => (&t[..t.len() - 1], 1 << 20),
        Some('G') => (&t[..t.len() - 1], 1 << 30),
        Some('T') => (&t[..t.len() - 1], 1 << 40),
        _ => (t.as_str(), 1),
    };
    let v: u64 = digits.parse().map_err(|_| Error::Parse { what: "memory budget", input: s.to_string() })?;
    Ok(v.saturating_mul(scale))
}

fn check_budget(global: &Global, rel: &RelationMatrix) -> Result<()> {
    let budget = parse_budget(&global.memory_budget)?;
    let need = rel.matrix().nnz() as u64 * BYTES_PER_ENTRY;
    if need > budget {
        return Err(Error::GuardExceeded(format!(
            "estimated {need} bytes for {} relations exceeds the memory budget of {budget} bytes",
            rel.nrows()
        )));
    }
    Ok(())
}

fn cache_path(basis: &SymbolBasis, variant: Variant) -> Option<PathBuf> {
    let dir = std::env::var_os(CACHE_ENV)?;
    let v = match variant {
        Variant::Plain => "plain",
        Variant::Minus(AntisymmetryMode::SingleEntry) => "minus",
        Variant::Minus(AntisymmetryMode::AllEntries) => "minus-all",
    };
    let mode = match basis.mode() {
        Admissibility::Generating => "gen",
        Admissibility::All => "all",
    };
    Some(Path::new(&dir).join(format!("{}-n{}-{v}-{mode}.rel", basis.group(), basis.n())))
}

/// Relation rows, read from the cache directory when present there.
pub fn relations(global: &Global, basis: &SymbolBasis, variant: Variant) -> Result<RelationMatrix> {
    let path = cache_path(basis, variant);
    if let Some(p) = path.as_ref().filter(|p| p.exists()) {
        let (header, rel) = read_matrix(BufReader::new(fs::File::open(p)?))?;
        if header.ncols == basis.len() && &header.group == basis.group() && header.n == basis.n() {
            check_budget(global, &rel)?;
            return Ok(rel);
        }
    }
    let rel = relations_for(basis, variant);
    check_budget(global, &rel)?;
    if let Some(p) = path {
        if let Some(dir) = p.parent() {
            fs::create_dir_all(dir)?;
        }
        write_matrix(std::io::BufWriter::new(fs::File::create(&p)?), &rel, basis.group(), basis.n())?;
    }
    Ok(rel)
}

/// Z (Smith form) or a field.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Ring {
    Integers,
    Field(Coefficients),
}

impl FromStr for Ring {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        if s.trim().eq_ignore_ascii_case("Z") {
            Ok(Ring::Integers)
        } else {
            Ok(Ring::Field(s.parse()?))
        }
    }
}

impl std::fmt::Display for Ring {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        match self {
            Ring::Integers => write!(f, "Z"),
            Ring::Field(c) => write!(f, "{c}"),
        }
    }
}

/// A quotient over Z or a field, answering membership and element orders.
pub enum Quotient {
    Integral(IntQuotient),
    Field(SymbolQuotient),
}

impl Quotient {
    pub fn build(global: &Global, basis: SymbolBasis, variant: Variant, ring: Ring) -> Result<(Quotient, usize)> {
        let rel = relations(global, &basis, variant)?;
        let rows = rel.nrows();
        let q = match ring {
            Ring::Integers => Quotient::Integral(IntQuotient::new(rel.matrix())?),
            Ring::Field(c) => Quotient::Field(SymbolQuotient::from_relations(basis, &rel, c, &options(global))?),
        };
        Ok((q, rows))
    }

    /// `None` when the class vanishes, otherwise a description ("order 2", "nonzero").
    pub fn verdict(&self, v: &SparseVec) -> Result<Option<String>> {
        match self {
            Quotient::Integral(q) => {
                let o = q.element_order(v);
                Ok((!o.is_zero_class()).then(|| format!("order {o}")))
            }
            Quotient::Field(q) => Ok((!q.is_zero(v)?).then(|| "nonzero".to_string())),
        }
    }
}

pub fn dim(global: &Global, a: &DimArgs) -> Result<u8> {
    let t = Instant::now();
    let coeff: Coefficients = a.coeff.parse()?;
    let basis = a.system.basis()?;
    let symbols = basis.len();
    let rel = relations(global, &basis, a.system.variant())?;
    let q = SymbolQuotient::from_relations(basis, &rel, coeff, &options(global))?;
    let report = json!({
        "command": "dim",
        "group": a.system.group.parse::<FinAbGroup>()?.to_string(),
        "n": a.system.n,
        "minus": a.system.minus,
        "coeff": coeff.to_string(),
        "symbols": symbols,
        "relations": rel.nrows(),
        "rank": q.rank(),
        "dim": q.dim(),
        "elapsed_ms": t.elapsed().as_millis() as u64,
    });
    emit(global, &q.dim().to_string(), &report)?;
    Ok(0)
}

pub fn load_action(input: &str) -> Result<ActionDescription> {
    let p = Path::new(input);
    let preset = if p.is_file() { load_class(&fs::read_to_string(p)?)? } else { preset(input)? };
    match preset {
        Preset::Action(a) => Ok(a),
        Preset::Hypersurface(h) => h.to_action(),
    }
}

fn variant_of(minus: bool) -> Variant {
    if minus {
        Variant::Minus(AntisymmetryMode::SingleEntry)
    } else {
        Variant::Plain
    }
}

pub fn class(global: &Global, a: &ClassArgs) -> Result<u8> {
    let t = Instant::now();
    let ring: Ring = a.coeff.parse()?;
    let action = load_action(&a.input)?;
    let variant = variant_of(a.minus);
    let group = action.group.clone();
    let name = if a.minus { "B-" } else { "B" };
    let summands: Vec<(String, usize, Vec<(i64, birsym::symbols::Symbol)>)> = if a.refined {
        action.beta_k()?.into_iter().map(|s| (s.label.clone(), s.length(), s.terms)).collect()
    } else {
        vec![("total".to_string(), action.n, action.beta_terms()?)]
    };
    let mut lines = vec![format!("{} ⟲ {group}, n = {}", action.name, action.n)];
    let mut verdicts = Vec::new();
    for (label, len, terms) in summands {
        let basis = SymbolBasis::new(&group, len)?;
        let v = basis.vector(&terms)?;
        let shown = basis.format_vector(&v);
        let (q, _) = Quotient::build(global, basis, variant, ring)?;
        let verdict = q.verdict(&v)?;
        let word = match verdict.as_deref() {
            None => "zero".to_string(),
            Some("nonzero") => "nonzero".to_string(),
            Some(d) => format!("nonzero ({d})"),
        };
        lines.push(format!("  {label}: {shown} in {name}{len}({group}) ⊗ {ring}: {word}"));
        verdicts.push(json!({
            "label": label,
            "length": len,
            "class": shown,
            "zero": verdict.is_none(),
            "detail": verdict,
        }));
    }
    let report = json!({
        "command": "class",
        "input": a.input,
        "group": group.to_string(),
        "n": action.n,
        "coeff": ring.to_string(),
        "minus": a.minus,
        "refined": a.refined,
        "summands": verdicts,
        "elapsed_ms": t.elapsed().as_millis() as u64,
    });
    emit(global, &lines.join("\n"), &report)?;
    Ok(0)
}

pub fn snf(global: &Global, a: &SnfArgs) -> Result<u8> {
    let t = Instant::now();
    let basis = a.system.basis()?;
    let rel = relations(global, &basis, a.system.variant())?;
    let q = IntQuotient::new(rel.matrix())?;
    let s = q.smith();
    let factors: Vec<String> = s.diagonal.iter().map(|d| d.to_string()).collect();
    let torsion: Vec<String> = s.torsion().iter().map(|d| d.to_string()).collect();
    let human = format!(
        "invariant factors ({}), free rank {}\ntorsion {}",
        factors.join(","),
        s.free_rank,
        if torsion.is_empty() { "none".to_string() } else { torsion.iter().map(|d| format!("Z/{d}")).collect::<Vec<_>>().join(" x ") }
    );
    let report = json!({
        "command": "snf",
        "group": basis.group().to_string(),
        "n": basis.n(),
        "minus": a.system.minus,
        "symbols": basis.len(),
        "relations": rel.nrows(),
        "invariant_factors": factors,
        "torsion": torsion,
        "free_rank": s.free_rank,
        "elapsed_ms": t.elapsed().as_millis() as u64,
    });
    emit(global, &human, &report)?;
    Ok(0)
}

pub fn order(global: &Global, a: &OrderArgs) -> Result<u8> {
    let basis = a.system.basis()?;
    let v = basis.parse_vector(&a.vector)?;
    let rel = relations(global, &basis, a.system.variant())?;
    let q = IntQuotient::new(rel.matrix())?;
    let o = q.element_order(&v);
    let report = json!({
        "command": "order",
        "group": basis.group().to_string(),
        "n": basis.n(),
        "minus": a.system.minus,
        "vector": basis.format_vector(&v),
        "order": o.to_string(),
        "zero": o.is_zero_class(),
    });
    emit(global, &o.to_string(), &report)?;
    Ok(0)
}

fn parse_subgroup(group: &FinAbGroup, sub: &str) -> Result<DualSurjection> {
    let bad = || Error::Parse { what: "subgroup", input: sub.to_string() };
    if group.is_cyclic() && group.rank() == 1 {
        let d: u32 = sub.trim().trim_start_matches(['C', 'c']).parse().map_err(|_| bad())?;
        return DualSurjection::cyclic(group.factors()[0], d);
    }
    let gens = sub
        .split(';')
        .map(|g| g.split(',').map(|x| x.trim().parse::<i64>().map_err(|_| bad())).collect::<Result<Vec<_>>>())
        .collect::<Result<Vec<_>>>()?;
    DualSurjection::from_subgroup(group, &gens)
}

pub fn comult(global: &Global, a: &ComultArgs) -> Result<u8> {
    let t = Instant::now();
    let Coefficients::Prime(p) = a.coeff.parse()? else {
        return Err(Error::Parse { what: "prime field for comultiplication (F<p>)", input: a.coeff.clone() });
    };
    let action = load_action(&a.input)?;
    let seq = parse_subgroup(&action.group, &a.sub)?;
    if a.split == 0 || a.split >= action.n {
        return Err(Error::DimensionMismatch(format!("split must lie in 1..{}", action.n)));
    }
    let source = SymbolBasis::new(seq.source(), action.n)?;
    let left = SymbolBasis::new(seq.target(), a.split)?;
    let right = SymbolBasis::new(seq.kernel(), action.n - a.split)?;
    let delta = Comultiplication::new(&seq, &source, &left, &right)?;
    let image = delta.apply(&action.beta(&source)?)?;
    let minus = Variant::Minus(AntisymmetryMode::SingleEntry);
    let lq = ModQuotient::new(relations(global, &left, minus)?.matrix(), p)?;
    let rq = ModQuotient::new(relations(global, &right, minus)?.matrix(), p)?;
    let zero = image.vanishes_in(&lq, &rq)?;
    let shown = delta.format(&image);
    let human = format!(
        "Δ-: {shown}\nin B{}-({}) ⊗ B{}-({}) ⊗ F{p}: {}",
        left.n(),
        seq.target(),
        right.n(),
        seq.kernel(),
        if zero { "zero" } else { "nonzero" }
    );
    let report = json!({
        "command": "comult",
        "input": a.input,
        "group": action.group.to_string(),
        "sub": seq.target().to_string(),
        "kernel": seq.kernel().to_string(),
        "split": [left.n(), right.n()],
        "coeff": format!("F{p}"),
        "image": shown,
        "zero": zero,
        "elapsed_ms": t.elapsed().as_millis() as u64,
    });
    emit(global, &human, &report)?;
    Ok(0)
}

pub fn load_presentation(input: &str) -> Result<BurnPresentation> {
    let p = Path::new(input);
    if p.is_file() {
        return BurnPresentation::from_json(&fs::read_to_string(p)?);
    }
    if let Some(n) = input.strip_prefix('C').and_then(|n| n.parse::<u32>().ok()) {
        return burn2_cyclic_relations(n);
    }
    preset_presentation(input)
}

pub fn burn(global: &Global, a: &BurnArgs) -> Result<u8> {
    let t = Instant::now();
    let p = load_presentation(&a.input)?;
    let q = p.quotient()?;
    let s = q.smith();
    let torsion: Vec<String> = s.torsion().iter().map(|d| d.to_string()).collect();
    let mut lines = vec![format!(
        "{} ({}): {} generators, {} relations, free rank {}, torsion {}",
        p.name,
        p.group,
        p.generators().len(),
        p.relations().len(),
        s.free_rank,
        if torsion.is_empty() { "none".to_string() } else { torsion.join(",") }
    )];
    if a.list {
        for g in p.generators() {
            lines.push(format!("  {} = {g}", g.id));
        }
        for r in p.relations() {
            lines.push(format!("  0 = {}", p.format_vector(&r.row)));
        }
    }
    let functional = match &a.project {
        Some(spec) => {
            let h = spec.strip_prefix("H=").unwrap_or(spec);
            let spec = ProjectionSpec { stabilizer: h.to_string(), field: a.field.clone(), noncyclic_only: a.noncyclic };
            Some(p.projection_functional(&spec)?)
        }
        None => None,
    };
    let mut classes = Vec::new();
    for c in p.classes() {
        let v = p.class_vector(&c.name)?;
        let zero = q.contains(&v);
        let value = functional.as_ref().map(|f| f.total(&v));
        let mut line = format!("  {}: {}", c.name, if zero { "zero" } else { "nonzero" });
        if !c.unknown.is_empty() {
            line.push_str(&format!(" (known terms only; {} unknown)", c.unknown.len()));
        }
        if let Some(x) = value {
            line = format!("  {}: {x}", c.name);
        }
        lines.push(line);
        classes.push(json!({
            "name": c.name,
            "class": p.format_vector(&v),
            "zero": zero,
            "unknown": c.unknown,
            "projection": value,
        }));
    }
    let report = json!({
        "command": "burn",
        "input": a.input,
        "name": p.name,
        "generators": p.generators().len(),
        "relations": p.relations().len(),
        "free_rank": s.free_rank,
        "torsion": torsion,
        "project": a.project,
        "field": a.field,
        "noncyclic": a.noncyclic,
        "classes": classes,
        "elapsed_ms": t.elapsed().as_millis() as u64,
    });
    emit(global, &lines.join("\n"), &report)?;
    Ok(0)
}
