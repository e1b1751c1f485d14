//! Recomputes the stored table entries and verdicts and diffs them against an
//! expectations file.

use std::fs;
use std::path::PathBuf;
use std::time::Instant;

use birsym::quotient::{Coefficients, SymbolQuotient};
use birsym::symbols::{Admissibility, SymbolBasis};
use birsym::{Error, Result};
use clap::Args;
use serde_json::{json, Value};

use crate::commands::{load_action, relations, Quotient, Ring};
use crate::report::emit;
use crate::Global;

const EXPECTATIONS: &str = include_str!("../data/expectations.json");

#[derive(Args, Debug)]
pub struct ReproduceArgs {
    /// Expectations file; defaults to the built-in one.
    #[arg(long)]
    pub expectations: Option<PathBuf>,
    /// Skip the items marked heavy (the large n = 4 systems).
    #[arg(long)]
    pub quick: bool,
    /// Only run items whose id contains this string.
    #[arg(long)]
    pub filter: Option<String>,
}

fn field<'a>(item: &'a Value, key: &str) -> Result<&'a Value> {
    item.get(key).ok_or_else(|| Error::Malformed(format!("expectation item lacks {key:?}: {item}")))
}

fn text<'a>(item: &'a Value, key: &str) -> Result<&'a str> {
    field(item, key)?.as_str().ok_or_else(|| Error::Malformed(format!("{key:?} must be a string: {item}")))
}

fn minus(item: &Value) -> bool {
    item.get("minus").and_then(Value::as_bool).unwrap_or(false)
}

fn variant(item: &Value) -> birsym::quotient::Variant {
    if minus(item) {
        birsym::quotient::Variant::Minus(birsym::symbols::AntisymmetryMode::SingleEntry)
    } else {
        birsym::quotient::Variant::Plain
    }
}

fn run_dim(global: &Global, item: &Value) -> Result<Value> {
    let group = text(item, "group")?.parse()?;
    let n = field(item, "n")?.as_u64().ok_or_else(|| Error::Malformed("n".into()))? as usize;
    let coeff: Coefficients = text(item, "coeff")?.parse()?;
    let basis = SymbolBasis::with_mode(&group, n, Admissibility::Generating)?;
    let rel = relations(global, &basis, variant(item))?;
    let opts = birsym::linalg::RationalOptions { seed: global.seed, certify: global.certify, ..Default::default() };
    Ok(json!(SymbolQuotient::from_relations(basis, &rel, coeff, &opts)?.dim()))
}

fn run_class(global: &Global, item: &Value) -> Result<Value> {
    let ring: Ring = text(item, "coeff")?.parse()?;
    let action = load_action(text(item, "input")?)?;
    let (len, terms) = match item.get("label").and_then(Value::as_str) {
        None => (action.n, action.beta_terms()?),
        Some(label) => {
            let s = action
                .beta_k()?
                .into_iter()
                .find(|s| s.label == label)
                .ok_or_else(|| Error::Malformed(format!("no summand labelled {label:?}")))?;
            (s.length(), s.terms)
        }
    };
    let basis = SymbolBasis::new(&action.group, len)?;
    let v = basis.vector(&terms)?;
    let (q, _) = Quotient::build(global, basis, variant(item), ring)?;
    Ok(json!(if q.verdict(&v)?.is_none() { "zero" } else { "nonzero" }))
}

pub fn run(global: &Global, a: &ReproduceArgs) -> Result<u8> {
    let text = match &a.expectations {
        Some(p) => fs::read_to_string(p)?,
        None => EXPECTATIONS.to_string(),
    };
    let doc: Value = serde_json::from_str(&text)?;
    if doc.get("format").and_then(Value::as_u64) != Some(1) {
        return Err(Error::Malformed("expectations file needs \"format\": 1".into()));
    }
    let items = doc.get("items").and_then(Value::as_array).ok_or_else(|| Error::Malformed("missing items".into()))?;
    let (mut passed, mut failed, mut skipped) = (0usize, 0usize, 0usize);
    for item in items {
        let id = self::text(item, "id")?;
        let heavy = item.get("heavy").and_then(Value::as_bool).unwrap_or(false);
        if (a.quick && heavy) || a.filter.as_ref().is_some_and(|f| !id.contains(f.as_str())) {
            skipped += 1;
            continue;
        }
        let t = Instant::now();
        let got = match self::text(item, "kind")? {
            "dim" => run_dim(global, item)?,
            "class" => run_class(global, item)?,
            other => return Err(Error::Malformed(format!("unknown item kind {other:?}"))),
        };
        let expected = field(item, "expected")?;
        let ok = &got == expected;
        if ok {
            passed += 1;
        } else {
            failed += 1;
        }
        let human = format!("{} {id}: got {got}, expected {expected}", if ok { "ok  " } else { "DIFF" });
        let report = json!({
            "command": "reproduce-paper",
            "id": id,
            "got": got,
            "expected": expected,
            "ok": ok,
            "elapsed_ms": t.elapsed().as_millis() as u64,
        });
        emit(global, &human, &report)?;
    }
    let summary = json!({ "command": "reproduce-paper", "passed": passed, "failed": failed, "skipped": skipped });
    emit(global, &format!("{passed} matched, {failed} differ, {skipped} skipped"), &summary)?;
    Ok(if failed == 0 { 0 } else { 1 })
}
