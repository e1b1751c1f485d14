//! Human-readable output plus append-only JSON-lines reports.

use std::fs::OpenOptions;
use std::io::Write;

use birsym::Result;
use serde_json::Value;

use crate::Global;

/// Prints `human` (or the JSON line with `--json`) and appends the JSON line to `--report`.
pub fn emit(global: &Global, human: &str, report: &Value) -> Result<()> {
    let line = serde_json::to_string(report)?;
    if global.json {
        println!("{line}");
    } else {
        println!("{human}");
    }
    if let Some(path) = &global.report {
        let mut f = OpenOptions::new().create(true).append(true).open(path)?;
        writeln!(f, "{line}")?;
    }
    Ok(())
}
