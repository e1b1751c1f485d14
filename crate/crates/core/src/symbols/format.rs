//! Sparse triple text format for relation matrices.
//!
//! ```text
//! % birsym relation matrix
//! 7 5 C4 2
//! 0 0 1
//! 0 2 -1
//! ```
//!
//! Lines starting with `%` are comments. The first other line is the header
//! `<columns> <rows> <group> <n>`; every following line is a `<row> <col> <value>`
//! triple with zero-based indices. Triples may come in any order.

use std::io::{BufRead, Write};

use super::relations::{RelationMatrix, RelationTag};
use crate::error::{Error, Result};
use crate::group::FinAbGroup;
use crate::linalg::{SparseMatrix, SparseVec};

/// Header of a matrix file.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct MatrixHeader {
    pub ncols: usize,
    pub nrows: usize,
    pub group: FinAbGroup,
    pub n: usize,
}

pub fn write_matrix<W: Write>(mut w: W, m: &RelationMatrix, group: &FinAbGroup, n: usize) -> Result<()> {
    writeln!(w, "% birsym relation matrix")?;
    writeln!(w, "{} {} {} {}", m.ncols(), m.nrows(), group, n)?;
    for (i, row) in m.rows().iter().enumerate() {
        for &(c, v) in row.entries() {
            writeln!(w, "{i} {c} {v}")?;
        }
    }
    Ok(())
}

pub fn read_matrix<R: BufRead>(r: R) -> Result<(MatrixHeader, RelationMatrix)> {
    let mut header: Option<MatrixHeader> = None;
    let mut triples: Vec<Vec<(u32, i64)>> = Vec::new();
    for (lineno, line) in r.lines().enumerate() {
        let line = line?;
        let t = line.trim();
        if t.is_empty() || t.starts_with('%') {
            continue;
        }
        let bad = |msg: &str| Error::Malformed(format!("line {}: {msg}: {t:?}", lineno + 1));
        let fields: Vec<&str> = t.split_whitespace().collect();
        match &header {
            None => {
                if fields.len() != 4 {
                    return Err(bad("header needs <columns> <rows> <group> <n>"));
                }
                let ncols = fields[0].parse().map_err(|_| bad("column count"))?;
                let nrows = fields[1].parse().map_err(|_| bad("row count"))?;
                let group = fields[2].parse()?;
                let n = fields[3].parse().map_err(|_| bad("symbol length"))?;
                triples = vec![Vec::new(); nrows];
                header = Some(MatrixHeader { ncols, nrows, group, n });
            }
            Some(h) => {
                if fields.len() != 3 {
                    return Err(bad("expected <row> <col> <value>"));
                }
                let i: usize = fields[0].parse().map_err(|_| bad("row index"))?;
                let c: u32 = fields[1].parse().map_err(|_| bad("column index"))?;
                let v: i64 = fields[2].parse().map_err(|_| bad("value"))?;
                if i >= h.nrows || c as usize >= h.ncols {
                    return Err(bad("index out of range"));
                }
                triples[i].push((c, v));
            }
        }
    }
    let h = header.ok_or_else(|| Error::Malformed("missing header line".into()))?;
    let rows: Vec<SparseVec> = triples.into_iter().map(SparseVec::from_pairs).collect();
    let tags = vec![RelationTag::Imported; rows.len()];
    let m = RelationMatrix::new(SparseMatrix::from_rows(h.ncols, rows), tags);
    Ok((h, m))
}
