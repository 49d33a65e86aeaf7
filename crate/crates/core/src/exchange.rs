//! Text exchange formats: ring files and structured reports.
//!
//! A ring file is a JSON object with `p`, `dim`, `table` (`table[i][j]` is
//! the coordinate row of `e_i e_j`) and optionally `ideals`, a list of
//! `{ "side": .., "rows": [[..], ..] }` echelon bases. [`write_ring`] emits
//! one canonical layout, so parsing and rewriting a file it produced gives
//! the same bytes.

use std::fmt::Write as _;

use serde::{Deserialize, Serialize};
use serde_json::{json, Value};

use crate::cover::CoverResult;
use crate::error::{Error, Result};
use crate::ideals::{IdealBasis, Side};
use crate::linalg::Subspace;
use crate::ring::{make_ring, RingPresentation};

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct IdealRecord {
    pub side: Side,
    pub rows: Vec<Vec<u32>>,
}

impl From<&IdealBasis> for IdealRecord {
    fn from(ideal: &IdealBasis) -> Self {
        IdealRecord {
            side: ideal.side(),
            rows: ideal.rows().to_vec(),
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct RingFile {
    pub p: u64,
    pub dim: usize,
    pub table: Vec<Vec<Vec<u32>>>,
    #[serde(default, skip_serializing_if = "Vec::is_empty")]
    pub ideals: Vec<IdealRecord>,
}

impl RingFile {
    pub fn from_ring(ring: &RingPresentation, ideals: &[IdealBasis]) -> RingFile {
        RingFile {
            p: ring.p(),
            dim: ring.dim(),
            table: ring.table(),
            ideals: ideals.iter().map(IdealRecord::from).collect(),
        }
    }

    /// Validates the table and every listed ideal.
    pub fn into_ring(self) -> Result<(RingPresentation, Vec<IdealBasis>)> {
        if self.table.len() != self.dim || self.table.iter().any(|row| row.len() != self.dim) {
            return Err(Error::Parse(format!("table must be {0} x {0}", self.dim)));
        }
        let ring = make_ring(self.p, self.dim, &self.table)?;
        let ideals = self
            .ideals
            .into_iter()
            .map(|rec| parse_ideal(&ring, rec))
            .collect::<Result<Vec<_>>>()?;
        Ok((ring, ideals))
    }
}

fn parse_ideal(ring: &RingPresentation, rec: IdealRecord) -> Result<IdealBasis> {
    let p = ring.fp().p();
    if rec
        .rows
        .iter()
        .any(|r| r.len() != ring.dim() || r.iter().any(|&c| c >= p))
    {
        return Err(Error::Parse(
            "ideal row has the wrong length or an entry out of range".into(),
        ));
    }
    let space = Subspace::span(ring.fp(), ring.dim(), rec.rows.iter().cloned());
    if space.rows() != rec.rows.as_slice() {
        return Err(Error::Parse(
            "ideal rows are not in reduced echelon form".into(),
        ));
    }
    IdealBasis::checked(ring, space, rec.side)
        .ok_or_else(|| Error::Parse(format!("rows do not span a {} ideal", rec.side)))
}

fn row(v: &[u32]) -> String {
    let items: Vec<String> = v.iter().map(u32::to_string).collect();
    format!("[{}]", items.join(", "))
}

fn rows(vs: &[Vec<u32>]) -> String {
    let items: Vec<String> = vs.iter().map(|v| row(v)).collect();
    format!("[{}]", items.join(", "))
}

/// Canonical text for a ring file.
pub fn write_ring_file(file: &RingFile) -> String {
    let mut out = String::new();
    let _ = writeln!(out, "{{");
    let _ = writeln!(out, "  \"p\": {},", file.p);
    let _ = writeln!(out, "  \"dim\": {},", file.dim);
    let _ = writeln!(out, "  \"table\": [");
    for (i, r) in file.table.iter().enumerate() {
        let sep = if i + 1 < file.table.len() { "," } else { "" };
        let _ = writeln!(out, "    {}{sep}", rows(r));
    }
    if file.ideals.is_empty() {
        let _ = writeln!(out, "  ]");
    } else {
        let _ = writeln!(out, "  ],");
        let _ = writeln!(out, "  \"ideals\": [");
        for (i, rec) in file.ideals.iter().enumerate() {
            let sep = if i + 1 < file.ideals.len() { "," } else { "" };
            let _ = writeln!(
                out,
                "    {{\"side\": \"{}\", \"rows\": {}}}{sep}",
                rec.side,
                rows(&rec.rows)
            );
        }
        let _ = writeln!(out, "  ]");
    }
    out.push_str("}\n");
    out
}

pub fn write_ring(ring: &RingPresentation, ideals: &[IdealBasis]) -> String {
    write_ring_file(&RingFile::from_ring(ring, ideals))
}

pub fn parse_ring_file(text: &str) -> Result<RingFile> {
    serde_json::from_str(text).map_err(|e| Error::Parse(e.to_string()))
}

pub fn read_ring(text: &str) -> Result<(RingPresentation, Vec<IdealBasis>)> {
    parse_ring_file(text)?.into_ring()
}

pub fn ideal_json(ideal: &IdealBasis) -> Value {
    json!({
        "side": ideal.side(),
        "dim": ideal.dim(),
        "order": ideal.order().to_string(),
        "rows": ideal.rows(),
    })
}

/// Structured cover report; `elapsed_ms` is 0 unless `timings` is set.
pub fn cover_result_json(result: &CoverResult, timings: bool) -> Value {
    json!({
        "side": result.side,
        "eta": result.eta,
        "certificate": result.certificate,
        "nodes": result.nodes,
        "elapsed_ms": if timings { result.elapsed.as_millis() as u64 } else { 0 },
        "maximal": result.maximal_count,
        "forced": result.forced_count,
        "cover": result.cover.iter().map(|i| i.rows().to_vec()).collect::<Vec<_>>(),
        "uncovered_witness": result.uncovered_witness,
    })
}
