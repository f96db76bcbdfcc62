//! Sweep serialization. High-precision values are written as decimal strings
//! with enough digits to round-trip; error bounds use shortest f64 form.

use std::io::{Read, Write};

use rug::Float;
use serde::{Deserialize, Serialize};

use super::config::RunConfig;
use crate::error::{Error, Result};
use crate::sweep::{detect_jumps, JumpFlag, SweepResult};

pub const CSV_HEADER: [&str; 5] = ["eps", "i_value", "err_bound", "t_used", "failed"];

/// One row of a sweep table.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct SweepRow {
    pub eps: f64,
    pub i_value: String,
    pub err_bound: Option<f64>,
    pub t_used: Option<f64>,
    pub failed: bool,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct ReferenceRecord {
    pub value: String,
    pub err_bound: f64,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct JumpRecord {
    pub eps_lo: f64,
    pub eps_hi: f64,
    pub delta: String,
    pub significance: f64,
}

#[derive(Serialize)]
struct SweepDocument<'a> {
    config: &'a RunConfig,
    results: Vec<SweepRow>,
    reference: ReferenceRecord,
    jumps: Vec<JumpRecord>,
}

pub fn format_float(v: &Float, digits: usize) -> String {
    v.to_string_radix(10, Some(digits))
}

fn finite(v: f64) -> Option<f64> {
    v.is_finite().then_some(v)
}

pub fn rows(result: &SweepResult, digits: usize) -> Vec<SweepRow> {
    (0..result.len())
        .map(|i| SweepRow {
            eps: result.eps_grid[i],
            i_value: format_float(&result.values[i], digits),
            err_bound: finite(result.err_bounds[i]),
            t_used: finite(result.t_used[i]),
            failed: result.failed(i),
        })
        .collect()
}

fn jump_records(jumps: &[JumpFlag], digits: usize) -> Vec<JumpRecord> {
    jumps
        .iter()
        .map(|j| JumpRecord {
            eps_lo: j.eps_lo,
            eps_hi: j.eps_hi,
            delta: format_float(&j.delta, digits),
            significance: j.significance,
        })
        .collect()
}

pub fn write_csv<W: Write>(result: &SweepResult, digits: usize, out: W) -> Result<()> {
    let mut w = csv::Writer::from_writer(out);
    w.write_record(CSV_HEADER).map_err(csv_err)?;
    for row in rows(result, digits) {
        w.write_record([
            row.eps.to_string(),
            row.i_value,
            row.err_bound.map(|e| format!("{e:e}")).unwrap_or_default(),
            row.t_used.map(|t| t.to_string()).unwrap_or_default(),
            row.failed.to_string(),
        ])
        .map_err(csv_err)?;
    }
    w.flush()?;
    Ok(())
}

pub fn write_json<W: Write>(result: &SweepResult, cfg: &RunConfig, out: W) -> Result<()> {
    let digits = cfg.digits();
    let doc = SweepDocument {
        config: cfg,
        results: rows(result, digits),
        reference: ReferenceRecord {
            value: format_float(&result.reference, digits),
            err_bound: result.reference_err,
        },
        jumps: jump_records(&result.jumps, digits),
    };
    let mut out = out;
    serde_json::to_writer_pretty(&mut out, &doc).map_err(|e| Error::Io(e.to_string()))?;
    out.write_all(b"\n")?;
    Ok(())
}

/// Reads a sweep CSV. Fails with `Parse` on a missing or wrong header, bad
/// fields, or no data rows.
pub fn read_csv<R: Read>(input: R) -> Result<Vec<SweepRow>> {
    let mut r = csv::Reader::from_reader(input);
    let header = r.headers().map_err(csv_err)?.clone();
    if header.iter().collect::<Vec<_>>() != CSV_HEADER {
        return Err(Error::Parse(format!(
            "expected header {}, found {:?}",
            CSV_HEADER.join(","),
            header.iter().collect::<Vec<_>>().join(",")
        )));
    }
    let mut out = Vec::new();
    for (n, rec) in r.records().enumerate() {
        let rec = rec.map_err(csv_err)?;
        let field = |k: usize| rec.get(k).unwrap_or("").trim();
        let bad = |what: &str| Error::Parse(format!("row {}: bad {what}", n + 1));
        let opt = |k: usize, what: &str| -> Result<Option<f64>> {
            let s = field(k);
            if s.is_empty() {
                Ok(None)
            } else {
                s.parse().map(Some).map_err(|_| bad(what))
            }
        };
        let row = SweepRow {
            eps: field(0).parse().map_err(|_| bad("eps"))?,
            i_value: field(1).to_string(),
            err_bound: opt(2, "err_bound")?,
            t_used: opt(3, "t_used")?,
            failed: field(4).parse().map_err(|_| bad("failed"))?,
        };
        if !row.failed {
            Float::parse(&row.i_value).map_err(|_| bad("i_value"))?;
        }
        out.push(row);
    }
    if out.is_empty() {
        return Err(Error::Parse("sweep table has no rows".into()));
    }
    Ok(out)
}

/// Rebuilds a [`SweepResult`] from table rows (the reference is not part of
/// the table and is left as NaN) and recomputes its jumps.
pub fn rows_to_result(rows: &[SweepRow], prec: u32, threshold: f64) -> Result<SweepResult> {
    let mut result = SweepResult {
        eps_grid: Vec::new(),
        values: Vec::new(),
        err_bounds: Vec::new(),
        t_used: Vec::new(),
        failures: Vec::new(),
        reference: Float::with_val(prec, f64::NAN),
        reference_err: f64::INFINITY,
        jumps: Vec::new(),
    };
    for row in rows {
        result.eps_grid.push(row.eps);
        let value = Float::parse(&row.i_value)
            .map(|p| Float::with_val(prec, p))
            .unwrap_or_else(|_| Float::with_val(prec, f64::NAN));
        result.values.push(value);
        result.err_bounds.push(row.err_bound.unwrap_or(f64::INFINITY));
        result.t_used.push(row.t_used.unwrap_or(f64::NAN));
        result.failures.push(row.failed.then(|| "failed".to_string()));
    }
    result.jumps = detect_jumps(&result, threshold);
    Ok(result)
}

fn csv_err(e: csv::Error) -> Error {
    Error::Parse(e.to_string())
}
