//! CSV and JSON writers for run data, summaries, and oracle tables.
//!
//! All numbers are written in full precision (shortest round-trip form), all
//! files are UTF-8 with LF line endings and '.' as the decimal separator.

use std::io::{self, Write};

use serde::Serialize;

use crate::fitness::Problem;
use crate::harness::{FixedTargetLog, SummaryStats};
use crate::oracle::StrengthTable;

/// Identity of a summary: which algorithm produced it on which instance.
#[derive(Clone, Debug)]
pub struct SummaryMeta {
    pub algorithm: String,
    pub problem: Problem,
    pub n: usize,
    pub lambda: usize,
}

/// Raw fixed-target data: one row per (run, reached target).
pub fn write_raw_csv<W: Write>(mut w: W, logs: &[FixedTargetLog]) -> io::Result<()> {
    writeln!(w, "run_id,target,evaluations")?;
    for (run_id, log) in logs.iter().enumerate() {
        for target in 0..=log.dimension() {
            if let Some(evals) = log.first_hit(target) {
                writeln!(w, "{run_id},{target},{evals}")?;
            }
        }
    }
    Ok(())
}

/// Per-target summary rows. Cells no run reached are written with count 0
/// and empty statistics.
pub fn write_summary_csv<W: Write>(
    mut w: W,
    meta: &SummaryMeta,
    rows: &[(usize, Option<SummaryStats>)],
) -> io::Result<()> {
    writeln!(w, "algorithm,problem,n,lambda,target,count,aht,rsd,q02,q10,q25,q50,q75,q90,q98")?;
    for (target, stats) in rows {
        write!(w, "{},{},{},{},{target},", meta.algorithm, meta.problem, meta.n, meta.lambda)?;
        match stats {
            Some(s) => {
                write!(w, "{},{},{}", s.count, s.aht, s.rsd)?;
                for q in s.quantiles {
                    write!(w, ",{q}")?;
                }
                writeln!(w)?;
            }
            None => writeln!(w, "0,,,,,,,,,")?,
        }
    }
    Ok(())
}

#[derive(Serialize)]
struct JsonRow {
    target: usize,
    count: usize,
    #[serde(skip_serializing_if = "Option::is_none")]
    aht: Option<f64>,
    #[serde(skip_serializing_if = "Option::is_none")]
    rsd: Option<f64>,
    #[serde(skip_serializing_if = "Option::is_none")]
    quantiles: Option<Quantiles>,
}

#[derive(Serialize)]
struct Quantiles {
    q02: f64,
    q10: f64,
    q25: f64,
    q50: f64,
    q75: f64,
    q90: f64,
    q98: f64,
}

#[derive(Serialize)]
struct JsonSummary<'a> {
    algorithm: &'a str,
    problem: &'a str,
    n: usize,
    lambda: usize,
    rows: Vec<JsonRow>,
}

/// JSON mirror of the summary CSV.
pub fn write_summary_json<W: Write>(
    w: W,
    meta: &SummaryMeta,
    rows: &[(usize, Option<SummaryStats>)],
) -> io::Result<()> {
    let doc = JsonSummary {
        algorithm: &meta.algorithm,
        problem: meta.problem.name(),
        n: meta.n,
        lambda: meta.lambda,
        rows: rows
            .iter()
            .map(|(target, stats)| match stats {
                Some(s) => JsonRow {
                    target: *target,
                    count: s.count,
                    aht: Some(s.aht),
                    rsd: Some(s.rsd),
                    quantiles: Some(Quantiles {
                        q02: s.quantiles[0],
                        q10: s.quantiles[1],
                        q25: s.quantiles[2],
                        q50: s.quantiles[3],
                        q75: s.quantiles[4],
                        q90: s.quantiles[5],
                        q98: s.quantiles[6],
                    }),
                },
                None => JsonRow { target: *target, count: 0, aht: None, rsd: None, quantiles: None },
            })
            .collect(),
    };
    serde_json::to_writer_pretty(w, &doc).map_err(io::Error::other)
}

/// Strength table rows `(v, k, drift_or_prob)` for plotting per-fitness
/// oracle strengths.
pub fn write_strength_table_csv<W: Write>(
    mut w: W,
    table: &StrengthTable,
    values: &[f64],
) -> io::Result<()> {
    writeln!(w, "v,k,drift_or_prob")?;
    for (v, (&k, &value)) in table.entries().iter().zip(values.iter()).enumerate() {
        writeln!(w, "{v},{k},{value}")?;
    }
    Ok(())
}

/// Fixed-target curve rows `(target, aht)` for one algorithm.
pub fn write_curve_csv<W: Write>(
    mut w: W,
    meta: &SummaryMeta,
    curve: &[(usize, f64)],
) -> io::Result<()> {
    writeln!(w, "algorithm,lambda,target,aht")?;
    for (target, aht) in curve {
        writeln!(w, "{},{},{target},{aht}", meta.algorithm, meta.lambda)?;
    }
    Ok(())
}
