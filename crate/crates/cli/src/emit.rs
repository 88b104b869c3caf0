//! Deterministic text output: TOML ("structured") or CSV with one header row.
//!
//! Rationals are written `p/q`, or `p` when the denominator is 1. Structured
//! output stores every number as a string, since DT values and GW
//! invariants outgrow 64-bit integers and TOML floats would lose exactness.

use bps_core::bps::Kind;
use bps_core::correspondence::{IntMatrix, IntegralityReport};
use bps_core::quiver::DtTable;
use serde::Serialize;

use crate::series_file::{SeriesData, SeriesKind};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Default, clap::ValueEnum)]
pub enum Format {
    #[default]
    Structured,
    Csv,
}

pub trait Emit {
    fn structured(&self) -> String;
    fn csv(&self) -> String;
}

pub fn emit_table(data: &impl Emit, format: Format) -> String {
    match format {
        Format::Structured => data.structured(),
        Format::Csv => data.csv(),
    }
}

pub(crate) fn to_toml(value: &impl Serialize) -> String {
    toml::to_string(value).expect("output records serialize to TOML")
}

pub(crate) fn csv_lines<I, R>(header: Vec<String>, rows: I) -> String
where
    I: IntoIterator<Item = R>,
    R: IntoIterator<Item = String>,
{
    let mut out = header.join(",");
    out.push('\n');
    for row in rows {
        out.push_str(&row.into_iter().collect::<Vec<_>>().join(","));
        out.push('\n');
    }
    out
}

fn indexed_header(prefix: &str, first: &str, count: usize) -> Vec<String> {
    let mut h: Vec<String> = if first.is_empty() { vec![] } else { vec![first.to_string()] };
    h.extend((1..=count).map(|i| format!("{prefix}{i}")));
    h
}

/// One row of values under `d1, d2, ...` (from `n0` for Euler series).
impl Emit for SeriesData {
    fn structured(&self) -> String {
        to_toml(&self.record())
    }

    fn csv(&self) -> String {
        let record = self.record();
        let header = if self.kind() == SeriesKind::Euler {
            (0..record.coeffs.len()).map(|i| format!("n{i}")).collect()
        } else {
            indexed_header("d", "", record.coeffs.len())
        };
        csv_lines(header, [record.coeffs])
    }
}

#[derive(Serialize)]
struct DtRow {
    m: u32,
    dt: Vec<String>,
}

#[derive(Serialize)]
struct DtRecord {
    row: Vec<DtRow>,
}

fn dt_rows(table: &DtTable) -> Vec<DtRow> {
    table
        .loops()
        .into_iter()
        .map(|m| DtRow { m, dt: table.row(m).into_iter().map(ToString::to_string).collect() })
        .collect()
}

/// One row per loop count `m`, columns `n1, n2, ...`.
impl Emit for DtTable {
    fn structured(&self) -> String {
        to_toml(&DtRecord { row: dt_rows(self) })
    }

    fn csv(&self) -> String {
        let rows = dt_rows(self).into_iter().map(|r| std::iter::once(r.m.to_string()).chain(r.dt));
        csv_lines(indexed_header("n", "m", self.max_n() as usize), rows)
    }
}

/// A correspondence matrix or its inverse.
#[derive(Debug, Clone)]
pub struct MatrixOutput {
    pub w: u32,
    pub inverse: bool,
    pub matrix: IntMatrix,
}

#[derive(Serialize)]
struct MatrixRecord {
    w: u32,
    dim: usize,
    inverse: bool,
    rows: Vec<Vec<String>>,
}

impl MatrixOutput {
    fn string_rows(&self) -> Vec<Vec<String>> {
        self.matrix.rows().iter().map(|r| r.iter().map(ToString::to_string).collect()).collect()
    }
}

impl Emit for MatrixOutput {
    fn structured(&self) -> String {
        to_toml(&MatrixRecord { w: self.w, dim: self.matrix.dim(), inverse: self.inverse, rows: self.string_rows() })
    }

    fn csv(&self) -> String {
        let rows = self
            .string_rows()
            .into_iter()
            .enumerate()
            .map(|(s, r)| std::iter::once((s + 1).to_string()).chain(r));
        csv_lines(indexed_header("t", "s", self.matrix.dim()), rows)
    }
}

/// Verdict of an integrality check on a BPS vector.
#[derive(Debug, Clone)]
pub struct IntegralityOutput {
    pub kind: Kind,
    pub w: u32,
    pub primitive: bool,
    pub report: IntegralityReport,
}

#[derive(Serialize)]
pub(crate) struct VerdictRecord {
    pub pass: bool,
    pub non_integral: Vec<u64>,
}

impl From<&IntegralityReport> for VerdictRecord {
    fn from(r: &IntegralityReport) -> Self {
        VerdictRecord { pass: r.passed(), non_integral: r.non_integral.iter().map(|&d| d as u64).collect() }
    }
}

#[derive(Serialize)]
struct IntegralityRecord {
    kind: &'static str,
    w: u32,
    primitive: bool,
    #[serde(flatten)]
    verdict: VerdictRecord,
}

impl Emit for IntegralityOutput {
    fn structured(&self) -> String {
        to_toml(&IntegralityRecord {
            kind: SeriesKind::of_bps(self.kind).as_str(),
            w: self.w,
            primitive: self.primitive,
            verdict: (&self.report).into(),
        })
    }

    /// Failing indices are joined with `;`.
    fn csv(&self) -> String {
        let failing: Vec<String> = self.report.non_integral.iter().map(ToString::to_string).collect();
        let row = vec![
            SeriesKind::of_bps(self.kind).to_string(),
            self.report.passed().to_string(),
            failing.join(";"),
        ];
        csv_lines(vec!["kind".into(), "pass".into(), "non_integral".into()], [row])
    }
}
