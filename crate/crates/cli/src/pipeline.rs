//! Local GW series to local BPS counts, through the DT matrix to relative
//! BPS counts, and on to relative GW invariants.

use bps_core::bps::{local_bps_from_gw, relative_gw_from_bps, BpsVector, GeometryParams, GwVector, Kind};
use bps_core::correspondence::{integrality_report, local_to_relative_bps, IntegralityReport};
use serde::Serialize;

use crate::emit::{csv_lines, to_toml, Emit, VerdictRecord};
use crate::error::CliError;
use crate::series_file::render_rationals;

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct PipelineReport {
    pub geometry: GeometryParams,
    pub local_gw: GwVector,
    pub local_bps: BpsVector,
    pub relative_bps: BpsVector,
    pub relative_gw: GwVector,
    pub local_integrality: IntegralityReport,
    pub relative_integrality: IntegralityReport,
}

/// Runs every stage on the first `len` entries (all of them when `None`).
pub fn run_pipeline(input: &GwVector, len: Option<usize>) -> Result<PipelineReport, CliError> {
    if input.kind != Kind::Local {
        return Err(CliError::Usage(format!("pipeline needs a local_gw input, got a {} GW vector", input.kind)));
    }
    let len = len.unwrap_or(input.len());
    if len == 0 || len > input.len() {
        return Err(CliError::Usage(format!("order must be between 1 and {}, got {len}", input.len())));
    }
    let local_gw = input.truncated(len);
    let local_bps = local_bps_from_gw(&local_gw).map_err(CliError::stage("local BPS extraction"))?;
    let relative_bps = local_to_relative_bps(&local_bps, len).map_err(CliError::stage("correspondence"))?;
    let relative_gw = relative_gw_from_bps(&relative_bps).map_err(CliError::stage("relative GW"))?;
    Ok(PipelineReport {
        geometry: input.geometry,
        local_integrality: integrality_report(&local_bps.entries),
        relative_integrality: integrality_report(&relative_bps.entries),
        local_gw,
        local_bps,
        relative_bps,
        relative_gw,
    })
}

#[derive(Serialize)]
struct Verdicts {
    local_bps: VerdictRecord,
    relative_bps: VerdictRecord,
}

#[derive(Serialize)]
struct PipelineRecord {
    w: u32,
    primitive: bool,
    order: usize,
    local_gw: Vec<String>,
    local_bps: Vec<String>,
    relative_bps: Vec<String>,
    relative_gw: Vec<String>,
    integrality: Verdicts,
}

impl Emit for PipelineReport {
    fn structured(&self) -> String {
        to_toml(&PipelineRecord {
            w: self.geometry.w(),
            primitive: self.geometry.primitive,
            order: self.local_gw.len(),
            local_gw: render_rationals(&self.local_gw.entries),
            local_bps: render_rationals(&self.local_bps.entries),
            relative_bps: render_rationals(&self.relative_bps.entries),
            relative_gw: render_rationals(&self.relative_gw.entries),
            integrality: Verdicts {
                local_bps: (&self.local_integrality).into(),
                relative_bps: (&self.relative_integrality).into(),
            },
        })
    }

    /// One row per class multiple `d`; integrality verdicts only appear in
    /// the structured form.
    fn csv(&self) -> String {
        let header = ["d", "local_gw", "local_bps", "relative_bps", "relative_gw"].map(String::from).to_vec();
        let rows = (0..self.local_gw.len()).map(|i| {
            vec![
                (i + 1).to_string(),
                self.local_gw.entries[i].to_string(),
                self.local_bps.entries[i].to_string(),
                self.relative_bps.entries[i].to_string(),
                self.relative_gw.entries[i].to_string(),
            ]
        });
        csv_lines(header, rows)
    }
}
