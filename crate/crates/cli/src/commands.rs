use std::path::PathBuf;

use bps_core::bps::{
    local_bps_from_gw, local_gw_from_bps, relative_bps_from_gw, relative_gw_from_bps, Kind,
};
use bps_core::correspondence::{build_matrix, integrality_report, local_to_relative_bps, relative_to_local_bps};
use bps_core::quiver::{dt_from_euler, dt_table, DtTable};
use clap::{Args, Parser, Subcommand, ValueEnum};

use crate::emit::{emit_table, Format, IntegralityOutput, MatrixOutput};
use crate::error::CliError;
use crate::pipeline::run_pipeline;
use crate::series_file::{parse_series_file, SeriesData};

/// Exact BPS state counts and loop-quiver DT invariants.
#[derive(Debug, Parser)]
#[command(name = "bps", version)]
pub struct Cli {
    #[command(subcommand)]
    pub command: Command,

    #[command(flatten)]
    pub output: OutputArgs,
}

#[derive(Debug, Args)]
pub struct OutputArgs {
    #[arg(long, value_enum, default_value_t = Format::Structured, global = true)]
    pub format: Format,

    /// Write here instead of standard output.
    #[arg(long, global = true)]
    pub output: Option<PathBuf>,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum Direction {
    LocalToRelative,
    RelativeToLocal,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// DT invariants of the m-loop quiver, for every loop count 0..=M.
    ///
    /// With --input, reads an `euler` file instead and extracts DT_1..DT_N
    /// from its product expansion.
    Dt {
        #[arg(long, required_unless_present = "input", conflicts_with = "input")]
        loops: Option<u32>,
        #[arg(long, required_unless_present = "input", conflicts_with = "input")]
        upto: Option<u32>,
        #[arg(long)]
        input: Option<PathBuf>,
    },
    /// Local BPS counts from a local_gw file, or GW from local_bps with --inverse.
    LocalBps {
        #[arg(long)]
        input: PathBuf,
        #[arg(long)]
        inverse: bool,
    },
    /// Relative BPS counts from a relative_gw file, or GW from relative_bps with --inverse.
    RelativeBps {
        #[arg(long)]
        input: PathBuf,
        #[arg(long)]
        inverse: bool,
    },
    /// The DT correspondence matrix C (or its inverse) for intersection number W.
    Matrix {
        #[arg(long)]
        w: u32,
        #[arg(long)]
        upto: usize,
        #[arg(long)]
        inverse: bool,
    },
    /// Map local BPS counts to relative ones through C, or back.
    Transform {
        #[arg(long)]
        input: PathBuf,
        #[arg(long, value_enum)]
        direction: Direction,
    },
    /// local_gw -> local BPS -> relative BPS -> relative GW, with integrality checks.
    Pipeline {
        #[arg(long)]
        input: PathBuf,
        /// Use only the first N entries.
        #[arg(long)]
        upto: Option<usize>,
    },
    /// Report which entries of a BPS file are not integers.
    CheckIntegrality {
        #[arg(long)]
        input: PathBuf,
    },
}

/// Runs one subcommand and renders its result.
pub fn execute(command: &Command, format: Format) -> Result<String, CliError> {
    Ok(match command {
        Command::Dt { input: Some(path), .. } => {
            let SeriesData::Euler(euler) = parse_series_file(path)? else {
                return Err(CliError::Usage("dt --input needs an euler file".into()));
            };
            let mut table = DtTable::default();
            for (i, v) in dt_from_euler(&euler)?.into_iter().enumerate() {
                table.insert(euler.m, i as u32 + 1, v);
            }
            emit_table(&table, format)
        }
        Command::Dt { loops, upto, input: None } => {
            let (Some(m), Some(n)) = (loops, upto) else {
                return Err(CliError::Usage("dt needs --loops and --upto".into()));
            };
            emit_table(&dt_table(*m, *n)?, format)
        }
        Command::LocalBps { input, inverse } => {
            let data = parse_series_file(input)?;
            let out = if *inverse {
                SeriesData::Gw(local_gw_from_bps(&data.into_bps(Kind::Local)?)?)
            } else {
                SeriesData::Bps(local_bps_from_gw(&data.into_gw(Kind::Local)?)?)
            };
            emit_table(&out, format)
        }
        Command::RelativeBps { input, inverse } => {
            let data = parse_series_file(input)?;
            let out = if *inverse {
                SeriesData::Gw(relative_gw_from_bps(&data.into_bps(Kind::Relative)?)?)
            } else {
                SeriesData::Bps(relative_bps_from_gw(&data.into_gw(Kind::Relative)?)?)
            };
            emit_table(&out, format)
        }
        Command::Matrix { w, upto, inverse } => {
            let c = build_matrix(*w, *upto)?;
            let matrix = if *inverse { c.inverse()? } else { c.as_matrix().clone() };
            emit_table(&MatrixOutput { w: *w, inverse: *inverse, matrix }, format)
        }
        Command::Transform { input, direction } => {
            let data = parse_series_file(input)?;
            let out = match direction {
                Direction::LocalToRelative => {
                    let v = data.into_bps(Kind::Local)?;
                    local_to_relative_bps(&v, v.len())?
                }
                Direction::RelativeToLocal => {
                    let v = data.into_bps(Kind::Relative)?;
                    relative_to_local_bps(&v, v.len())?
                }
            };
            emit_table(&SeriesData::Bps(out), format)
        }
        Command::Pipeline { input, upto } => {
            let gw = parse_series_file(input)?.into_gw(Kind::Local)?;
            emit_table(&run_pipeline(&gw, *upto)?, format)
        }
        Command::CheckIntegrality { input } => {
            let v = match parse_series_file(input)? {
                SeriesData::Bps(v) => v,
                other => return Err(CliError::Usage(format!("expected a local_bps or relative_bps file, got {}", other.kind()))),
            };
            let out = IntegralityOutput {
                kind: v.kind,
                w: v.geometry.w(),
                primitive: v.geometry.primitive,
                report: integrality_report(&v.entries),
            };
            emit_table(&out, format)
        }
    })
}
