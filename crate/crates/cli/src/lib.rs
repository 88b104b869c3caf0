//! Series files, table output and the subcommands of the `bps` tool.
//!
//! Input files are TOML with a `kind`, the geometry parameter (`w`, or `m`
//! for Euler series) and `coeffs` as quoted exact rationals:
//!
//! ```toml
//! kind = "local_gw"
//! w = 3
//! primitive = true
//! coeffs = ["3", "-45/8", "244/9"]
//! ```

pub mod commands;
pub mod emit;
mod error;
pub mod pipeline;
pub mod series_file;

pub use emit::{emit_table, Emit, Format};
pub use error::CliError;
pub use pipeline::{run_pipeline, PipelineReport};
pub use series_file::{parse_series_file, parse_series_str, SeriesData, SeriesKind};
