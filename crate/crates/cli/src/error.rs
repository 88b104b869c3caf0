use std::path::PathBuf;

use thiserror::Error;

#[derive(Debug, Error)]
pub enum CliError {
    #[error("{}: {source}", path.display())]
    Io {
        path: PathBuf,
        #[source]
        source: std::io::Error,
    },

    #[error("line {line}, field `{field}`: {message}")]
    Parse { line: usize, field: String, message: String },

    #[error("malformed series file: {0}")]
    Syntax(String),

    #[error("{0}")]
    Usage(String),

    #[error("{stage}: {source}")]
    Stage {
        stage: &'static str,
        #[source]
        source: bps_core::Error,
    },

    #[error(transparent)]
    Core(#[from] bps_core::Error),
}

impl CliError {
    pub(crate) fn stage(stage: &'static str) -> impl FnOnce(bps_core::Error) -> Self {
        move |source| CliError::Stage { stage, source }
    }

    /// 1 for bad input, 2 when an internal consistency check tripped.
    pub fn exit_code(&self) -> u8 {
        match self {
            CliError::Core(e) | CliError::Stage { source: e, .. } if e.is_internal() => 2,
            _ => 1,
        }
    }
}
