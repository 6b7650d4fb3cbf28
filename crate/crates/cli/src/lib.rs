//! Command-line surface and persistence for the magic-square trajectory
//! toolkit: catalog files, per-square analysis records, census reports with
//! CSV sidecars, threshold sweeps, and SVG figures.

use std::path::{Path, PathBuf};

use thiserror::Error;

pub mod analysis;
pub mod commands;
pub mod formats;
pub mod render;
pub mod report;
pub mod sweep;

pub use analysis::AnalysisRecord;
pub use commands::{cmd_analyze, cmd_enumerate, cmd_render, cmd_report, cmd_sweep};
pub use render::RenderMode;
pub use report::HistogramSpec;

/// Exit code 1 for validation failures, 2 for I/O failures.
#[derive(Debug, Error)]
pub enum CliError {
    #[error("{0}")]
    Validation(String),
    #[error("{}: {source}", path.display())]
    Io {
        path: PathBuf,
        #[source]
        source: std::io::Error,
    },
}

impl CliError {
    pub fn validation(message: impl Into<String>) -> CliError {
        CliError::Validation(message.into())
    }

    pub fn io(path: &Path, source: std::io::Error) -> CliError {
        CliError::Io {
            path: path.to_path_buf(),
            source,
        }
    }

    pub fn exit_code(&self) -> u8 {
        match self {
            CliError::Validation(_) => 1,
            CliError::Io { .. } => 2,
        }
    }
}
