//! Seeded experiment sweeps over the solvers of `bro-core`, with CSV and SVG
//! output.

pub mod plan;
pub mod report;
pub mod runner;

use std::path::Path;

pub use plan::{Algorithm, ExperimentPlan, InitPolicy, Noise};
pub use report::{emit_csv, emit_svg_plot, render_svg, write_csv};
pub use runner::{build_game, resolve_init, run_experiment, solve, summarize, RunRecord, RunSettings, SummaryRow};

#[derive(Debug, thiserror::Error)]
pub enum BenchError {
    #[error("config error: {0}")]
    Config(String),
    #[error(transparent)]
    Solver(#[from] bro_core::Error),
    #[error("{path}: {source}")]
    Io {
        path: String,
        source: std::io::Error,
    },
    #[error("csv: {0}")]
    Csv(#[from] csv::Error),
}

impl BenchError {
    pub fn io(path: &Path, source: std::io::Error) -> Self {
        BenchError::Io {
            path: path.display().to_string(),
            source,
        }
    }

    /// Process exit code: 1 for configuration problems, 2 for solver
    /// failures and I/O.
    pub fn exit_code(&self) -> i32 {
        match self {
            BenchError::Config(_) => 1,
            _ => 2,
        }
    }
}

impl From<std::io::Error> for BenchError {
    fn from(e: std::io::Error) -> Self {
        BenchError::Io {
            path: "<stream>".into(),
            source: e,
        }
    }
}
