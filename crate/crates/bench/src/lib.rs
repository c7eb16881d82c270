//! Benchmark harness for the [`ctaea`] crate.
//!
//! The harness turns one [`config::ExperimentConfig`] — a problem, an
//! algorithm list, a seed list, and a budget — into:
//!
//! * one self-describing JSON [`run::StoredRun`] file per (algorithm, seed),
//! * a `summary.csv` table of per-metric medians and interquartile ranges,
//!   with rank-sum significance marks when exactly two algorithms compete,
//! * optional plot-ready scatter CSVs of the final archives.
//!
//! Seeds execute on a worker pool (size taken from the `CTAEA_WORKERS`
//! environment variable when set); every run owns its seeded generator, so
//! batches are reproducible run by run, and all files are written by the
//! coordinating thread after the pool drains. Metric tables are
//! byte-identical across reruns of the same configuration; wall-clock
//! timings live only in the per-run records.

use std::path::PathBuf;

pub mod config;
pub mod run;
pub mod scatter;
pub mod summary;

pub use config::{Algorithm, ExperimentConfig, MetricFlags};
pub use run::{
    execute_run, load_stored_runs, run_experiment, run_experiment_with, BatchResult, RunFailure,
    StoredRun, STORED_RUN_VERSION,
};
pub use scatter::{emit_scatter, read_scatter};
pub use summary::{render_summary_csv, summarize_runs, BatchSummary, Mark, SummaryRow};

/// Errors surfaced by the harness: configuration problems, I/O failures
/// (always with the offending path), malformed stored artifacts, and
/// anything bubbling up from the optimization crate.
#[derive(Debug, thiserror::Error)]
pub enum BenchError {
    #[error("configuration error: {0}")]
    Config(String),
    #[error("{}: {source}", path.display())]
    Io {
        path: PathBuf,
        #[source]
        source: std::io::Error,
    },
    #[error("{}: {message}", path.display())]
    Format { path: PathBuf, message: String },
    #[error(transparent)]
    Core(#[from] ctaea::Error),
}

impl BenchError {
    pub fn io(path: impl Into<PathBuf>, source: std::io::Error) -> BenchError {
        BenchError::Io {
            path: path.into(),
            source,
        }
    }
}
