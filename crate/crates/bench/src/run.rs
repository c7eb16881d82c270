//! Batch execution: one stored record per (algorithm, seed), a worker pool
//! across runs, and failure capture.

use std::collections::BTreeMap;
use std::panic::{catch_unwind, AssertUnwindSafe};
use std::path::{Path, PathBuf};
use std::time::Instant;

use ctaea::baseline::{run_baseline_traced, BaselineConfig};
use ctaea::ctaea::{run_traced, CtaeaConfig, TraceMetrics, Variant};
use ctaea::metrics::MetricReport;
use ctaea::record::{restore, RunRecord};
use ctaea::RandomSource;
use serde::{Deserialize, Serialize};

use crate::config::{Algorithm, ExperimentConfig, MetricFlags};
use crate::summary::{render_summary_csv, summarize_runs, BatchSummary};
use crate::BenchError;

/// Format version stamped into every stored run file.
pub const STORED_RUN_VERSION: u32 = 1;

/// The experiment settings that shaped one run, denormalized so a record
/// file is meaningful on its own.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct RunSettings {
    pub problem: String,
    pub parameters: BTreeMap<String, f64>,
    pub objectives: usize,
    pub algorithm: Algorithm,
    pub population_size: usize,
    pub max_evaluations: u64,
    pub seed: u64,
    pub metrics: MetricFlags,
}

/// One persisted run: a version field, the settings snapshot, wall-clock
/// time, the deterministic run record, and the final convergence-set
/// metrics the summary tables are built from.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct StoredRun {
    pub version: u32,
    pub settings: RunSettings,
    /// Wall-clock duration of the optimization itself; excluded from all
    /// summary tables so reruns reproduce them byte for byte.
    pub wall_clock_seconds: f64,
    pub record: RunRecord,
    /// Final-archive quality indicators (`None` when all metric flags are
    /// off).
    pub final_metrics: Option<MetricReport>,
}

impl StoredRun {
    /// Structural invariants every stored run satisfies: a matching format
    /// version, strictly increasing trace evaluations, and full-size final
    /// archives (both archives for the two-archive algorithm, the
    /// population plus an empty diversity slot for the baseline).
    pub fn validate(&self) -> Result<(), BenchError> {
        if self.version != STORED_RUN_VERSION {
            return Err(BenchError::Config(format!(
                "stored run has version {}, this harness reads {STORED_RUN_VERSION}",
                self.version
            )));
        }
        for pair in self.record.trace.windows(2) {
            if pair[1].evaluations <= pair[0].evaluations {
                return Err(BenchError::Config(format!(
                    "trace evaluations not strictly increasing at generation {}",
                    pair[1].generation
                )));
            }
        }
        let n = self.record.population_size;
        if self.record.final_ca.len() != n {
            return Err(BenchError::Config(format!(
                "final convergence set holds {} members, expected {n}",
                self.record.final_ca.len()
            )));
        }
        let expect_da = if self.settings.algorithm == Algorithm::Baseline { 0 } else { n };
        if self.record.final_da.len() != expect_da {
            return Err(BenchError::Config(format!(
                "final diversity set holds {} members, expected {expect_da}",
                self.record.final_da.len()
            )));
        }
        Ok(())
    }

    /// File stem a run is stored under, e.g. `c1-dtlz3-m3-ctaea-seed4`.
    pub fn stem(&self) -> String {
        record_stem(
            &self.settings.problem,
            self.settings.objectives,
            self.settings.algorithm,
            self.settings.seed,
        )
    }
}

pub(crate) fn record_stem(problem: &str, m: usize, algorithm: Algorithm, seed: u64) -> String {
    format!(
        "{}-m{m}-{}-seed{seed}",
        problem.to_ascii_lowercase(),
        algorithm.label()
    )
}

/// Executes a single run and scores its final convergence set. This is the
/// unit of work the batch pool parallelizes over.
pub fn execute_run(
    config: &ExperimentConfig,
    algorithm: Algorithm,
    seed: u64,
) -> Result<StoredRun, BenchError> {
    let problem = config.problem_definition()?;
    let n = config.effective_population()?;
    let flags = config.metrics;

    let scoring_data = if flags.any() {
        let front = problem.sample_reference_front(flags.front_points)?;
        let reference = problem.hypervolume_reference();
        Some((front, reference))
    } else {
        None
    };
    let scoring = scoring_data.as_ref().map(|(front, reference)| TraceMetrics {
        front,
        reference_point: reference.clone(),
        mode: flags.hv_mode(seed),
    });

    let started = Instant::now();
    let record = match algorithm {
        Algorithm::Baseline => {
            let mut run_config = BaselineConfig::new(n, config.max_evaluations);
            run_config.trace_every = Some(config.trace_every);
            run_baseline_traced(
                &problem,
                &run_config,
                RandomSource::from_seed(seed),
                scoring.as_ref(),
            )?
        }
        _ => {
            let mut run_config = CtaeaConfig::new(n, config.max_evaluations);
            run_config.variant = match algorithm {
                Algorithm::Ctaea => Variant::Full,
                Algorithm::CtaeaVariantI => Variant::VariantI,
                Algorithm::CtaeaVariantII => Variant::VariantII,
                Algorithm::Baseline => unreachable!("handled above"),
            };
            run_config.trace_every = Some(config.trace_every);
            run_traced(
                &problem,
                &run_config,
                RandomSource::from_seed(seed),
                scoring.as_ref(),
            )?
        }
    };
    let wall_clock_seconds = started.elapsed().as_secs_f64();

    let final_metrics = match &scoring_data {
        None => None,
        Some((front, reference)) => {
            let members = restore(&record.final_ca)?;
            Some(MetricReport::compute(
                seed,
                record.evaluations_used,
                &members,
                front,
                reference,
                flags.hv_mode(seed),
                false,
            )?)
        }
    };

    let stored = StoredRun {
        version: STORED_RUN_VERSION,
        settings: RunSettings {
            problem: problem.name().to_string(),
            parameters: problem.parameters().clone(),
            objectives: problem.m(),
            algorithm,
            population_size: record.population_size,
            max_evaluations: config.max_evaluations,
            seed,
            metrics: flags,
        },
        wall_clock_seconds,
        record,
        final_metrics,
    };
    stored.validate()?;
    Ok(stored)
}

/// A run that panicked or errored; kept out of all statistics.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct RunFailure {
    pub algorithm: Algorithm,
    pub seed: u64,
    pub error: String,
}

/// Everything one batch produced.
#[derive(Debug, Clone, PartialEq)]
pub struct BatchResult {
    /// Successful runs, algorithm-major in configuration order.
    pub runs: Vec<StoredRun>,
    pub failures: Vec<RunFailure>,
    pub summary: BatchSummary,
    /// The summary table exactly as written to `summary.csv`.
    pub summary_csv: String,
    /// Paths of the per-run record files, parallel to `runs`.
    pub record_paths: Vec<PathBuf>,
    pub summary_path: PathBuf,
}

fn worker_pool() -> Result<rayon::ThreadPool, BenchError> {
    let mut builder = rayon::ThreadPoolBuilder::new();
    if let Ok(value) = std::env::var("CTAEA_WORKERS") {
        let workers: usize = value
            .trim()
            .parse()
            .ok()
            .filter(|&w| w > 0)
            .ok_or_else(|| {
                BenchError::Config(format!(
                    "CTAEA_WORKERS must be a positive integer, got {value:?}"
                ))
            })?;
        builder = builder.num_threads(workers);
    }
    builder
        .build()
        .map_err(|e| BenchError::Config(format!("cannot build worker pool: {e}")))
}

fn panic_message(payload: Box<dyn std::any::Any + Send>) -> String {
    if let Some(s) = payload.downcast_ref::<&str>() {
        (*s).to_string()
    } else if let Some(s) = payload.downcast_ref::<String>() {
        s.clone()
    } else {
        "run panicked".to_string()
    }
}

/// Runs the full batch with the standard runner: every (algorithm, seed)
/// pair on the worker pool, one JSON record per successful run, a
/// `summary.csv` metric table, and failure markers for runs that panicked
/// or errored. Failed runs never enter the statistics; callers decide how
/// loudly to warn (the CLI prints one warning per failure and exits
/// nonzero).
pub fn run_experiment(config: &ExperimentConfig) -> Result<BatchResult, BenchError> {
    run_experiment_with(config, execute_run)
}

/// [`run_experiment`] with a pluggable runner, the seam for embedding and
/// for exercising failure handling.
pub fn run_experiment_with(
    config: &ExperimentConfig,
    runner: impl Fn(&ExperimentConfig, Algorithm, u64) -> Result<StoredRun, BenchError> + Sync,
) -> Result<BatchResult, BenchError> {
    config.validate()?;
    // Surface bad problem names/parameters before spending any compute.
    config.problem_definition()?;

    let jobs: Vec<(Algorithm, u64)> = config
        .algorithms
        .iter()
        .flat_map(|&a| config.seeds.iter().map(move |&s| (a, s)))
        .collect();

    let pool = worker_pool()?;
    let outcomes: Vec<Result<StoredRun, RunFailure>> = pool.install(|| {
        use rayon::prelude::*;
        jobs.par_iter()
            .map(|&(algorithm, seed)| {
                match catch_unwind(AssertUnwindSafe(|| runner(config, algorithm, seed))) {
                    Ok(Ok(run)) => Ok(run),
                    Ok(Err(error)) => Err(RunFailure {
                        algorithm,
                        seed,
                        error: error.to_string(),
                    }),
                    Err(payload) => Err(RunFailure {
                        algorithm,
                        seed,
                        error: panic_message(payload),
                    }),
                }
            })
            .collect()
    });

    // Single-writer phase: the pool has drained, all files are written here.
    std::fs::create_dir_all(&config.output_dir)
        .map_err(|e| BenchError::io(&config.output_dir, e))?;
    let mut runs = Vec::new();
    let mut failures = Vec::new();
    let mut record_paths = Vec::new();
    for outcome in outcomes {
        match outcome {
            Ok(run) => {
                run.validate()?;
                let path = config.output_dir.join(format!("{}.json", run.stem()));
                write_json(&path, &run)?;
                record_paths.push(path);
                runs.push(run);
            }
            Err(failure) => {
                let stem = record_stem(
                    &config.problem,
                    config.objectives,
                    failure.algorithm,
                    failure.seed,
                );
                write_json(
                    &config.output_dir.join(format!("{stem}.failed.json")),
                    &failure,
                )?;
                failures.push(failure);
            }
        }
    }

    let summary = summarize_runs(config, &runs)?;
    let summary_csv = render_summary_csv(&summary);
    let summary_path = config.output_dir.join("summary.csv");
    std::fs::write(&summary_path, &summary_csv).map_err(|e| BenchError::io(&summary_path, e))?;

    Ok(BatchResult {
        runs,
        failures,
        summary,
        summary_csv,
        record_paths,
        summary_path,
    })
}

fn write_json<T: Serialize>(path: &Path, value: &T) -> Result<(), BenchError> {
    let mut text =
        serde_json::to_string_pretty(value).map_err(|e| BenchError::Format {
            path: path.to_path_buf(),
            message: e.to_string(),
        })?;
    text.push('\n');
    std::fs::write(path, text).map_err(|e| BenchError::io(path, e))
}

/// Reads one stored run back from disk.
pub fn load_stored_run(path: &Path) -> Result<StoredRun, BenchError> {
    let text = std::fs::read_to_string(path).map_err(|e| BenchError::io(path, e))?;
    let run: StoredRun = serde_json::from_str(&text).map_err(|e| BenchError::Format {
        path: path.to_path_buf(),
        message: e.to_string(),
    })?;
    run.validate()?;
    Ok(run)
}

/// Loads every stored run in a directory (`*.json`, skipping `*.failed.json`
/// failure markers and `summary.csv`), sorted by (algorithm, seed) for a
/// deterministic order.
pub fn load_stored_runs(dir: &Path) -> Result<Vec<StoredRun>, BenchError> {
    let mut runs = Vec::new();
    let entries = std::fs::read_dir(dir).map_err(|e| BenchError::io(dir, e))?;
    for entry in entries {
        let entry = entry.map_err(|e| BenchError::io(dir, e))?;
        let path = entry.path();
        let name = match path.file_name().and_then(|n| n.to_str()) {
            Some(n) => n,
            None => continue,
        };
        if !name.ends_with(".json") || name.ends_with(".failed.json") {
            continue;
        }
        runs.push(load_stored_run(&path)?);
    }
    runs.sort_by(|a, b| {
        let key = |r: &StoredRun| (r.settings.algorithm.label(), r.settings.seed);
        key(a).cmp(&key(b))
    });
    Ok(runs)
}
