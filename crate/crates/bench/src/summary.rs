//! Batch statistics: per-metric medians and IQRs per algorithm, rank-sum
//! significance marks for two-algorithm comparisons, and the deterministic
//! CSV rendering.

use ctaea::metrics::{summarize, wilcoxon_rank_sum, SummaryStats, TestOutcome};

use crate::config::{Algorithm, ExperimentConfig};
use crate::run::StoredRun;
use crate::BenchError;

/// Significance level for all comparison marks.
pub const ALPHA: f64 = 0.05;

/// How an algorithm's metric sample compares to its peer's (minimization:
/// `Better` means significantly smaller values).
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Mark {
    Better,
    Worse,
    Similar,
}

impl Mark {
    pub fn label(&self) -> &'static str {
        match self {
            Mark::Better => "better",
            Mark::Worse => "worse",
            Mark::Similar => "similar",
        }
    }

    fn invert(self) -> Mark {
        match self {
            Mark::Better => Mark::Worse,
            Mark::Worse => Mark::Better,
            Mark::Similar => Mark::Similar,
        }
    }
}

/// One summary table row: an (algorithm, metric) pair's order statistics
/// over the batch, plus its significance mark when a peer exists.
#[derive(Debug, Clone, PartialEq)]
pub struct SummaryRow {
    pub algorithm: Algorithm,
    pub metric: &'static str,
    /// Successful runs included in the sample.
    pub runs: usize,
    pub stats: SummaryStats,
    /// Present only when exactly two algorithms competed and both have
    /// enough runs for the rank-sum test.
    pub mark: Option<Mark>,
}

/// All summary rows of one batch, metric-major and in configuration
/// algorithm order within a metric.
#[derive(Debug, Clone, PartialEq)]
pub struct BatchSummary {
    pub problem: String,
    pub objectives: usize,
    pub rows: Vec<SummaryRow>,
}

/// Metric value of one run for summary purposes. A convergence set with no
/// feasible member has no IGD; it enters the sample as infinity — worse
/// than any real value, which keeps medians meaningful when some seeds
/// never reach feasibility. Hypervolume is already 0 in that case.
fn metric_value(run: &StoredRun, metric: &str) -> Result<f64, BenchError> {
    let report = run.final_metrics.as_ref().ok_or_else(|| {
        BenchError::Config(format!(
            "run {} has no stored metrics; it cannot enter a metric summary",
            run.stem()
        ))
    })?;
    Ok(match metric {
        "igd" => report.igd.unwrap_or(f64::INFINITY),
        "hv" => report.hv,
        other => {
            return Err(BenchError::Config(format!("unknown metric {other:?}")))
        }
    })
}

/// Builds the batch summary from successful runs. Metric rows follow the
/// configuration: IGD rows first, then hypervolume, each holding one row
/// per configured algorithm (skipping algorithms whose every run failed).
/// With exactly two algorithms, each row carries a two-sided rank-sum mark
/// at level [`ALPHA`] against the other, provided both samples have at
/// least five runs.
pub fn summarize_runs(
    config: &ExperimentConfig,
    runs: &[StoredRun],
) -> Result<BatchSummary, BenchError> {
    let mut metrics: Vec<&'static str> = Vec::new();
    if config.metrics.igd {
        metrics.push("igd");
    }
    if config.metrics.hypervolume {
        metrics.push("hv");
    }

    let mut rows = Vec::new();
    for metric in metrics {
        // Samples per configured algorithm, sorted by seed for determinism.
        let mut samples: Vec<(Algorithm, Vec<f64>)> = Vec::new();
        for &algorithm in &config.algorithms {
            let mut with_seeds: Vec<(u64, f64)> = runs
                .iter()
                .filter(|r| r.settings.algorithm == algorithm)
                .map(|r| Ok((r.settings.seed, metric_value(r, metric)?)))
                .collect::<Result<_, BenchError>>()?;
            with_seeds.sort_by_key(|&(seed, _)| seed);
            let values: Vec<f64> = with_seeds.into_iter().map(|(_, v)| v).collect();
            if !values.is_empty() {
                samples.push((algorithm, values));
            }
        }

        let marks: Vec<Option<Mark>> = if samples.len() == 2
            && samples.iter().all(|(_, v)| v.len() >= 5)
        {
            let outcome = wilcoxon_rank_sum(&samples[0].1, &samples[1].1, ALPHA)?;
            // The rank-sum outcome is minimization-flavored ("better" =
            // smaller); hypervolume is a maximization indicator, so its
            // marks flip to keep every mark meaning "better in this
            // metric's own sense".
            let maximization = metric == "hv";
            let first = match outcome {
                TestOutcome::SignificantABetter => {
                    if maximization { Mark::Worse } else { Mark::Better }
                }
                TestOutcome::SignificantBBetter => {
                    if maximization { Mark::Better } else { Mark::Worse }
                }
                TestOutcome::NotSignificant => Mark::Similar,
            };
            vec![Some(first), Some(first.invert())]
        } else {
            vec![None; samples.len()]
        };

        for ((algorithm, values), mark) in samples.into_iter().zip(marks) {
            rows.push(SummaryRow {
                algorithm,
                metric,
                runs: values.len(),
                stats: summarize(&values)?,
                mark,
            });
        }
    }

    Ok(BatchSummary {
        problem: config.problem.to_ascii_lowercase(),
        objectives: config.objectives,
        rows,
    })
}

/// Renders the summary as CSV. Everything here is a pure function of run
/// outcomes, so identical configurations reproduce identical bytes.
pub fn render_summary_csv(summary: &BatchSummary) -> String {
    let mut out = String::from("problem,m,algorithm,metric,runs,median,q1,q3,iqr,wilcoxon\n");
    for row in &summary.rows {
        out.push_str(&format!(
            "{},{},{},{},{},{},{},{},{},{}\n",
            summary.problem,
            summary.objectives,
            row.algorithm.label(),
            row.metric,
            row.runs,
            row.stats.median,
            row.stats.q1,
            row.stats.q3,
            row.stats.iqr,
            row.mark.map_or("", |m| m.label()),
        ));
    }
    out
}
