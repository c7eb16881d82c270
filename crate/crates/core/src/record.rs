//! Serializable run artifacts.
//!
//! A [`RunRecord`] captures everything a single optimizer run produced that
//! is worth keeping: the configuration echo, the evaluation accounting, an
//! optional per-generation trace, and the final archives. Records are fully
//! deterministic — they carry no timestamps or host information — so two
//! runs with the same seed and configuration serialize to identical bytes.
//! Wall-clock data, when wanted, belongs to whatever wrapper stores the
//! record.

use serde::{Deserialize, Serialize};

use crate::error::Error;
use crate::solution::{ConstraintReport, Solution};

/// Flat snapshot of one solution: decision vector, objectives, and the
/// aggregate constraint violation. Per-constraint detail is dropped because
/// downstream consumers (metrics, plots) only distinguish feasible
/// (`constraint_violation == 0`) from infeasible.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct SolutionRecord {
    pub x: Vec<f64>,
    pub objectives: Vec<f64>,
    pub constraint_violation: f64,
}

impl SolutionRecord {
    /// Rebuilds a [`Solution`] carrying the recorded aggregate violation as
    /// a single constraint entry. Feasibility and objectives survive the
    /// round trip exactly; the original per-constraint split does not.
    pub fn to_solution(&self) -> Result<Solution, Error> {
        Solution::new(
            self.x.clone(),
            self.objectives.clone(),
            ConstraintReport::new(vec![self.constraint_violation])?,
        )
    }
}

impl From<&Solution> for SolutionRecord {
    fn from(s: &Solution) -> Self {
        SolutionRecord {
            x: s.x().to_vec(),
            objectives: s.objectives().to_vec(),
            constraint_violation: s.cv(),
        }
    }
}

/// Converts a batch of solutions into records.
pub fn snapshot(members: &[Solution]) -> Vec<SolutionRecord> {
    members.iter().map(SolutionRecord::from).collect()
}

/// Rebuilds solutions from a batch of records (see
/// [`SolutionRecord::to_solution`] for what survives).
pub fn restore(records: &[SolutionRecord]) -> Result<Vec<Solution>, Error> {
    records.iter().map(SolutionRecord::to_solution).collect()
}

/// One point of the per-generation trace. The cheap counters are always
/// present; `igd` and `hypervolume` are filled only when the caller supplied
/// scoring context for in-run measurement.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct TracePoint {
    pub generation: u64,
    pub evaluations: u64,
    /// Feasible members in the reported (convergence-oriented) set.
    pub feasible: usize,
    #[serde(skip_serializing_if = "Option::is_none", default)]
    pub igd: Option<f64>,
    #[serde(skip_serializing_if = "Option::is_none", default)]
    pub hypervolume: Option<f64>,
}

/// Complete, deterministic artifact of one optimizer run.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct RunRecord {
    /// Algorithm label, e.g. `"ctaea"` or `"baseline"`.
    pub algorithm: String,
    /// Problem name as registered, e.g. `"C1-DTLZ3"`.
    pub problem: String,
    /// Number of objectives.
    pub objectives: usize,
    /// Number of decision variables.
    pub variables: usize,
    /// Seed the run's random source was built from.
    pub seed: u64,
    /// Actual population / archive size used (weight-vector count).
    pub population_size: usize,
    pub max_evaluations: u64,
    pub evaluations_used: u64,
    pub generations: u64,
    pub trace: Vec<TracePoint>,
    /// Final reported set (convergence archive for the two-archive
    /// optimizer, the population for single-population baselines).
    pub final_ca: Vec<SolutionRecord>,
    /// Final diversity archive; empty for single-population algorithms.
    pub final_da: Vec<SolutionRecord>,
}

impl RunRecord {
    /// Number of feasible solutions in the reported set.
    pub fn feasible_count(&self) -> usize {
        self.final_ca
            .iter()
            .filter(|s| s.constraint_violation == 0.0)
            .count()
    }
}
