//! Experiment configuration: the TOML file format, CLI override merging,
//! and validation.

use std::collections::BTreeMap;
use std::path::{Path, PathBuf};

use ctaea::decomposition::{LatticeResolution, WeightVectorSet};
use ctaea::metrics::HvMode;
use ctaea::problems::ProblemDefinition;
use serde::{Deserialize, Serialize};

use crate::BenchError;

/// The algorithms the harness can run, in their canonical CLI spellings.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(try_from = "String", into = "String")]
pub enum Algorithm {
    Ctaea,
    CtaeaVariantI,
    CtaeaVariantII,
    Baseline,
}

impl Algorithm {
    pub const ALL: [Algorithm; 4] = [
        Algorithm::Ctaea,
        Algorithm::CtaeaVariantI,
        Algorithm::CtaeaVariantII,
        Algorithm::Baseline,
    ];

    /// Canonical name, used in file stems, record fields, and tables.
    pub fn label(&self) -> &'static str {
        match self {
            Algorithm::Ctaea => "ctaea",
            Algorithm::CtaeaVariantI => "ctaea-variant-1",
            Algorithm::CtaeaVariantII => "ctaea-variant-2",
            Algorithm::Baseline => "baseline",
        }
    }

    /// Case-insensitive lookup; underscores match hyphens, and the variant
    /// suffixes accept roman numerals (`-i`, `-ii`) as well as digits.
    pub fn parse(name: &str) -> Result<Algorithm, BenchError> {
        let normalized = name
            .trim()
            .to_ascii_lowercase()
            .replace('_', "-")
            .replace("-variant-i", "-variant-1")
            .replace("-variant-1i", "-variant-2");
        Algorithm::ALL
            .into_iter()
            .find(|a| a.label() == normalized)
            .ok_or_else(|| {
                BenchError::Config(format!(
                    "unknown algorithm {name:?}; expected one of {}",
                    Algorithm::ALL.map(|a| a.label()).join(", ")
                ))
            })
    }
}

impl TryFrom<String> for Algorithm {
    type Error = String;

    fn try_from(value: String) -> Result<Self, Self::Error> {
        Algorithm::parse(&value).map_err(|e| e.to_string())
    }
}

impl From<Algorithm> for String {
    fn from(value: Algorithm) -> String {
        value.label().to_string()
    }
}

impl std::fmt::Display for Algorithm {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        f.write_str(self.label())
    }
}

fn default_true() -> bool {
    true
}

fn default_front_points() -> usize {
    1000
}

/// Which quality indicators to compute, and how.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct MetricFlags {
    #[serde(default = "default_true")]
    pub igd: bool,
    #[serde(default = "default_true")]
    pub hypervolume: bool,
    /// Target size of the analytic reference-front sample metrics are
    /// scored against.
    #[serde(default = "default_front_points")]
    pub front_points: usize,
    /// `None` computes hypervolume exactly; `Some(s)` switches to Monte
    /// Carlo with `s` samples (seeded from the run seed, so still
    /// deterministic).
    #[serde(default)]
    pub hv_samples: Option<u64>,
}

impl Default for MetricFlags {
    fn default() -> Self {
        MetricFlags {
            igd: true,
            hypervolume: true,
            front_points: default_front_points(),
            hv_samples: None,
        }
    }
}

impl MetricFlags {
    pub fn any(&self) -> bool {
        self.igd || self.hypervolume
    }

    /// Hypervolume mode for a given run seed.
    pub fn hv_mode(&self, seed: u64) -> HvMode {
        match self.hv_samples {
            None => HvMode::Exact,
            Some(samples) => HvMode::MonteCarlo {
                samples,
                // Decorrelate from the optimizer's own stream while staying
                // a pure function of the run seed.
                seed: seed.wrapping_mul(0x9E37_79B9_7F4A_7C15) ^ 0x5DEE_CE66_D31B_ECA5,
            },
        }
    }
}

fn default_objectives() -> usize {
    3
}

fn default_algorithms() -> Vec<Algorithm> {
    vec![Algorithm::Ctaea]
}

fn default_max_evaluations() -> u64 {
    300_000
}

fn default_seeds() -> Vec<u64> {
    (1..=11).collect()
}

fn default_output_dir() -> PathBuf {
    PathBuf::from("bench-out")
}

fn default_trace_every() -> u64 {
    10
}

/// One experiment: a problem instance, one or two algorithms, a seed list,
/// and a budget. Loadable from TOML (all fields except `problem` have
/// defaults) and adjustable from CLI flags.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct ExperimentConfig {
    /// Problem name, e.g. `c1-dtlz3` (case-insensitive).
    pub problem: String,
    /// Constraint-parameter overrides, e.g. `r = 0.2`.
    #[serde(default)]
    pub parameters: BTreeMap<String, f64>,
    /// Override of the distance-variable count.
    #[serde(default)]
    pub k: Option<usize>,
    #[serde(default = "default_objectives")]
    pub objectives: usize,
    /// One algorithm, or two to get significance marks in the summary.
    #[serde(default = "default_algorithms")]
    pub algorithms: Vec<Algorithm>,
    /// Population/archive-size target; the weight lattice picks the largest
    /// size not exceeding it (91 stays 91 for three objectives). `None`
    /// targets 91.
    #[serde(default)]
    pub population_size: Option<usize>,
    #[serde(default = "default_max_evaluations")]
    pub max_evaluations: u64,
    #[serde(default = "default_seeds")]
    pub seeds: Vec<u64>,
    #[serde(default = "default_output_dir")]
    pub output_dir: PathBuf,
    #[serde(default)]
    pub metrics: MetricFlags,
    /// Metric/trace cadence in generations (the final generation is always
    /// traced).
    #[serde(default = "default_trace_every")]
    pub trace_every: u64,
}

impl ExperimentConfig {
    /// A configuration with every optional field at its default.
    pub fn new(problem: impl Into<String>) -> ExperimentConfig {
        ExperimentConfig {
            problem: problem.into(),
            parameters: BTreeMap::new(),
            k: None,
            objectives: default_objectives(),
            algorithms: default_algorithms(),
            population_size: None,
            max_evaluations: default_max_evaluations(),
            seeds: default_seeds(),
            output_dir: default_output_dir(),
            metrics: MetricFlags::default(),
            trace_every: default_trace_every(),
        }
    }

    pub fn from_toml_str(text: &str) -> Result<ExperimentConfig, BenchError> {
        let config: ExperimentConfig =
            toml::from_str(text).map_err(|e| BenchError::Config(e.to_string()))?;
        config.validate()?;
        Ok(config)
    }

    pub fn load(path: &Path) -> Result<ExperimentConfig, BenchError> {
        let text = std::fs::read_to_string(path).map_err(|e| BenchError::io(path, e))?;
        ExperimentConfig::from_toml_str(&text).map_err(|e| match e {
            BenchError::Config(message) => BenchError::Format {
                path: path.to_path_buf(),
                message,
            },
            other => other,
        })
    }

    /// Checks the structural invariants: a non-empty, duplicate-free seed
    /// list; a non-empty, duplicate-free algorithm list; at least two
    /// objectives; a positive budget and cadence.
    pub fn validate(&self) -> Result<(), BenchError> {
        if self.seeds.is_empty() {
            return Err(BenchError::Config("seed list must not be empty".into()));
        }
        let mut seen = self.seeds.clone();
        seen.sort_unstable();
        seen.dedup();
        if seen.len() != self.seeds.len() {
            return Err(BenchError::Config(format!(
                "seed list contains duplicates: {:?}",
                self.seeds
            )));
        }
        if self.algorithms.is_empty() {
            return Err(BenchError::Config("algorithm list must not be empty".into()));
        }
        for (i, a) in self.algorithms.iter().enumerate() {
            if self.algorithms[..i].contains(a) {
                return Err(BenchError::Config(format!("algorithm {a} listed twice")));
            }
        }
        if self.objectives < 2 {
            return Err(BenchError::Config(
                "objectives must be at least 2".into(),
            ));
        }
        if self.max_evaluations == 0 {
            return Err(BenchError::Config("max_evaluations must be positive".into()));
        }
        if self.trace_every == 0 {
            return Err(BenchError::Config("trace_every must be positive".into()));
        }
        if self.metrics.hv_samples == Some(0) {
            return Err(BenchError::Config(
                "hv_samples must be positive when set".into(),
            ));
        }
        if self.metrics.front_points == 0 {
            return Err(BenchError::Config("front_points must be positive".into()));
        }
        Ok(())
    }

    /// The problem instance this experiment runs.
    pub fn problem_definition(&self) -> Result<ProblemDefinition, BenchError> {
        let mut problem = ProblemDefinition::by_name(&self.problem, self.objectives)?;
        if let Some(k) = self.k {
            problem = problem.with_k(k)?;
        }
        for (key, value) in &self.parameters {
            problem = problem.with_parameter(key, *value)?;
        }
        Ok(problem)
    }

    /// The archive/population size every algorithm in this experiment uses:
    /// the size of the largest weight lattice not exceeding the target
    /// (default target 91), so the baseline competes at exactly the
    /// two-archive optimizer's capacity.
    pub fn effective_population(&self) -> Result<usize, BenchError> {
        let target = self.population_size.unwrap_or(91);
        let resolution = LatticeResolution::for_target_size(self.objectives, target)?;
        Ok(WeightVectorSet::generate(self.objectives, resolution)?.len())
    }
}

/// Parses a seed specification: comma-separated entries, each either one
/// seed (`7`) or an inclusive range (`3-11`).
pub fn parse_seed_spec(spec: &str) -> Result<Vec<u64>, BenchError> {
    let mut seeds = Vec::new();
    for entry in spec.split(',') {
        let entry = entry.trim();
        if entry.is_empty() {
            return Err(BenchError::Config(format!("empty entry in seed list {spec:?}")));
        }
        match entry.split_once('-') {
            None => seeds.push(entry.parse::<u64>().map_err(|_| {
                BenchError::Config(format!("invalid seed {entry:?}"))
            })?),
            Some((lo, hi)) => {
                let lo: u64 = lo.trim().parse().map_err(|_| {
                    BenchError::Config(format!("invalid seed range start in {entry:?}"))
                })?;
                let hi: u64 = hi.trim().parse().map_err(|_| {
                    BenchError::Config(format!("invalid seed range end in {entry:?}"))
                })?;
                if lo > hi {
                    return Err(BenchError::Config(format!(
                        "seed range {entry:?} runs backwards"
                    )));
                }
                seeds.extend(lo..=hi);
            }
        }
    }
    Ok(seeds)
}

/// Parses one `key=value` constraint-parameter override.
pub fn parse_param(spec: &str) -> Result<(String, f64), BenchError> {
    let (key, value) = spec
        .split_once('=')
        .ok_or_else(|| BenchError::Config(format!("expected key=value, got {spec:?}")))?;
    let parsed: f64 = value
        .trim()
        .parse()
        .map_err(|_| BenchError::Config(format!("invalid numeric value in {spec:?}")))?;
    Ok((key.trim().to_string(), parsed))
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn algorithm_names_round_trip_and_accept_aliases() {
        for a in Algorithm::ALL {
            assert_eq!(Algorithm::parse(a.label()).unwrap(), a);
        }
        assert_eq!(Algorithm::parse("CTAEA").unwrap(), Algorithm::Ctaea);
        assert_eq!(
            Algorithm::parse("ctaea_variant_1").unwrap(),
            Algorithm::CtaeaVariantI
        );
        assert_eq!(
            Algorithm::parse("ctaea-variant-i").unwrap(),
            Algorithm::CtaeaVariantI
        );
        assert_eq!(
            Algorithm::parse("ctaea-variant-II").unwrap(),
            Algorithm::CtaeaVariantII
        );
        assert!(Algorithm::parse("nsga3").is_err());
    }

    #[test]
    fn toml_defaults_fill_everything_but_problem() {
        let config = ExperimentConfig::from_toml_str("problem = \"c1-dtlz3\"").unwrap();
        assert_eq!(config.problem, "c1-dtlz3");
        assert_eq!(config.objectives, 3);
        assert_eq!(config.algorithms, vec![Algorithm::Ctaea]);
        assert_eq!(config.max_evaluations, 300_000);
        assert_eq!(config.seeds, (1..=11).collect::<Vec<_>>());
        assert_eq!(config.trace_every, 10);
        assert!(config.metrics.igd && config.metrics.hypervolume);
        assert_eq!(config.effective_population().unwrap(), 91);
    }

    #[test]
    fn toml_full_round_trip() {
        let text = r#"
problem = "c2-dtlz2"
objectives = 3
algorithms = ["ctaea", "baseline"]
population_size = 91
max_evaluations = 50000
seeds = [1, 2, 3]
output_dir = "out/c2"
trace_every = 5

[parameters]
r = 0.2

[metrics]
igd = true
hypervolume = false
front_points = 500
"#;
        let config = ExperimentConfig::from_toml_str(text).unwrap();
        assert_eq!(config.algorithms.len(), 2);
        assert_eq!(config.parameters["r"], 0.2);
        assert!(!config.metrics.hypervolume);
        assert_eq!(config.metrics.front_points, 500);
        let problem = config.problem_definition().unwrap();
        assert_eq!(problem.name(), "C2-DTLZ2");
        assert_eq!(problem.parameters()["r"], 0.2);

        let rendered = toml::to_string(&config).unwrap();
        let reparsed = ExperimentConfig::from_toml_str(&rendered).unwrap();
        assert_eq!(reparsed, config);
    }

    #[test]
    fn validation_rejects_structural_mistakes() {
        let mut config = ExperimentConfig::new("c1-dtlz1");
        config.seeds = vec![];
        assert!(config.validate().is_err(), "empty seed list");

        let mut config = ExperimentConfig::new("c1-dtlz1");
        config.seeds = vec![3, 4, 3];
        assert!(config.validate().is_err(), "duplicate seeds");

        let mut config = ExperimentConfig::new("c1-dtlz1");
        config.algorithms = vec![Algorithm::Ctaea, Algorithm::Ctaea];
        assert!(config.validate().is_err(), "duplicate algorithms");

        let mut config = ExperimentConfig::new("c1-dtlz1");
        config.algorithms = vec![];
        assert!(config.validate().is_err(), "no algorithms");

        let mut config = ExperimentConfig::new("c1-dtlz1");
        config.objectives = 1;
        assert!(config.validate().is_err(), "single objective");

        assert!(ExperimentConfig::from_toml_str("problem = \"c1-dtlz1\"\nseeds = [2, 2]").is_err());
        assert!(ExperimentConfig::from_toml_str("problem = \"x\"\nunknown_field = 1").is_err());
    }

    #[test]
    fn unknown_problem_or_parameter_is_rejected_at_definition_time() {
        let config = ExperimentConfig::new("no-such-problem");
        assert!(config.problem_definition().is_err());

        let mut config = ExperimentConfig::new("dtlz2");
        config.parameters.insert("r".into(), 0.5);
        assert!(config.problem_definition().is_err(), "dtlz2 has no r knob");
    }

    #[test]
    fn seed_spec_parses_singletons_and_ranges() {
        assert_eq!(parse_seed_spec("7").unwrap(), vec![7]);
        assert_eq!(parse_seed_spec("1,2,5-8").unwrap(), vec![1, 2, 5, 6, 7, 8]);
        assert_eq!(parse_seed_spec(" 3 - 5 ").unwrap(), vec![3, 4, 5]);
        assert!(parse_seed_spec("").is_err());
        assert!(parse_seed_spec("4,,5").is_err());
        assert!(parse_seed_spec("9-3").is_err());
        assert!(parse_seed_spec("x").is_err());
    }

    #[test]
    fn param_spec_parses_key_value() {
        assert_eq!(parse_param("r=0.25").unwrap(), ("r".to_string(), 0.25));
        assert_eq!(parse_param(" r = 2 ").unwrap(), ("r".to_string(), 2.0));
        assert!(parse_param("r").is_err());
        assert!(parse_param("r=abc").is_err());
    }

    #[test]
    fn hv_mode_is_exact_by_default_and_seeded_monte_carlo_on_request() {
        let flags = MetricFlags::default();
        assert_eq!(flags.hv_mode(3), HvMode::Exact);
        let mut flags = flags;
        flags.hv_samples = Some(10_000);
        let a = flags.hv_mode(3);
        let b = flags.hv_mode(3);
        assert_eq!(a, b, "same run seed, same sampling seed");
        assert_ne!(flags.hv_mode(4), a);
        match a {
            HvMode::MonteCarlo { samples, .. } => assert_eq!(samples, 10_000),
            HvMode::Exact => panic!("expected Monte Carlo"),
        }
    }
}
