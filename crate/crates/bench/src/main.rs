use std::io::Write;
use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand};
use ctaea::decomposition::{LatticeResolution, WeightVectorSet};
use ctaea::problems::ProblemDefinition;
use ctaea_bench::run::load_stored_run;
use ctaea_bench::{
    config::{parse_param, parse_seed_spec},
    emit_scatter, run_experiment, Algorithm, BenchError, ExperimentConfig,
};

#[derive(Parser)]
#[command(
    name = "ctaea-bench",
    version,
    about = "Benchmark harness for constrained multi-objective optimizers"
)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Run a seeded experiment batch: per-run records, a summary table, and
    /// optional scatter data
    Run(RunArgs),
    /// Emit plot-ready scatter CSVs from a stored run record
    Scatter(ScatterArgs),
    /// Sample a problem's analytic reference front to CSV
    Front(FrontArgs),
    /// Generate a simplex-lattice weight-vector set to CSV
    Weights(WeightsArgs),
}

#[derive(Args)]
struct RunArgs {
    /// TOML experiment file; the flags below override its fields
    #[arg(long)]
    config: Option<PathBuf>,
    /// Problem name, e.g. c1-dtlz3 (required unless --config provides it)
    #[arg(long)]
    problem: Option<String>,
    /// Objective count
    #[arg(long)]
    m: Option<usize>,
    /// Algorithm to run: ctaea, ctaea-variant-1, ctaea-variant-2, baseline
    /// (repeat the flag to compare two)
    #[arg(long = "algorithm")]
    algorithms: Vec<String>,
    /// Population/archive size target
    #[arg(long)]
    pop_size: Option<usize>,
    /// Total evaluation budget per run
    #[arg(long)]
    max_evals: Option<u64>,
    /// Seed list, e.g. "1-11" or "3,5,9-12"
    #[arg(long)]
    seeds: Option<String>,
    /// Output directory
    #[arg(long)]
    out: Option<PathBuf>,
    /// Constraint-parameter override key=value (repeatable)
    #[arg(long = "param", value_name = "KEY=VALUE")]
    params: Vec<String>,
    /// Distance-variable count override
    #[arg(long)]
    k: Option<usize>,
    /// Trace/metric cadence in generations
    #[arg(long)]
    trace_every: Option<u64>,
    /// Reference-front sample size for IGD scoring
    #[arg(long)]
    front_points: Option<usize>,
    /// Compute hypervolume by Monte Carlo with this many samples instead of
    /// exactly
    #[arg(long)]
    hv_samples: Option<u64>,
    /// Skip IGD
    #[arg(long)]
    no_igd: bool,
    /// Skip hypervolume
    #[arg(long)]
    no_hv: bool,
    /// Also emit scatter CSVs next to each record
    #[arg(long)]
    scatter: bool,
}

#[derive(Args)]
struct ScatterArgs {
    /// Stored run record (JSON)
    #[arg(long)]
    record: PathBuf,
    /// Base path for the output pair <target>-ca.csv / <target>-da.csv
    #[arg(long)]
    target: PathBuf,
}

#[derive(Args)]
struct FrontArgs {
    #[arg(long)]
    problem: String,
    #[arg(long, default_value_t = 3)]
    m: usize,
    /// Target sample size
    #[arg(long, default_value_t = 1000)]
    points: usize,
    /// Constraint-parameter override key=value (repeatable)
    #[arg(long = "param", value_name = "KEY=VALUE")]
    params: Vec<String>,
    /// Distance-variable count override
    #[arg(long)]
    k: Option<usize>,
    /// Output file, or - for stdout
    #[arg(long, default_value = "-")]
    out: String,
}

#[derive(Args)]
struct WeightsArgs {
    #[arg(long, default_value_t = 3)]
    m: usize,
    /// Largest lattice size not exceeding this (defaults to the
    /// per-objective-count convention)
    #[arg(long)]
    target_size: Option<usize>,
    /// Output file, or - for stdout
    #[arg(long, default_value = "-")]
    out: String,
}

fn build_config(args: &RunArgs) -> Result<ExperimentConfig, BenchError> {
    let mut config = match (&args.config, &args.problem) {
        (Some(path), _) => ExperimentConfig::load(path)?,
        (None, Some(problem)) => ExperimentConfig::new(problem.clone()),
        (None, None) => {
            return Err(BenchError::Config(
                "pass --config FILE or at least --problem NAME".into(),
            ))
        }
    };
    if let Some(problem) = &args.problem {
        config.problem = problem.clone();
    }
    if let Some(m) = args.m {
        config.objectives = m;
    }
    if !args.algorithms.is_empty() {
        config.algorithms = args
            .algorithms
            .iter()
            .map(|name| Algorithm::parse(name))
            .collect::<Result<_, _>>()?;
    }
    if args.pop_size.is_some() {
        config.population_size = args.pop_size;
    }
    if let Some(evals) = args.max_evals {
        config.max_evaluations = evals;
    }
    if let Some(spec) = &args.seeds {
        config.seeds = parse_seed_spec(spec)?;
    }
    if let Some(out) = &args.out {
        config.output_dir = out.clone();
    }
    for spec in &args.params {
        let (key, value) = parse_param(spec)?;
        config.parameters.insert(key, value);
    }
    if args.k.is_some() {
        config.k = args.k;
    }
    if let Some(cadence) = args.trace_every {
        config.trace_every = cadence;
    }
    if let Some(points) = args.front_points {
        config.metrics.front_points = points;
    }
    if args.hv_samples.is_some() {
        config.metrics.hv_samples = args.hv_samples;
    }
    if args.no_igd {
        config.metrics.igd = false;
    }
    if args.no_hv {
        config.metrics.hypervolume = false;
    }
    config.validate()?;
    Ok(config)
}

fn problem_for(name: &str, m: usize, k: Option<usize>, params: &[String]) -> Result<ProblemDefinition, BenchError> {
    let mut problem = ProblemDefinition::by_name(name, m)?;
    if let Some(k) = k {
        problem = problem.with_k(k)?;
    }
    for spec in params {
        let (key, value) = parse_param(spec)?;
        problem = problem.with_parameter(&key, value)?;
    }
    Ok(problem)
}

fn write_csv_output(
    out: &str,
    write: impl FnOnce(&mut Vec<u8>) -> std::io::Result<()>,
) -> Result<(), BenchError> {
    let mut buffer = Vec::new();
    write(&mut buffer).map_err(|e| BenchError::io(out, e))?;
    if out == "-" {
        std::io::stdout()
            .write_all(&buffer)
            .map_err(|e| BenchError::io("<stdout>", e))
    } else {
        std::fs::write(out, buffer).map_err(|e| BenchError::io(out, e))
    }
}

fn run_command(args: &RunArgs) -> Result<ExitCode, BenchError> {
    let config = build_config(args)?;
    let result = run_experiment(&config)?;
    for failure in &result.failures {
        eprintln!(
            "warning: {} seed {} failed and is excluded from statistics: {}",
            failure.algorithm, failure.seed, failure.error
        );
    }
    for path in &result.record_paths {
        eprintln!("wrote {}", path.display());
    }
    if args.scatter {
        for (run, path) in result.runs.iter().zip(&result.record_paths) {
            let (ca, da) = emit_scatter(&run.record, &path.with_extension(""))?;
            eprintln!("wrote {}", ca.display());
            eprintln!("wrote {}", da.display());
        }
    }
    eprintln!("wrote {}", result.summary_path.display());
    print!("{}", result.summary_csv);
    if result.failures.is_empty() {
        Ok(ExitCode::SUCCESS)
    } else {
        Ok(ExitCode::from(2))
    }
}

fn scatter_command(args: &ScatterArgs) -> Result<ExitCode, BenchError> {
    let run = load_stored_run(&args.record)?;
    let (ca, da) = emit_scatter(&run.record, &args.target)?;
    println!("{}", ca.display());
    println!("{}", da.display());
    Ok(ExitCode::SUCCESS)
}

fn front_command(args: &FrontArgs) -> Result<ExitCode, BenchError> {
    let problem = problem_for(&args.problem, args.m, args.k, &args.params)?;
    let front = problem.sample_reference_front(args.points)?;
    write_csv_output(&args.out, |w| front.write_csv(w))?;
    Ok(ExitCode::SUCCESS)
}

fn weights_command(args: &WeightsArgs) -> Result<ExitCode, BenchError> {
    let resolution = match args.target_size {
        Some(target) => LatticeResolution::for_target_size(args.m, target)?,
        None => LatticeResolution::default_for(args.m),
    };
    let weights = WeightVectorSet::generate(args.m, resolution)?;
    write_csv_output(&args.out, |w| weights.write_csv(w))?;
    Ok(ExitCode::SUCCESS)
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    let outcome = match &cli.command {
        Command::Run(args) => run_command(args),
        Command::Scatter(args) => scatter_command(args),
        Command::Front(args) => front_command(args),
        Command::Weights(args) => weights_command(args),
    };
    match outcome {
        Ok(code) => code,
        Err(error) => {
            eprintln!("error: {error}");
            ExitCode::FAILURE
        }
    }
}
