//! Feasibility-driven reference optimizer.
//!
//! A generational evolutionary algorithm in the classic dominance-and-
//! crowding mold, with the Pareto relation replaced by constrained
//! dominance (feasible beats infeasible, infeasible compare by aggregate
//! violation, feasible compare by Pareto dominance). This is the canonical
//! feasibility-first strategy: it serves as the contrast algorithm that
//! demonstrates the failure modes two-archive search is designed to avoid —
//! on problems whose unconstrained optima are separated from the feasible
//! optima by an infeasible barrier, pure feasibility pressure tends to trap
//! the whole population at the outer feasible boundary.
//!
//! # Random draw order
//!
//! One [`RandomSource`] drives a run: N × n uniforms for the initial
//! population (solution by solution, variable by variable); then per
//! offspring, two binary tournaments (each a distinct index pair plus at
//! most one coin), crossover draws, and mutation draws. Environmental
//! selection is fully deterministic.

use crate::ctaea::TraceMetrics;
use crate::error::Error;
use crate::metrics::MetricReport;
use crate::problems::ProblemDefinition;
use crate::random::RandomSource;
use crate::ranking::{fast_nondominated_sort, DominanceRelation};
use crate::record::{snapshot, RunRecord, TracePoint};
use crate::solution::Solution;
use crate::variation::{polynomial_mutation, sbx, MutationParams, SbxParams};

/// Configuration for one baseline run. Same knobs as the two-archive
/// optimizer minus its variant and association flags; the population size
/// is used as given (no weight lattice is involved).
#[derive(Debug, Clone)]
pub struct BaselineConfig {
    pub population_size: usize,
    /// Offspring evaluated per generation; defaults to the population size
    /// and must not exceed it.
    pub offspring_per_generation: Option<usize>,
    /// Total evaluation budget, including the N spent on initialization.
    pub max_evaluations: u64,
    pub sbx: SbxParams,
    pub mutation: Option<MutationParams>,
    /// Record a trace point every this many generations, plus generation
    /// zero and the final generation. `None` disables the trace.
    pub trace_every: Option<u64>,
}

impl BaselineConfig {
    pub fn new(population_size: usize, max_evaluations: u64) -> Self {
        BaselineConfig {
            population_size,
            offspring_per_generation: None,
            max_evaluations,
            sbx: SbxParams::default(),
            mutation: None,
            trace_every: Some(1),
        }
    }

    fn resolve(&self) -> Result<usize, Error> {
        let n = self.population_size;
        if n < 2 {
            return Err(Error::invalid_config(
                "population size must be at least 2 for tournament selection",
            ));
        }
        let batch = self.offspring_per_generation.unwrap_or(n);
        if batch == 0 || batch > n {
            return Err(Error::invalid_config(format!(
                "offspring batch {batch} must be in 1..={n}"
            )));
        }
        if self.max_evaluations < n as u64 {
            return Err(Error::invalid_config(format!(
                "evaluation budget {} cannot cover initialization cost {n}",
                self.max_evaluations
            )));
        }
        Ok(batch)
    }
}

/// Crowding distance of each point within one front: boundary points (the
/// extremes of any objective) get infinity; interior points sum, over
/// objectives, the normalized span between their two sorted neighbors.
/// Objectives with zero range contribute nothing.
pub fn crowding_distances(points: &[Vec<f64>]) -> Result<Vec<f64>, Error> {
    let n = points.len();
    if n == 0 {
        return Ok(Vec::new());
    }
    let m = points[0].len();
    if m == 0 || points.iter().any(|p| p.len() != m) {
        return Err(Error::invalid_input(
            "crowding needs non-empty points of one shared length",
        ));
    }
    if points
        .iter()
        .any(|p| p.iter().any(|v| !v.is_finite()))
    {
        return Err(Error::invalid_input("crowding needs finite objectives"));
    }
    let mut distance = vec![0.0f64; n];
    for j in 0..m {
        let mut order: Vec<usize> = (0..n).collect();
        order.sort_by(|&a, &b| {
            points[a][j]
                .partial_cmp(&points[b][j])
                .expect("finite objectives")
                .then(a.cmp(&b))
        });
        let span = points[order[n - 1]][j] - points[order[0]][j];
        if span <= 0.0 {
            continue;
        }
        distance[order[0]] = f64::INFINITY;
        distance[order[n - 1]] = f64::INFINITY;
        for w in 1..n - 1 {
            let spread = points[order[w + 1]][j] - points[order[w - 1]][j];
            distance[order[w]] += spread / span;
        }
    }
    Ok(distance)
}

/// Ranks a population by constrained non-dominated sorting and computes
/// each member's crowding distance within its own front. Returned as
/// `(rank, crowding)` per member.
fn rank_and_crowd(population: &[Solution]) -> Result<Vec<(usize, f64)>, Error> {
    let fronts = fast_nondominated_sort(population, DominanceRelation::Constrained);
    let mut meta = vec![(0usize, 0.0f64); population.len()];
    for (rank, front) in fronts.iter().enumerate() {
        let points: Vec<Vec<f64>> = front
            .iter()
            .map(|&i| population[i].objectives().to_vec())
            .collect();
        let crowd = crowding_distances(&points)?;
        for (&i, &c) in front.iter().zip(&crowd) {
            meta[i] = (rank, c);
        }
    }
    Ok(meta)
}

/// Binary tournament under the crowded-comparison order: lower constrained
/// rank wins; equal ranks prefer the larger crowding distance; exact ties
/// fall to a coin. Draw order: the distinct index pair, then at most one
/// coin.
fn tournament(
    population: &[Solution],
    meta: &[(usize, f64)],
    rng: &mut RandomSource,
) -> usize {
    let (i, j) = rng.next_distinct_pair(population.len());
    let (rank_i, crowd_i) = meta[i];
    let (rank_j, crowd_j) = meta[j];
    if rank_i != rank_j {
        return if rank_i < rank_j { i } else { j };
    }
    if crowd_i != crowd_j {
        return if crowd_i > crowd_j { i } else { j };
    }
    if rng.flip(0.5) {
        i
    } else {
        j
    }
}

/// Selects the best `n` members of `pool` by constrained non-dominated
/// sorting: whole fronts are admitted while they fit; the front that
/// crosses capacity is sorted by descending crowding distance (earlier
/// pool position on ties) and truncated. Because every feasible solution
/// constrained-dominates every infeasible one, the feasible members of the
/// pool always survive ahead of any infeasible member.
pub(crate) fn environmental_selection(
    pool: Vec<Solution>,
    n: usize,
) -> Result<Vec<Solution>, Error> {
    if pool.len() < n {
        return Err(Error::invalid_input(format!(
            "selection needs at least {n} candidates, got {}",
            pool.len()
        )));
    }
    let fronts = fast_nondominated_sort(&pool, DominanceRelation::Constrained);
    let mut by_index: Vec<Option<Solution>> = pool.into_iter().map(Some).collect();
    let mut kept: Vec<Solution> = Vec::with_capacity(n);
    for front in &fronts {
        if kept.len() == n {
            break;
        }
        if kept.len() + front.len() <= n {
            for &i in front {
                kept.push(by_index[i].take().expect("front indices are unique"));
            }
            continue;
        }
        let points: Vec<Vec<f64>> = front
            .iter()
            .map(|&i| by_index[i].as_ref().expect("not yet taken").objectives().to_vec())
            .collect();
        let crowd = crowding_distances(&points)?;
        let mut order: Vec<usize> = (0..front.len()).collect();
        order.sort_by(|&a, &b| {
            crowd[b]
                .partial_cmp(&crowd[a])
                .expect("crowding distances are comparable")
                .then(front[a].cmp(&front[b]))
        });
        for &w in order.iter().take(n - kept.len()) {
            kept.push(by_index[front[w]].take().expect("front indices are unique"));
        }
        break;
    }
    Ok(kept)
}

/// Runs the baseline to budget exhaustion. The reported set is the final
/// population (recorded as the convergence set; the diversity slot stays
/// empty).
pub fn run_baseline(
    problem: &ProblemDefinition,
    config: &BaselineConfig,
    rng: RandomSource,
) -> Result<RunRecord, Error> {
    run_baseline_traced(problem, config, rng, None)
}

fn record_trace(
    population: &[Solution],
    generations: u64,
    evaluations: u64,
    seed: u64,
    config: &BaselineConfig,
    scoring: Option<&TraceMetrics<'_>>,
    trace: &mut Vec<TracePoint>,
) -> Result<(), Error> {
    if config.trace_every.is_none() {
        return Ok(());
    }
    let mut point = TracePoint {
        generation: generations,
        evaluations,
        feasible: population.iter().filter(|s| s.is_feasible()).count(),
        igd: None,
        hypervolume: None,
    };
    if let Some(scoring) = scoring {
        let report = MetricReport::compute(
            seed,
            evaluations,
            population,
            scoring.front,
            &scoring.reference_point,
            scoring.mode,
            false,
        )?;
        point.igd = report.igd;
        point.hypervolume = Some(report.hv);
    }
    trace.push(point);
    Ok(())
}

/// [`run_baseline`] with optional in-run metric scoring at the configured
/// trace cadence.
pub fn run_baseline_traced(
    problem: &ProblemDefinition,
    config: &BaselineConfig,
    mut rng: RandomSource,
    scoring: Option<&TraceMetrics<'_>>,
) -> Result<RunRecord, Error> {
    let batch = config.resolve()?;
    let n = config.population_size;
    let seed = rng.seed();
    let mutation = config
        .mutation
        .unwrap_or_else(|| MutationParams::default_for(problem.n()));

    let mut population: Vec<Solution> = (0..n)
        .map(|_| problem.evaluate(&problem.bounds().sample_uniform(&mut rng)))
        .collect::<Result<_, _>>()?;
    let mut evaluations: u64 = n as u64;
    let mut generations: u64 = 0;
    let mut trace: Vec<TracePoint> = Vec::new();
    record_trace(&population, generations, evaluations, seed, config, scoring, &mut trace)?;

    while evaluations + batch as u64 <= config.max_evaluations {
        let meta = rank_and_crowd(&population)?;
        let mut offspring = Vec::with_capacity(batch);
        for _ in 0..batch {
            let p1 = tournament(&population, &meta, &mut rng);
            let p2 = tournament(&population, &meta, &mut rng);
            let (child, _) = sbx(
                population[p1].x(),
                population[p2].x(),
                problem.bounds(),
                &config.sbx,
                &mut rng,
            )?;
            let mut x = child;
            polynomial_mutation(&mut x, problem.bounds(), &mutation, &mut rng)?;
            offspring.push(problem.evaluate(&x)?);
        }
        evaluations += batch as u64;
        generations += 1;
        population.extend(offspring);
        population = environmental_selection(population, n)?;
        if config
            .trace_every
            .is_some_and(|k| k > 0 && generations % k == 0)
        {
            record_trace(&population, generations, evaluations, seed, config, scoring, &mut trace)?;
        }
    }
    // The final generation is always traced, even off-cadence.
    if config.trace_every.is_some()
        && trace.last().map_or(true, |p| p.generation != generations)
    {
        record_trace(&population, generations, evaluations, seed, config, scoring, &mut trace)?;
    }

    Ok(RunRecord {
        algorithm: "baseline".to_string(),
        problem: problem.name().to_string(),
        objectives: problem.m(),
        variables: problem.n(),
        seed,
        population_size: n,
        max_evaluations: config.max_evaluations,
        evaluations_used: evaluations,
        generations,
        trace,
        final_ca: snapshot(&population),
        final_da: Vec::new(),
    })
}
