//! Two-archive evolutionary optimizer for constrained multi-objective
//! problems.
//!
//! The optimizer co-evolves two fixed-size archives over one set of weight
//! vectors:
//!
//! * the **convergence archive** (CA) applies feasibility-first survival:
//!   feasible solutions are ranked by Pareto dominance and thinned by
//!   subregion crowding, while infeasible solutions are admitted only to
//!   fill spare capacity, ordered by a violation/scalarization trade-off;
//! * the **diversity archive** (DA) ignores constraints entirely and spreads
//!   solutions across the subregions the CA leaves under-exploited, which
//!   keeps search pressure alive inside and beyond infeasible barriers.
//!
//! Restricted mating couples the archives: each generation measures which
//! archive currently holds the larger share of non-dominated members and
//! biases parent selection toward it.
//!
//! # Random draw order
//!
//! One [`RandomSource`] drives a whole run; every stochastic choice consumes
//! draws from it in a fixed, documented order, so equal seeds give
//! bit-identical runs:
//!
//! 1. initialization — N × n uniforms for the CA seed sample (solution by
//!    solution, variable by variable), then N × n uniforms for the DA
//!    sample; the CA's one-time self-update consumes no draws because a
//!    sample of exactly N can never overflow capacity;
//! 2. per offspring — parent selection (see [`restricted_mating`] and
//!    [`tournament_select`] for their internal orders), then crossover
//!    draws, then mutation draws;
//! 3. archive updates — none by default; with
//!    [`CtaeaConfig::random_crowding_ties`] enabled, each tied
//!    most-crowded-subregion choice costs one index draw.

use crate::decomposition::{
    associate, associate_points, nearest_neighbor_distances, tchebycheff, update_bounds,
    AssociationRule, LatticeResolution, NormalizationBounds, WeightVectorSet,
};
use crate::error::Error;
use crate::problems::ProblemDefinition;
use crate::random::RandomSource;
use crate::ranking::{biobjective_view, fast_nondominated_sort_by, pareto_dominates};
use crate::record::{snapshot, RunRecord, TracePoint};
use crate::solution::{Archive, Solution};
use crate::variation::{polynomial_mutation, sbx, MutationParams, SbxParams};

/// Which algorithm variant runs. The ablation variants each change exactly
/// one rule and leave everything else untouched.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Default)]
pub enum Variant {
    /// The full algorithm.
    #[default]
    Full,
    /// Ablation of the CA crowding rule: when trimming the most crowded
    /// subregion, delete the member with the worst scalarized fitness
    /// outright instead of first restricting to the minimum
    /// nearest-neighbor-distance members.
    VariantI,
    /// Ablation of restricted mating: each parent comes from the CA or the
    /// DA with probability one half, ignoring the non-dominance
    /// proportions.
    VariantII,
}

impl Variant {
    /// Label used in run records and reports.
    pub fn label(&self) -> &'static str {
        match self {
            Variant::Full => "ctaea",
            Variant::VariantI => "ctaea-variant-1",
            Variant::VariantII => "ctaea-variant-2",
        }
    }
}

/// Configuration for one optimizer run.
#[derive(Debug, Clone)]
pub struct CtaeaConfig {
    /// Target archive size N. The actual N is the weight-vector count,
    /// which is the largest lattice size not exceeding this target (exact
    /// when the target is itself a lattice size, e.g. 91 for three
    /// objectives).
    pub population_size: usize,
    /// Explicit lattice resolution; overrides `population_size` when set.
    pub lattice: Option<LatticeResolution>,
    /// Offspring evaluated per generation; defaults to N; must not exceed
    /// N.
    pub offspring_per_generation: Option<usize>,
    /// Total evaluation budget, including the 2N spent on initialization.
    pub max_evaluations: u64,
    /// Crossover parameters.
    pub sbx: SbxParams,
    /// Mutation parameters; defaults to the 1/n rate convention.
    pub mutation: Option<MutationParams>,
    /// Algorithm variant.
    pub variant: Variant,
    /// How solutions are matched to subregions.
    pub association: AssociationRule,
    /// DA admission stop rule. The promotion loop admits whole rounds, so
    /// the final round may overshoot N. With the default (`false`), the
    /// overshoot is resolved on merit: the final round completes and its
    /// admissions with the largest g^tch are dropped until exactly N
    /// remain, so no subregion is favored by iteration order. With `true`,
    /// admission instead stops the instant the archive reaches N members,
    /// mid-subregion if necessary, which favors low-index subregions in
    /// the final round.
    pub da_strict_cutoff: bool,
    /// Break ties between equally crowded subregions uniformly at random
    /// (costs one draw per tie) instead of by lowest subregion index.
    pub random_crowding_ties: bool,
    /// Record a trace point every this many generations, plus generation
    /// zero and the final generation. `None` disables the trace.
    pub trace_every: Option<u64>,
}

impl CtaeaConfig {
    /// A default configuration for the given archive-size target and
    /// evaluation budget.
    pub fn new(population_size: usize, max_evaluations: u64) -> Self {
        CtaeaConfig {
            population_size,
            lattice: None,
            offspring_per_generation: None,
            max_evaluations,
            sbx: SbxParams::default(),
            mutation: None,
            variant: Variant::Full,
            association: AssociationRule::default(),
            da_strict_cutoff: false,
            random_crowding_ties: false,
            trace_every: Some(1),
        }
    }

    /// Builds the weight set and resolves the per-generation batch size,
    /// validating the configuration for an `m`-objective problem.
    fn resolve(&self, m: usize) -> Result<(WeightVectorSet, usize), Error> {
        let resolution = match self.lattice {
            Some(r) => r,
            None => LatticeResolution::for_target_size(m, self.population_size)?,
        };
        let weights = WeightVectorSet::generate(m, resolution)?;
        let n = weights.len();
        if n < 2 {
            return Err(Error::invalid_config(
                "archive size must be at least 2 for tournament selection",
            ));
        }
        let batch = self.offspring_per_generation.unwrap_or(n);
        if batch == 0 || batch > n {
            return Err(Error::invalid_config(format!(
                "offspring batch {batch} must be in 1..={n}"
            )));
        }
        if self.max_evaluations < 2 * n as u64 {
            return Err(Error::invalid_config(format!(
                "evaluation budget {} cannot cover initialization cost {}",
                self.max_evaluations,
                2 * n
            )));
        }
        Ok((weights, batch))
    }
}

/// Live state of one run: the two archives, the weight set, and the
/// evaluation accounting. Single-owner; clone it to fork a what-if.
#[derive(Debug, Clone)]
pub struct CtaeaState {
    problem: ProblemDefinition,
    config: CtaeaConfig,
    weights: WeightVectorSet,
    batch: usize,
    mutation: MutationParams,
    ca: Archive,
    da: Archive,
    evaluations_used: u64,
    generations: u64,
    rng: RandomSource,
}

impl CtaeaState {
    pub fn ca(&self) -> &Archive {
        &self.ca
    }

    pub fn da(&self) -> &Archive {
        &self.da
    }

    pub fn weights(&self) -> &WeightVectorSet {
        &self.weights
    }

    pub fn problem(&self) -> &ProblemDefinition {
        &self.problem
    }

    pub fn config(&self) -> &CtaeaConfig {
        &self.config
    }

    pub fn evaluations_used(&self) -> u64 {
        self.evaluations_used
    }

    pub fn generations(&self) -> u64 {
        self.generations
    }

    /// True when the remaining budget covers one more full generation.
    pub fn can_step(&self) -> bool {
        self.evaluations_used + self.batch as u64 <= self.config.max_evaluations
    }

    /// Runs one generation (mating → variation → evaluation → archive
    /// updates). Returns false without consuming anything when the budget
    /// cannot cover another batch.
    pub fn step(&mut self) -> Result<bool, Error> {
        if !self.can_step() {
            return Ok(false);
        }
        let (rho_c, rho_d) = mating_proportions(&self.ca, &self.da);
        let mut offspring = Vec::with_capacity(self.batch);
        for _ in 0..self.batch {
            let (p1, p2) = select_mating_pair(
                &self.ca,
                &self.da,
                rho_c,
                rho_d,
                self.config.variant,
                &mut self.rng,
            )?;
            let (child, _) = sbx(p1.x(), p2.x(), self.problem.bounds(), &self.config.sbx, &mut self.rng)?;
            let mut x = child;
            polynomial_mutation(&mut x, self.problem.bounds(), &self.mutation, &mut self.rng)?;
            offspring.push(self.problem.evaluate(&x)?);
        }
        self.evaluations_used += self.batch as u64;
        self.ca = update_ca(&self.ca, &offspring, &self.weights, &self.config, &mut self.rng)?;
        self.da = update_da(&self.ca, &self.da, &offspring, &self.weights, &self.config)?;
        self.generations += 1;
        Ok(true)
    }

    /// A trace point for the current generation; metric fields are filled
    /// by the caller when scoring context is available.
    fn trace_point(&self) -> TracePoint {
        TracePoint {
            generation: self.generations,
            evaluations: self.evaluations_used,
            feasible: self.ca.iter().filter(|s| s.is_feasible()).count(),
            igd: None,
            hypervolume: None,
        }
    }

    /// Consumes the state into its run record.
    pub fn into_record(self, trace: Vec<TracePoint>) -> RunRecord {
        RunRecord {
            algorithm: self.config.variant.label().to_string(),
            problem: self.problem.name().to_string(),
            objectives: self.problem.m(),
            variables: self.problem.n(),
            seed: self.rng.seed(),
            population_size: self.weights.len(),
            max_evaluations: self.config.max_evaluations,
            evaluations_used: self.evaluations_used,
            generations: self.generations,
            trace,
            final_ca: snapshot(self.ca.members()),
            final_da: snapshot(self.da.members()),
        }
    }
}

/// Creates the initial state: both archives are filled with N uniform
/// random in-bounds solutions each (evaluated, so `evaluations_used` starts
/// at 2N), and the CA sample is passed once through its own update rule so
/// that its feasibility-first ordering holds from generation zero.
pub fn initialize(
    problem: &ProblemDefinition,
    config: &CtaeaConfig,
    mut rng: RandomSource,
) -> Result<CtaeaState, Error> {
    let (weights, batch) = config.resolve(problem.m())?;
    let n = weights.len();
    let mutation = config
        .mutation
        .unwrap_or_else(|| MutationParams::default_for(problem.n()));

    let sample = |rng: &mut RandomSource| -> Result<Vec<Solution>, Error> {
        (0..n)
            .map(|_| problem.evaluate(&problem.bounds().sample_uniform(rng)))
            .collect()
    };
    let ca_seed = sample(&mut rng)?;
    let empty = Archive::new(n)?;
    let ca = update_ca(&empty, &ca_seed, &weights, config, &mut rng)?;
    let da = Archive::with_members(n, sample(&mut rng)?)?;

    Ok(CtaeaState {
        problem: problem.clone(),
        config: config.clone(),
        weights,
        batch,
        mutation,
        ca,
        da,
        evaluations_used: 2 * n as u64,
        generations: 0,
        rng,
    })
}

/// In-run scoring context: when passed to [`run_traced`], trace points also
/// carry IGD against `front` and hypervolume against `reference_point`,
/// both computed over the CA's feasible members only.
#[derive(Debug, Clone)]
pub struct TraceMetrics<'a> {
    pub front: &'a crate::problems::ReferenceFront,
    pub reference_point: Vec<f64>,
    pub mode: crate::metrics::HvMode,
}

/// Runs the optimizer to budget exhaustion and returns the run record. The
/// reported solution set is the final CA; the final DA is recorded
/// alongside it.
pub fn run(
    problem: &ProblemDefinition,
    config: &CtaeaConfig,
    rng: RandomSource,
) -> Result<RunRecord, Error> {
    run_traced(problem, config, rng, None)
}

/// [`run`] with optional in-run metric scoring at the configured trace
/// cadence.
pub fn run_traced(
    problem: &ProblemDefinition,
    config: &CtaeaConfig,
    rng: RandomSource,
    scoring: Option<&TraceMetrics<'_>>,
) -> Result<RunRecord, Error> {
    let mut state = initialize(problem, config, rng)?;
    let mut trace = Vec::new();
    record_trace(&state, &mut trace, scoring)?;
    while state.step()? {
        if state
            .config
            .trace_every
            .is_some_and(|k| k > 0 && state.generations % k == 0)
        {
            record_trace(&state, &mut trace, scoring)?;
        }
    }
    // The final generation is always traced, even off-cadence, so a trace
    // present at all always ends at the run's terminal state.
    if state.config.trace_every.is_some()
        && trace.last().map_or(true, |p| p.generation != state.generations)
    {
        record_trace(&state, &mut trace, scoring)?;
    }
    Ok(state.into_record(trace))
}

fn record_trace(
    state: &CtaeaState,
    trace: &mut Vec<TracePoint>,
    scoring: Option<&TraceMetrics<'_>>,
) -> Result<(), Error> {
    if state.config.trace_every.is_none() {
        return Ok(());
    }
    let mut point = state.trace_point();
    if let Some(scoring) = scoring {
        let report = crate::metrics::MetricReport::compute(
            state.rng.seed(),
            state.evaluations_used,
            state.ca.members(),
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

/// Convergence-archive update. Combines the current archive with the
/// offspring into a pool H and returns exactly N survivors by feasibility
/// count:
///
/// * exactly N feasible — they become the new archive;
/// * more than N feasible — non-dominated sort of the feasible members on
///   objectives, admit whole fronts until at least N, then repeatedly find
///   the most crowded subregion and delete, from among its members at the
///   minimum nearest-neighbor distance (normalized objective space), the
///   one with the largest scalarized fitness g^tch (the whole subregion's
///   largest under [`Variant::VariantI`]);
/// * fewer than N feasible — keep every feasible member, rank the
///   infeasible ones by bi-objective non-dominated sort over (aggregate
///   violation, g^tch), admit whole fronts until at least N, then trim the
///   last admitted front largest-violation-first.
///
/// Normalization bounds, the ideal point for g^tch, and subregion
/// association all come from the pool H of this call. Ties everywhere break
/// to the first candidate in admission order; equally crowded subregions
/// break to the lowest index unless [`CtaeaConfig::random_crowding_ties`]
/// is set.
pub fn update_ca(
    ca: &Archive,
    offspring: &[Solution],
    weights: &WeightVectorSet,
    config: &CtaeaConfig,
    rng: &mut RandomSource,
) -> Result<Archive, Error> {
    let n = weights.len();
    let pool: Vec<Solution> = ca.iter().chain(offspring.iter()).cloned().collect();
    if pool.len() < n {
        return Err(Error::invalid_input(format!(
            "archive update needs at least {n} candidates, got {}",
            pool.len()
        )));
    }
    let bounds = update_bounds(&pool)?;
    let (feasible, infeasible): (Vec<Solution>, Vec<Solution>) =
        pool.into_iter().partition(|s| s.is_feasible());

    let kept = match feasible.len().cmp(&n) {
        std::cmp::Ordering::Equal => feasible,
        std::cmp::Ordering::Greater => {
            trim_feasible_overflow(feasible, weights, &bounds, config, rng)?
        }
        std::cmp::Ordering::Less => {
            fill_with_infeasible(feasible, infeasible, weights, &bounds, config.association, n)?
        }
    };
    Archive::with_members(n, kept)
}

/// Branch for more than N feasible candidates: dominance fronts fill the
/// archive, then subregion crowding trims the overshoot.
fn trim_feasible_overflow(
    feasible: Vec<Solution>,
    weights: &WeightVectorSet,
    bounds: &NormalizationBounds,
    config: &CtaeaConfig,
    rng: &mut RandomSource,
) -> Result<Vec<Solution>, Error> {
    let n = weights.len();
    let fronts = fast_nondominated_sort_by(&feasible, |a, b| {
        pareto_dominates(a.objectives(), b.objectives())
    });
    let mut kept: Vec<Solution> = Vec::with_capacity(feasible.len());
    {
        // Whole fronts are admitted until capacity is reached; the front
        // that crosses N comes in entirely and the overshoot is trimmed
        // below.
        let mut by_index: Vec<Option<Solution>> = feasible.into_iter().map(Some).collect();
        for front in &fronts {
            if kept.len() >= n {
                break;
            }
            for &i in front {
                kept.push(by_index[i].take().expect("front indices are unique"));
            }
        }
    }
    if kept.len() == n {
        return Ok(kept);
    }

    let mut normalized: Vec<Vec<f64>> = kept.iter().map(|s| bounds.normalize(s.objectives())).collect();
    let mut region: Vec<usize> = associate_points(&normalized, weights, config.association)
        .assignments()
        .to_vec();

    while kept.len() > n {
        let mut counts = vec![0usize; n];
        for &r in &region {
            counts[r] += 1;
        }
        let max_count = *counts.iter().max().expect("weights are non-empty");
        let crowded: Vec<usize> = (0..n).filter(|&i| counts[i] == max_count).collect();
        let target = if config.random_crowding_ties && crowded.len() > 1 {
            crowded[rng.next_index(crowded.len())]
        } else {
            crowded[0]
        };
        let members: Vec<usize> = (0..kept.len()).filter(|&i| region[i] == target).collect();

        let candidates: Vec<usize> = match config.variant {
            // Ablation: the worst scalarized fitness in the whole subregion
            // goes, without the crowding-distance restriction.
            Variant::VariantI => members.clone(),
            _ => {
                let points: Vec<Vec<f64>> =
                    members.iter().map(|&i| normalized[i].clone()).collect();
                let distances = nearest_neighbor_distances(&points)?;
                let min_distance = distances
                    .iter()
                    .cloned()
                    .fold(f64::INFINITY, f64::min);
                members
                    .iter()
                    .zip(&distances)
                    .filter(|&(_, &d)| d == min_distance)
                    .map(|(&i, _)| i)
                    .collect()
            }
        };
        let victim = candidates
            .into_iter()
            .max_by(|&a, &b| {
                let ga = tchebycheff(kept[a].objectives(), weights.get(target), bounds.ideal());
                let gb = tchebycheff(kept[b].objectives(), weights.get(target), bounds.ideal());
                ga.partial_cmp(&gb).expect("fitness values are finite")
            })
            .expect("most crowded subregion is non-empty");
        kept.remove(victim);
        normalized.remove(victim);
        region.remove(victim);
    }
    Ok(kept)
}

/// Branch for fewer than N feasible candidates: all feasible members stay;
/// infeasible ones are ranked by non-dominated sort over (aggregate
/// violation, g^tch) and admitted front by front, with the last front
/// trimmed largest-violation-first.
fn fill_with_infeasible(
    feasible: Vec<Solution>,
    infeasible: Vec<Solution>,
    weights: &WeightVectorSet,
    bounds: &NormalizationBounds,
    rule: AssociationRule,
    n: usize,
) -> Result<Vec<Solution>, Error> {
    let mut kept = feasible;
    if kept.len() >= n || infeasible.is_empty() {
        return Ok(kept);
    }
    let assignment = associate(&infeasible, weights, bounds, rule);
    let views: Vec<[f64; 2]> = infeasible
        .iter()
        .enumerate()
        .map(|(i, s)| biobjective_view(s, weights.get(assignment.region_of(i)), bounds.ideal()))
        .collect();
    let fronts = fast_nondominated_sort_by(&views, |a, b| pareto_dominates(a, b));

    let mut by_index: Vec<Option<Solution>> = infeasible.into_iter().map(Some).collect();
    let mut last_front_start = kept.len();
    for front in &fronts {
        if kept.len() >= n {
            break;
        }
        last_front_start = kept.len();
        for &i in front {
            kept.push(by_index[i].take().expect("front indices are unique"));
        }
    }
    while kept.len() > n {
        let worst = (last_front_start..kept.len())
            .max_by(|&a, &b| {
                kept[a]
                    .cv()
                    .partial_cmp(&kept[b].cv())
                    .expect("violations are finite")
            })
            .expect("last admitted front is non-empty");
        kept.remove(worst);
    }
    Ok(kept)
}

/// Diversity-archive update. Pools the current DA with the offspring
/// (constraints are never consulted), associates the pool and the CA to
/// subregions under normalization bounds computed from the pool, and
/// promotes members in balanced rounds: at round `itr`, each subregion may
/// hold `itr` survivors counting its CA members, so its promotion target is
/// `itr` minus its CA count. Within a subregion the next promotion is the
/// member that no remaining bucket member dominates on objectives, with the
/// smallest g^tch, first in arrival order on ties. The final round may
/// overshoot N; by default its largest-g^tch admissions are dropped until
/// exactly N remain (latest admission dropped on ties), so survival never
/// depends on subregion iteration order. See
/// [`CtaeaConfig::da_strict_cutoff`] for the alternative stop rule.
pub fn update_da(
    ca: &Archive,
    da: &Archive,
    offspring: &[Solution],
    weights: &WeightVectorSet,
    config: &CtaeaConfig,
) -> Result<Archive, Error> {
    let n = weights.len();
    let pool: Vec<Solution> = da.iter().chain(offspring.iter()).cloned().collect();
    if pool.len() < n {
        return Err(Error::invalid_input(format!(
            "archive update needs at least {n} candidates, got {}",
            pool.len()
        )));
    }
    let bounds = update_bounds(&pool)?;
    // The CA is normalized with the pool's bounds so both archives are
    // measured in one frame.
    let ca_counts: Vec<usize> = {
        let assignment = associate(ca.members(), weights, &bounds, config.association);
        (0..n).map(|r| assignment.count(r)).collect()
    };
    let assignment = associate(&pool, weights, &bounds, config.association);
    let mut buckets: Vec<Vec<usize>> = (0..n).map(|r| assignment.members(r).to_vec()).collect();

    let mut selected: Vec<usize> = Vec::with_capacity(n);
    let mut merit: Vec<f64> = Vec::with_capacity(n);
    let mut promoted = vec![0usize; n];
    let mut itr = 1usize;
    let mut round_start = 0usize;
    'rounds: while selected.len() < n {
        round_start = selected.len();
        for region in 0..n {
            let target = itr.saturating_sub(ca_counts[region]);
            while promoted[region] < target && !buckets[region].is_empty() {
                let (pick, g) = select_da_promotion(&pool, &buckets[region], weights.get(region), bounds.ideal());
                selected.push(buckets[region].remove(pick));
                merit.push(g);
                promoted[region] += 1;
                if config.da_strict_cutoff && selected.len() == n {
                    break 'rounds;
                }
            }
        }
        if selected.len() >= pool.len() {
            break;
        }
        itr += 1;
    }
    // Resolve any final-round overshoot on merit: drop its largest-g^tch
    // admissions (latest first on ties) until exactly N remain.
    while selected.len() > n {
        let mut worst = round_start;
        for i in round_start..selected.len() {
            if merit[i] >= merit[worst] {
                worst = i;
            }
        }
        selected.remove(worst);
        merit.remove(worst);
    }
    Archive::with_members(n, selected.into_iter().map(|i| pool[i].clone()).collect())
}

/// Picks the next promotion from a subregion bucket: among the members no
/// other remaining bucket member Pareto-dominates on objectives, the one
/// with the smallest g^tch; earliest bucket position on ties. Returns the
/// position within `bucket` and the winner's g^tch.
pub(crate) fn select_da_promotion(
    pool: &[Solution],
    bucket: &[usize],
    weight: &[f64],
    ideal: &[f64],
) -> (usize, f64) {
    let mut best: Option<(usize, f64)> = None;
    for (pos, &i) in bucket.iter().enumerate() {
        let dominated = bucket.iter().any(|&j| {
            j != i && pareto_dominates(pool[j].objectives(), pool[i].objectives())
        });
        if dominated {
            continue;
        }
        let g = tchebycheff(pool[i].objectives(), weight, ideal);
        if best.map_or(true, |(_, gb)| g < gb) {
            best = Some((pos, g));
        }
    }
    best.expect("bucket has at least one non-dominated member")
}

/// The share of each archive's members that no member of the combined pool
/// CA ∪ DA Pareto-dominates, as `(rho_ca, rho_da)`. Each share is measured
/// against its own archive's size, keeping the two values on a common
/// [0, 1] scale; an empty archive scores zero.
pub fn mating_proportions(ca: &Archive, da: &Archive) -> (f64, f64) {
    let union: Vec<&[f64]> = ca
        .iter()
        .chain(da.iter())
        .map(|s| s.objectives())
        .collect();
    let nondominated = |i: usize| -> bool {
        union
            .iter()
            .enumerate()
            .all(|(j, other)| j == i || !pareto_dominates(other, union[i]))
    };
    let ca_len = ca.len();
    let count = |range: std::ops::Range<usize>| range.filter(|&i| nondominated(i)).count();
    let rho_c = if ca_len == 0 {
        0.0
    } else {
        count(0..ca_len) as f64 / ca_len as f64
    };
    let rho_d = if da.is_empty() {
        0.0
    } else {
        count(ca_len..union.len()) as f64 / da.len() as f64
    };
    (rho_c, rho_d)
}

/// Restricted mating selection: measures the archives' non-dominance
/// proportions and draws one parent pair. Parent one comes by tournament
/// from the CA when its proportion strictly exceeds the DA's, otherwise
/// from the DA; parent two comes by tournament from the CA when a uniform
/// draw falls below the CA's proportion, otherwise from the DA.
///
/// Draw order: parent one's tournament; one uniform for parent two's
/// archive; parent two's tournament.
pub fn restricted_mating(
    ca: &Archive,
    da: &Archive,
    rng: &mut RandomSource,
) -> Result<(Solution, Solution), Error> {
    let (rho_c, rho_d) = mating_proportions(ca, da);
    select_mating_pair(ca, da, rho_c, rho_d, Variant::Full, rng)
}

/// [`restricted_mating`] with the proportions supplied by the caller —
/// the archives do not change while a generation's offspring are bred, so
/// the generational loop computes the proportions once per generation.
/// Under [`Variant::VariantII`] the selection mechanism is ablated
/// entirely: the proportions and the tournament are ignored, and each
/// parent is a uniformly random member of an archive chosen by a fair
/// coin (draw order: coin, index, coin, index).
pub fn select_mating_pair(
    ca: &Archive,
    da: &Archive,
    rho_c: f64,
    rho_d: f64,
    variant: Variant,
    rng: &mut RandomSource,
) -> Result<(Solution, Solution), Error> {
    if variant == Variant::VariantII {
        let pick = |rng: &mut RandomSource| -> Result<Solution, Error> {
            let pool = if rng.flip(0.5) { ca } else { da };
            if pool.len() == 0 {
                return Err(Error::invalid_input("mating from an empty archive"));
            }
            Ok(pool.members()[rng.next_index(pool.len())].clone())
        };
        let p1 = pick(rng)?;
        let p2 = pick(rng)?;
        return Ok((p1, p2));
    }
    let p1 = if rho_c > rho_d {
        tournament_select(ca, rng)?
    } else {
        tournament_select(da, rng)?
    };
    let p2 = if rng.next_f64() < rho_c {
        tournament_select(ca, rng)?
    } else {
        tournament_select(da, rng)?
    };
    Ok((p1, p2))
}

/// Feasibility-driven binary tournament: draws two distinct members
/// uniformly; if both are feasible the Pareto-dominant one wins (a fair
/// coin on incomparability), if exactly one is feasible it wins, and if
/// both are infeasible a fair coin decides.
///
/// Draw order: the distinct index pair, then at most one coin.
pub fn tournament_select(pool: &Archive, rng: &mut RandomSource) -> Result<Solution, Error> {
    if pool.len() < 2 {
        return Err(Error::invalid_input(
            "tournament selection needs a pool of at least 2",
        ));
    }
    let (i, j) = rng.next_distinct_pair(pool.len());
    let a = &pool.members()[i];
    let b = &pool.members()[j];
    let winner = match (a.is_feasible(), b.is_feasible()) {
        (true, false) => a,
        (false, true) => b,
        (true, true) => {
            if pareto_dominates(a.objectives(), b.objectives()) {
                a
            } else if pareto_dominates(b.objectives(), a.objectives()) {
                b
            } else if rng.flip(0.5) {
                a
            } else {
                b
            }
        }
        (false, false) => {
            if rng.flip(0.5) {
                a
            } else {
                b
            }
        }
    };
    Ok(winner.clone())
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::problems::ProblemKind;
    use crate::solution::ConstraintReport;

    /// A solution whose decision vector is a one-element tag, for tests
    /// that only exercise objective/constraint logic.
    fn sol(tag: f64, objectives: &[f64], cv: f64) -> Solution {
        Solution::new(
            vec![tag],
            objectives.to_vec(),
            ConstraintReport::new(vec![cv]).unwrap(),
        )
        .unwrap()
    }

    fn feasible(objectives: &[f64]) -> Solution {
        sol(0.0, objectives, 0.0)
    }

    fn weights_m2(h: usize) -> WeightVectorSet {
        WeightVectorSet::generate(2, LatticeResolution::SingleLayer { h }).unwrap()
    }

    fn config(n: usize) -> CtaeaConfig {
        CtaeaConfig::new(n, 10_000)
    }

    fn archive(capacity: usize, members: Vec<Solution>) -> Archive {
        Archive::with_members(capacity, members).unwrap()
    }

    fn objective_set(archive: &Archive) -> Vec<Vec<f64>> {
        let mut v: Vec<Vec<f64>> = archive.iter().map(|s| s.objectives().to_vec()).collect();
        v.sort_by(|a, b| a.partial_cmp(b).unwrap());
        v
    }

    // --- update_ca ---

    #[test]
    fn ca_keeps_exactly_n_feasible_verbatim() {
        let weights = weights_m2(2); // N = 3
        let cfg = config(3);
        let mut rng = RandomSource::from_seed(1);
        let members = vec![
            feasible(&[0.1, 0.9]),
            sol(0.0, &[5.0, 5.0], 2.0),
            feasible(&[0.5, 0.5]),
            feasible(&[0.9, 0.1]),
            sol(0.0, &[0.01, 0.01], 1.0),
        ];
        let ca = update_ca(&Archive::new(3).unwrap(), &members, &weights, &cfg, &mut rng).unwrap();
        assert_eq!(ca.len(), 3);
        assert_eq!(
            objective_set(&ca),
            vec![vec![0.1, 0.9], vec![0.5, 0.5], vec![0.9, 0.1]]
        );
        assert!(ca.iter().all(|s| s.is_feasible()));
    }

    #[test]
    fn ca_overflow_deletes_largest_fitness_among_closest_pair() {
        // Four mutually non-dominated feasible points over three weight
        // vectors. The diagonal subregion holds two members whose
        // scalarized fitness values are 3 and 5; both sit at the subregion's
        // minimum nearest-neighbor distance, so the fitness-5 member goes.
        let weights = weights_m2(2); // (1,0), (0.5,0.5), (0,1)
        let cfg = config(3);
        let mut rng = RandomSource::from_seed(1);
        let a = feasible(&[4.0, 0.05]);
        let b = feasible(&[0.05, 4.0]);
        let c = feasible(&[1.55, 1.55]); // g^tch = 1.5 / 0.5 = 3
        let d = feasible(&[2.55, 1.45]); // g^tch = 2.5 / 0.5 = 5
        let ca = archive(3, vec![a, b, c]);
        let out = update_ca(&ca, &[d], &weights, &cfg, &mut rng).unwrap();
        assert_eq!(
            objective_set(&out),
            vec![vec![0.05, 4.0], vec![1.55, 1.55], vec![4.0, 0.05]]
        );
    }

    #[test]
    fn ca_overflow_variant_i_deletes_worst_fitness_in_whole_subregion() {
        // One subregion holds three members: a close pair (fitness 3 and
        // 3.12) and a farther member with the worst fitness 4.125. The full
        // rule deletes from the close pair (the 3.12 member); the ablation
        // deletes the subregion's overall worst (the 4.125 member).
        let weights = WeightVectorSet::generate(2, LatticeResolution::SingleLayer { h: 3 }).unwrap();
        let a = feasible(&[4.0, 0.05]);
        let b = feasible(&[0.05, 4.0]);
        let e = feasible(&[2.05, 1.05]);
        let f = feasible(&[2.13, 1.03]);
        let g = feasible(&[2.8, 0.9]);
        let ca = archive(4, vec![a.clone(), b.clone(), e.clone(), f.clone()]);

        let mut cfg = config(4);
        let mut rng = RandomSource::from_seed(1);
        let full = update_ca(&ca, &[g.clone()], &weights, &cfg, &mut rng).unwrap();
        assert_eq!(
            objective_set(&full),
            vec![
                vec![0.05, 4.0],
                vec![2.05, 1.05],
                vec![2.8, 0.9],
                vec![4.0, 0.05]
            ],
            "full rule deletes the close pair's worse member"
        );

        cfg.variant = Variant::VariantI;
        let ablated = update_ca(&ca, &[g], &weights, &cfg, &mut rng).unwrap();
        assert_eq!(
            objective_set(&ablated),
            vec![
                vec![0.05, 4.0],
                vec![2.05, 1.05],
                vec![2.13, 1.03],
                vec![4.0, 0.05]
            ],
            "ablation deletes the subregion's worst fitness outright"
        );
    }

    #[test]
    fn ca_underflow_fills_with_smallest_violations_from_last_front() {
        // Two feasible members, capacity five. The five infeasible members
        // are mutually non-dominated in the (violation, fitness) view, so
        // they form one front; trimming it largest-violation-first keeps
        // violations {1, 2, 3}.
        let weights = weights_m2(4); // N = 5
        let cfg = config(5);
        let mut rng = RandomSource::from_seed(1);
        let members = vec![
            feasible(&[0.2, 6.0]),
            feasible(&[6.0, 0.2]),
            sol(0.0, &[5.0, 5.0], 1.0),
            sol(0.0, &[4.0, 4.0], 2.0),
            sol(0.0, &[3.0, 3.0], 3.0),
        ];
        let ca = archive(5, members);
        let offspring = vec![sol(0.0, &[2.0, 2.0], 9.0), sol(0.0, &[1.0, 1.0], 9.5)];
        let out = update_ca(&ca, &offspring, &weights, &cfg, &mut rng).unwrap();
        assert_eq!(out.len(), 5);
        let mut violations: Vec<f64> = out.iter().map(|s| s.cv()).collect();
        violations.sort_by(|a, b| a.partial_cmp(b).unwrap());
        assert_eq!(violations, vec![0.0, 0.0, 1.0, 2.0, 3.0]);
        assert_eq!(out.iter().filter(|s| s.is_feasible()).count(), 2);
    }

    #[test]
    fn ca_underflow_keeps_every_feasible_member() {
        // Feasibility pressure: whenever feasible members are scarce, all
        // of them survive no matter how their objectives rank.
        let weights = weights_m2(4); // N = 5
        let cfg = config(5);
        let mut rng = RandomSource::from_seed(1);
        let terrible_feasible = feasible(&[1e6, 1e6]);
        let members = vec![
            terrible_feasible.clone(),
            sol(0.0, &[0.01, 0.02], 0.5),
            sol(0.0, &[0.02, 0.01], 0.4),
            sol(0.0, &[0.03, 0.03], 0.3),
            sol(0.0, &[0.04, 0.02], 0.2),
        ];
        let ca = archive(5, members);
        let offspring = vec![sol(0.0, &[0.05, 0.01], 0.1)];
        let out = update_ca(&ca, &offspring, &weights, &cfg, &mut rng).unwrap();
        assert!(out
            .iter()
            .any(|s| s.objectives() == terrible_feasible.objectives() && s.is_feasible()));
    }

    #[test]
    fn ca_rejects_pool_smaller_than_capacity() {
        let weights = weights_m2(4); // N = 5
        let cfg = config(5);
        let mut rng = RandomSource::from_seed(1);
        let err = update_ca(
            &Archive::new(5).unwrap(),
            &[feasible(&[0.5, 0.5])],
            &weights,
            &cfg,
            &mut rng,
        )
        .unwrap_err();
        assert!(matches!(err, Error::InvalidInput(_)));
    }

    #[test]
    fn ca_update_is_deterministic_over_random_pools() {
        let weights = weights_m2(4); // N = 5
        let cfg = config(5);
        for seed in 0..20 {
            let mut rng = RandomSource::from_seed(seed);
            let pool: Vec<Solution> = (0..12)
                .map(|_| {
                    let f = vec![rng.next_f64() * 4.0, rng.next_f64() * 4.0];
                    let cv = if rng.flip(0.5) { 0.0 } else { rng.next_f64() * 3.0 };
                    sol(0.0, &f, cv)
                })
                .collect();
            let mut r1 = RandomSource::from_seed(99);
            let mut r2 = RandomSource::from_seed(99);
            let a = update_ca(&Archive::new(5).unwrap(), &pool, &weights, &cfg, &mut r1).unwrap();
            let b = update_ca(&Archive::new(5).unwrap(), &pool, &weights, &cfg, &mut r2).unwrap();
            assert_eq!(a.len(), 5);
            assert_eq!(objective_set(&a), objective_set(&b));
            let pool_feasible = pool.iter().filter(|s| s.is_feasible()).count();
            let kept_feasible = a.iter().filter(|s| s.is_feasible()).count();
            assert_eq!(kept_feasible, pool_feasible.min(5));
        }
    }

    // --- update_da ---

    #[test]
    fn da_promotes_nothing_in_round_one_when_ca_covers_every_subregion() {
        // CA holds one member per subregion and the pool has one candidate
        // per subregion: round one promotes nothing (every subregion is
        // already exploited once), round two admits one per subregion in
        // subregion order.
        let weights = weights_m2(2); // N = 3
        let cfg = config(3);
        let a0 = sol(0.0, &[2.0, 0.2], 7.0);
        let a1 = sol(0.0, &[1.0, 1.0], 0.0);
        let a2 = sol(0.0, &[0.2, 2.0], 3.0);
        let ca = archive(
            3,
            vec![
                feasible(&[1.9, 0.25]),
                feasible(&[1.05, 1.08]),
                feasible(&[0.25, 1.9]),
            ],
        );
        // Scrambled arrival order; the output is in subregion order. The
        // lattice enumerates weights lexicographically, so subregion 0 is
        // the (0, 1) direction and a2 leads.
        let da = archive(3, vec![a1.clone(), a0.clone(), a2.clone()]);
        let out = update_da(&ca, &da, &[], &weights, &cfg).unwrap();
        let got: Vec<&[f64]> = out.iter().map(|s| s.objectives()).collect();
        assert_eq!(
            got,
            vec![a2.objectives(), a1.objectives(), a0.objectives()]
        );
    }

    #[test]
    fn da_promotes_best_fitness_first_within_a_bucket() {
        // The diagonal subregion's bucket holds a non-dominated pair with
        // fitness 2 and 3; the CA ignores that subregion, so round one
        // promotes the fitness-2 member first. The corner candidate c2
        // sits in the same subregion as two CA members (the (1, 0)
        // direction, subregion 2) and never gets in.
        let weights = weights_m2(2); // N = 3
        let cfg = config(3);
        let a = feasible(&[1.0, 0.45]); // g^tch = 2 under w = (0.5, 0.5)
        let b = feasible(&[0.625, 1.5]); // g^tch = 3
        let c2 = feasible(&[2.0, 0.0]);
        let c3 = feasible(&[0.0, 2.0]);
        let ca = archive(
            3,
            vec![
                feasible(&[1.9, 0.1]),
                feasible(&[0.1, 1.9]),
                feasible(&[1.8, 0.15]),
            ],
        );
        let da = archive(3, vec![a.clone(), b.clone(), c2.clone()]);
        let out = update_da(&ca, &da, std::slice::from_ref(&c3), &weights, &cfg).unwrap();
        // Round 1 reaches only the empty-in-CA diagonal bucket and promotes
        // a (fitness 2). Round 2 tops subregion 0 up with c3, then the
        // diagonal bucket with b, filling the archive.
        let got: Vec<&[f64]> = out.iter().map(|s| s.objectives()).collect();
        assert_eq!(got, vec![a.objectives(), c3.objectives(), b.objectives()]);
    }

    #[test]
    fn da_bucket_pick_is_nondominated_then_smallest_fitness() {
        // Fitness 2 beats fitness 7 among non-dominated members…
        let w = [0.5, 0.5];
        let ideal = [0.0, 0.0];
        let p = feasible(&[1.0, 0.3]); // g^tch 2
        let q = feasible(&[3.5, 0.2]); // g^tch 7, non-dominated with p
        let pool = vec![q.clone(), p.clone()];
        assert_eq!(select_da_promotion(&pool, &[0, 1], &w, &ideal).0, 1);
        assert_eq!(select_da_promotion(&pool, &[1, 0], &w, &ideal).0, 0);

        // …and a dominated member cannot win even when it ties the minimum
        // fitness: c ties p at fitness 2 but p dominates it.
        let c = feasible(&[1.0, 0.31]);
        let pool = vec![c, p, q];
        assert_eq!(select_da_promotion(&pool, &[0, 1, 2], &w, &ideal).0, 1);
    }

    #[test]
    fn da_never_reads_constraints() {
        // Metamorphic check: scaling every constraint violation by 10
        // (objectives untouched) leaves the output identical.
        let weights = weights_m2(2);
        let cfg = config(3);
        let build = |scale: f64| {
            let ca = archive(
                3,
                vec![
                    sol(0.0, &[1.9, 0.1], 0.7 * scale),
                    sol(0.0, &[0.1, 1.9], 0.0),
                    sol(0.0, &[1.8, 0.15], 2.0 * scale),
                ],
            );
            let da = archive(
                3,
                vec![
                    sol(0.0, &[1.0, 0.45], 1.0 * scale),
                    sol(0.0, &[0.625, 1.5], 3.0 * scale),
                    sol(0.0, &[2.0, 0.0], 0.5 * scale),
                ],
            );
            let off = vec![sol(0.0, &[0.0, 2.0], 9.0 * scale)];
            update_da(&ca, &da, &off, &weights, &cfg).unwrap()
        };
        assert_eq!(objective_set(&build(1.0)), objective_set(&build(10.0)));
    }

    #[test]
    fn da_overshoot_resolves_on_merit_unless_strict_cutoff() {
        // Weights for m=2, h=2 come out as (0,1), (0.5,0.5), (1,0). The CA
        // sits entirely on the (1,0) ray, so subregions 0 and 1 are CA-free
        // and each promotes once in round 1; round 2 then overshoots N=3.
        // Round 2 visits subregion 0 first and admits g^tch 1.4 there, then
        // subregion 1 with g^tch 1.32. The default keeps the smaller-g^tch
        // admission regardless of visit order; the strict cutoff stops as
        // soon as the archive is full, keeping the earlier-visited one.
        let weights = weights_m2(2);
        let mut cfg = config(3);
        let ca = archive(
            3,
            vec![
                feasible(&[1.0, 0.05]),
                feasible(&[0.9, 0.02]),
                feasible(&[0.95, 0.01]),
            ],
        );
        let d1 = feasible(&[1.0, 0.0]); // subregion 2, blocked by the CA
        let d2 = feasible(&[0.45, 0.55]); // subregion 1, g^tch 1.1
        let d3 = feasible(&[0.66, 0.44]); // subregion 1, g^tch 1.32
        let d4 = feasible(&[0.0, 1.0]); // subregion 0, g^tch 1.0, dominates d5
        let d5 = feasible(&[0.0, 1.4]); // subregion 0, g^tch 1.4
        let da = archive(3, vec![d1, d2.clone(), d3.clone()]);
        let off = vec![d4.clone(), d5.clone()];

        let sorted = |mut v: Vec<Vec<f64>>| {
            v.sort_by(|a, b| a.partial_cmp(b).unwrap());
            v
        };
        let merit_out = update_da(&ca, &da, &off, &weights, &cfg).unwrap();
        assert_eq!(
            objective_set(&merit_out),
            sorted(vec![
                d4.objectives().to_vec(),
                d2.objectives().to_vec(),
                d3.objectives().to_vec(),
            ])
        );

        cfg.da_strict_cutoff = true;
        let strict_out = update_da(&ca, &da, &off, &weights, &cfg).unwrap();
        assert_eq!(
            objective_set(&strict_out),
            sorted(vec![
                d4.objectives().to_vec(),
                d2.objectives().to_vec(),
                d5.objectives().to_vec(),
            ])
        );
    }

    // --- mating ---

    fn tagged_archive(n: usize, tag: f64, members: Vec<Solution>) -> Archive {
        let members = members
            .into_iter()
            .map(|s| {
                Solution::new(vec![tag], s.objectives().to_vec(), s.constraints().clone()).unwrap()
            })
            .collect();
        Archive::with_members(n, members).unwrap()
    }

    #[test]
    fn mating_degenerate_proportions_fix_the_second_parent() {
        // CA strictly dominates DA: rho_d = 0, rho_c = 1, so parent one and
        // parent two both come from the CA every time.
        let ca = tagged_archive(
            2,
            0.0,
            vec![feasible(&[0.1, 0.1]), feasible(&[0.2, 0.05])],
        );
        let da = tagged_archive(2, 1.0, vec![feasible(&[1.0, 1.0]), feasible(&[2.0, 0.9])]);
        let (rho_c, rho_d) = mating_proportions(&ca, &da);
        assert_eq!((rho_c, rho_d), (1.0, 0.0));
        let mut rng = RandomSource::from_seed(3);
        for _ in 0..200 {
            let (p1, p2) = restricted_mating(&ca, &da, &mut rng).unwrap();
            assert_eq!(p1.x()[0], 0.0);
            assert_eq!(p2.x()[0], 0.0);
        }

        // Mirror case: every CA member dominated, so both parents come from
        // the DA with probability one.
        let (rho_c, rho_d) = mating_proportions(&da, &ca);
        assert_eq!((rho_c, rho_d), (0.0, 1.0));
        for _ in 0..200 {
            let (p1, p2) = restricted_mating(&da, &ca, &mut rng).unwrap();
            assert_eq!(p1.x()[0], 0.0);
            assert_eq!(p2.x()[0], 0.0);
        }
    }

    /// Ten mutually non-dominated points; prefix them to an archive to
    /// control how many of its members survive domination by the union.
    fn nondominated_row(i: usize) -> Vec<f64> {
        vec![0.1 * i as f64, 1.0 - 0.1 * i as f64]
    }

    #[test]
    fn mating_second_parent_frequency_tracks_rho_c() {
        // CA holds 6 of the 10 union-non-dominated points plus 4 dominated
        // fillers; DA holds the other 4 plus 6 fillers. So rho_c = 0.6 and
        // rho_d = 0.4, and parent two should come from the CA with
        // empirical frequency 0.6 ± 0.02 over 10,000 pairs.
        let mut ca_members: Vec<Solution> =
            (0..6).map(|i| feasible(&nondominated_row(i))).collect();
        ca_members.extend((0..4).map(|i| {
            let mut f = nondominated_row(i);
            f[0] += 2.0;
            f[1] += 2.0;
            feasible(&f)
        }));
        let mut da_members: Vec<Solution> =
            (6..10).map(|i| feasible(&nondominated_row(i))).collect();
        da_members.extend((0..6).map(|i| {
            let mut f = nondominated_row(i);
            f[0] += 3.0;
            f[1] += 3.0;
            feasible(&f)
        }));
        let ca = tagged_archive(10, 0.0, ca_members);
        let da = tagged_archive(10, 1.0, da_members);
        let (rho_c, rho_d) = mating_proportions(&ca, &da);
        assert!((rho_c - 0.6).abs() < 1e-12);
        assert!((rho_d - 0.4).abs() < 1e-12);

        let mut rng = RandomSource::from_seed(11);
        let mut from_ca = 0usize;
        let trials = 10_000;
        for _ in 0..trials {
            let (p1, p2) =
                select_mating_pair(&ca, &da, rho_c, rho_d, Variant::Full, &mut rng).unwrap();
            assert_eq!(p1.x()[0], 0.0, "rho_c > rho_d sends parent one to the CA");
            if p2.x()[0] == 0.0 {
                from_ca += 1;
            }
        }
        let freq = from_ca as f64 / trials as f64;
        assert!((freq - 0.6).abs() <= 0.02, "frequency {freq}");
    }

    #[test]
    fn variant_ii_ignores_proportions() {
        // Even with rho_c = 1 and rho_d = 0, the ablation draws each
        // parent's archive with a fair coin.
        let ca = tagged_archive(
            2,
            0.0,
            vec![feasible(&[0.1, 0.1]), feasible(&[0.2, 0.05])],
        );
        let da = tagged_archive(2, 1.0, vec![feasible(&[1.0, 1.0]), feasible(&[2.0, 0.9])]);
        let mut rng = RandomSource::from_seed(5);
        let trials = 10_000;
        let mut p1_ca = 0usize;
        let mut p2_ca = 0usize;
        for _ in 0..trials {
            let (p1, p2) =
                select_mating_pair(&ca, &da, 1.0, 0.0, Variant::VariantII, &mut rng).unwrap();
            if p1.x()[0] == 0.0 {
                p1_ca += 1;
            }
            if p2.x()[0] == 0.0 {
                p2_ca += 1;
            }
        }
        for count in [p1_ca, p2_ca] {
            let freq = count as f64 / trials as f64;
            assert!((freq - 0.5).abs() <= 0.02, "frequency {freq}");
        }
    }

    // --- tournament_select ---

    #[test]
    fn tournament_prefers_feasible_and_dominant() {
        let mut rng = RandomSource::from_seed(7);
        // Feasible vs infeasible: the feasible one, whichever order the
        // pair is drawn in.
        let pool = archive(2, vec![feasible(&[1.0, 1.0]), sol(0.0, &[0.0, 0.0], 2.0)]);
        for _ in 0..50 {
            let winner = tournament_select(&pool, &mut rng).unwrap();
            assert!(winner.is_feasible());
        }
        // Both feasible, one dominant: the dominant one.
        let pool = archive(2, vec![feasible(&[0.2, 0.2]), feasible(&[0.4, 0.4])]);
        for _ in 0..50 {
            let winner = tournament_select(&pool, &mut rng).unwrap();
            assert_eq!(winner.objectives(), &[0.2, 0.2]);
        }
    }

    #[test]
    fn tournament_is_fair_on_incomparable_and_infeasible_pairs() {
        let mut rng = RandomSource::from_seed(9);
        let trials = 10_000;
        let pool = archive(2, vec![feasible(&[0.1, 0.9]), feasible(&[0.9, 0.1])]);
        let firsts = (0..trials)
            .filter(|_| {
                tournament_select(&pool, &mut rng).unwrap().objectives() == [0.1, 0.9]
            })
            .count();
        let freq = firsts as f64 / trials as f64;
        assert!((freq - 0.5).abs() <= 0.02, "incomparable frequency {freq}");

        let pool = archive(2, vec![sol(0.0, &[0.1, 0.9], 5.0), sol(0.0, &[0.9, 0.1], 0.1)]);
        let firsts = (0..trials)
            .filter(|_| {
                tournament_select(&pool, &mut rng).unwrap().objectives() == [0.1, 0.9]
            })
            .count();
        let freq = firsts as f64 / trials as f64;
        assert!(
            (freq - 0.5).abs() <= 0.02,
            "infeasible pairs are drawn uniformly, got {freq}"
        );
    }

    #[test]
    fn tournament_rejects_small_pools() {
        let mut rng = RandomSource::from_seed(1);
        let pool = archive(1, vec![feasible(&[0.5, 0.5])]);
        assert!(matches!(
            tournament_select(&pool, &mut rng),
            Err(Error::InvalidInput(_))
        ));
    }

    // --- initialize / run ---

    fn small_problem() -> ProblemDefinition {
        ProblemDefinition::new(ProblemKind::C2Dtlz2, 2).unwrap()
    }

    #[test]
    fn initialize_fills_both_archives_and_counts_evaluations() {
        let problem = ProblemDefinition::new(ProblemKind::C1Dtlz3, 3).unwrap();
        let cfg = CtaeaConfig::new(91, 100_000);
        let state = initialize(&problem, &cfg, RandomSource::from_seed(4)).unwrap();
        assert_eq!(state.ca().len(), 91);
        assert_eq!(state.da().len(), 91);
        assert_eq!(state.weights().len(), 91);
        assert_eq!(state.evaluations_used(), 182);
        for s in state.ca().iter().chain(state.da().iter()) {
            assert!(problem.bounds().contains(s.x()));
        }
    }

    #[test]
    fn initialize_is_deterministic() {
        let problem = small_problem();
        let cfg = CtaeaConfig::new(6, 1_000);
        let a = initialize(&problem, &cfg, RandomSource::from_seed(12)).unwrap();
        let b = initialize(&problem, &cfg, RandomSource::from_seed(12)).unwrap();
        for (x, y) in a.ca().iter().zip(b.ca().iter()) {
            assert_eq!(x.x(), y.x());
            assert_eq!(x.objectives(), y.objectives());
        }
        for (x, y) in a.da().iter().zip(b.da().iter()) {
            assert_eq!(x.x(), y.x());
        }
    }

    #[test]
    fn run_with_budget_2n_returns_initial_archives() {
        let problem = small_problem();
        let mut cfg = CtaeaConfig::new(6, 12); // N = 6, budget exactly 2N
        cfg.trace_every = Some(1);
        let record = run(&problem, &cfg, RandomSource::from_seed(21)).unwrap();
        assert_eq!(record.generations, 0);
        assert_eq!(record.evaluations_used, 12);
        assert_eq!(record.trace.len(), 1);
        let state = initialize(&problem, &cfg, RandomSource::from_seed(21)).unwrap();
        assert_eq!(record.final_ca, snapshot(state.ca().members()));
        assert_eq!(record.final_da, snapshot(state.da().members()));
    }

    #[test]
    fn trace_records_final_generation_even_off_cadence() {
        let problem = small_problem();
        let mut cfg = CtaeaConfig::new(6, 42); // init 12, then 5 batches of 6
        cfg.trace_every = Some(4);
        let record = run(&problem, &cfg, RandomSource::from_seed(3)).unwrap();
        assert_eq!(record.generations, 5);
        let generations: Vec<u64> = record.trace.iter().map(|p| p.generation).collect();
        assert_eq!(generations, vec![0, 4, 5]);
        for pair in record.trace.windows(2) {
            assert!(pair[1].evaluations > pair[0].evaluations);
        }
    }

    #[test]
    fn run_is_deterministic_per_seed() {
        let problem = small_problem();
        let cfg = CtaeaConfig::new(6, 60);
        let a = run(&problem, &cfg, RandomSource::from_seed(33)).unwrap();
        let b = run(&problem, &cfg, RandomSource::from_seed(33)).unwrap();
        assert_eq!(a, b);
        let c = run(&problem, &cfg, RandomSource::from_seed(34)).unwrap();
        assert_ne!(a.final_ca, c.final_ca);
    }

    #[test]
    fn run_respects_evaluation_budget_and_batch_accounting() {
        let problem = small_problem();
        let mut cfg = CtaeaConfig::new(6, 30); // init 12, then 3 batches of 6
        let record = run(&problem, &cfg, RandomSource::from_seed(2)).unwrap();
        assert_eq!(record.generations, 3);
        assert_eq!(record.evaluations_used, 30);
        assert_eq!(record.trace.len(), 4); // generation 0 plus one per generation

        cfg.max_evaluations = 29; // one evaluation short of the third batch
        let record = run(&problem, &cfg, RandomSource::from_seed(2)).unwrap();
        assert_eq!(record.generations, 2);
        assert_eq!(record.evaluations_used, 24);
        assert_eq!(record.population_size, 6);
    }

    #[test]
    fn archives_stay_full_and_in_bounds_across_generations() {
        let problem = small_problem();
        let cfg = CtaeaConfig::new(6, 72);
        let mut state = initialize(&problem, &cfg, RandomSource::from_seed(8)).unwrap();
        while state.step().unwrap() {
            assert_eq!(state.ca().len(), 6);
            assert_eq!(state.da().len(), 6);
            for s in state.ca().iter().chain(state.da().iter()) {
                assert!(problem.bounds().contains(s.x()));
            }
        }
        assert_eq!(state.generations(), 10);
    }

    #[test]
    fn config_validation_rejects_bad_budgets_and_batches() {
        let problem = small_problem();
        let mut cfg = CtaeaConfig::new(6, 11); // below the 2N = 12 floor
        assert!(matches!(
            initialize(&problem, &cfg, RandomSource::from_seed(1)),
            Err(Error::InvalidConfig(_))
        ));
        cfg.max_evaluations = 100;
        cfg.offspring_per_generation = Some(7); // exceeds N = 6
        assert!(matches!(
            initialize(&problem, &cfg, RandomSource::from_seed(1)),
            Err(Error::InvalidConfig(_))
        ));
        cfg.offspring_per_generation = Some(0);
        assert!(matches!(
            initialize(&problem, &cfg, RandomSource::from_seed(1)),
            Err(Error::InvalidConfig(_))
        ));
    }

    #[test]
    fn variant_labels_reach_run_records() {
        let problem = small_problem();
        let mut cfg = CtaeaConfig::new(6, 24);
        cfg.variant = Variant::VariantII;
        let record = run(&problem, &cfg, RandomSource::from_seed(3)).unwrap();
        assert_eq!(record.algorithm, "ctaea-variant-2");
        cfg.variant = Variant::Full;
        let record = run(&problem, &cfg, RandomSource::from_seed(3)).unwrap();
        assert_eq!(record.algorithm, "ctaea");
    }
}
