//! Quality indicators and the statistical protocol: inverted generational
//! distance, hypervolume (exact and Monte-Carlo), Wilcoxon's rank-sum test,
//! and median/IQR summaries.
//!
//! Indicator values for constrained runs are computed over feasible members
//! only: an archive with no feasible solution scores hypervolume 0 and has
//! no defined IGD. This keeps "the run found nothing feasible" from being
//! credited for infeasible points that happen to sit below the reference
//! point.

use crate::decomposition::NormalizationBounds;
use crate::error::Error;
use crate::problems::ReferenceFront;
use crate::random::RandomSource;
use crate::ranking::pareto_dominates;
use crate::solution::Solution;

/// Mean distance from each reference-front point to its nearest neighbor in
/// `p` (lower is better; 0 means every front point is matched exactly).
pub fn igd(p: &[Vec<f64>], pstar: &ReferenceFront) -> Result<f64, Error> {
    if p.is_empty() {
        return Err(Error::invalid_input("igd: empty approximation set"));
    }
    let m = pstar.m();
    if p.iter().any(|v| v.len() != m) {
        return Err(Error::invalid_input(
            "igd: approximation set arity differs from the reference front",
        ));
    }
    let total: f64 = pstar
        .points()
        .iter()
        .map(|z| {
            p.iter()
                .map(|q| crate::decomposition::euclidean(z, q))
                .fold(f64::INFINITY, f64::min)
        })
        .sum();
    Ok(total / pstar.len() as f64)
}

/// How the hypervolume is computed.
#[derive(Debug, Clone, Copy, PartialEq, Eq, serde::Serialize, serde::Deserialize)]
pub enum HvMode {
    /// Exclusive-volume recursion; exact, practical through m ≈ 5.
    Exact,
    /// Hit ratio of uniform samples in the box spanned by the point set's
    /// componentwise minimum and the reference point.
    MonteCarlo { samples: u64, seed: u64 },
}

/// Lebesgue measure of the region dominated by `p` and bounded by `zr`.
/// Points with any coordinate at or beyond `zr` are discarded first; if
/// nothing survives the hypervolume is 0.
pub fn hypervolume(p: &[Vec<f64>], zr: &[f64], mode: HvMode) -> Result<f64, Error> {
    if zr.iter().any(|v| !v.is_finite()) {
        return Err(Error::invalid_input("hypervolume: non-finite reference point"));
    }
    if p.iter().any(|v| v.len() != zr.len()) {
        return Err(Error::invalid_input(
            "hypervolume: point arity differs from the reference point",
        ));
    }
    let mut kept: Vec<Vec<f64>> = p
        .iter()
        .filter(|q| q.iter().zip(zr).all(|(a, b)| a < b))
        .cloned()
        .collect();
    kept = prune_dominated(kept);
    if kept.is_empty() {
        return Ok(0.0);
    }
    match mode {
        HvMode::Exact => Ok(exclusive_hv(&mut kept, zr)),
        HvMode::MonteCarlo { samples, seed } => {
            if samples == 0 {
                return Err(Error::invalid_input("hypervolume: zero samples"));
            }
            Ok(monte_carlo_hv(&kept, zr, samples, RandomSource::from_seed(seed)))
        }
    }
}

/// Hypervolume of `p` after normalizing both `p` and the reference box by
/// the front's ideal/nadir span, against `(1.1, …)`. The protocol used when
/// objective scales differ wildly.
pub fn hypervolume_normalized(
    p: &[Vec<f64>],
    pstar: &ReferenceFront,
    mode: HvMode,
) -> Result<f64, Error> {
    let bounds = NormalizationBounds::from_objectives(pstar.points().iter().map(|v| v.as_slice()))?;
    let normalized: Vec<Vec<f64>> = p.iter().map(|q| bounds.normalize(q)).collect();
    let zr = vec![1.1; pstar.m()];
    hypervolume(&normalized, &zr, mode)
}

/// Drops exact duplicates and dominated points (keeping first occurrences).
fn prune_dominated(points: Vec<Vec<f64>>) -> Vec<Vec<f64>> {
    let mut kept: Vec<Vec<f64>> = Vec::with_capacity(points.len());
    for q in points {
        if kept
            .iter()
            .any(|r| r == &q || pareto_dominates(r, &q))
        {
            continue;
        }
        kept.retain(|r| !pareto_dominates(&q, r));
        kept.push(q);
    }
    kept
}

fn box_volume(p: &[f64], zr: &[f64]) -> f64 {
    p.iter().zip(zr).map(|(a, b)| b - a).product()
}

/// Exclusive-volume recursion: each point contributes its box to `zr` minus
/// the part already covered by the points after it (limited to its corner).
fn exclusive_hv(points: &mut Vec<Vec<f64>>, zr: &[f64]) -> f64 {
    points.sort_by(|a, b| a[0].total_cmp(&b[0]));
    let mut total = 0.0;
    for i in 0..points.len() {
        let p = points[i].clone();
        let mut limited: Vec<Vec<f64>> = points[i + 1..]
            .iter()
            .map(|q| q.iter().zip(&p).map(|(a, b)| a.max(*b)).collect())
            .collect();
        limited = prune_dominated(limited);
        let covered = if limited.is_empty() {
            0.0
        } else {
            exclusive_hv(&mut limited, zr)
        };
        total += box_volume(&p, zr) - covered;
    }
    total
}

/// Uniform sampling over `[min(points), zr]`; a sample counts when some
/// point is componentwise ≤ it. Coordinates are drawn in index order.
fn monte_carlo_hv(points: &[Vec<f64>], zr: &[f64], samples: u64, mut rng: RandomSource) -> f64 {
    let m = zr.len();
    let mut low = points[0].clone();
    for q in points {
        for j in 0..m {
            low[j] = low[j].min(q[j]);
        }
    }
    let volume: f64 = low.iter().zip(zr).map(|(a, b)| b - a).product();
    if volume <= 0.0 {
        return 0.0;
    }
    let mut hits = 0u64;
    let mut y = vec![0.0; m];
    for _ in 0..samples {
        for j in 0..m {
            y[j] = low[j] + rng.next_f64() * (zr[j] - low[j]);
        }
        if points
            .iter()
            .any(|q| q.iter().zip(&y).all(|(a, b)| a <= b))
        {
            hits += 1;
        }
    }
    volume * hits as f64 / samples as f64
}

/// Outcome of a two-sided rank-sum comparison; "better" means smaller, the
/// minimization convention.
#[derive(Debug, Clone, Copy, PartialEq, Eq, serde::Serialize, serde::Deserialize)]
pub enum TestOutcome {
    SignificantABetter,
    SignificantBBetter,
    NotSignificant,
}

/// Wilcoxon's rank-sum test (normal approximation with average ranks on
/// ties, tie-corrected variance, and a 0.5 continuity correction), two-sided
/// at level `alpha`. When the difference is significant, the sample with the
/// smaller median is better; entirely degenerate data is never significant.
pub fn wilcoxon_rank_sum(a: &[f64], b: &[f64], alpha: f64) -> Result<TestOutcome, Error> {
    if a.len() < 5 || b.len() < 5 {
        return Err(Error::invalid_input(format!(
            "rank-sum test needs at least 5 values per sample, got {} and {}",
            a.len(),
            b.len()
        )));
    }
    if !(0.0..1.0).contains(&alpha) || alpha <= 0.0 {
        return Err(Error::invalid_input("alpha must lie in (0, 1)"));
    }
    let (n1, n2) = (a.len() as f64, b.len() as f64);
    let n = n1 + n2;

    // Pool, sort, assign average ranks to tied runs.
    let mut pooled: Vec<(f64, bool)> = a
        .iter()
        .map(|&v| (v, true))
        .chain(b.iter().map(|&v| (v, false)))
        .collect();
    pooled.sort_by(|x, y| x.0.total_cmp(&y.0));
    let mut rank_sum_a = 0.0;
    let mut tie_term = 0.0;
    let mut i = 0;
    while i < pooled.len() {
        let mut j = i;
        while j < pooled.len() && pooled[j].0 == pooled[i].0 {
            j += 1;
        }
        let run = (j - i) as f64;
        let avg_rank = (i + 1 + j) as f64 / 2.0; // mean of ranks i+1 ..= j
        rank_sum_a += avg_rank * pooled[i..j].iter().filter(|(_, is_a)| *is_a).count() as f64;
        tie_term += run * run * run - run;
        i = j;
    }

    let u_a = rank_sum_a - n1 * (n1 + 1.0) / 2.0;
    let mean = n1 * n2 / 2.0;
    let variance = (n1 * n2 / 12.0) * ((n + 1.0) - tie_term / (n * (n - 1.0)));
    if variance <= 0.0 {
        return Ok(TestOutcome::NotSignificant);
    }
    let z = ((u_a - mean).abs() - 0.5).max(0.0) / variance.sqrt();
    let p_value = libm::erfc(z / std::f64::consts::SQRT_2);
    if p_value >= alpha {
        return Ok(TestOutcome::NotSignificant);
    }

    // Direction: smaller median wins; fall back to mean ranks on a tie.
    let med_a = summarize(a)?.median;
    let med_b = summarize(b)?.median;
    if med_a < med_b {
        Ok(TestOutcome::SignificantABetter)
    } else if med_b < med_a {
        Ok(TestOutcome::SignificantBBetter)
    } else if u_a < mean {
        Ok(TestOutcome::SignificantABetter)
    } else if u_a > mean {
        Ok(TestOutcome::SignificantBBetter)
    } else {
        Ok(TestOutcome::NotSignificant)
    }
}

/// Order statistics of one metric across repeated runs.
#[derive(Debug, Clone, Copy, PartialEq, serde::Serialize, serde::Deserialize)]
pub struct SummaryStats {
    pub median: f64,
    pub q1: f64,
    pub q3: f64,
    pub iqr: f64,
}

/// Median (mean of the two middle values for even counts) and quartiles by
/// linear interpolation at `(n−1)p`.
pub fn summarize(values: &[f64]) -> Result<SummaryStats, Error> {
    if values.is_empty() {
        return Err(Error::invalid_input("summarize: empty sample"));
    }
    let mut sorted = values.to_vec();
    sorted.sort_by(f64::total_cmp);
    // Equal interpolation endpoints short-circuit so samples containing
    // infinities (a run that never reached feasibility scores an infinite
    // indicator) yield infinite order statistics instead of NaN.
    let quantile = |p: f64| -> f64 {
        let h = (sorted.len() - 1) as f64 * p;
        let lo = h.floor() as usize;
        let frac = h - lo as f64;
        if frac == 0.0 || sorted[lo] == sorted[lo + 1] {
            sorted[lo]
        } else {
            sorted[lo] + frac * (sorted[lo + 1] - sorted[lo])
        }
    };
    let n = sorted.len();
    let median = if n % 2 == 1 {
        sorted[n / 2]
    } else if sorted[n / 2 - 1] == sorted[n / 2] {
        sorted[n / 2]
    } else {
        (sorted[n / 2 - 1] + sorted[n / 2]) / 2.0
    };
    let (q1, q3) = (quantile(0.25), quantile(0.75));
    Ok(SummaryStats {
        median,
        q1,
        q3,
        iqr: if q1 == q3 { 0.0 } else { q3 - q1 },
    })
}

/// Per-run indicator record: feasible-only IGD and hypervolume plus the
/// run's identity.
#[derive(Debug, Clone, PartialEq, serde::Serialize, serde::Deserialize)]
pub struct MetricReport {
    pub seed: u64,
    pub evaluations: u64,
    pub feasible_count: usize,
    /// None when the population holds no feasible solution.
    pub igd: Option<f64>,
    pub hv: f64,
    /// Present when normalized-hypervolume reporting was requested.
    pub hv_normalized: Option<f64>,
}

impl MetricReport {
    /// Scores a final population against a reference front: only feasible
    /// members count, an all-infeasible population scores hv = 0 with no
    /// IGD.
    pub fn compute(
        seed: u64,
        evaluations: u64,
        members: &[Solution],
        front: &ReferenceFront,
        zr: &[f64],
        mode: HvMode,
        normalized: bool,
    ) -> Result<MetricReport, Error> {
        let feasible: Vec<Vec<f64>> = members
            .iter()
            .filter(|s| s.is_feasible())
            .map(|s| s.objectives().to_vec())
            .collect();
        let feasible_count = feasible.len();
        let (igd_value, hv, hv_normalized) = if feasible.is_empty() {
            (None, 0.0, normalized.then_some(0.0))
        } else {
            let igd_value = Some(igd(&feasible, front)?);
            let hv = hypervolume(&feasible, zr, mode)?;
            let hv_normalized = if normalized {
                Some(hypervolume_normalized(&feasible, front, mode)?)
            } else {
                None
            };
            (igd_value, hv, hv_normalized)
        };
        Ok(MetricReport {
            seed,
            evaluations,
            feasible_count,
            igd: igd_value,
            hv,
            hv_normalized,
        })
    }
}
