//! Decomposition machinery: simplex-lattice weight vectors, objective
//! normalization, solution-to-subregion association, the Tchebycheff
//! scalarizer, and the nearest-neighbor density measure.
//!
//! The objective space is carved into `N` subregions, one per weight vector:
//! a solution belongs to the subregion whose weight vector forms the smallest
//! acute angle with its normalized objective vector. A perpendicular-distance
//! rule is available behind [`AssociationRule`] for comparison; the angle
//! rule is the default.

use std::io::{self, Write};

use crate::error::Error;
use crate::solution::Solution;

/// Guard floor for normalization spans and zero weight components.
const SPAN_GUARD: f64 = 1e-12;
const WEIGHT_GUARD: f64 = 1e-6;

/// Lattice parameter for weight generation.
///
/// `SingleLayer { h }` is the Das–Dennis simplex lattice with `h` divisions
/// per axis (`N = C(h+m−1, m−1)`). `TwoLayer` unions an outer lattice with an
/// inner lattice shrunk halfway toward the centroid, the usual construction
/// once single layers get too coarse for many objectives.
#[derive(Debug, Clone, Copy, PartialEq, Eq, serde::Serialize, serde::Deserialize)]
pub enum LatticeResolution {
    SingleLayer { h: usize },
    TwoLayer { outer: usize, inner: usize },
}

impl LatticeResolution {
    /// Convention defaults per objective count: single layer up to five
    /// objectives (m=3 → h=12 → N=91), two layers beyond.
    pub fn default_for(m: usize) -> LatticeResolution {
        match m {
            0..=2 => LatticeResolution::SingleLayer { h: 99 },
            3 => LatticeResolution::SingleLayer { h: 12 },
            4 => LatticeResolution::SingleLayer { h: 7 },
            5 => LatticeResolution::SingleLayer { h: 6 },
            6..=10 => LatticeResolution::TwoLayer { outer: 3, inner: 2 },
            _ => LatticeResolution::TwoLayer { outer: 2, inner: 1 },
        }
    }

    /// The largest resolution (same shape as `default_for(m)`) whose weight
    /// count does not exceed `target`, preferring an exact match. Lets a
    /// population-size knob pick the lattice.
    pub fn for_target_size(m: usize, target: usize) -> Result<LatticeResolution, Error> {
        if m < 2 {
            return Err(Error::invalid_config("need at least two objectives"));
        }
        if target < m {
            return Err(Error::invalid_config(format!(
                "target population {target} is below the minimum {m} for m={m}"
            )));
        }
        let single_count = |h: usize| binomial(h + m - 1, m - 1);
        match LatticeResolution::default_for(m) {
            LatticeResolution::SingleLayer { .. } => {
                let mut h = 1;
                while single_count(h + 1) <= target {
                    h += 1;
                }
                Ok(LatticeResolution::SingleLayer { h })
            }
            LatticeResolution::TwoLayer { .. } => {
                let mut best: Option<(usize, LatticeResolution)> = None;
                for outer in 1..=6usize {
                    for inner in 1..=outer {
                        let count = single_count(outer) + single_count(inner);
                        if count <= target && best.map_or(true, |(c, _)| count > c) {
                            best = Some((count, LatticeResolution::TwoLayer { outer, inner }));
                        }
                    }
                }
                best.map(|(_, r)| r).ok_or_else(|| {
                    Error::invalid_config(format!(
                        "no two-layer lattice fits target population {target} for m={m}"
                    ))
                })
            }
        }
    }
}

/// N weight vectors on the unit simplex, each defining one subregion.
#[derive(Debug, Clone)]
pub struct WeightVectorSet {
    m: usize,
    vectors: Vec<Vec<f64>>,
    norms: Vec<f64>,
}

impl WeightVectorSet {
    /// Generates the simplex-lattice weight set for `m` objectives.
    pub fn generate(m: usize, resolution: LatticeResolution) -> Result<Self, Error> {
        if m < 2 {
            return Err(Error::invalid_config("need at least two objectives"));
        }
        let mut vectors = match resolution {
            LatticeResolution::SingleLayer { h } => {
                if h == 0 {
                    return Err(Error::invalid_config("lattice divisions must be positive"));
                }
                simplex_lattice(m, h)
            }
            LatticeResolution::TwoLayer { outer, inner } => {
                if outer == 0 || inner == 0 {
                    return Err(Error::invalid_config("lattice divisions must be positive"));
                }
                let mut vectors = simplex_lattice(m, outer);
                let centroid = 1.0 / m as f64;
                vectors.extend(simplex_lattice(m, inner).into_iter().map(|w| {
                    w.into_iter()
                        .map(|v| 0.5 * v + 0.5 * centroid)
                        .collect::<Vec<f64>>()
                }));
                vectors
            }
        };
        // Layer unions can in principle repeat a vector (e.g. both layers
        // containing the centroid); keep the first occurrence.
        let mut seen = std::collections::HashSet::new();
        vectors.retain(|w| seen.insert(w.iter().map(|v| v.to_bits()).collect::<Vec<_>>()));
        if vectors.len() < m {
            return Err(Error::invalid_config(format!(
                "resolution yields only {} weight vectors for m={m}",
                vectors.len()
            )));
        }
        let norms = vectors
            .iter()
            .map(|w| w.iter().map(|v| v * v).sum::<f64>().sqrt())
            .collect();
        Ok(WeightVectorSet { m, vectors, norms })
    }

    /// The convention-default weight set for `m` objectives.
    pub fn default_for(m: usize) -> Result<Self, Error> {
        Self::generate(m, LatticeResolution::default_for(m))
    }

    pub fn m(&self) -> usize {
        self.m
    }

    pub fn len(&self) -> usize {
        self.vectors.len()
    }

    pub fn is_empty(&self) -> bool {
        self.vectors.is_empty()
    }

    pub fn get(&self, i: usize) -> &[f64] {
        &self.vectors[i]
    }

    pub fn vectors(&self) -> &[Vec<f64>] {
        &self.vectors
    }

    /// Writes the set as CSV with a `w1..wm` header, one vector per row.
    /// Values print in shortest round-trip form.
    pub fn write_csv<W: Write>(&self, out: &mut W) -> io::Result<()> {
        let header: Vec<String> = (1..=self.m).map(|j| format!("w{j}")).collect();
        writeln!(out, "{}", header.join(","))?;
        for w in &self.vectors {
            let row: Vec<String> = w.iter().map(|v| v.to_string()).collect();
            writeln!(out, "{}", row.join(","))?;
        }
        Ok(())
    }
}

/// All lattice points with components `k_i/h`, `Σk_i = h`, in lexicographic
/// order of the leading components.
pub(crate) fn simplex_lattice(m: usize, h: usize) -> Vec<Vec<f64>> {
    let mut out = Vec::with_capacity(binomial(h + m - 1, m - 1));
    let mut current = vec![0.0; m];
    fill_lattice(&mut out, &mut current, h, h, 0);
    out
}

fn fill_lattice(out: &mut Vec<Vec<f64>>, current: &mut Vec<f64>, h: usize, remaining: usize, depth: usize) {
    if depth == current.len() - 1 {
        current[depth] = remaining as f64 / h as f64;
        out.push(current.clone());
        return;
    }
    for k in 0..=remaining {
        current[depth] = k as f64 / h as f64;
        fill_lattice(out, current, h, remaining - k, depth + 1);
    }
}

pub(crate) fn binomial(n: usize, k: usize) -> usize {
    let k = k.min(n - k);
    let mut acc: u128 = 1;
    for i in 0..k {
        acc = acc * (n - i) as u128 / (i + 1) as u128;
    }
    acc as usize
}

/// Estimated ideal (componentwise min) and nadir (componentwise max) points
/// of a solution set, used to normalize objectives.
#[derive(Debug, Clone, PartialEq)]
pub struct NormalizationBounds {
    ideal: Vec<f64>,
    nadir: Vec<f64>,
}

impl NormalizationBounds {
    /// Componentwise extremes over raw objective vectors.
    pub fn from_objectives<'a, I>(objectives: I) -> Result<Self, Error>
    where
        I: IntoIterator<Item = &'a [f64]>,
    {
        let mut iter = objectives.into_iter();
        let first = iter
            .next()
            .ok_or_else(|| Error::invalid_input("bounds require a non-empty solution set"))?;
        let mut ideal = first.to_vec();
        let mut nadir = first.to_vec();
        for f in iter {
            for (j, &v) in f.iter().enumerate() {
                if v < ideal[j] {
                    ideal[j] = v;
                }
                if v > nadir[j] {
                    nadir[j] = v;
                }
            }
        }
        Ok(NormalizationBounds { ideal, nadir })
    }

    pub fn ideal(&self) -> &[f64] {
        &self.ideal
    }

    pub fn nadir(&self) -> &[f64] {
        &self.nadir
    }

    /// `f̄ⱼ = (fⱼ − z*ⱼ)/(z^nadⱼ − z*ⱼ)`, with degenerate spans floored at
    /// 1e-12 so coinciding bounds stay finite.
    pub fn normalize(&self, f: &[f64]) -> Vec<f64> {
        f.iter()
            .enumerate()
            .map(|(j, &v)| (v - self.ideal[j]) / (self.nadir[j] - self.ideal[j]).max(SPAN_GUARD))
            .collect()
    }
}

/// Componentwise min/max of objectives over a solution sequence.
pub fn update_bounds(solutions: &[Solution]) -> Result<NormalizationBounds, Error> {
    NormalizationBounds::from_objectives(solutions.iter().map(|s| s.objectives()))
}

/// Which geometric rule assigns solutions to subregions.
#[derive(Debug, Clone, Copy, PartialEq, Eq, serde::Serialize, serde::Deserialize)]
pub enum AssociationRule {
    /// Smallest acute angle between the normalized objective vector and the
    /// weight vector (the default).
    Angle,
    /// Smallest perpendicular distance from the normalized point to the ray
    /// through the weight vector.
    Perpendicular,
}

impl Default for AssociationRule {
    fn default() -> Self {
        AssociationRule::Angle
    }
}

/// Result of associating a solution sequence with a weight set: the
/// subregion index per solution, and the member lists per subregion
/// (a partition of the input indices).
#[derive(Debug, Clone)]
pub struct SubregionAssignment {
    region_of: Vec<usize>,
    members: Vec<Vec<usize>>,
}

impl SubregionAssignment {
    pub fn region_of(&self, solution_index: usize) -> usize {
        self.region_of[solution_index]
    }

    pub fn assignments(&self) -> &[usize] {
        &self.region_of
    }

    /// Member indices of subregion `i`.
    pub fn members(&self, region: usize) -> &[usize] {
        &self.members[region]
    }

    pub fn member_lists(&self) -> &[Vec<usize>] {
        &self.members
    }

    pub fn count(&self, region: usize) -> usize {
        self.members[region].len()
    }
}

/// Associates each solution with the subregion of the nearest weight vector,
/// after normalizing objectives with `bounds`. Ties break to the lowest
/// weight index. A solution sitting exactly on the ideal point in every
/// objective (all-zero normalized vector) is assigned by its raw objective
/// direction, falling back to subregion 0 if that is zero too.
pub fn associate(
    solutions: &[Solution],
    weights: &WeightVectorSet,
    bounds: &NormalizationBounds,
    rule: AssociationRule,
) -> SubregionAssignment {
    let region_of: Vec<usize> = solutions
        .iter()
        .map(|s| {
            let normalized = bounds.normalize(s.objectives());
            assign_one(&normalized, Some(s.objectives()), weights, rule)
        })
        .collect();
    build_assignment(region_of, weights.len())
}

/// [`associate`] over pre-normalized points (no raw-objective fallback).
pub fn associate_points(
    points: &[Vec<f64>],
    weights: &WeightVectorSet,
    rule: AssociationRule,
) -> SubregionAssignment {
    let region_of: Vec<usize> = points
        .iter()
        .map(|p| assign_one(p, None, weights, rule))
        .collect();
    build_assignment(region_of, weights.len())
}

fn build_assignment(region_of: Vec<usize>, regions: usize) -> SubregionAssignment {
    let mut members = vec![Vec::new(); regions];
    for (i, &r) in region_of.iter().enumerate() {
        members[r].push(i);
    }
    SubregionAssignment { region_of, members }
}

fn assign_one(
    point: &[f64],
    raw: Option<&[f64]>,
    weights: &WeightVectorSet,
    rule: AssociationRule,
) -> usize {
    let norm = l2_norm(point);
    if norm > 0.0 {
        return match rule {
            AssociationRule::Angle => best_by_cosine(point, norm, weights),
            AssociationRule::Perpendicular => best_by_perpendicular(point, norm, weights),
        };
    }
    // Degenerate: the point coincides with the ideal point. Use the raw
    // objective direction when available.
    if let Some(raw) = raw {
        let raw_norm = l2_norm(raw);
        if raw_norm > 0.0 {
            return best_by_cosine(raw, raw_norm, weights);
        }
    }
    0
}

/// Index of the weight with the largest cosine (smallest acute angle, since
/// arccos is monotone decreasing); strict comparison keeps the lowest index
/// on ties. The cosine is clamped to [−1, 1] against rounding.
fn best_by_cosine(point: &[f64], point_norm: f64, weights: &WeightVectorSet) -> usize {
    let mut best = 0;
    let mut best_cos = f64::NEG_INFINITY;
    for (i, w) in weights.vectors.iter().enumerate() {
        let cos = (dot(point, w) / (point_norm * weights.norms[i])).clamp(-1.0, 1.0);
        if cos > best_cos {
            best_cos = cos;
            best = i;
        }
    }
    best
}

/// Index of the weight whose ray is closest in perpendicular distance:
/// d⊥² = ‖p‖² − (p·ŵ)². Lowest index wins ties.
fn best_by_perpendicular(point: &[f64], point_norm: f64, weights: &WeightVectorSet) -> usize {
    let mut best = 0;
    let mut best_d2 = f64::INFINITY;
    for (i, w) in weights.vectors.iter().enumerate() {
        let along = dot(point, w) / weights.norms[i];
        let d2 = (point_norm * point_norm - along * along).max(0.0);
        if d2 < best_d2 {
            best_d2 = d2;
            best = i;
        }
    }
    best
}

fn dot(a: &[f64], b: &[f64]) -> f64 {
    a.iter().zip(b).map(|(x, y)| x * y).sum()
}

fn l2_norm(v: &[f64]) -> f64 {
    dot(v, v).sqrt()
}

/// Tchebycheff scalarizer `max_j |f_j − z*_j| / w_j`, with zero weight
/// components floored at 1e-6.
pub fn tchebycheff(f: &[f64], w: &[f64], ideal: &[f64]) -> f64 {
    debug_assert_eq!(f.len(), w.len());
    debug_assert_eq!(f.len(), ideal.len());
    let mut worst = 0.0f64;
    for j in 0..f.len() {
        let term = (f[j] - ideal[j]).abs() / w[j].max(WEIGHT_GUARD);
        if term > worst {
            worst = term;
        }
    }
    worst
}

/// Per-member distance to the nearest other member (the subregion density
/// measure), in whatever space the caller's points live in — the archive
/// updates pass normalized objective vectors. A lone member has distance
/// `+∞`; coincident members have distance 0.
pub fn nearest_neighbor_distances(points: &[Vec<f64>]) -> Result<Vec<f64>, Error> {
    if points.is_empty() {
        return Err(Error::invalid_input(
            "nearest_neighbor_distances: empty member list",
        ));
    }
    let n = points.len();
    let mut out = vec![f64::INFINITY; n];
    for i in 0..n {
        for j in (i + 1)..n {
            let d = euclidean(&points[i], &points[j]);
            if d < out[i] {
                out[i] = d;
            }
            if d < out[j] {
                out[j] = d;
            }
        }
    }
    Ok(out)
}

pub(crate) fn euclidean(a: &[f64], b: &[f64]) -> f64 {
    a.iter()
        .zip(b)
        .map(|(x, y)| (x - y) * (x - y))
        .sum::<f64>()
        .sqrt()
}
