//! Benchmark problems: the DTLZ baselines, their C-DTLZ constrained
//! variants, the DC-DTLZ variants with constraints on decision variables,
//! and analytic reference-front samplers.
//!
//! Every problem minimizes `m` objectives over `n = m + k − 1` variables in
//! `[0,1]`. The first `m−1` variables steer position along the front; the
//! remaining `k` variables control distance to it through a scalar `g`.
//! Constraints are reported in `c(x) ≥ 0` feasible form and converted to
//! violations by clamping.
//!
//! The DC-DTLZ constraint formulas below are reconstructions that match the
//! published geometry (position-variable bands, a thin feasible ribbon above
//! the front with oscillating violation underneath, and their combination);
//! the exact original formulas were not available. All constants are
//! configurable through the parameter map, as are the radii for higher
//! objective counts.

use std::collections::BTreeMap;
use std::f64::consts::PI;
use std::io::{BufRead, Write};

use crate::decomposition::simplex_lattice;
use crate::error::Error;
use crate::ranking::pareto_dominates;
use crate::solution::{Bounds, ConstraintReport, Solution};

/// Hard cap on the lattice used to oversample filtered reference fronts.
const FRONT_LATTICE_CAP: usize = 6_000_000;

/// The bundled benchmark problems.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, serde::Serialize, serde::Deserialize)]
pub enum ProblemKind {
    Dtlz1,
    Dtlz2,
    Dtlz3,
    Dtlz4,
    C1Dtlz1,
    C1Dtlz3,
    C2Dtlz2,
    C3Dtlz1,
    C3Dtlz4,
    Dc1Dtlz1,
    Dc1Dtlz3,
    Dc2Dtlz1,
    Dc2Dtlz3,
    Dc3Dtlz1,
    Dc3Dtlz3,
}

impl ProblemKind {
    pub fn all() -> &'static [ProblemKind] {
        use ProblemKind::*;
        &[
            Dtlz1, Dtlz2, Dtlz3, Dtlz4, C1Dtlz1, C1Dtlz3, C2Dtlz2, C3Dtlz1, C3Dtlz4,
            Dc1Dtlz1, Dc1Dtlz3, Dc2Dtlz1, Dc2Dtlz3, Dc3Dtlz1, Dc3Dtlz3,
        ]
    }

    pub fn name(&self) -> &'static str {
        use ProblemKind::*;
        match self {
            Dtlz1 => "DTLZ1",
            Dtlz2 => "DTLZ2",
            Dtlz3 => "DTLZ3",
            Dtlz4 => "DTLZ4",
            C1Dtlz1 => "C1-DTLZ1",
            C1Dtlz3 => "C1-DTLZ3",
            C2Dtlz2 => "C2-DTLZ2",
            C3Dtlz1 => "C3-DTLZ1",
            C3Dtlz4 => "C3-DTLZ4",
            Dc1Dtlz1 => "DC1-DTLZ1",
            Dc1Dtlz3 => "DC1-DTLZ3",
            Dc2Dtlz1 => "DC2-DTLZ1",
            Dc2Dtlz3 => "DC2-DTLZ3",
            Dc3Dtlz1 => "DC3-DTLZ1",
            Dc3Dtlz3 => "DC3-DTLZ3",
        }
    }

    /// Case-insensitive lookup; underscores and hyphens are interchangeable.
    pub fn parse(name: &str) -> Result<ProblemKind, Error> {
        let normalized = name.trim().to_ascii_lowercase().replace('_', "-");
        ProblemKind::all()
            .iter()
            .copied()
            .find(|k| k.name().to_ascii_lowercase() == normalized)
            .ok_or_else(|| {
                Error::UnsupportedProblem(format!(
                    "unknown problem {name:?}; expected one of {}",
                    ProblemKind::all()
                        .iter()
                        .map(|k| k.name())
                        .collect::<Vec<_>>()
                        .join(", ")
                ))
            })
    }

    /// Multimodal distance function (the rugged one) vs. the plain
    /// sum-of-squares.
    fn distance_function(&self) -> GKind {
        use ProblemKind::*;
        match self {
            Dtlz1 | Dtlz3 | C1Dtlz1 | C1Dtlz3 | C3Dtlz1 | Dc1Dtlz1 | Dc1Dtlz3 | Dc2Dtlz1
            | Dc2Dtlz3 | Dc3Dtlz1 | Dc3Dtlz3 => GKind::Multimodal,
            Dtlz2 | Dtlz4 | C2Dtlz2 | C3Dtlz4 => GKind::Quadratic,
        }
    }

    fn shape(&self) -> ShapeKind {
        use ProblemKind::*;
        match self {
            Dtlz1 | C1Dtlz1 | C3Dtlz1 | Dc1Dtlz1 | Dc2Dtlz1 | Dc3Dtlz1 => ShapeKind::Linear,
            Dtlz4 | C3Dtlz4 => ShapeKind::Biased,
            _ => ShapeKind::Concave,
        }
    }

    /// Convention default for the distance-variable count.
    fn default_k(&self) -> usize {
        match self.shape() {
            ShapeKind::Linear => 5,
            ShapeKind::Concave | ShapeKind::Biased => 10,
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
enum GKind {
    /// `100 (k + Σ((z−0.5)² − cos(20π(z−0.5))))`
    Multimodal,
    /// `Σ(z−0.5)²`
    Quadratic,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
enum ShapeKind {
    /// Simplex front `Σf = 0.5(1+g)`.
    Linear,
    /// Spherical front `Σf² = (1+g)²`.
    Concave,
    /// Spherical front with position variables raised to `alpha`.
    Biased,
}

/// An immutable benchmark instance: evaluation is pure and thread-safe.
#[derive(Debug, Clone)]
pub struct ProblemDefinition {
    kind: ProblemKind,
    m: usize,
    k: usize,
    bounds: Bounds,
    parameters: BTreeMap<String, f64>,
}

impl ProblemDefinition {
    /// Builds a problem with convention defaults: `k = 5` for linear-front
    /// problems, `k = 10` for spherical ones, plus per-problem constraint
    /// parameters (`r` for C1-DTLZ3 and C2-DTLZ2, `alpha` for the biased
    /// problems, `a`/`b` for DC1 and DC2 constraints, `a1`/`b1`/`a2`/`b2`
    /// for DC3's band and ribbon parts).
    pub fn new(kind: ProblemKind, m: usize) -> Result<Self, Error> {
        if !(2..=15).contains(&m) {
            return Err(Error::invalid_config(format!(
                "objective count {m} out of the supported range 2..=15"
            )));
        }
        let mut parameters = BTreeMap::new();
        let mut put = |key: &str, value: f64| parameters.insert(key.to_string(), value);
        match kind {
            ProblemKind::C1Dtlz3 => {
                // Radius of the infeasible ribbon's outer boundary; the
                // customary per-m schedule, overridable via "r".
                let r = match m {
                    2 => 6.0,
                    3 | 4 => 9.0,
                    5..=8 => 12.5,
                    _ => 15.0,
                };
                put("r", r);
            }
            ProblemKind::C2Dtlz2 => {
                put("r", 0.1);
            }
            ProblemKind::Dtlz4 | ProblemKind::C3Dtlz4 => {
                put("alpha", 100.0);
            }
            ProblemKind::Dc1Dtlz1 | ProblemKind::Dc1Dtlz3 => {
                put("a", 3.0);
                put("b", 0.5);
            }
            ProblemKind::Dc2Dtlz1 | ProblemKind::Dc2Dtlz3 => {
                put("a", 3.0);
                put("b", 0.9);
            }
            ProblemKind::Dc3Dtlz1 | ProblemKind::Dc3Dtlz3 => {
                put("a1", 3.0);
                put("b1", 0.5);
                put("a2", 3.0);
                put("b2", 0.9);
            }
            _ => {}
        }
        let k = kind.default_k();
        Ok(ProblemDefinition {
            kind,
            m,
            k,
            bounds: Bounds::unit(m - 1 + k)?,
            parameters,
        })
    }

    /// [`ProblemDefinition::new`] by registry name.
    pub fn by_name(name: &str, m: usize) -> Result<Self, Error> {
        ProblemDefinition::new(ProblemKind::parse(name)?, m)
    }

    /// Overrides the distance-variable count (`n = m − 1 + k`).
    pub fn with_k(mut self, k: usize) -> Result<Self, Error> {
        if k == 0 {
            return Err(Error::invalid_config("k must be at least 1"));
        }
        self.k = k;
        self.bounds = Bounds::unit(self.m - 1 + k)?;
        Ok(self)
    }

    /// Overrides a constraint parameter; the key must exist for this problem.
    pub fn with_parameter(mut self, key: &str, value: f64) -> Result<Self, Error> {
        if !value.is_finite() {
            return Err(Error::invalid_config(format!(
                "parameter {key:?} must be finite"
            )));
        }
        match self.parameters.get_mut(key) {
            Some(slot) => {
                *slot = value;
                Ok(self)
            }
            None => Err(Error::invalid_config(format!(
                "problem {} has no parameter {key:?}",
                self.kind.name()
            ))),
        }
    }

    pub fn kind(&self) -> ProblemKind {
        self.kind
    }

    pub fn name(&self) -> &'static str {
        self.kind.name()
    }

    pub fn m(&self) -> usize {
        self.m
    }

    /// Decision-vector length.
    pub fn n(&self) -> usize {
        self.m - 1 + self.k
    }

    pub fn k(&self) -> usize {
        self.k
    }

    pub fn bounds(&self) -> &Bounds {
        &self.bounds
    }

    pub fn parameters(&self) -> &BTreeMap<String, f64> {
        &self.parameters
    }

    fn param(&self, key: &str) -> f64 {
        self.parameters[key]
    }

    pub fn n_constraints(&self) -> usize {
        use ProblemKind::*;
        match self.kind {
            Dtlz1 | Dtlz2 | Dtlz3 | Dtlz4 => 0,
            C1Dtlz1 | C1Dtlz3 | C2Dtlz2 | Dc1Dtlz1 | Dc1Dtlz3 => 1,
            C3Dtlz1 | C3Dtlz4 => self.m,
            Dc2Dtlz1 | Dc2Dtlz3 => 2,
            Dc3Dtlz1 | Dc3Dtlz3 => (self.m - 1) + 2,
        }
    }

    /// The customary hypervolume reference point for this problem.
    pub fn hypervolume_reference(&self) -> Vec<f64> {
        let coord = if self.kind == ProblemKind::C3Dtlz4 { 2.1 } else { 1.1 };
        vec![coord; self.m]
    }

    /// Evaluates a decision vector into a [`Solution`]. Pure: the same `x`
    /// always produces the same objectives and violations.
    pub fn evaluate(&self, x: &[f64]) -> Result<Solution, Error> {
        if x.len() != self.n() {
            return Err(Error::invalid_input(format!(
                "{} expects {} variables, got {}",
                self.name(),
                self.n(),
                x.len()
            )));
        }
        if !self.bounds.contains(x) {
            return Err(Error::invalid_input(format!(
                "decision vector out of bounds for {}",
                self.name()
            )));
        }
        let (position, distance) = x.split_at(self.m - 1);
        let g = match self.kind.distance_function() {
            GKind::Multimodal => g_multimodal(distance),
            GKind::Quadratic => g_quadratic(distance),
        };
        let objectives = match self.kind.shape() {
            ShapeKind::Linear => linear_objectives(position, g),
            ShapeKind::Concave => concave_objectives(position, g, 1.0),
            ShapeKind::Biased => concave_objectives(position, g, self.param("alpha")),
        };
        let raw = self.constraint_values(position, &objectives, g);
        let report = if raw.is_empty() {
            ConstraintReport::unconstrained()
        } else {
            ConstraintReport::from_raw(&raw)?
        };
        Solution::new(x.to_vec(), objectives, report)
    }

    /// Raw constraint values in `c ≥ 0` feasible form.
    fn constraint_values(&self, position: &[f64], f: &[f64], g: f64) -> Vec<f64> {
        use ProblemKind::*;
        match self.kind {
            Dtlz1 | Dtlz2 | Dtlz3 | Dtlz4 => Vec::new(),
            C1Dtlz1 => vec![c1_dtlz1_constraint(f)],
            C1Dtlz3 => vec![c1_dtlz3_constraint(f, self.param("r"))],
            C2Dtlz2 => vec![c2_dtlz2_constraint(f, self.param("r"))],
            C3Dtlz1 => c3_dtlz1_constraints(f),
            C3Dtlz4 => c3_dtlz4_constraints(f),
            Dc1Dtlz1 | Dc1Dtlz3 => {
                vec![band_constraint(position[0], self.param("a"), self.param("b"))]
            }
            Dc2Dtlz1 | Dc2Dtlz3 => {
                ribbon_constraints(g, self.param("a"), self.param("b")).to_vec()
            }
            Dc3Dtlz1 | Dc3Dtlz3 => {
                let (a1, b1) = (self.param("a1"), self.param("b1"));
                let mut raw: Vec<f64> = position
                    .iter()
                    .map(|&xj| band_constraint(xj, a1, b1))
                    .collect();
                raw.extend(ribbon_constraints(g, self.param("a2"), self.param("b2")));
                raw
            }
        }
    }

    /// Samples at least `target` mutually non-dominated points from the true
    /// feasible Pareto front. Constraint-restricted fronts are produced by
    /// oversampling the baseline front and keeping feasible segments.
    pub fn sample_reference_front(&self, target: usize) -> Result<ReferenceFront, Error> {
        use ProblemKind::*;
        if target == 0 {
            return Err(Error::invalid_input("front sample target must be positive"));
        }
        let points = match self.kind {
            Dtlz1 | C1Dtlz1 | Dc2Dtlz1 => linear_front(self.m, target),
            Dtlz2 | Dtlz3 | Dtlz4 | C1Dtlz3 | Dc2Dtlz3 => sphere_front(self.m, target),
            C3Dtlz1 => simplex_points(self.m, target)
                .into_iter()
                .map(|w| {
                    let min = w.iter().cloned().fold(f64::INFINITY, f64::min);
                    w.into_iter().map(|v| v / (1.0 + min)).collect()
                })
                .collect(),
            C3Dtlz4 => sphere_front(self.m, target)
                .into_iter()
                .map(|u| {
                    let max_sq = u.iter().map(|v| v * v).fold(0.0f64, f64::max);
                    let scale = 1.0 / (1.0 - 0.75 * max_sq).sqrt();
                    u.into_iter().map(|v| v * scale).collect()
                })
                .collect(),
            C2Dtlz2 => {
                let r = self.param("r");
                filtered_front(self.m, target, sphere_front, |f| {
                    c2_dtlz2_constraint(f, r) >= 0.0
                })?
            }
            Dc1Dtlz1 => {
                let (a, b) = (self.param("a"), self.param("b"));
                filtered_front(self.m, target, linear_front, |f| {
                    band_constraint(1.0 - 2.0 * f[self.m - 1], a, b) >= 0.0
                })?
            }
            Dc1Dtlz3 => {
                let (a, b) = (self.param("a"), self.param("b"));
                filtered_front(self.m, target, sphere_front, |f| {
                    let x1 = concave_position_preimage(f)[0];
                    band_constraint(x1, a, b) >= 0.0
                })?
            }
            Dc3Dtlz1 => {
                let (a, b) = (self.param("a1"), self.param("b1"));
                filtered_front(self.m, target, linear_front, |f| {
                    linear_position_preimage(f)
                        .iter()
                        .all(|&xj| band_constraint(xj, a, b) >= 0.0)
                })?
            }
            Dc3Dtlz3 => {
                let (a, b) = (self.param("a1"), self.param("b1"));
                filtered_front(self.m, target, sphere_front, |f| {
                    concave_position_preimage(f)
                        .iter()
                        .all(|&xj| band_constraint(xj, a, b) >= 0.0)
                })?
            }
        };
        Ok(ReferenceFront { points })
    }
}

/// The rugged distance function shared by the DTLZ1/DTLZ3 families; zero
/// exactly when every distance variable sits at 0.5.
fn g_multimodal(distance: &[f64]) -> f64 {
    let k = distance.len() as f64;
    let sum: f64 = distance
        .iter()
        .map(|&z| {
            let d = z - 0.5;
            d * d - (20.0 * PI * d).cos()
        })
        .sum();
    100.0 * (k + sum)
}

/// The plain sum-of-squares distance function of DTLZ2/DTLZ4.
fn g_quadratic(distance: &[f64]) -> f64 {
    distance
        .iter()
        .map(|&z| {
            let d = z - 0.5;
            d * d
        })
        .sum()
}

/// DTLZ1 objectives: `f_i = 0.5 (1+g) x₁⋯x_{m−i} (1 − x_{m−i+1})`.
fn linear_objectives(position: &[f64], g: f64) -> Vec<f64> {
    let m = position.len() + 1;
    let mut f = vec![0.5 * (1.0 + g); m];
    for i in 0..m {
        for &xj in &position[..m - 1 - i] {
            f[i] *= xj;
        }
        if i > 0 {
            f[i] *= 1.0 - position[m - 1 - i];
        }
    }
    f
}

/// DTLZ2 objectives over half-cosine chains; `alpha` biases the position
/// variables (DTLZ4 uses 100).
fn concave_objectives(position: &[f64], g: f64, alpha: f64) -> Vec<f64> {
    let m = position.len() + 1;
    let theta: Vec<f64> = position.iter().map(|&x| x.powf(alpha) * PI / 2.0).collect();
    let mut f = vec![1.0 + g; m];
    for i in 0..m {
        for &t in &theta[..m - 1 - i] {
            f[i] *= t.cos();
        }
        if i > 0 {
            f[i] *= theta[m - 1 - i].sin();
        }
    }
    f
}

/// `c = 1 − f_m/0.6 − Σ_{i<m} f_i/0.5`: a narrow feasible wedge above the
/// linear front.
fn c1_dtlz1_constraint(f: &[f64]) -> f64 {
    let m = f.len();
    1.0 - f[m - 1] / 0.6 - f[..m - 1].iter().sum::<f64>() / 0.5
}

/// `c = (Σf² − 16)(Σf² − r²)`: feasible inside radius 4 and outside radius
/// `r`, with an infeasible spherical shell between.
fn c1_dtlz3_constraint(f: &[f64], r: f64) -> f64 {
    let sq: f64 = f.iter().map(|v| v * v).sum();
    (sq - 16.0) * (sq - r * r)
}

/// Feasible within distance `r` of one of the m axis points or the
/// equal-coordinate point `(1/√m, …)`: `c = −min` of the m+1 squared
/// distances minus `r²`.
fn c2_dtlz2_constraint(f: &[f64], r: f64) -> f64 {
    let m = f.len();
    let sq: f64 = f.iter().map(|v| v * v).sum();
    let mut min_term = f64::INFINITY;
    for i in 0..m {
        // ‖f − e_i‖² = Σf² − 2f_i + 1
        let term = sq - 2.0 * f[i] + 1.0 - r * r;
        min_term = min_term.min(term);
    }
    let inv = 1.0 / (m as f64).sqrt();
    let center: f64 = f.iter().map(|v| (v - inv) * (v - inv)).sum();
    min_term = min_term.min(center - r * r);
    -min_term
}

/// `c_j = Σ_{i≠j} f_i + f_j/0.5 − 1` for each j.
fn c3_dtlz1_constraints(f: &[f64]) -> Vec<f64> {
    let sum: f64 = f.iter().sum();
    f.iter().map(|&fj| sum + fj - 1.0).collect()
}

/// `c_j = f_j²/4 + Σ_{i≠j} f_i² − 1` for each j.
fn c3_dtlz4_constraints(f: &[f64]) -> Vec<f64> {
    let sq: f64 = f.iter().map(|v| v * v).sum();
    f.iter().map(|&fj| sq - fj * fj + fj * fj / 4.0 - 1.0).collect()
}

/// `c = cos(aπx) + b`: feasible bands in a single decision variable.
fn band_constraint(x: f64, a: f64, b: f64) -> f64 {
    (a * PI * x).cos() + b
}

/// The paired distance-function constraints: a cosine band in `g` whose
/// violation oscillates as solutions approach the front, and an exponential
/// ribbon `e^{−g} ≥ b` keeping only small `g` feasible.
fn ribbon_constraints(g: f64, a: f64, b: f64) -> [f64; 2] {
    [(a * PI * g).cos() + b, (-g).exp() - b]
}

/// Position preimage of a point on the linear front (`g = 0`):
/// `f_m = 0.5(1−x₁)`, then each previous objective peels one variable.
/// Vanishing products leave later variables free; they default to 0.
fn linear_position_preimage(f: &[f64]) -> Vec<f64> {
    let m = f.len();
    let mut x = vec![0.0; m - 1];
    let mut prod: f64 = 0.5;
    for j in 0..m - 1 {
        if prod.abs() < 1e-15 {
            break;
        }
        x[j] = (1.0 - f[m - 1 - j] / prod).clamp(0.0, 1.0);
        prod *= x[j];
    }
    x
}

/// Position preimage of a point on the unit-sphere front (`g = 0`) by
/// peeling the half-cosine chain from `f_m` backwards. Each angle comes from
/// `atan2(peeled objective, norm of the remaining prefix)`, which cancels
/// the shared cosine factors and stays well-conditioned at the axes; fully
/// free variables (prefix and tail both zero) default to 0.
fn concave_position_preimage(f: &[f64]) -> Vec<f64> {
    let m = f.len();
    let mut x = vec![0.0; m - 1];
    for j in 0..m - 1 {
        let tail = f[m - 1 - j];
        let head = f[..m - 1 - j].iter().map(|v| v * v).sum::<f64>().sqrt();
        x[j] = tail.atan2(head) * 2.0 / PI;
    }
    x
}

/// Smallest simplex lattice with at least `target` points.
fn simplex_points(m: usize, target: usize) -> Vec<Vec<f64>> {
    let mut h = 1;
    while crate::decomposition::binomial(h + m - 1, m - 1) < target {
        h += 1;
    }
    simplex_lattice(m, h)
}

fn linear_front(m: usize, target: usize) -> Vec<Vec<f64>> {
    simplex_points(m, target)
        .into_iter()
        .map(|w| w.into_iter().map(|v| 0.5 * v).collect())
        .collect()
}

fn sphere_front(m: usize, target: usize) -> Vec<Vec<f64>> {
    simplex_points(m, target)
        .into_iter()
        .map(|w| {
            let norm = w.iter().map(|v| v * v).sum::<f64>().sqrt();
            w.into_iter().map(|v| v / norm).collect()
        })
        .collect()
}

/// Oversamples `base` until at least `target` points survive `keep`.
fn filtered_front(
    m: usize,
    target: usize,
    base: fn(usize, usize) -> Vec<Vec<f64>>,
    keep: impl Fn(&[f64]) -> bool,
) -> Result<Vec<Vec<f64>>, Error> {
    let mut sample_size = target.max(16);
    loop {
        let mut points = base(m, sample_size);
        let generated = points.len();
        points.retain(|f| keep(f));
        if points.len() >= target {
            return Ok(points);
        }
        if generated > FRONT_LATTICE_CAP {
            return Err(Error::invalid_config(format!(
                "cannot retain {target} feasible front points within the \
                 {FRONT_LATTICE_CAP}-point sampling cap; lower the target"
            )));
        }
        sample_size = generated.saturating_mul(2).max(sample_size + 1);
    }
}

/// Points sampled from a problem's true feasible Pareto front.
#[derive(Debug, Clone, PartialEq)]
pub struct ReferenceFront {
    points: Vec<Vec<f64>>,
}

impl ReferenceFront {
    /// Wraps externally supplied points (e.g. read back from CSV).
    pub fn from_points(points: Vec<Vec<f64>>) -> Result<Self, Error> {
        let m = points
            .first()
            .ok_or_else(|| Error::invalid_input("reference front cannot be empty"))?
            .len();
        if points.iter().any(|p| p.len() != m || p.iter().any(|v| !v.is_finite())) {
            return Err(Error::invalid_input(
                "reference front rows must share one finite objective arity",
            ));
        }
        Ok(ReferenceFront { points })
    }

    pub fn points(&self) -> &[Vec<f64>] {
        &self.points
    }

    pub fn len(&self) -> usize {
        self.points.len()
    }

    pub fn is_empty(&self) -> bool {
        self.points.is_empty()
    }

    pub fn m(&self) -> usize {
        self.points[0].len()
    }

    /// CSV with an `f1..fm` header, one point per row, shortest round-trip
    /// float formatting (so write → read reproduces the set bit-for-bit).
    pub fn write_csv<W: Write>(&self, out: &mut W) -> std::io::Result<()> {
        let header: Vec<String> = (1..=self.m()).map(|j| format!("f{j}")).collect();
        writeln!(out, "{}", header.join(","))?;
        for p in &self.points {
            let row: Vec<String> = p.iter().map(|v| v.to_string()).collect();
            writeln!(out, "{}", row.join(","))?;
        }
        Ok(())
    }

    pub fn read_csv<R: BufRead>(input: R) -> Result<Self, Error> {
        let mut points = Vec::new();
        for (idx, line) in input.lines().enumerate() {
            let line = line?;
            let trimmed = line.trim();
            if trimmed.is_empty() {
                continue;
            }
            if idx == 0 && trimmed.starts_with('f') {
                continue; // header
            }
            let row: Result<Vec<f64>, _> = trimmed.split(',').map(|v| v.trim().parse()).collect();
            points.push(row.map_err(|e| {
                Error::Parse(format!("reference front row {}: {e}", idx + 1))
            })?);
        }
        ReferenceFront::from_points(points)
    }

    /// Checks mutual non-domination (quadratic; meant for tests and small
    /// fronts).
    pub fn is_mutually_nondominated(&self) -> bool {
        for (i, p) in self.points.iter().enumerate() {
            for q in &self.points[i + 1..] {
                if pareto_dominates(p, q) || pareto_dominates(q, p) {
                    return false;
                }
            }
        }
        true
    }
}
