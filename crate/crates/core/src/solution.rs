//! Core value types: solutions, constraint reports, archives, and box bounds.
//!
//! Everything here is an immutable-after-construction value object. Archive
//! updates copy solutions by value, so mutating an offspring can never alias
//! into an archive member.

use serde::{Deserialize, Serialize};

use crate::error::Error;

/// A decision vector: one real value per problem variable.
pub type DecisionVector = Vec<f64>;

/// An objective vector: one finite real per objective (minimization).
pub type ObjectiveVector = Vec<f64>;

/// Relaxation applied when a user-defined problem models an equality
/// constraint `h(x) = 0` as the inequality residual `ε − |h(x)| ≥ 0`.
///
/// None of the bundled benchmarks carry equality constraints, so this
/// default is only exercised by user-supplied problem definitions.
pub const DEFAULT_EQUALITY_RELAXATION: f64 = 1e-4;

/// Residual form of a relaxed equality constraint: `eps − |h|`.
///
/// Non-negative (feasible) iff `|h| ≤ eps`. Feed the result through
/// [`bracket`] (or [`ConstraintReport::from_raw`]) like any other
/// inequality residual.
pub fn equality_residual(h: f64, eps: f64) -> f64 {
    eps - h.abs()
}

/// The clamp operator ⟨α⟩ that turns a signed constraint residual into a
/// violation magnitude: `0` when `alpha ≥ 0`, `−alpha` otherwise.
pub fn bracket(alpha: f64) -> Result<f64, Error> {
    if !alpha.is_finite() {
        return Err(Error::invalid_input(format!(
            "bracket: non-finite residual {alpha}"
        )));
    }
    Ok(if alpha >= 0.0 { 0.0 } else { -alpha })
}

/// Sum of per-constraint violations (the aggregate constraint violation CV).
///
/// Every entry must already be a clamped, non-negative violation; the result
/// is zero exactly when all entries are zero.
pub fn aggregate_cv(violations: &[f64]) -> Result<f64, Error> {
    for &v in violations {
        if !v.is_finite() || v < 0.0 {
            return Err(Error::invalid_input(format!(
                "aggregate_cv: violations must be finite and non-negative, got {v}"
            )));
        }
    }
    Ok(violations.iter().sum())
}

/// Per-constraint violations of one solution plus their aggregate CV.
///
/// A solution is feasible iff its aggregate is exactly zero; evaluators clamp
/// residuals with [`bracket`], so feasible solutions produce an exact 0.0
/// rather than a tiny positive number.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct ConstraintReport {
    violations: Vec<f64>,
    aggregate: f64,
}

impl ConstraintReport {
    /// Builds a report from already-clamped violation magnitudes.
    pub fn new(violations: Vec<f64>) -> Result<Self, Error> {
        let aggregate = aggregate_cv(&violations)?;
        Ok(ConstraintReport {
            violations,
            aggregate,
        })
    }

    /// Builds a report from signed residuals (`c_j ≥ 0` means satisfied),
    /// clamping each through [`bracket`].
    pub fn from_raw(residuals: &[f64]) -> Result<Self, Error> {
        let violations = residuals
            .iter()
            .map(|&c| bracket(c))
            .collect::<Result<Vec<_>, _>>()?;
        Self::new(violations)
    }

    /// A report for an unconstrained problem: no entries, CV = 0.
    pub fn unconstrained() -> Self {
        ConstraintReport {
            violations: Vec::new(),
            aggregate: 0.0,
        }
    }

    pub fn violations(&self) -> &[f64] {
        &self.violations
    }

    /// Aggregate constraint violation (CV).
    pub fn aggregate(&self) -> f64 {
        self.aggregate
    }

    pub fn is_feasible(&self) -> bool {
        self.aggregate == 0.0
    }
}

/// One evaluated candidate: decision vector, objectives, constraint report.
#[derive(Debug, Clone, PartialEq)]
pub struct Solution {
    x: DecisionVector,
    objectives: ObjectiveVector,
    constraints: ConstraintReport,
}

impl Solution {
    /// Assembles an evaluated solution. Objectives must be non-empty and
    /// finite; the decision vector must be finite.
    pub fn new(
        x: DecisionVector,
        objectives: ObjectiveVector,
        constraints: ConstraintReport,
    ) -> Result<Self, Error> {
        if objectives.is_empty() {
            return Err(Error::invalid_input("solution: empty objective vector"));
        }
        if objectives.iter().any(|v| !v.is_finite()) {
            return Err(Error::invalid_input(
                "solution: non-finite objective value",
            ));
        }
        if x.iter().any(|v| !v.is_finite()) {
            return Err(Error::invalid_input("solution: non-finite decision value"));
        }
        Ok(Solution {
            x,
            objectives,
            constraints,
        })
    }

    pub fn x(&self) -> &[f64] {
        &self.x
    }

    pub fn objectives(&self) -> &[f64] {
        &self.objectives
    }

    pub fn constraints(&self) -> &ConstraintReport {
        &self.constraints
    }

    /// Aggregate constraint violation (CV); zero iff feasible.
    pub fn cv(&self) -> f64 {
        self.constraints.aggregate()
    }

    pub fn is_feasible(&self) -> bool {
        self.constraints.is_feasible()
    }
}

/// Fixed-capacity container for archive populations (CA, DA).
///
/// Both archives hold exactly `capacity` members after initialization and
/// after every generation; the update operations produce replacement member
/// lists of exactly that size. Pushing into a full archive is a contract
/// violation and reported as an error.
#[derive(Debug, Clone)]
pub struct Archive {
    members: Vec<Solution>,
    capacity: usize,
}

impl Archive {
    pub fn new(capacity: usize) -> Result<Self, Error> {
        if capacity == 0 {
            return Err(Error::invalid_config("archive capacity must be positive"));
        }
        Ok(Archive {
            members: Vec::with_capacity(capacity),
            capacity,
        })
    }

    /// Builds a full archive; `members.len()` must equal `capacity`.
    pub fn with_members(capacity: usize, members: Vec<Solution>) -> Result<Self, Error> {
        if members.len() != capacity {
            return Err(Error::invalid_input(format!(
                "archive: expected exactly {capacity} members, got {}",
                members.len()
            )));
        }
        Ok(Archive { members, capacity })
    }

    /// Adds a member while filling; errors once the archive is full.
    pub fn push(&mut self, solution: Solution) -> Result<(), Error> {
        if self.members.len() >= self.capacity {
            return Err(Error::invalid_input(
                "archive: push into a full archive without a removal decision",
            ));
        }
        self.members.push(solution);
        Ok(())
    }

    /// Swaps in a replacement member list of exactly `capacity` solutions.
    pub fn replace_members(&mut self, members: Vec<Solution>) -> Result<(), Error> {
        if members.len() != self.capacity {
            return Err(Error::invalid_input(format!(
                "archive: replacement must have exactly {} members, got {}",
                self.capacity,
                members.len()
            )));
        }
        self.members = members;
        Ok(())
    }

    pub fn members(&self) -> &[Solution] {
        &self.members
    }

    pub fn capacity(&self) -> usize {
        self.capacity
    }

    pub fn len(&self) -> usize {
        self.members.len()
    }

    pub fn is_empty(&self) -> bool {
        self.members.is_empty()
    }

    pub fn is_full(&self) -> bool {
        self.members.len() == self.capacity
    }

    pub fn iter(&self) -> std::slice::Iter<'_, Solution> {
        self.members.iter()
    }
}

/// Per-variable box bounds `[lowerᵢ, upperᵢ]`.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct Bounds {
    lower: Vec<f64>,
    upper: Vec<f64>,
}

impl Bounds {
    pub fn new(lower: Vec<f64>, upper: Vec<f64>) -> Result<Self, Error> {
        if lower.len() != upper.len() || lower.is_empty() {
            return Err(Error::invalid_input(
                "bounds: lower/upper must be non-empty and equal length",
            ));
        }
        for (l, u) in lower.iter().zip(&upper) {
            if !l.is_finite() || !u.is_finite() || l > u {
                return Err(Error::invalid_input(format!(
                    "bounds: require finite lower ≤ upper, got [{l}, {u}]"
                )));
            }
        }
        Ok(Bounds { lower, upper })
    }

    /// The unit box `[0,1]ⁿ`.
    pub fn unit(n: usize) -> Result<Self, Error> {
        Self::new(vec![0.0; n], vec![1.0; n])
    }

    pub fn len(&self) -> usize {
        self.lower.len()
    }

    pub fn is_empty(&self) -> bool {
        self.lower.is_empty()
    }

    pub fn lower(&self) -> &[f64] {
        &self.lower
    }

    pub fn upper(&self) -> &[f64] {
        &self.upper
    }

    pub fn contains(&self, x: &[f64]) -> bool {
        x.len() == self.len()
            && x.iter()
                .zip(self.lower.iter().zip(&self.upper))
                .all(|(v, (l, u))| v.is_finite() && *l <= *v && *v <= *u)
    }

    /// Clamps the `i`-th coordinate into its interval.
    pub fn clamp(&self, i: usize, value: f64) -> f64 {
        value.clamp(self.lower[i], self.upper[i])
    }

    /// Samples a uniform point, drawing one uniform per variable in index
    /// order from the given source.
    pub fn sample_uniform(&self, rng: &mut crate::random::RandomSource) -> DecisionVector {
        self.lower
            .iter()
            .zip(&self.upper)
            .map(|(l, u)| l + (u - l) * rng.next_f64())
            .collect()
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::random::RandomSource;
    use proptest::prelude::*;

    #[test]
    fn bracket_clamps_to_violation_magnitude() {
        assert_eq!(bracket(1.0).unwrap(), 0.0);
        assert_eq!(bracket(0.0).unwrap(), 0.0);
        assert_eq!(bracket(-0.5).unwrap(), 0.5);
    }

    #[test]
    fn bracket_rejects_non_finite() {
        assert!(bracket(f64::NAN).is_err());
        assert!(bracket(f64::INFINITY).is_err());
    }

    #[test]
    fn aggregate_cv_sums_violations() {
        assert_eq!(aggregate_cv(&[0.0, 0.0, 0.0]).unwrap(), 0.0);
        assert_eq!(aggregate_cv(&[0.5]).unwrap(), 0.5);
        assert!((aggregate_cv(&[0.5, 1.25, 0.0]).unwrap() - 1.75).abs() < 1e-15);
    }

    #[test]
    fn aggregate_cv_rejects_bad_entries() {
        assert!(aggregate_cv(&[-0.1]).is_err());
        assert!(aggregate_cv(&[f64::NAN]).is_err());
    }

    proptest! {
        #[test]
        fn aggregate_cv_permutation_invariant(mut vs in proptest::collection::vec(0.0..10.0f64, 1..20)) {
            let a = aggregate_cv(&vs).unwrap();
            vs.reverse();
            let b = aggregate_cv(&vs).unwrap();
            prop_assert!((a - b).abs() <= 1e-9);
        }

        #[test]
        fn aggregate_cv_monotone(vs in proptest::collection::vec(0.0..10.0f64, 1..20), idx in 0usize..20, bump in 0.0..5.0f64) {
            let idx = idx % vs.len();
            let base = aggregate_cv(&vs).unwrap();
            let mut bumped = vs.clone();
            bumped[idx] += bump;
            prop_assert!(aggregate_cv(&bumped).unwrap() >= base);
        }

        #[test]
        fn bracket_never_negative(alpha in -1e6..1e6f64) {
            let v = bracket(alpha).unwrap();
            prop_assert!(v >= 0.0);
            prop_assert_eq!(v == 0.0, alpha >= 0.0);
        }
    }

    #[test]
    fn constraint_report_aggregate_matches_sum() {
        let report = ConstraintReport::new(vec![0.25, 0.0, 1.0]).unwrap();
        let direct: f64 = report.violations().iter().sum();
        assert!((report.aggregate() - direct).abs() <= 1e-12);
        assert!(!report.is_feasible());
        assert!(ConstraintReport::new(vec![0.0, 0.0]).unwrap().is_feasible());
    }

    #[test]
    fn constraint_report_from_raw_clamps() {
        let report = ConstraintReport::from_raw(&[0.4, -0.4, 0.0]).unwrap();
        assert_eq!(report.violations(), &[0.0, 0.4, 0.0]);
        assert_eq!(report.aggregate(), 0.4);
    }

    #[test]
    fn equality_residual_feasible_within_relaxation() {
        assert!(equality_residual(5e-5, DEFAULT_EQUALITY_RELAXATION) >= 0.0);
        assert!(equality_residual(2e-4, DEFAULT_EQUALITY_RELAXATION) < 0.0);
    }

    fn dummy_solution(v: f64) -> Solution {
        Solution::new(vec![v], vec![v, 1.0 - v], ConstraintReport::unconstrained()).unwrap()
    }

    #[test]
    fn solution_rejects_non_finite_values() {
        assert!(Solution::new(vec![0.1], vec![f64::NAN], ConstraintReport::unconstrained()).is_err());
        assert!(Solution::new(vec![f64::INFINITY], vec![0.0], ConstraintReport::unconstrained()).is_err());
        assert!(Solution::new(vec![0.1], vec![], ConstraintReport::unconstrained()).is_err());
    }

    #[test]
    fn archive_push_rejects_overfill() {
        let mut archive = Archive::new(2).unwrap();
        archive.push(dummy_solution(0.1)).unwrap();
        archive.push(dummy_solution(0.2)).unwrap();
        assert!(archive.is_full());
        assert!(archive.push(dummy_solution(0.3)).is_err());
    }

    #[test]
    fn archive_replacement_must_match_capacity() {
        let mut archive = Archive::new(2).unwrap();
        assert!(archive
            .replace_members(vec![dummy_solution(0.5)])
            .is_err());
        assert!(archive
            .replace_members(vec![dummy_solution(0.1), dummy_solution(0.9)])
            .is_ok());
        assert_eq!(archive.len(), 2);
    }

    #[test]
    fn bounds_contains_and_clamp() {
        let bounds = Bounds::new(vec![0.0, -1.0], vec![1.0, 1.0]).unwrap();
        assert!(bounds.contains(&[0.5, 0.0]));
        assert!(!bounds.contains(&[1.5, 0.0]));
        assert!(!bounds.contains(&[0.5]));
        assert_eq!(bounds.clamp(0, 2.0), 1.0);
        assert_eq!(bounds.clamp(1, -3.0), -1.0);
        assert!(Bounds::new(vec![1.0], vec![0.0]).is_err());
    }

    #[test]
    fn bounds_sampling_stays_inside() {
        let bounds = Bounds::new(vec![-2.0, 0.0, 5.0], vec![-1.0, 0.0, 6.0]).unwrap();
        let mut rng = RandomSource::from_seed(7);
        for _ in 0..200 {
            let x = bounds.sample_uniform(&mut rng);
            assert!(bounds.contains(&x));
        }
    }
}
