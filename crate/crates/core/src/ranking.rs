//! Dominance relations and fast non-dominated sorting.
//!
//! Three relations matter here: plain Pareto dominance on objective vectors,
//! the constrained-dominance principle used by the feasibility-driven
//! baseline, and Pareto dominance on two-dimensional views (constraint
//! violation paired with a scalarized objective) used when an archive update
//! must trade feasibility against convergence.

use crate::decomposition::tchebycheff;
use crate::error::Error;
use crate::solution::Solution;

/// Pareto dominance for minimization: `a` dominates `b` when `a` is no worse
/// in every objective and strictly better in at least one.
pub fn dominates(a: &[f64], b: &[f64]) -> Result<bool, Error> {
    if a.len() != b.len() {
        return Err(Error::invalid_input(format!(
            "dominance requires equal lengths, got {} and {}",
            a.len(),
            b.len()
        )));
    }
    Ok(pareto_dominates(a, b))
}

/// Length-unchecked Pareto dominance; callers guarantee matching arity.
pub(crate) fn pareto_dominates(a: &[f64], b: &[f64]) -> bool {
    debug_assert_eq!(a.len(), b.len());
    let mut strictly_better = false;
    for (x, y) in a.iter().zip(b) {
        if x > y {
            return false;
        }
        if x < y {
            strictly_better = true;
        }
    }
    strictly_better
}

/// Constrained dominance: a feasible solution beats any infeasible one; two
/// infeasible solutions compare by constraint violation (strictly smaller
/// wins, equal violations are incomparable); two feasible solutions compare
/// by Pareto dominance on objectives.
pub fn constrained_dominates(a: &Solution, b: &Solution) -> bool {
    match (a.is_feasible(), b.is_feasible()) {
        (true, true) => pareto_dominates(a.objectives(), b.objectives()),
        (true, false) => true,
        (false, true) => false,
        (false, false) => a.cv() < b.cv(),
    }
}

/// The two-dimensional minimization view `(CV, g^tch)` of a solution:
/// aggregate constraint violation paired with the Tchebycheff value of its
/// raw objectives against weight `w` and the ideal point.
pub fn biobjective_view(s: &Solution, w: &[f64], ideal: &[f64]) -> [f64; 2] {
    [s.cv(), tchebycheff(s.objectives(), w, ideal)]
}

/// Fast non-dominated sort under an arbitrary strict dominance relation.
/// Returns index levels: level 0 holds the indices no item dominates, level
/// k the indices dominated only by earlier levels. Indices within each level
/// keep input order. Empty input yields no levels.
pub fn fast_nondominated_sort_by<T>(
    items: &[T],
    dominates: impl Fn(&T, &T) -> bool,
) -> Vec<Vec<usize>> {
    let n = items.len();
    if n == 0 {
        return Vec::new();
    }
    let mut dominated: Vec<Vec<usize>> = vec![Vec::new(); n];
    let mut dominator_count = vec![0usize; n];
    for i in 0..n {
        for j in (i + 1)..n {
            if dominates(&items[i], &items[j]) {
                dominated[i].push(j);
                dominator_count[j] += 1;
            } else if dominates(&items[j], &items[i]) {
                dominated[j].push(i);
                dominator_count[i] += 1;
            }
        }
    }
    let mut levels = Vec::new();
    let mut current: Vec<usize> = (0..n).filter(|&i| dominator_count[i] == 0).collect();
    while !current.is_empty() {
        let mut next = Vec::new();
        for &i in &current {
            for &j in &dominated[i] {
                dominator_count[j] -= 1;
                if dominator_count[j] == 0 {
                    next.push(j);
                }
            }
        }
        next.sort_unstable();
        levels.push(std::mem::take(&mut current));
        current = next;
    }
    levels
}

/// Which relation [`fast_nondominated_sort`] ranks solutions under.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum DominanceRelation {
    /// Pareto dominance on objective vectors, ignoring constraints.
    Objectives,
    /// The constrained-dominance principle ([`constrained_dominates`]).
    Constrained,
}

/// Fast non-dominated sort of solutions under the selected relation. For
/// ranking two-dimensional views, pass them to
/// [`fast_nondominated_sort_points`] instead.
pub fn fast_nondominated_sort(
    solutions: &[Solution],
    relation: DominanceRelation,
) -> Vec<Vec<usize>> {
    match relation {
        DominanceRelation::Objectives => {
            fast_nondominated_sort_by(solutions, |a, b| pareto_dominates(a.objectives(), b.objectives()))
        }
        DominanceRelation::Constrained => {
            fast_nondominated_sort_by(solutions, |a, b| constrained_dominates(a, b))
        }
    }
}

/// Fast non-dominated sort of plain vectors under Pareto dominance. All
/// vectors must share one length.
pub fn fast_nondominated_sort_points<P: AsRef<[f64]>>(points: &[P]) -> Vec<Vec<usize>> {
    fast_nondominated_sort_by(points, |a, b| pareto_dominates(a.as_ref(), b.as_ref()))
}
