//! Constrained multi-objective evolutionary optimization built around the
//! two-archive algorithm C-TAEA.
//!
//! The crate bundles everything needed to run and evaluate the algorithm at
//! desk scale:
//!
//! * [`solution`] — decision/objective vectors, constraint reports, archives,
//!   and the seeded random source every stochastic component draws from.
//! * [`problems`] — the DTLZ baselines plus their constrained variants
//!   (C1/C2/C3 and the DC1/DC2/DC3 reconstructions), with analytic
//!   reference-front samplers and CSV import/export.
//! * [`decomposition`] — simplex-lattice weight vectors, objective
//!   normalization, subregion association, and the Tchebycheff scalarizer.
//! * [`ranking`] — Pareto and constrained dominance plus fast non-dominated
//!   sorting.
//! * [`variation`] — simulated binary crossover and polynomial mutation.
//! * [`ctaea`] — the optimizer itself: convergence-archive and
//!   diversity-archive updates, restricted mating, and the generational loop.
//! * [`baseline`] — a feasibility-driven NSGA-II-style reference optimizer
//!   used as the contrast algorithm.
//! * [`metrics`] — IGD, hypervolume (exact and Monte-Carlo), the Wilcoxon
//!   rank-sum test, and median/IQR summaries.
//! * [`record`] — the deterministic per-run record (trace + final archives)
//!   shared by both optimizers and the benchmark harness.
//!
//! Runs are reproducible: a run is a pure function of (problem, config,
//! seed), and every stochastic choice draws from one seeded generator in a
//! documented order.

pub mod baseline;
pub mod ctaea;
pub mod decomposition;
pub mod error;
pub mod metrics;
pub mod problems;
pub mod random;
pub mod record;
pub mod ranking;
pub mod solution;
pub mod variation;

pub use error::Error;
pub use random::RandomSource;
pub use solution::{Archive, Bounds, ConstraintReport, Solution};
