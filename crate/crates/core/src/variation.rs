//! Variation operators: simulated binary crossover and polynomial mutation.
//!
//! Both operators consume randomness in a pinned order (documented on each
//! function) so that runs are reproducible draw-for-draw across platforms.

use crate::error::Error;
use crate::random::RandomSource;
use crate::solution::Bounds;

/// Parents closer than this per variable are copied through unchanged
/// instead of being recombined, which keeps the spread factor finite.
const SBX_PARENT_EPSILON: f64 = 1e-14;

/// Simulated binary crossover settings.
#[derive(Debug, Clone, Copy, PartialEq, serde::Serialize, serde::Deserialize)]
pub struct SbxParams {
    /// Probability the pair is crossed at all; 0 never crosses, 1 always.
    pub crossover_probability: f64,
    /// Distribution index η_c; larger values keep children near parents.
    pub distribution_index: f64,
}

impl Default for SbxParams {
    fn default() -> Self {
        SbxParams {
            crossover_probability: 1.0,
            distribution_index: 30.0,
        }
    }
}

/// Polynomial mutation settings.
#[derive(Debug, Clone, Copy, PartialEq, serde::Serialize, serde::Deserialize)]
pub struct MutationParams {
    /// Per-variable mutation probability.
    pub probability: f64,
    /// Distribution index η_m; larger values make smaller moves.
    pub distribution_index: f64,
}

impl MutationParams {
    /// The usual default: expected one mutated variable per solution.
    pub fn default_for(n_vars: usize) -> Self {
        MutationParams {
            probability: 1.0 / n_vars.max(1) as f64,
            distribution_index: 20.0,
        }
    }
}

/// Simulated binary crossover producing two children clamped to `bounds`.
///
/// Draw order: one gate draw for the whole pair (strict `<` against the
/// crossover probability; on failure the parents are copied through). Then
/// per variable, in index order: a 0.5 gate draw; if the gate passes and the
/// parent values differ by more than 1e-14, one draw shapes the spread
/// factor β and one 0.5 draw decides whether the two child values swap.
/// β = (2u)^(1/(η_c+1)) for u ≤ 0.5, (1/(2(1−u)))^(1/(η_c+1)) otherwise,
/// giving children 0.5((1±β)p₁ + (1∓β)p₂). Pre-clamp, each variable's child
/// pair preserves the parent pair's mean.
pub fn sbx(
    p1: &[f64],
    p2: &[f64],
    bounds: &Bounds,
    params: &SbxParams,
    rng: &mut RandomSource,
) -> Result<(Vec<f64>, Vec<f64>), Error> {
    if p1.len() != p2.len() || p1.len() != bounds.len() {
        return Err(Error::invalid_input(format!(
            "sbx arity mismatch: parents {} and {}, bounds {}",
            p1.len(),
            p2.len(),
            bounds.len()
        )));
    }
    let mut c1 = p1.to_vec();
    let mut c2 = p2.to_vec();
    if !rng.flip(params.crossover_probability) {
        return Ok((c1, c2));
    }
    let exponent = 1.0 / (params.distribution_index + 1.0);
    for i in 0..p1.len() {
        if !rng.flip(0.5) {
            continue;
        }
        if (p1[i] - p2[i]).abs() <= SBX_PARENT_EPSILON {
            continue;
        }
        let u = rng.next_f64();
        let beta = if u <= 0.5 {
            (2.0 * u).powf(exponent)
        } else {
            (1.0 / (2.0 * (1.0 - u))).powf(exponent)
        };
        let mut v1 = 0.5 * ((1.0 + beta) * p1[i] + (1.0 - beta) * p2[i]);
        let mut v2 = 0.5 * ((1.0 - beta) * p1[i] + (1.0 + beta) * p2[i]);
        if rng.flip(0.5) {
            std::mem::swap(&mut v1, &mut v2);
        }
        c1[i] = bounds.clamp(i, v1);
        c2[i] = bounds.clamp(i, v2);
    }
    Ok((c1, c2))
}

/// Bounded polynomial mutation, in place.
///
/// Draw order, per variable in index order: one gate draw (strict `<`
/// against the mutation probability); if it passes, one draw shapes the
/// move. With δ₁ = (y−l)/(u−l), δ₂ = (u−y)/(u−l) and p = 1/(η_m+1), a draw
/// r ≤ 0.5 moves down by
/// δ_q = (2r + (1−2r)(1−δ₁)^(η_m+1))^p − 1 and r > 0.5 moves up by
/// δ_q = 1 − (2(1−r) + (2r−1)(1−δ₂)^(η_m+1))^p, each scaled by the variable
/// range and clamped. Degenerate ranges (l = u) leave the variable alone.
pub fn polynomial_mutation(
    x: &mut [f64],
    bounds: &Bounds,
    params: &MutationParams,
    rng: &mut RandomSource,
) -> Result<(), Error> {
    if x.len() != bounds.len() {
        return Err(Error::invalid_input(format!(
            "mutation arity mismatch: solution {}, bounds {}",
            x.len(),
            bounds.len()
        )));
    }
    let eta = params.distribution_index;
    let mut_pow = 1.0 / (eta + 1.0);
    for i in 0..x.len() {
        if !rng.flip(params.probability) {
            continue;
        }
        let (yl, yu) = (bounds.lower()[i], bounds.upper()[i]);
        let range = yu - yl;
        if range <= 0.0 {
            continue;
        }
        let y = x[i];
        let r = rng.next_f64();
        let delta_q = if r <= 0.5 {
            let delta1 = (y - yl) / range;
            let val = 2.0 * r + (1.0 - 2.0 * r) * (1.0 - delta1).powf(eta + 1.0);
            val.powf(mut_pow) - 1.0
        } else {
            let delta2 = (yu - y) / range;
            let val = 2.0 * (1.0 - r) + (2.0 * r - 1.0) * (1.0 - delta2).powf(eta + 1.0);
            1.0 - val.powf(mut_pow)
        };
        x[i] = bounds.clamp(i, y + delta_q * range);
    }
    Ok(())
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    #[test]
    fn sbx_zero_probability_copies_parents() {
        let bounds = Bounds::unit(3).unwrap();
        let p1 = vec![0.1, 0.5, 0.9];
        let p2 = vec![0.8, 0.2, 0.4];
        let mut rng = RandomSource::from_seed(7);
        let params = SbxParams {
            crossover_probability: 0.0,
            ..SbxParams::default()
        };
        let (c1, c2) = sbx(&p1, &p2, &bounds, &params, &mut rng).unwrap();
        assert_eq!(c1, p1);
        assert_eq!(c2, p2);
    }

    #[test]
    fn sbx_identical_parents_yield_identical_children() {
        let bounds = Bounds::unit(4).unwrap();
        let p = vec![0.3, 0.3, 0.9, 0.0];
        let mut rng = RandomSource::from_seed(11);
        let (c1, c2) = sbx(&p, &p, &bounds, &SbxParams::default(), &mut rng).unwrap();
        assert_eq!(c1, p);
        assert_eq!(c2, p);
    }

    #[test]
    fn sbx_rejects_arity_mismatch() {
        let bounds = Bounds::unit(2).unwrap();
        let mut rng = RandomSource::from_seed(1);
        assert!(sbx(&[0.1], &[0.2, 0.3], &bounds, &SbxParams::default(), &mut rng).is_err());
        assert!(sbx(&[0.1, 0.2, 0.3], &[0.2, 0.3, 0.4], &bounds, &SbxParams::default(), &mut rng)
            .is_err());
    }

    #[test]
    fn sbx_is_deterministic_per_seed() {
        let bounds = Bounds::unit(5).unwrap();
        let p1 = vec![0.1, 0.2, 0.3, 0.4, 0.5];
        let p2 = vec![0.9, 0.8, 0.7, 0.6, 0.5];
        let run = |seed| {
            let mut rng = RandomSource::from_seed(seed);
            sbx(&p1, &p2, &bounds, &SbxParams::default(), &mut rng).unwrap()
        };
        assert_eq!(run(42), run(42));
        assert_ne!(run(42), run(43));
    }

    proptest! {
        #[test]
        fn sbx_children_stay_in_bounds(
            p1 in proptest::collection::vec(0.0..1.0f64, 6),
            p2 in proptest::collection::vec(0.0..1.0f64, 6),
            seed in 0u64..500,
        ) {
            let bounds = Bounds::unit(6).unwrap();
            let mut rng = RandomSource::from_seed(seed);
            let params = SbxParams { distribution_index: 2.0, ..SbxParams::default() };
            let (c1, c2) = sbx(&p1, &p2, &bounds, &params, &mut rng).unwrap();
            prop_assert!(bounds.contains(&c1));
            prop_assert!(bounds.contains(&c2));
        }

        #[test]
        fn sbx_preserves_parent_mean_without_clamping(
            p1 in proptest::collection::vec(0.2..0.8f64, 6),
            p2 in proptest::collection::vec(0.2..0.8f64, 6),
            seed in 0u64..500,
        ) {
            // Wide bounds so no clamping interferes with the mean identity.
            let bounds = Bounds::new(vec![-1e9; 6], vec![1e9; 6]).unwrap();
            let mut rng = RandomSource::from_seed(seed);
            let (c1, c2) = sbx(&p1, &p2, &bounds, &SbxParams::default(), &mut rng).unwrap();
            for i in 0..6 {
                prop_assert!(((c1[i] + c2[i]) - (p1[i] + p2[i])).abs() <= 1e-9);
            }
        }

        #[test]
        fn mutation_keeps_solutions_in_bounds(
            x in proptest::collection::vec(0.0..1.0f64, 7),
            seed in 0u64..500,
        ) {
            let bounds = Bounds::unit(7).unwrap();
            let mut y = x.clone();
            let mut rng = RandomSource::from_seed(seed);
            let params = MutationParams { probability: 1.0, distribution_index: 20.0 };
            polynomial_mutation(&mut y, &bounds, &params, &mut rng).unwrap();
            prop_assert!(bounds.contains(&y));
        }
    }

    #[test]
    fn mutation_zero_probability_is_identity() {
        let bounds = Bounds::unit(3).unwrap();
        let mut x = vec![0.25, 0.5, 0.75];
        let orig = x.clone();
        let mut rng = RandomSource::from_seed(3);
        let params = MutationParams {
            probability: 0.0,
            distribution_index: 20.0,
        };
        polynomial_mutation(&mut x, &bounds, &params, &mut rng).unwrap();
        assert_eq!(x, orig);
    }

    #[test]
    fn mutation_leaves_degenerate_ranges_alone() {
        let bounds = Bounds::new(vec![0.4, 0.0], vec![0.4, 1.0]).unwrap();
        let mut x = vec![0.4, 0.5];
        let mut rng = RandomSource::from_seed(9);
        let params = MutationParams {
            probability: 1.0,
            distribution_index: 20.0,
        };
        polynomial_mutation(&mut x, &bounds, &params, &mut rng).unwrap();
        assert_eq!(x[0], 0.4);
        assert!((0.0..=1.0).contains(&x[1]));
    }

    #[test]
    fn mutation_is_deterministic_per_seed() {
        let bounds = Bounds::unit(5).unwrap();
        let start = vec![0.5; 5];
        let run = |seed| {
            let mut x = start.clone();
            let mut rng = RandomSource::from_seed(seed);
            let params = MutationParams {
                probability: 1.0,
                distribution_index: 20.0,
            };
            polynomial_mutation(&mut x, &bounds, &params, &mut rng).unwrap();
            x
        };
        assert_eq!(run(42), run(42));
        assert_ne!(run(42), run(43));
    }

    #[test]
    fn mutation_rejects_arity_mismatch() {
        let bounds = Bounds::unit(2).unwrap();
        let mut x = vec![0.1, 0.2, 0.3];
        let mut rng = RandomSource::from_seed(1);
        let params = MutationParams::default_for(3);
        assert!(polynomial_mutation(&mut x, &bounds, &params, &mut rng).is_err());
    }
}
