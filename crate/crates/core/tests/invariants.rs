//! Cross-module invariants: Monte Carlo routes against deterministic
//! oracles, and couplings that tie the sampler, the estimators and the
//! closed-form constants together.

use rayon::prelude::*;

use sfperc_core::estimators::conditional_degree_quadrature;
use sfperc_core::graph::degree::{origin_degree_with_ball, truncation_bound, OriginBall};
use sfperc_core::graph::generate_graph;
use sfperc_core::graph::paths::{bfs_distances, UNREACHABLE};
use sfperc_core::lattice::{Boundary, LatticeBox, PointIndex};
use sfperc_core::model::{xi_constant, ModelParams, WeightDistribution};
use sfperc_core::quad::integrate;
use sfperc_core::rng;

fn pareto(tau: f64) -> WeightDistribution {
    WeightDistribution::pareto(tau, 1.0).unwrap()
}

#[test]
fn origin_degree_mean_matches_quadrature_averaged_over_weight_law() {
    // Pareto(3), d=1, alpha=2, lambda=1, R=1000, 1e4 samples: the Monte
    // Carlo mean must match E_{W_0}[ E[D^{(R)} | W_0] ], where the inner
    // expectation is the deterministic quadrature oracle and the outer one
    // is integrated over the weight quantile.
    let params = ModelParams::new(1, 2.0, 1.0, pareto(3.0)).unwrap();
    let radius = 1000.0;

    let oracle = integrate(
        |u| {
            let w0 = params.weights.quantile_from_uniform(u);
            conditional_degree_quadrature(&params, w0, radius).unwrap()
        },
        0.0,
        1.0,
        1e-6,
        1e-12,
    )
    .unwrap()
    .value;

    let trials = 10_000u64;
    let ball = OriginBall::new(1, radius, 2.0);
    let degrees: Vec<u64> = (0..trials)
        .into_par_iter()
        .map(|t| origin_degree_with_ball(&params, &ball, rng::trial_seed(77, t), None).1)
        .collect();
    let n = trials as f64;
    let mean = degrees.iter().map(|&d| d as f64).sum::<f64>() / n;
    let var = degrees
        .iter()
        .map(|&d| (d as f64 - mean) * (d as f64 - mean))
        .sum::<f64>()
        / (n - 1.0);
    let stderr = (var / n).sqrt();
    assert!(
        (mean - oracle).abs() <= 3.0 * stderr,
        "MC mean {mean:.4} vs quadrature oracle {oracle:.4} +- {:.4}",
        3.0 * stderr
    );
    // Truncation residual: the bound dominates what the ball misses.
    let full_estimate = oracle + truncation_bound(&params, 2.0, radius).unwrap();
    assert!(full_estimate.is_finite());
}

#[test]
fn xi_finite_exactly_when_gamma_above_one() {
    for d in [1u32, 2] {
        for alpha in [1.5, 2.0, 3.0] {
            if alpha <= d as f64 {
                continue;
            }
            for tau in [1.2, 1.5, 2.0, 3.0] {
                let params = ModelParams::new(d, alpha, 1.0, pareto(tau)).unwrap();
                let gamma = params.gamma_exponent();
                let xi = xi_constant(&params);
                assert_eq!(
                    xi.is_ok(),
                    gamma > 1.0,
                    "d={d} alpha={alpha} tau={tau}: gamma={gamma}, xi={xi:?}"
                );
                // Matching moment finiteness: E[W^{d/alpha}] < inf iff
                // d/alpha < tau - 1 iff gamma > 1.
                let moment = params.weights.moment(d as f64 / alpha).unwrap();
                assert_eq!(moment.is_finite(), gamma > 1.0);
            }
        }
    }
}

#[test]
fn one_dimensional_short_range_never_percolates() {
    // d=1, alpha=3, gamma = 9 > 2: lambda_c is infinite, so the largest
    // component fraction must shrink with the volume at any fixed lambda
    // (below the chain-saturation scale where whole finite boxes connect).
    let w = pareto(4.0).with_normalized_mean().unwrap();
    let template = ModelParams::new(1, 3.0, 1.0, w).unwrap();
    let lambdas = [1.0, 4.0];
    let mean_for = |side: u32| -> Vec<f64> {
        let per_trial: Vec<Vec<f64>> = (0..30u64)
            .into_par_iter()
            .map(|trial| {
                let geometry = LatticeBox::new(1, side, Boundary::Torus).unwrap();
                sfperc_core::estimators::coupled_trial_fractions(
                    &template,
                    &geometry,
                    &lambdas,
                    rng::trial_seed(99, trial),
                )
                .unwrap()
            })
            .collect();
        (0..lambdas.len())
            .map(|li| per_trial.iter().map(|f| f[li]).sum::<f64>() / per_trial.len() as f64)
            .collect()
    };
    let small = mean_for(1000);
    let large = mean_for(10_000);
    for (li, &lambda) in lambdas.iter().enumerate() {
        assert!(
            large[li] < small[li],
            "lambda {lambda}: fraction grew with volume ({} -> {})",
            small[li],
            large[li]
        );
    }
    assert!(
        large[0] < 0.05,
        "lambda 1: fraction {} at L = 1e4 not below 0.05",
        large[0]
    );
}

#[test]
fn crossings_respect_the_subcritical_bound() {
    // d=2, constant weights, alpha=4: every per-side crossing of the 0.5
    // threshold sits above the lambda_c lower bound.
    let template = ModelParams::new(2, 4.0, 1.0, WeightDistribution::constant(1.0).unwrap())
        .unwrap();
    let bound = sfperc_core::model::lambda_c_lower_bound(&template, 1e-6).unwrap();
    let result = sfperc_core::estimators::percolation_curve(
        &template,
        Boundary::Torus,
        &[32, 64],
        &[0.15, 0.25, 0.4, 0.65, 1.0],
        30,
        7,
    )
    .unwrap();
    let crossing = sfperc_core::estimators::crossing_lambda_estimate(&result.curve, 0.5).unwrap();
    assert_eq!(crossing.per_side.len(), 2);
    for side in &crossing.per_side {
        // Propagated uncertainty of the interpolation is far below the
        // margin here; 3x the largest row stderr is a generous allowance.
        let max_stderr = result
            .curve
            .rows
            .iter()
            .filter(|r| r.side == side.side)
            .map(|r| r.stderr)
            .fold(0.0, f64::max);
        assert!(
            side.lambda_cross >= bound - 3.0 * max_stderr,
            "side {}: crossing {} below lower bound {bound}",
            side.side,
            side.lambda_cross
        );
    }
}

#[test]
fn bfs_distances_nonincreasing_in_lambda() {
    // Shared seed couples the edge sets; more edges can only shorten paths.
    let geometry = LatticeBox::new(2, 14, Boundary::Torus).unwrap();
    let weights = pareto(2.2);
    for seed in [1u64, 2, 3] {
        let mut prev: Option<Vec<u32>> = None;
        for lambda in [0.4, 0.8, 1.6] {
            let params = ModelParams::new(2, 3.0, lambda, weights).unwrap();
            let g = generate_graph(&params, &geometry, seed).unwrap();
            let dist = bfs_distances(&g, PointIndex(0));
            if let Some(p) = &prev {
                for (v, (&now, &before)) in dist.iter().zip(p.iter()).enumerate() {
                    if before != UNREACHABLE {
                        assert!(
                            now != UNREACHABLE && now <= before,
                            "seed {seed} vertex {v}: distance grew {before} -> {now}"
                        );
                    }
                }
            }
            prev = Some(dist);
        }
    }
}

#[test]
fn degree_increment_means_track_conditional_quadrature() {
    // Coupled radii: E[D(R2) - D(R1)] equals the annulus quadrature term,
    // checked through the Monte Carlo route with pinned W_0.
    let params = ModelParams::new(1, 2.0, 1.0, pareto(3.0)).unwrap();
    let w0 = 5.0;
    let (r1, r2) = (30.0, 90.0);
    let expect = conditional_degree_quadrature(&params, w0, r2).unwrap()
        - conditional_degree_quadrature(&params, w0, r1).unwrap();
    let trials = 20_000u64;
    let ball_small = OriginBall::new(1, r1, 2.0);
    let ball_big = OriginBall::new(1, r2, 2.0);
    let increments: Vec<f64> = (0..trials)
        .into_par_iter()
        .map(|t| {
            let seed = rng::trial_seed(55, t);
            let a = origin_degree_with_ball(&params, &ball_small, seed, Some(w0)).1;
            let b = origin_degree_with_ball(&params, &ball_big, seed, Some(w0)).1;
            assert!(b >= a, "coupled radii must be monotone");
            (b - a) as f64
        })
        .collect();
    let n = trials as f64;
    let mean = increments.iter().sum::<f64>() / n;
    let var = increments
        .iter()
        .map(|x| (x - mean) * (x - mean))
        .sum::<f64>()
        / (n - 1.0);
    let stderr = (var / n).sqrt();
    assert!(
        (mean - expect).abs() <= 3.0 * stderr,
        "increment mean {mean:.4} vs quadrature {expect:.4} +- {:.4}",
        3.0 * stderr
    );
}
