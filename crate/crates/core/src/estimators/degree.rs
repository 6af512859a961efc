//! Conditional-degree oracles: the deterministic quadrature route and its
//! Monte Carlo counterpart.

use std::collections::BTreeMap;

use rayon::prelude::*;

use crate::error::{CoreError, Result};
use crate::graph::degree::{origin_degree_with_ball, OriginBall};
use crate::lattice::ball_offsets;
use crate::model::params::ModelParams;
use crate::rng;

/// Truncated conditional expected degree of the origin,
/// `E[D_0^{(R)} | W_0 = w] = sum_{0 < |y| <= R} (1 - E[e^{-lambda w W / |y|^alpha}])`,
/// evaluated to quadrature tolerance with one Laplace-transform call per
/// distinct shell radius.
pub fn conditional_degree_quadrature(params: &ModelParams, w: f64, radius: f64) -> Result<f64> {
    if params.alpha <= params.dimension as f64 {
        return Err(CoreError::Divergent(format!(
            "conditional expected degree diverges for alpha = {} <= d = {}",
            params.alpha, params.dimension
        )));
    }
    if !(w >= 0.0) {
        return Err(CoreError::Domain(format!("w must be nonnegative, got {w}")));
    }
    let c = params.lambda * w;
    if c == 0.0 {
        return Ok(0.0);
    }
    let mut shells: BTreeMap<u64, u64> = BTreeMap::new();
    for (_, n2) in ball_offsets(params.dimension, radius) {
        *shells.entry(n2).or_insert(0) += 1;
    }
    let mut total = 0.0;
    for (n2, count) in shells {
        let arg = c * libm::pow(n2 as f64, -params.alpha / 2.0);
        total += count as f64 * params.weights.laplace_complement(arg)?;
    }
    Ok(total)
}

/// Monte Carlo counterpart: mean truncated degree over independent
/// weight-field/edge samples with `W_0` pinned to `w`. Returns
/// `(mean, stderr)`. Trials are distributed over the thread pool; per-trial
/// seeds derive from `mix(master_seed, trial)`, and the reduction is a
/// serial fold in trial order.
pub fn conditional_degree_empirical(
    params: &ModelParams,
    w: f64,
    radius: f64,
    trials: u64,
    master_seed: u64,
) -> Result<(f64, f64)> {
    if trials < 1 {
        return Err(CoreError::Domain("trials must be >= 1".into()));
    }
    let ball = OriginBall::new(params.dimension, radius, params.alpha);
    let degrees: Vec<u64> = (0..trials)
        .into_par_iter()
        .map(|t| {
            let seed = rng::trial_seed(master_seed, t);
            origin_degree_with_ball(params, &ball, seed, Some(w)).1
        })
        .collect();
    let n = trials as f64;
    let mean = degrees.iter().map(|&d| d as f64).sum::<f64>() / n;
    let var = degrees
        .iter()
        .map(|&d| {
            let diff = d as f64 - mean;
            diff * diff
        })
        .sum::<f64>()
        / (n - 1.0).max(1.0);
    Ok((mean, (var / n).sqrt()))
}
