//! Percolation curves: largest-component fraction against the percolation
//! parameter, seed-coupled across lambda within each trial, plus the
//! finite-size crossing heuristic.

use rayon::prelude::*;
use serde::Serialize;

use crate::error::{CoreError, Result};
use crate::graph::cluster::UnionFind;
use crate::graph::sample_weights;
use crate::graph::scan::{Candidate, EdgeScan, ScanTables};
use crate::lattice::{Boundary, LatticeBox};
use crate::model::params::ModelParams;
use crate::rng::{trial_seed, PairUniformSource};

/// Guard on the coupled-survivor list of one trial.
const SURVIVOR_BUDGET: usize = 300_000_000;

#[derive(Debug, Clone, Copy, Serialize)]
pub struct CurveRow {
    pub side: u32,
    pub lambda: f64,
    pub trials: u64,
    pub mean_fraction: f64,
    pub stderr: f64,
}

#[derive(Debug, Clone, Copy, Serialize)]
pub struct TrialRow {
    pub side: u32,
    pub trial: u64,
    pub lambda: f64,
    pub fraction: f64,
}

#[derive(Debug, Clone, Serialize)]
pub struct PercolationCurve {
    pub rows: Vec<CurveRow>,
}

#[derive(Debug, Clone, Serialize)]
pub struct PercolationResult {
    pub curve: PercolationCurve,
    /// Raw per-trial fractions, ordered by (side, trial, lambda).
    pub per_trial: Vec<TrialRow>,
}

/// Largest-component fractions of one weight/uniform realization at every
/// lambda in `lambdas`, sharing the pair uniforms so the edge sets are
/// nested and the fractions exactly nondecreasing.
///
/// Single-threaded; trial-level parallelism belongs to the caller.
pub fn coupled_trial_fractions(
    template: &ModelParams,
    geometry: &LatticeBox,
    lambdas: &[f64],
    seed: u64,
) -> Result<Vec<f64>> {
    if lambdas.is_empty() {
        return Err(CoreError::Domain("no lambda values given".into()));
    }
    let n = geometry.point_count();
    let pair_count = n as u64 * (n as u64 - 1) / 2;
    if pair_count > crate::graph::PAIR_BUDGET {
        return Err(CoreError::Budget(format!(
            "coupled trial needs {pair_count} pair evaluations (budget {})",
            crate::graph::PAIR_BUDGET
        )));
    }
    let lambda_max = lambdas.iter().cloned().fold(f64::NAN, f64::max);
    if !(lambda_max > 0.0) {
        return Err(CoreError::Domain("lambdas must be positive".into()));
    }
    let weights = sample_weights(geometry, &template.weights, seed);
    let tables = ScanTables::new(geometry, template.alpha);
    let pairs = PairUniformSource::new(seed);
    let scan_max = EdgeScan::new(
        geometry,
        template.alpha,
        lambda_max,
        &weights.values,
        pairs,
        &tables,
    );

    // Survivors of the majorant test at lambda_max contain every edge of
    // every smaller lambda.
    let mut survivors: Vec<Candidate> = Vec::new();
    let mut survivor_sources: Vec<u32> = Vec::new();
    for i in 0..n as u32 {
        let coef = lambda_max * weights.values[i as usize];
        scan_max.scan_above(i, coef, &mut |c| {
            survivors.push(c);
            survivor_sources.push(i);
        });
        if survivors.len() > SURVIVOR_BUDGET {
            return Err(CoreError::Budget(format!(
                "coupled survivor list exceeded {SURVIVOR_BUDGET} entries"
            )));
        }
    }

    let mut fractions = Vec::with_capacity(lambdas.len());
    for &lambda in lambdas {
        let scan = EdgeScan::new(
            geometry,
            template.alpha,
            lambda,
            &weights.values,
            pairs,
            &tables,
        );
        let mut uf = UnionFind::new(n);
        for (idx, c) in survivors.iter().enumerate() {
            let i = survivor_sources[idx];
            if scan.pair_edge(i, c.j, c.r2) {
                uf.union(i, c.j);
            }
        }
        fractions.push(uf.max_size() as f64 / n as f64);
    }
    Ok(fractions)
}

/// Mean and standard error of the largest-component fraction over `trials`
/// independent realizations, for every `(side, lambda)` cell. Trials are
/// distributed over the thread pool; aggregation is a serial fold in
/// (side, trial) order, so results do not depend on the thread count.
pub fn percolation_curve(
    template: &ModelParams,
    boundary: Boundary,
    sides: &[u32],
    lambdas: &[f64],
    trials: u64,
    master_seed: u64,
) -> Result<PercolationResult> {
    if sides.is_empty() || trials == 0 {
        return Err(CoreError::Domain(
            "percolation curve needs at least one side and one trial".into(),
        ));
    }
    let mut tasks: Vec<(usize, u64)> = Vec::new();
    for side_idx in 0..sides.len() {
        for trial in 0..trials {
            tasks.push((side_idx, trial));
        }
    }
    let outcomes: Vec<Result<Vec<f64>>> = tasks
        .par_iter()
        .map(|&(side_idx, trial)| {
            let geometry = LatticeBox::new(template.dimension, sides[side_idx], boundary)?;
            coupled_trial_fractions(template, &geometry, lambdas, trial_seed(master_seed, trial))
        })
        .collect();

    let mut per_trial = Vec::new();
    let mut rows = Vec::new();
    for (side_idx, &side) in sides.iter().enumerate() {
        // Collect this side's trial fractions in trial order.
        let mut by_trial: Vec<&Vec<f64>> = Vec::with_capacity(trials as usize);
        for (task_idx, &(s_idx, _)) in tasks.iter().enumerate() {
            if s_idx == side_idx {
                match &outcomes[task_idx] {
                    Ok(f) => by_trial.push(f),
                    Err(e) => return Err(e.clone()),
                }
            }
        }
        for (trial, fracs) in by_trial.iter().enumerate() {
            for (li, &lambda) in lambdas.iter().enumerate() {
                per_trial.push(TrialRow {
                    side,
                    trial: trial as u64,
                    lambda,
                    fraction: fracs[li],
                });
            }
        }
        for (li, &lambda) in lambdas.iter().enumerate() {
            let vals: Vec<f64> = by_trial.iter().map(|f| f[li]).collect();
            let n = vals.len() as f64;
            let mean = vals.iter().sum::<f64>() / n;
            let var = vals.iter().map(|v| (v - mean) * (v - mean)).sum::<f64>()
                / (n - 1.0).max(1.0);
            rows.push(CurveRow {
                side,
                lambda,
                trials,
                mean_fraction: mean,
                stderr: (var / n).sqrt(),
            });
        }
    }
    Ok(PercolationResult {
        curve: PercolationCurve { rows },
        per_trial,
    })
}

#[derive(Debug, Clone, Serialize)]
pub struct SideCrossing {
    pub side: u32,
    pub lambda_cross: f64,
}

#[derive(Debug, Clone, Serialize)]
pub struct CrossingEstimate {
    pub threshold: f64,
    pub per_side: Vec<SideCrossing>,
    pub note: String,
}

/// Per-side linear-interpolation crossing of `mean_fraction = threshold`.
///
/// A finite-size heuristic: the sequence of per-side crossings is reported
/// as-is, with no claimed infinite-volume limit.
pub fn crossing_lambda_estimate(
    curve: &PercolationCurve,
    threshold: f64,
) -> Result<CrossingEstimate> {
    if !(threshold > 0.0 && threshold < 1.0) {
        return Err(CoreError::Domain(format!(
            "threshold must lie in (0,1), got {threshold}"
        )));
    }
    let mut sides: Vec<u32> = curve.rows.iter().map(|r| r.side).collect();
    sides.dedup();
    let mut per_side = Vec::new();
    for side in sides {
        let mut rows: Vec<&CurveRow> = curve.rows.iter().filter(|r| r.side == side).collect();
        rows.sort_by(|a, b| a.lambda.total_cmp(&b.lambda));
        if rows.len() < 2 {
            return Err(CoreError::Bracketing(format!(
                "side {side}: need at least two lambda values"
            )));
        }
        if rows[0].mean_fraction >= threshold {
            return Err(CoreError::Bracketing(format!(
                "side {side}: already above threshold {threshold} at the smallest lambda"
            )));
        }
        let mut crossing = None;
        for pair in rows.windows(2) {
            let (a, b) = (pair[0], pair[1]);
            if a.mean_fraction < threshold && b.mean_fraction >= threshold {
                let t = (threshold - a.mean_fraction) / (b.mean_fraction - a.mean_fraction);
                crossing = Some(a.lambda + t * (b.lambda - a.lambda));
                break;
            }
        }
        match crossing {
            Some(lambda_cross) => per_side.push(SideCrossing { side, lambda_cross }),
            None => {
                return Err(CoreError::Bracketing(format!(
                    "side {side}: threshold {threshold} never reached on the lambda grid"
                )))
            }
        }
    }
    Ok(CrossingEstimate {
        threshold,
        per_side,
        note: "finite-size crossings; sequence reported per side with no claimed limit".into(),
    })
}
