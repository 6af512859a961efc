//! Distance scaling: graph distance between vertex pairs at prescribed
//! Euclidean separations, measured with lazy bidirectional BFS.

use rayon::prelude::*;
use serde::Serialize;

use crate::error::{CoreError, Result};
use crate::graph::paths::LazyBfs;
use crate::graph::LazyGraph;
use crate::lattice::{Boundary, LatticeBox};
use crate::model::params::ModelParams;
use crate::rng::{self, trial_seed};

#[derive(Debug, Clone, Serialize)]
pub struct DistanceScalingSpec {
    /// Euclidean separation targets (rounded to integer axis displacements).
    pub pair_norms: Vec<f64>,
    /// Pairs sampled per separation, split evenly across instances.
    pub pairs_per_norm: u32,
    /// Independent weight/edge realizations.
    pub instances: u32,
    pub max_hops: u32,
    /// Optional interaction cutoff passed to the lazy graph; edges longer
    /// than this are dropped (reported as a loss bound in the result).
    pub interaction_cutoff: Option<f64>,
}

#[derive(Debug, Clone, Copy, Serialize)]
pub struct PairSample {
    pub instance: u32,
    pub separation: f64,
    pub pair_id: u32,
    pub source: u32,
    pub target: u32,
    /// Hop count if connected within `max_hops`.
    pub hops: Option<u32>,
}

#[derive(Debug, Clone, Copy, Serialize)]
pub struct SeparationRow {
    pub separation: f64,
    pub pairs: u64,
    pub connected: u64,
    pub connected_fraction: f64,
    /// Lower median over connected pairs.
    pub median_hops: Option<u32>,
    pub mean_hops: Option<f64>,
}

#[derive(Debug, Clone, Copy, Serialize)]
pub struct RegressionComparison {
    /// Residual sum of squares of median hops against log log separation.
    pub loglog_residual: f64,
    /// Residual sum of squares of median hops against log separation.
    pub log_residual: f64,
}

#[derive(Debug, Clone, Serialize)]
pub struct DistanceScaling {
    pub rows: Vec<SeparationRow>,
    pub raw: Vec<PairSample>,
    pub regression: Option<RegressionComparison>,
    /// Per-vertex expected-edge loss bound when a cutoff is active.
    pub cutoff_loss_bound: Option<f64>,
}

fn least_squares_sse(points: &[(f64, f64)]) -> f64 {
    let n = points.len() as f64;
    let sx: f64 = points.iter().map(|p| p.0).sum();
    let sy: f64 = points.iter().map(|p| p.1).sum();
    let sxx: f64 = points.iter().map(|p| p.0 * p.0).sum();
    let sxy: f64 = points.iter().map(|p| p.0 * p.1).sum();
    let denom = n * sxx - sx * sx;
    if denom <= 0.0 {
        return f64::INFINITY;
    }
    let b = (n * sxy - sx * sy) / denom;
    let a = (sy - b * sx) / n;
    points
        .iter()
        .map(|&(x, y)| {
            let r = y - (a + b * x);
            r * r
        })
        .sum()
}

/// Sample pairs at the prescribed separations and measure their graph
/// distances. Pairs are placed uniformly with axis-aligned displacements
/// (axis rotating with the pair id); statistics aggregate over connected
/// pairs only, with the connected fraction reported alongside.
pub fn distance_scaling(
    params: &ModelParams,
    geometry: &LatticeBox,
    spec: &DistanceScalingSpec,
    master_seed: u64,
) -> Result<DistanceScaling> {
    if geometry.boundary != Boundary::Torus {
        return Err(CoreError::Domain(
            "distance scaling runs on a torus (minimal-image separations)".into(),
        ));
    }
    let max_norm = spec.pair_norms.iter().cloned().fold(0.0, f64::max);
    if (geometry.side as f64) < 4.0 * max_norm {
        return Err(CoreError::Domain(format!(
            "torus side {} must be at least 4x the largest separation {max_norm}",
            geometry.side
        )));
    }
    if spec.instances == 0 || spec.pairs_per_norm == 0 || spec.pair_norms.is_empty() {
        return Err(CoreError::Domain(
            "need at least one instance, one pair and one separation".into(),
        ));
    }

    let per_instance = spec.pairs_per_norm.div_ceil(spec.instances);
    let side = geometry.side as i64;
    let dim = geometry.dimension as usize;

    let mut raw: Vec<PairSample> = Vec::new();
    let mut cutoff_loss = None;
    for instance in 0..spec.instances {
        let seed = trial_seed(master_seed, instance as u64);
        let mut lazy = LazyGraph::new(params, geometry, seed);
        if let Some(rho) = spec.interaction_cutoff {
            lazy = lazy.with_cutoff(rho)?;
            cutoff_loss = lazy.cutoff_loss_bound()?;
        }
        let bfs = LazyBfs::new(&lazy);

        // Enumerate this instance's queries, then measure them in parallel;
        // the shared neighbor cache only memoizes a deterministic function,
        // so results are independent of scheduling.
        let mut queries: Vec<(usize, u32, u32, u32)> = Vec::new(); // (norm_idx, pair_id, x, y)
        for (ni, &target) in spec.pair_norms.iter().enumerate() {
            let delta = libm::round(target).max(1.0) as i64;
            for pid in 0..per_instance {
                let global_pair = instance * per_instance + pid;
                if global_pair >= spec.pairs_per_norm {
                    continue;
                }
                let counter_base =
                    ((ni as u64) * spec.pairs_per_norm as u64 + global_pair as u64) * (dim as u64);
                let mut coords = vec![0i64; dim];
                for (axis, coord) in coords.iter_mut().enumerate() {
                    let u = rng::uniform(seed, rng::STREAM_POSITIONS, counter_base + axis as u64);
                    *coord = ((u * side as f64) as i64).min(side - 1);
                }
                let x = geometry.point_to_index(&coords)?;
                let axis = (global_pair as usize) % dim;
                let mut tcoords = coords.clone();
                tcoords[axis] = (tcoords[axis] + delta).rem_euclid(side);
                let y = geometry.point_to_index(&tcoords)?;
                queries.push((ni, global_pair, x.0, y.0));
            }
        }
        let outcomes: Vec<Result<Option<u32>>> = queries
            .par_iter()
            .map(|&(_, _, x, y)| bfs.pair_distance(x, y, spec.max_hops))
            .collect();
        for (q, outcome) in queries.iter().zip(outcomes) {
            raw.push(PairSample {
                instance,
                separation: libm::round(spec.pair_norms[q.0]).max(1.0),
                pair_id: q.1,
                source: q.2,
                target: q.3,
                hops: outcome?,
            });
        }
    }
    raw.sort_by(|a, b| {
        a.separation
            .total_cmp(&b.separation)
            .then(a.instance.cmp(&b.instance))
            .then(a.pair_id.cmp(&b.pair_id))
    });

    let mut rows: Vec<SeparationRow> = Vec::new();
    for &target in &spec.pair_norms {
        let sep = libm::round(target).max(1.0);
        let samples: Vec<&PairSample> = raw
            .iter()
            .filter(|p| p.separation == sep)
            .collect();
        let mut hops: Vec<u32> = samples.iter().filter_map(|p| p.hops).collect();
        hops.sort_unstable();
        let connected = hops.len() as u64;
        let pairs = samples.len() as u64;
        rows.push(SeparationRow {
            separation: sep,
            pairs,
            connected,
            connected_fraction: connected as f64 / pairs as f64,
            median_hops: if hops.is_empty() {
                None
            } else {
                Some(hops[(hops.len() - 1) / 2])
            },
            mean_hops: if hops.is_empty() {
                None
            } else {
                Some(hops.iter().map(|&h| h as f64).sum::<f64>() / hops.len() as f64)
            },
        });
    }

    // Model comparison: median hops against loglog vs log separation.
    let fit_points: Vec<(f64, f64)> = rows
        .iter()
        .filter(|r| r.median_hops.is_some() && r.separation > std::f64::consts::E)
        .map(|r| (r.separation, r.median_hops.unwrap() as f64))
        .collect();
    let regression = if fit_points.len() >= 3 {
        let loglog: Vec<(f64, f64)> = fit_points
            .iter()
            .map(|&(s, m)| (libm::log(libm::log(s)), m))
            .collect();
        let log: Vec<(f64, f64)> = fit_points
            .iter()
            .map(|&(s, m)| (libm::log(s), m))
            .collect();
        Some(RegressionComparison {
            loglog_residual: least_squares_sse(&loglog),
            log_residual: least_squares_sse(&log),
        })
    } else {
        None
    };

    Ok(DistanceScaling {
        rows,
        raw,
        regression,
        cutoff_loss_bound: cutoff_loss,
    })
}
