//! Deterministic, seed-driven sampling of weight fields and edge sets,
//! plus cluster and distance algorithms.
//!
//! Full generation materializes every adjacency list; lazy revelation
//! ([`LazyGraph`]) discovers one vertex's neighbors at a time. Both consume
//! the same per-point and per-pair uniforms, so for any seed they describe
//! the same graph, and edge sets grow monotonically in the percolation
//! parameter when the seed is held fixed.

pub mod cluster;
pub mod degree;
pub mod paths;
pub(crate) mod scan;

use rayon::prelude::*;

use crate::error::{CoreError, Result};
use crate::lattice::{LatticeBox, PointIndex};
use crate::model::params::ModelParams;
use crate::model::weights::WeightDistribution;
use crate::rng::{self, PairUniformSource};
use scan::{EdgeScan, ScanTables};

/// Unordered-pair evaluation budget for full graph generation.
pub const PAIR_BUDGET: u64 = 1_000_000_000;

/// The sampled i.i.d. weight field over a box.
#[derive(Debug, Clone)]
pub struct WeightField {
    pub geometry: LatticeBox,
    pub seed: u64,
    pub values: Vec<f64>,
}

/// Sample the weight field: `values[i] = F^{-1}(u_i)` with `u_i` the
/// deterministic per-point uniform of `(seed, weight stream, i)`.
pub fn sample_weights(geometry: &LatticeBox, dist: &WeightDistribution, seed: u64) -> WeightField {
    let n = geometry.point_count();
    let values: Vec<f64> = if n >= 1 << 16 {
        (0..n)
            .into_par_iter()
            .map(|i| dist.quantile_from_uniform(rng::uniform(seed, rng::STREAM_WEIGHTS, i as u64)))
            .collect()
    } else {
        (0..n)
            .map(|i| dist.quantile_from_uniform(rng::uniform(seed, rng::STREAM_WEIGHTS, i as u64)))
            .collect()
    };
    WeightField {
        geometry: *geometry,
        seed,
        values,
    }
}

/// A fully materialized percolation configuration.
#[derive(Debug, Clone)]
pub struct Graph {
    pub geometry: LatticeBox,
    pub params: ModelParams,
    pub seed: u64,
    pub weights: WeightField,
    /// Sorted neighbor lists; `j in adjacency[i] <=> i in adjacency[j]`.
    pub adjacency: Vec<Vec<u32>>,
    pub edge_count: u64,
}

impl Graph {
    pub fn point_count(&self) -> usize {
        self.geometry.point_count()
    }
}

/// Generate the full graph: every unordered pair is tested against its
/// deterministic uniform. Refuses boxes whose pair count exceeds
/// [`PAIR_BUDGET`]; use [`LazyGraph`] there instead.
///
/// Single-threaded by construction; parallelism belongs at the trial level.
pub fn generate_graph(params: &ModelParams, geometry: &LatticeBox, seed: u64) -> Result<Graph> {
    let n = geometry.point_count() as u64;
    let pair_count = n * (n - 1) / 2;
    if pair_count > PAIR_BUDGET {
        return Err(CoreError::Budget(format!(
            "full generation needs {pair_count} pair evaluations (budget {PAIR_BUDGET}); \
             use the lazy operations"
        )));
    }
    let weights = sample_weights(geometry, &params.weights, seed);
    let tables = ScanTables::new(geometry, params.alpha);
    let pairs = PairUniformSource::new(seed);
    let scan = EdgeScan::new(
        geometry,
        params.alpha,
        params.lambda,
        &weights.values,
        pairs,
        &tables,
    );

    let mut adjacency: Vec<Vec<u32>> = vec![Vec::new(); n as usize];
    let mut edge_count = 0u64;
    for i in 0..n as u32 {
        let coef = params.lambda * weights.values[i as usize];
        let mut hits: Vec<u32> = Vec::new();
        scan.scan_above(i, coef, &mut |c| {
            if scan.pair_edge(i, c.j, c.r2) {
                hits.push(c.j);
            }
        });
        for &j in &hits {
            adjacency[j as usize].push(i);
        }
        edge_count += hits.len() as u64;
        adjacency[i as usize].extend_from_slice(&hits);
    }
    // Each list is two ascending runs (neighbors below i, then above);
    // merge them so the sorted-adjacency invariant holds.
    for list in adjacency.iter_mut() {
        if !list.is_empty() {
            list.sort_unstable();
        }
    }
    Ok(Graph {
        geometry: *geometry,
        params: *params,
        seed,
        weights,
        adjacency,
        edge_count,
    })
}

/// Lazily reveal the neighbors of a single vertex, identical to the list
/// `generate_graph` would produce for the same `(params, box, seed)`.
pub fn vertex_edges(
    params: &ModelParams,
    geometry: &LatticeBox,
    weights: &WeightField,
    seed: u64,
    v: PointIndex,
) -> Result<Vec<PointIndex>> {
    if weights.values.len() != geometry.point_count() {
        return Err(CoreError::Domain(
            "weight field does not match the box".into(),
        ));
    }
    if v.index() >= geometry.point_count() {
        return Err(CoreError::Domain(format!("vertex {} out of range", v.0)));
    }
    let tables = ScanTables::new(geometry, params.alpha);
    let pairs = PairUniformSource::new(seed);
    let scan = EdgeScan::new(
        geometry,
        params.alpha,
        params.lambda,
        &weights.values,
        pairs,
        &tables,
    );
    let coef = params.lambda * weights.values[v.index()];
    let mut out = Vec::new();
    scan.scan_all(v.0, coef, &mut |c| {
        if scan.pair_edge(v.0, c.j, c.r2) {
            out.push(PointIndex(c.j));
        }
    });
    Ok(out)
}

/// Lazy view of a graph too large to materialize: holds the weight field
/// and scan tables, and reveals adjacency on demand.
pub struct LazyGraph {
    pub params: ModelParams,
    pub geometry: LatticeBox,
    pub seed: u64,
    pub weights: WeightField,
    tables: ScanTables,
    pairs: PairUniformSource,
    /// Optional interaction cutoff: candidate pairs farther than this are
    /// never revealed. `None` is the exact model.
    pub cutoff: Option<f64>,
}

impl LazyGraph {
    pub fn new(params: &ModelParams, geometry: &LatticeBox, seed: u64) -> Self {
        let weights = sample_weights(geometry, &params.weights, seed);
        LazyGraph {
            params: *params,
            geometry: *geometry,
            seed,
            weights,
            tables: ScanTables::new(geometry, params.alpha),
            pairs: PairUniformSource::new(seed),
            cutoff: None,
        }
    }

    /// Restrict revelation to pairs within Euclidean distance `rho`.
    ///
    /// This truncates the model: edges longer than `rho` are dropped. The
    /// expected number of dropped edges per vertex is reported by
    /// [`LazyGraph::cutoff_loss_bound`]; distance experiments in short-range
    /// regimes use this to trade negligible bias for locality.
    pub fn with_cutoff(mut self, rho: f64) -> Result<Self> {
        if !(rho > 0.0) {
            return Err(CoreError::Domain(format!(
                "cutoff must be positive, got {rho}"
            )));
        }
        if self.geometry.boundary == crate::lattice::Boundary::Torus
            && 2.0 * rho >= self.geometry.side as f64
        {
            return Err(CoreError::Domain(format!(
                "cutoff {rho} does not fit inside a torus of side {}",
                self.geometry.side
            )));
        }
        self.cutoff = Some(rho);
        Ok(self)
    }

    /// Upper bound on the expected number of edges per vertex dropped by the
    /// interaction cutoff: `lambda E[W]^2 sum_{|y| > rho} |y|^{-alpha}`.
    /// Requires a finite-mean weight law.
    pub fn cutoff_loss_bound(&self) -> Result<Option<f64>> {
        let Some(rho) = self.cutoff else {
            return Ok(None);
        };
        let mean = self.params.weights.mean();
        if !mean.is_finite() {
            return Err(CoreError::InfiniteMoment(
                "cutoff loss bound needs E[W] < infinity (Pareto tau > 2)".into(),
            ));
        }
        let tail = crate::model::latsum::lattice_tail_upper(
            self.geometry.dimension,
            self.params.alpha,
            rho,
        )?;
        Ok(Some(self.params.lambda * mean * mean * tail))
    }

    /// Sorted neighbor list of `v`, consistent with full generation
    /// (restricted to the cutoff window when one is set).
    pub fn vertex_edges_raw(&self, v: u32) -> Result<Vec<u32>> {
        let scan = EdgeScan::new(
            &self.geometry,
            self.params.alpha,
            self.params.lambda,
            &self.weights.values,
            self.pairs,
            &self.tables,
        );
        let coef = self.params.lambda * self.weights.values[v as usize];
        let mut out: Vec<u32> = Vec::new();
        match self.cutoff {
            Some(rho) => {
                scan.scan_within(v, coef, rho, &mut |c| {
                    if scan.pair_edge(v, c.j, c.r2) {
                        out.push(c.j);
                    }
                })?;
                out.sort_unstable();
            }
            None => {
                // Large candidate spaces go through the fixed-chunk parallel
                // scan; the result is deterministic either way.
                if self.geometry.point_count() >= 1 << 18 {
                    for c in scan.par_scan_all(v, coef) {
                        if scan.pair_edge(v, c.j, c.r2) {
                            out.push(c.j);
                        }
                    }
                } else {
                    scan.scan_all(v, coef, &mut |c| {
                        if scan.pair_edge(v, c.j, c.r2) {
                            out.push(c.j);
                        }
                    });
                }
            }
        }
        Ok(out)
    }

    pub fn vertex_edges(&self, v: PointIndex) -> Result<Vec<PointIndex>> {
        Ok(self
            .vertex_edges_raw(v.0)?
            .into_iter()
            .map(PointIndex)
            .collect())
    }
}
