//! `sfperc distances`: graph distance against Euclidean separation via lazy
//! bidirectional BFS, with loglog-vs-log model comparison.

use std::path::Path;

use serde::Serialize;

use sfperc_core::estimators::{
    distance_scaling, DistanceScalingSpec, RegressionComparison, SeparationRow,
};
use sfperc_core::graph::paths::reach_radius;
use sfperc_core::graph::generate_graph;
use sfperc_core::lattice::{LatticeBox, PointIndex};
use sfperc_core::model::DistanceConstants;
use sfperc_core::rng;

use crate::config::{required, ExperimentConfig};
use crate::error::Result;
use crate::manifest::DerivedConstants;
use crate::output::{fmt_f64, fmt_opt, out_file, write_csv, write_json};

#[derive(Serialize)]
struct ReachPoint {
    source: u32,
    hops: u32,
    radius: f64,
}

#[derive(Serialize)]
struct DistanceSummary {
    max_hops: u32,
    rows: Vec<SeparationRow>,
    #[serde(skip_serializing_if = "Option::is_none")]
    regression: Option<RegressionComparison>,
    #[serde(skip_serializing_if = "Option::is_none")]
    distance_constants: Option<DistanceConstants>,
    #[serde(skip_serializing_if = "Option::is_none")]
    distance_constants_reason: Option<String>,
    #[serde(skip_serializing_if = "Option::is_none")]
    interaction_cutoff: Option<f64>,
    #[serde(skip_serializing_if = "Option::is_none")]
    cutoff_loss_bound: Option<f64>,
    #[serde(skip_serializing_if = "Option::is_none")]
    reach_profile: Option<Vec<ReachPoint>>,
}

pub fn run(cfg: &ExperimentConfig, out: &Path) -> Result<()> {
    let params = cfg.model_params()?;
    let geometry_cfg = cfg.geometry_required()?;
    let geometry = LatticeBox::new(cfg.model.dimension, geometry_cfg.side, cfg.boundary()?)?;
    let spec = DistanceScalingSpec {
        pair_norms: required(&cfg.experiment.pair_norms, "pair_norms")?,
        pairs_per_norm: cfg.experiment.pairs_per_norm.unwrap_or(50),
        instances: cfg.experiment.instances.unwrap_or(1),
        max_hops: required(&cfg.experiment.max_hops, "max_hops")?,
        interaction_cutoff: cfg.experiment.interaction_cutoff,
    };
    let result = distance_scaling(&params, &geometry, &spec, cfg.seed)?;

    write_csv(
        out_file(out, "distances.csv")?,
        &["separation", "instance", "pair_id", "source", "target", "hops"],
        result.raw.iter().map(|p| {
            vec![
                fmt_f64(p.separation),
                p.instance.to_string(),
                p.pair_id.to_string(),
                p.source.to_string(),
                p.target.to_string(),
                fmt_opt(&p.hops),
            ]
        }),
    )?;

    // Optional reach-radius profile on a materializable instance.
    let reach_profile = match cfg.experiment.reach_hops {
        Some(max_n) => {
            let graph = generate_graph(&params, &geometry, rng::trial_seed(cfg.seed, 0))?;
            let sources = cfg.experiment.reach_sources.unwrap_or(1);
            let n_points = geometry.point_count() as u64;
            let mut profile = Vec::new();
            for s in 0..sources {
                let u = rng::uniform(cfg.seed, rng::STREAM_POSITIONS, u64::MAX - s as u64);
                let source = PointIndex((u * n_points as f64) as u32);
                for hops in 0..=max_n {
                    profile.push(ReachPoint {
                        source: source.0,
                        hops,
                        radius: reach_radius(&graph, source, hops),
                    });
                }
            }
            Some(profile)
        }
        None => None,
    };

    let derived = DerivedConstants::for_params(&params);
    let summary = DistanceSummary {
        max_hops: spec.max_hops,
        rows: result.rows,
        regression: result.regression,
        distance_constants: derived.distance_constants,
        distance_constants_reason: derived.distance_constants_reason,
        interaction_cutoff: spec.interaction_cutoff,
        cutoff_loss_bound: result.cutoff_loss_bound,
        reach_profile,
    };
    write_json(out_file(out, "distance_summary.json")?, &summary)
}
