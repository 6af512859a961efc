//! `sfperc generate`: materialize one instance and emit edge-list and
//! weights files.

use std::path::Path;

use sfperc_core::graph::generate_graph;
use sfperc_core::lattice::LatticeBox;

use crate::config::ExperimentConfig;
use crate::error::Result;
use crate::output::{out_file, write_edge_list, write_weights_file};

pub fn run(cfg: &ExperimentConfig, out: &Path) -> Result<()> {
    let params = cfg.model_params()?;
    let geometry_cfg = cfg.geometry_required()?;
    let geometry = LatticeBox::new(cfg.model.dimension, geometry_cfg.side, cfg.boundary()?)?;
    let graph = generate_graph(&params, &geometry, cfg.seed)?;
    write_edge_list(&out_file(out, "edges.txt")?, cfg, &graph)?;
    write_weights_file(&out_file(out, "weights.txt")?, cfg, &graph)?;
    Ok(())
}
