//! `sfperc constants`: every closed-form constant the configuration implies.

use std::path::Path;

use serde::Serialize;

use sfperc_core::model::latsum::{lattice_sum, LatticeSum};
use sfperc_core::special::unit_ball_volume;

use crate::config::ExperimentConfig;
use crate::error::Result;
use crate::manifest::{DerivedConstants, LATTICE_SUM_REL_TOL};
use crate::output::{out_file, write_json};

#[derive(Serialize)]
struct ConstantsDoc {
    norm: &'static str,
    unit_ball_volume: f64,
    #[serde(flatten)]
    derived: DerivedConstants,
    #[serde(skip_serializing_if = "Option::is_none")]
    lattice_sum: Option<LatticeSum>,
    #[serde(skip_serializing_if = "Option::is_none")]
    lattice_sum_reason: Option<String>,
}

pub fn run(cfg: &ExperimentConfig, out: &Path) -> Result<()> {
    let params = cfg.model_params()?;
    let derived = DerivedConstants::for_params(&params);
    let (ls, ls_reason) = if params.alpha > params.dimension as f64 {
        match lattice_sum(params.dimension, params.alpha, LATTICE_SUM_REL_TOL) {
            Ok(s) => (Some(s), None),
            Err(e) => (None, Some(e.to_string())),
        }
    } else {
        (
            None,
            Some(format!(
                "sum_x |x|^-alpha diverges for alpha = {} <= d = {}",
                params.alpha, params.dimension
            )),
        )
    };
    let doc = ConstantsDoc {
        norm: "l2",
        unit_ball_volume: unit_ball_volume(params.dimension)?,
        derived,
        lattice_sum: ls,
        lattice_sum_reason: ls_reason,
    };
    write_json(out_file(out, "constants.json")?, &doc)
}
