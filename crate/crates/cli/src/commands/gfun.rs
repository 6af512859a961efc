//! `sfperc gfun`: the min-product moment `g(u)` against its envelope.

use std::path::Path;

use serde::Serialize;

use sfperc_core::estimators::gfun_envelope_check;

use crate::config::{required, ExperimentConfig};
use crate::error::Result;
use crate::output::{fmt_f64, out_file, write_csv, write_json};

#[derive(Serialize)]
struct GfunSummary {
    envelope_exponent: f64,
    max_ratio: f64,
    monotone_nonincreasing: bool,
}

pub fn run(cfg: &ExperimentConfig, out: &Path) -> Result<()> {
    let dist = cfg.weight_distribution()?;
    let u_grid = required(&cfg.experiment.u_grid, "u_grid")?;
    let table = gfun_envelope_check(&dist, &u_grid)?;

    write_csv(
        out_file(out, "gfun.csv")?,
        &["u", "g", "envelope_ratio"],
        table.rows.iter().map(|r| {
            vec![fmt_f64(r.u), fmt_f64(r.g), fmt_f64(r.envelope_ratio)]
        }),
    )?;
    let monotone = table
        .rows
        .windows(2)
        .all(|w| w[1].g <= w[0].g * (1.0 + 1e-9));
    write_json(
        out_file(out, "gfun_summary.json")?,
        &GfunSummary {
            envelope_exponent: table.envelope_exponent,
            max_ratio: table.max_ratio,
            monotone_nonincreasing: monotone,
        },
    )
}
