//! Command-line front end: config parsing and validation, experiment
//! orchestration with reproducible seeds and parallel trials, bit-stable
//! CSV/JSON emission, and a run manifest for every invocation.

pub mod commands;
pub mod config;
pub mod error;
pub mod manifest;
pub mod output;

use std::path::Path;
use std::time::Instant;

use config::ExperimentConfig;
use error::Result;
use manifest::RunManifest;
use output::{out_file, write_json};

/// Run one subcommand end to end: execute, then write the manifest with the
/// measured wall clock. Outputs other than the manifest's wall-clock field
/// are byte-identical across reruns of the same resolved config.
pub fn run_command(command: &str, cfg: &ExperimentConfig, out: &Path) -> Result<()> {
    let started = Instant::now();
    match command {
        "constants" => commands::constants::run(cfg, out)?,
        "generate" => commands::generate::run(cfg, out)?,
        "degrees" => commands::degrees::run(cfg, out)?,
        "percolation" => commands::percolation::run(cfg, out)?,
        "distances" => commands::distances::run(cfg, out)?,
        "gfun" => commands::gfun::run(cfg, out)?,
        other => {
            return Err(error::CliError::Config(format!(
                "unknown command {other:?}"
            )))
        }
    }
    let params = cfg.model_params()?;
    let manifest = RunManifest::new(command, cfg, &params, started.elapsed().as_secs_f64());
    write_json(out_file(out, "manifest.json")?, &manifest)
}
