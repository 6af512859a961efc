//! Experiment configuration: a single JSON document, schema-validated with
//! unknown keys rejected, echoed fully resolved in every run manifest.

use serde::{Deserialize, Serialize};

use sfperc_core::lattice::Boundary;
use sfperc_core::model::{ModelParams, WeightDistribution};

use crate::error::{CliError, Result};

#[derive(Debug, Clone, Serialize, Deserialize, PartialEq)]
#[serde(deny_unknown_fields)]
pub struct ExperimentConfig {
    pub model: ModelConfig,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub geometry: Option<GeometryConfig>,
    #[serde(default)]
    pub experiment: ExperimentBlock,
    pub seed: u64,
    #[serde(default = "default_threads")]
    pub threads: usize,
}

fn default_threads() -> usize {
    1
}

#[derive(Debug, Clone, Serialize, Deserialize, PartialEq)]
#[serde(deny_unknown_fields)]
pub struct ModelConfig {
    pub dimension: u32,
    pub alpha: f64,
    pub lambda: f64,
    pub weights: WeightsConfig,
}

#[derive(Debug, Clone, Serialize, Deserialize, PartialEq)]
#[serde(deny_unknown_fields)]
pub struct WeightsConfig {
    /// "constant" or "pareto".
    pub kind: String,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub tau: Option<f64>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub min: Option<f64>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub value: Option<f64>,
    #[serde(default)]
    pub normalize_mean: bool,
}

#[derive(Debug, Clone, Serialize, Deserialize, PartialEq)]
#[serde(deny_unknown_fields)]
pub struct GeometryConfig {
    pub side: u32,
    #[serde(default = "default_boundary")]
    pub boundary: String,
}

fn default_boundary() -> String {
    "torus".into()
}

/// Experiment-specific knobs; each command validates the subset it needs.
#[derive(Debug, Clone, Default, Serialize, Deserialize, PartialEq)]
#[serde(deny_unknown_fields)]
pub struct ExperimentBlock {
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub trials: Option<u64>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub lambdas: Option<Vec<f64>>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub sides: Option<Vec<u32>>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub w_values: Option<Vec<f64>>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub pair_norms: Option<Vec<f64>>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub k: Option<usize>,
    #[serde(default, skip_serializing_if = "Option::is_none", rename = "R")]
    pub truncation_radius: Option<f64>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub r_values: Option<Vec<f64>>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub max_hops: Option<u32>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub threshold: Option<f64>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub u_grid: Option<Vec<f64>>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub pairs_per_norm: Option<u32>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub instances: Option<u32>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub interaction_cutoff: Option<f64>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub reach_hops: Option<u32>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub reach_sources: Option<u32>,
}

impl ExperimentConfig {
    pub fn from_json(text: &str) -> Result<Self> {
        serde_json::from_str(text)
            .map_err(|e| CliError::Config(format!("config rejected: {e}")))
    }

    pub fn load(path: &std::path::Path) -> Result<Self> {
        let text = std::fs::read_to_string(path)
            .map_err(|e| CliError::Config(format!("cannot read config {}: {e}", path.display())))?;
        Self::from_json(&text)
    }

    /// Build the validated weight distribution.
    pub fn weight_distribution(&self) -> Result<WeightDistribution> {
        let w = &self.model.weights;
        let dist = match w.kind.as_str() {
            "constant" => {
                let value = w.value.ok_or_else(|| {
                    CliError::Config("model.weights.value: required for kind \"constant\"".into())
                })?;
                if w.tau.is_some() || w.min.is_some() {
                    return Err(CliError::Config(
                        "model.weights.tau/min: not allowed for kind \"constant\"".into(),
                    ));
                }
                WeightDistribution::constant(value)?
            }
            "pareto" => {
                let tau = w.tau.ok_or_else(|| {
                    CliError::Config("model.weights.tau: required for kind \"pareto\"".into())
                })?;
                if w.value.is_some() {
                    return Err(CliError::Config(
                        "model.weights.value: not allowed for kind \"pareto\"".into(),
                    ));
                }
                WeightDistribution::pareto(tau, w.min.unwrap_or(1.0))?
            }
            other => {
                return Err(CliError::Config(format!(
                    "model.weights.kind: unknown kind {other:?} (expected \"constant\" or \"pareto\")"
                )))
            }
        };
        Ok(if w.normalize_mean {
            dist.with_normalized_mean()?
        } else {
            dist
        })
    }

    pub fn model_params(&self) -> Result<ModelParams> {
        Ok(ModelParams::new(
            self.model.dimension,
            self.model.alpha,
            self.model.lambda,
            self.weight_distribution()?,
        )?)
    }

    pub fn boundary(&self) -> Result<Boundary> {
        let name = self
            .geometry
            .as_ref()
            .map(|g| g.boundary.clone())
            .unwrap_or_else(default_boundary);
        match name.as_str() {
            "torus" => Ok(Boundary::Torus),
            "free" => Ok(Boundary::Free),
            other => Err(CliError::Config(format!(
                "geometry.boundary: unknown boundary {other:?} (expected \"torus\" or \"free\")"
            ))),
        }
    }

    pub fn geometry_required(&self) -> Result<&GeometryConfig> {
        self.geometry
            .as_ref()
            .ok_or_else(|| CliError::Config("geometry: required for this command".into()))
    }

    /// Fill in the defaults the commands rely on, so the manifest echo is
    /// fully resolved.
    pub fn resolve(mut self, seed_override: Option<u64>, threads_override: Option<usize>) -> Self {
        if let Some(seed) = seed_override {
            self.seed = seed;
        }
        if let Some(threads) = threads_override {
            self.threads = threads;
        }
        if self.model.weights.kind == "pareto" && self.model.weights.min.is_none() {
            self.model.weights.min = Some(1.0);
        }
        self
    }
}

/// Fetch a required experiment field by key, naming it on failure.
pub fn required<T: Clone>(field: &Option<T>, key: &str) -> Result<T> {
    field
        .clone()
        .ok_or_else(|| CliError::Config(format!("experiment.{key}: required for this command")))
}
