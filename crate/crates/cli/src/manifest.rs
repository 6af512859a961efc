//! The run manifest: enough to reproduce any run bit-identically, plus the
//! closed-form constants the configuration implies.

use serde::Serialize;

use sfperc_core::model::{
    classify_regime, distance_constant, lambda_c_lower_bound, xi_constant, DistanceConstants,
    ModelParams, RegimeReport,
};

use crate::config::ExperimentConfig;

pub const LATTICE_SUM_REL_TOL: f64 = 1e-6;

#[derive(Debug, Clone, Serialize)]
pub struct DerivedConstants {
    /// Degree-tail exponent; JSON null for constant weights (all moments finite).
    pub gamma: f64,
    pub regime: RegimeReport,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub xi: Option<f64>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub xi_reason: Option<String>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub lambda_c_lower_bound: Option<f64>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub lambda_c_lower_bound_reason: Option<String>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub distance_constants: Option<DistanceConstants>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub distance_constants_reason: Option<String>,
}

impl DerivedConstants {
    pub fn for_params(params: &ModelParams) -> Self {
        let (xi, xi_reason) = match xi_constant(params) {
            Ok(v) => (Some(v), None),
            Err(e) => (None, Some(e.to_string())),
        };
        let (lcb, lcb_reason) = match lambda_c_lower_bound(params, LATTICE_SUM_REL_TOL) {
            Ok(v) => (Some(v), None),
            Err(e) => (None, Some(e.to_string())),
        };
        let (dc, dc_reason) = match distance_constant(params) {
            Ok(v) => (Some(v), None),
            Err(e) => (None, Some(e.to_string())),
        };
        DerivedConstants {
            gamma: params.gamma_exponent(),
            regime: classify_regime(params),
            xi,
            xi_reason,
            lambda_c_lower_bound: lcb,
            lambda_c_lower_bound_reason: lcb_reason,
            distance_constants: dc,
            distance_constants_reason: dc_reason,
        }
    }
}

#[derive(Debug, Clone, Serialize)]
pub struct RunManifest {
    pub command: String,
    pub tool_version: String,
    pub norm: String,
    pub config: ExperimentConfig,
    pub derived: DerivedConstants,
    pub seed_derivation: String,
    /// Wall-clock of the run; the only field allowed to differ between
    /// byte-identical reruns.
    pub wall_clock_seconds: f64,
}

impl RunManifest {
    pub fn new(
        command: &str,
        config: &ExperimentConfig,
        params: &ModelParams,
        wall_clock_seconds: f64,
    ) -> Self {
        RunManifest {
            command: command.to_string(),
            tool_version: env!("CARGO_PKG_VERSION").to_string(),
            norm: "l2".to_string(),
            config: config.clone(),
            derived: DerivedConstants::for_params(params),
            seed_derivation:
                "trial_seed(t) = splitmix-finalizer chain over (master_seed xor 0x74, t)".into(),
            wall_clock_seconds,
        }
    }
}
