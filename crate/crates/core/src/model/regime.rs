//! Phase-diagram classification of (d, alpha, tau).
//!
//! Each field of the report carries a citation tag naming the result that
//! justifies it. Boundary cases (gamma = 1, gamma = 2) are reported as
//! boundary/unknown rather than guessed: at gamma = 2 the behavior depends
//! on the precise shape of the slowly varying tail factor, which the Pareto
//! family pins but the classification deliberately does not exploit.

use serde::Serialize;

use crate::model::params::ModelParams;
use crate::model::weights::WeightKind;

/// Result tags used as citations in [`RegimeReport`].
pub mod tags {
    /// Degrees are a.s. infinite when alpha <= d, or alpha > d and gamma <= 1.
    pub const INFINITE_DEGREES: &str = "infinite-degrees";
    /// Degree tail is regularly varying with exponent gamma = alpha(tau-1)/d.
    pub const POWER_LAW_DEGREES: &str = "power-law-degree-tail";
    /// lambda_c < infinity in d >= 2 whenever P(W = 0) < 1.
    pub const FINITE_CRITICAL_HIGH_D: &str = "critical-finite-d>=2";
    /// lambda_c < infinity in d = 1 for alpha in (1,2] and weights bounded away from 0.
    pub const FINITE_CRITICAL_1D_LONG_RANGE: &str = "critical-finite-d=1-alpha<=2";
    /// lambda_c = infinity in d = 1 for alpha > 2 and gamma > 2.
    pub const INFINITE_CRITICAL_1D: &str = "critical-infinite-d=1-alpha>2-gamma>2";
    /// lambda_c > 0 when the degrees have finite variance (gamma > 2).
    pub const POSITIVE_CRITICAL: &str = "critical-positive-finite-variance-degrees";
    /// lambda_c = 0 when the degrees have infinite variance (gamma < 2).
    pub const ZERO_CRITICAL: &str = "critical-zero-infinite-variance-degrees";
    /// At gamma = 2 the answer depends on the slowly varying tail factor.
    pub const GAMMA_TWO_BOUNDARY: &str = "gamma=2-boundary";
}

/// Tri-state answer for phase-diagram questions.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum TriState {
    Yes,
    No,
    /// On a boundary of the phase diagram where the answer is shape-dependent.
    Boundary,
    /// No result applies.
    Unknown,
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct RegimeReport {
    /// Conditionally on a positive weight, is the degree a.s. infinite?
    pub degrees_infinite: bool,
    /// Degree-tail exponent (infinite for constant weights).
    pub gamma: f64,
    pub degree_variance_finite: TriState,
    pub lambda_c_zero: TriState,
    pub lambda_c_finite: TriState,
    /// `field=value (tag)` entries justifying each classification.
    pub citations: Vec<String>,
}

pub fn classify_regime(params: &ModelParams) -> RegimeReport {
    let d = params.dimension as f64;
    let alpha = params.alpha;
    let gamma = params.gamma_exponent();
    let mut citations = Vec::new();

    let degrees_infinite = alpha <= d || gamma <= 1.0;
    if degrees_infinite {
        citations.push(format!("degrees_infinite=yes ({})", tags::INFINITE_DEGREES));
    } else {
        citations.push(format!(
            "degrees_infinite=no ({})",
            tags::POWER_LAW_DEGREES
        ));
    }

    let degree_variance_finite = if gamma > 2.0 {
        TriState::Yes
    } else if gamma == 2.0 {
        TriState::Boundary
    } else {
        TriState::No
    };
    citations.push(format!(
        "degree_variance_finite={} ({})",
        match degree_variance_finite {
            TriState::Yes => "yes",
            TriState::No => "no",
            TriState::Boundary => "boundary",
            TriState::Unknown => "unknown",
        },
        if gamma == 2.0 {
            tags::GAMMA_TWO_BOUNDARY
        } else {
            tags::POWER_LAW_DEGREES
        }
    ));

    let lambda_c_zero = if degrees_infinite {
        citations.push(format!("lambda_c_zero=yes ({})", tags::INFINITE_DEGREES));
        TriState::Yes
    } else if gamma < 2.0 {
        citations.push(format!("lambda_c_zero=yes ({})", tags::ZERO_CRITICAL));
        TriState::Yes
    } else if gamma == 2.0 {
        citations.push(format!(
            "lambda_c_zero=boundary ({})",
            tags::GAMMA_TWO_BOUNDARY
        ));
        TriState::Boundary
    } else {
        citations.push(format!("lambda_c_zero=no ({})", tags::POSITIVE_CRITICAL));
        TriState::No
    };

    let weights_all_zero = matches!(params.weights.effective(), WeightKind::Constant { value } if value == 0.0);
    // Both implemented families are bounded away from 0 unless a.s. zero:
    // Pareto has support [w_min, inf), constants are a point mass.
    let bounded_away_from_zero = !weights_all_zero;

    let lambda_c_finite = if lambda_c_zero == TriState::Yes {
        citations.push(format!(
            "lambda_c_finite=yes (lambda_c=0; {})",
            if degrees_infinite {
                tags::INFINITE_DEGREES
            } else {
                tags::ZERO_CRITICAL
            }
        ));
        TriState::Yes
    } else if params.dimension >= 2 && !weights_all_zero {
        citations.push(format!(
            "lambda_c_finite=yes ({})",
            tags::FINITE_CRITICAL_HIGH_D
        ));
        TriState::Yes
    } else if params.dimension == 1 && alpha > 1.0 && alpha <= 2.0 && bounded_away_from_zero {
        citations.push(format!(
            "lambda_c_finite=yes ({})",
            tags::FINITE_CRITICAL_1D_LONG_RANGE
        ));
        TriState::Yes
    } else if params.dimension == 1 && alpha > 2.0 && gamma > 2.0 {
        citations.push(format!(
            "lambda_c_finite=no ({})",
            tags::INFINITE_CRITICAL_1D
        ));
        TriState::No
    } else {
        citations.push("lambda_c_finite=unknown (no result applies)".into());
        TriState::Unknown
    };

    RegimeReport {
        degrees_infinite,
        gamma,
        degree_variance_finite,
        lambda_c_zero,
        lambda_c_finite,
        citations,
    }
}
