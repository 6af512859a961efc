//! Closed-form constants of the model.

use serde::Serialize;

use crate::error::{CoreError, Result};
use crate::model::latsum::lattice_sum;
use crate::model::params::ModelParams;
use crate::special::{gamma_function, unit_ball_volume};

/// The degree-growth constant
/// `xi = lambda^{d/alpha} v_d Gamma(1 - d/alpha) E[W^{d/alpha}]`,
/// governing `E[D_0 | W_0 = w] ~ xi w^{d/alpha}`.
pub fn xi_constant(params: &ModelParams) -> Result<f64> {
    let d = params.dimension as f64;
    if params.alpha <= d {
        return Err(CoreError::Domain(format!(
            "xi is defined for alpha > d, got alpha = {} in d = {}",
            params.alpha, params.dimension
        )));
    }
    let gamma = params.gamma_exponent();
    if gamma <= 1.0 {
        return Err(CoreError::InfiniteMoment(format!(
            "E[W^(d/alpha)] is infinite for gamma = {gamma} <= 1"
        )));
    }
    let ratio = d / params.alpha;
    let moment = params.weights.moment(ratio)?;
    Ok(libm::pow(params.lambda, ratio)
        * unit_ball_volume(params.dimension)?
        * gamma_function(1.0 - ratio)?
        * moment)
}

/// The subcritical lower bound `lambda_c >= 1 / (E[W^2] sum_{x != 0} |x|^{-alpha})`.
///
/// Requires a finite second moment, `alpha > d`, and weights normalized so
/// that `E[W] = 1` (the convention under which the bound is stated).
pub fn lambda_c_lower_bound(params: &ModelParams, rel_tol: f64) -> Result<f64> {
    let second = params.weights.moment(2.0)?;
    if !second.is_finite() {
        return Err(CoreError::InfiniteMoment(
            "lambda_c lower bound needs E[W^2] < infinity (Pareto tau > 3)".into(),
        ));
    }
    let mean = params.weights.mean();
    if (mean - 1.0).abs() > 1e-9 {
        return Err(CoreError::Domain(format!(
            "lambda_c lower bound assumes weights normalized to E[W] = 1, got E[W] = {mean}; \
             set normalize_mean"
        )));
    }
    let s = lattice_sum(params.dimension, params.alpha, rel_tol)?;
    Ok(1.0 / (second * s.value))
}

/// Candidate constants for the doubly logarithmic distance law
/// `d(0,x) / loglog|x| -> 2/|log kappa|`.
#[derive(Debug, Clone, Copy, Serialize)]
pub struct DistanceConstants {
    /// `2 / |log(gamma - 1)|`, matching the upper bound in all cases.
    pub from_gamma: f64,
    /// `2 / |log(kappa)|` with `kappa = gamma - 1` for tau <= 2 and
    /// `kappa = alpha/d - 1` for tau > 2, matching the lower bound.
    pub from_alpha_ratio: f64,
    /// The two candidates coincide exactly when tau <= 2.
    pub equal: bool,
}

/// Pure formula core, taking the three exponents directly.
pub fn distance_constants_from_exponents(gamma: f64, alpha_over_d: f64, tau: f64) -> (f64, f64) {
    let c_gamma = 2.0 / libm::fabs(libm::log(gamma - 1.0));
    let kappa = if tau <= 2.0 {
        gamma - 1.0
    } else {
        alpha_over_d - 1.0
    };
    (c_gamma, 2.0 / libm::fabs(libm::log(kappa)))
}

/// Both candidate distance constants for parameters with `gamma` in (1,2).
pub fn distance_constant(params: &ModelParams) -> Result<DistanceConstants> {
    let gamma = params.gamma_exponent();
    if !(gamma > 1.0 && gamma < 2.0) {
        return Err(CoreError::Regime(format!(
            "doubly logarithmic distance constants need gamma in (1,2), got {gamma}"
        )));
    }
    let tau = params.weights.tau();
    let alpha_over_d = params.alpha / params.dimension as f64;
    let (from_gamma, from_alpha_ratio) =
        distance_constants_from_exponents(gamma, alpha_over_d, tau);
    Ok(DistanceConstants {
        from_gamma,
        from_alpha_ratio,
        equal: tau <= 2.0,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::model::weights::WeightDistribution;

    #[test]
    fn xi_examples() {
        // d=1, alpha=2, lambda=1, Pareto(3): 2 * sqrt(pi) * 4/3.
        let p = ModelParams::new(1, 2.0, 1.0, WeightDistribution::pareto(3.0, 1.0).unwrap())
            .unwrap();
        let xi = xi_constant(&p).unwrap();
        let expect = 2.0 * std::f64::consts::PI.sqrt() * (4.0 / 3.0);
        assert!((xi - expect).abs() < 1e-10, "{xi} vs {expect}");
        assert!((xi - 4.726_543_6).abs() < 1e-5);

        // Constant weights: E[W^{1/2}] = 1.
        let c = ModelParams::new(1, 2.0, 1.0, WeightDistribution::constant(1.0).unwrap())
            .unwrap();
        let xic = xi_constant(&c).unwrap();
        assert!((xic - 2.0 * std::f64::consts::PI.sqrt()).abs() < 1e-10);

        // Scaling law: lambda -> 4 lambda doubles xi when d/alpha = 1/2.
        let p4 = ModelParams::new(1, 2.0, 4.0, WeightDistribution::pareto(3.0, 1.0).unwrap())
            .unwrap();
        assert!((xi_constant(&p4).unwrap() / xi - 2.0).abs() < 1e-12);
    }

    #[test]
    fn xi_error_cases() {
        // gamma <= 1: infinite moment.
        let p = ModelParams::new(1, 2.0, 1.0, WeightDistribution::pareto(1.4, 1.0).unwrap())
            .unwrap();
        assert!(matches!(xi_constant(&p), Err(CoreError::InfiniteMoment(_))));
        // alpha <= d: domain.
        let q = ModelParams::new(2, 1.5, 1.0, WeightDistribution::pareto(4.0, 1.0).unwrap())
            .unwrap();
        assert!(matches!(xi_constant(&q), Err(CoreError::Domain(_))));
    }

    #[test]
    fn lambda_c_bound_examples() {
        // Constant(1), d=1, alpha=2: 1 / (pi^2/3) = 0.3039635509.
        let p = ModelParams::new(1, 2.0, 1.0, WeightDistribution::constant(1.0).unwrap())
            .unwrap();
        let b = lambda_c_lower_bound(&p, 1e-7).unwrap();
        assert!((b - 0.303_963_550_9).abs() < 1e-6, "{b}");

        // Normalized Pareto(4): E[W^2] = 4/3, bound = 3/(4 * pi^2/3).
        let w = WeightDistribution::pareto(4.0, 1.0)
            .unwrap()
            .with_normalized_mean()
            .unwrap();
        let p = ModelParams::new(1, 2.0, 1.0, w).unwrap();
        let b = lambda_c_lower_bound(&p, 1e-7).unwrap();
        assert!((b - 0.227_972_663_2).abs() < 1e-6, "{b}");

        // Infinite variance: inapplicable.
        let w = WeightDistribution::pareto(2.5, 1.0).unwrap();
        let p = ModelParams::new(1, 2.0, 1.0, w).unwrap();
        assert!(matches!(
            lambda_c_lower_bound(&p, 1e-6),
            Err(CoreError::InfiniteMoment(_))
        ));

        // Unnormalized mean != 1 is rejected rather than silently rescaled.
        let w = WeightDistribution::pareto(4.0, 1.0).unwrap();
        let p = ModelParams::new(1, 2.0, 1.0, w).unwrap();
        assert!(matches!(
            lambda_c_lower_bound(&p, 1e-6),
            Err(CoreError::Domain(_))
        ));
    }

    #[test]
    fn distance_constant_formulas() {
        // Formula core at the exponent level.
        let (a, b) = distance_constants_from_exponents(1.5, 3.0, 1.5);
        assert!((a - 2.0 / libm::log(2.0)).abs() < 1e-12);
        assert!((a - 2.885_390_1).abs() < 1e-6);
        // tau <= 2: kappa = gamma - 1, both constants agree.
        assert!((a - b).abs() < 1e-12);

        // tau > 2 branch: kappa = alpha/d - 1 = 0.75, 2/|ln 0.75| = 6.95211899...
        let (a, b) = distance_constants_from_exponents(1.5, 1.75, 3.0);
        assert!((a - 2.885_390_1).abs() < 1e-6);
        assert!((b - 2.0 / 0.287_682_072_451_780_9).abs() < 1e-10);
        assert!((b - 6.952_119_0).abs() < 1e-6);

        // gamma -> 2 from below: the constant diverges.
        let (a, _) = distance_constants_from_exponents(1.999_999, 2.0, 1.5);
        assert!(a > 100.0);
    }

    #[test]
    fn distance_constant_on_params() {
        // d=2, alpha=2.5, tau=2.2: gamma = 1.5, tau > 2 gives distinct candidates.
        let w = WeightDistribution::pareto(2.2, 1.0).unwrap();
        let p = ModelParams::new(2, 2.5, 1.0, w).unwrap();
        let c = distance_constant(&p).unwrap();
        assert!(!c.equal);
        assert!((c.from_gamma - 2.0 / libm::log(2.0)).abs() < 1e-12);
        // kappa = 1.25 - 1 = 0.25.
        assert!((c.from_alpha_ratio - 2.0 / libm::log(4.0)).abs() < 1e-12);

        // tau <= 2: flagged equal.
        let w = WeightDistribution::pareto(2.0, 1.0).unwrap();
        let p = ModelParams::new(2, 3.0, 1.0, w).unwrap(); // gamma = 1.5
        let c = distance_constant(&p).unwrap();
        assert!(c.equal);
        assert_eq!(c.from_gamma, c.from_alpha_ratio);

        // Out of regime.
        let w = WeightDistribution::pareto(4.0, 1.0).unwrap();
        let p = ModelParams::new(1, 3.0, 1.0, w).unwrap(); // gamma = 9
        assert!(matches!(distance_constant(&p), Err(CoreError::Regime(_))));
    }
}
