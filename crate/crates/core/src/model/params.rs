//! Model parameters and the edge law.

use serde::Serialize;

use crate::error::{CoreError, Result};
use crate::model::weights::WeightDistribution;

/// Norm used for lattice displacements. Only the Euclidean norm is
/// implemented; the field exists so outputs can record the choice.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum Norm {
    L2,
}

/// Full specification of the percolation model: lattice dimension `d`,
/// decay exponent `alpha`, percolation parameter `lambda` and the vertex
/// weight law.
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct ModelParams {
    pub dimension: u32,
    pub alpha: f64,
    pub lambda: f64,
    pub weights: WeightDistribution,
    pub norm: Norm,
}

impl ModelParams {
    pub fn new(dimension: u32, alpha: f64, lambda: f64, weights: WeightDistribution) -> Result<Self> {
        if dimension < 1 {
            return Err(CoreError::Domain("dimension must be >= 1".into()));
        }
        if !alpha.is_finite() || alpha <= 0.0 {
            return Err(CoreError::Domain(format!(
                "alpha must be a positive real, got {alpha}"
            )));
        }
        if !lambda.is_finite() || lambda <= 0.0 {
            return Err(CoreError::Domain(format!(
                "lambda must be a positive real, got {lambda}"
            )));
        }
        Ok(ModelParams {
            dimension,
            alpha,
            lambda,
            weights,
            norm: Norm::L2,
        })
    }

    /// Degree-tail exponent `gamma = alpha (tau - 1) / d`; infinite for
    /// constant weights, whose moments are all finite.
    pub fn gamma_exponent(&self) -> f64 {
        let tau = self.weights.tau();
        if tau.is_infinite() {
            f64::INFINITY
        } else {
            self.alpha * (tau - 1.0) / self.dimension as f64
        }
    }

    /// The equivalent model with `lambda = 1`: multiplying every weight by
    /// `sqrt(lambda)` leaves all edge probabilities pointwise unchanged.
    pub fn reparametrize_unit_lambda(&self) -> Self {
        if self.lambda == 1.0 {
            return *self;
        }
        ModelParams {
            dimension: self.dimension,
            alpha: self.alpha,
            lambda: 1.0,
            weights: self.weights.scaled(libm::sqrt(self.lambda)),
            norm: self.norm,
        }
    }
}

/// Probability that two vertices with weights `w_x`, `w_y` at distance `r`
/// are joined: `1 - exp(-lambda w_x w_y / r^alpha)`.
pub fn edge_probability(w_x: f64, w_y: f64, r: f64, params: &ModelParams) -> Result<f64> {
    if !(r > 0.0) || !r.is_finite() {
        return Err(CoreError::Domain(format!(
            "edge_probability requires r > 0 (no self-edges), got {r}"
        )));
    }
    if w_x < 0.0 || w_y < 0.0 {
        return Err(CoreError::Domain("weights must be nonnegative".into()));
    }
    let exponent = params.lambda * w_x * w_y / libm::pow(r, params.alpha);
    Ok(-libm::expm1(-exponent))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::rng;

    fn params(d: u32, alpha: f64, lambda: f64, weights: WeightDistribution) -> ModelParams {
        ModelParams::new(d, alpha, lambda, weights).unwrap()
    }

    fn const1() -> WeightDistribution {
        WeightDistribution::constant(1.0).unwrap()
    }

    #[test]
    fn validation() {
        assert!(ModelParams::new(0, 1.0, 1.0, const1()).is_err());
        assert!(ModelParams::new(1, 0.0, 1.0, const1()).is_err());
        assert!(ModelParams::new(1, 1.0, -1.0, const1()).is_err());
    }

    #[test]
    fn edge_probability_examples() {
        let p = params(1, 2.0, 1.0, const1());
        let v = edge_probability(1.0, 1.0, 1.0, &p).unwrap();
        assert!((v - (1.0 - libm::exp(-1.0))).abs() < 1e-15);
        assert_eq!(edge_probability(0.0, 5.0, 3.0, &p).unwrap(), 0.0);

        let p2 = params(1, 2.0, 2.0, const1());
        let v2 = edge_probability(1.0, 1.0, 2.0, &p2).unwrap();
        assert!((v2 - (1.0 - libm::exp(-0.5))).abs() < 1e-15);

        assert!(edge_probability(1.0, 1.0, 0.0, &p).is_err());
        assert!(edge_probability(1.0, 1.0, -1.0, &p).is_err());
    }

    #[test]
    fn edge_probability_monotone_and_bounded() {
        let base = params(2, 3.0, 1.0, const1());
        let mut prev = 0.0;
        for lambda in [0.1, 0.5, 1.0, 5.0, 50.0] {
            let p = params(2, 3.0, lambda, const1());
            let v = edge_probability(1.0, 2.0, 3.0, &p).unwrap();
            assert!(v >= prev && (0.0..=1.0).contains(&v));
            prev = v;
        }
        prev = 1.0;
        for r in [0.5, 1.0, 2.0, 8.0, 100.0] {
            let v = edge_probability(1.0, 2.0, r, &base).unwrap();
            assert!(v <= prev && (0.0..=1.0).contains(&v));
            prev = v;
        }
        prev = 0.0;
        for w in [0.0, 0.5, 1.0, 4.0, 1e6] {
            let v = edge_probability(w, 2.0, 3.0, &base).unwrap();
            assert!(v >= prev);
            prev = v;
        }
    }

    #[test]
    fn gamma_exponent_formula() {
        let p = params(1, 3.0, 1.0, WeightDistribution::pareto(2.0, 1.0).unwrap());
        assert!((p.gamma_exponent() - 3.0).abs() < 1e-15);
        let p = params(2, 2.5, 1.0, WeightDistribution::pareto(2.0, 1.0).unwrap());
        assert!((p.gamma_exponent() - 1.25).abs() < 1e-15);
        let p = params(2, 2.5, 1.0, const1());
        assert_eq!(p.gamma_exponent(), f64::INFINITY);
    }

    #[test]
    fn reparametrization_identity_on_examples() {
        // (lambda = 4, constant 1) -> (lambda = 1, constant 2).
        let p = params(1, 2.0, 4.0, const1());
        let q = p.reparametrize_unit_lambda();
        assert_eq!(q.lambda, 1.0);
        for r in [0.5, 1.0, 7.0] {
            let a = edge_probability(1.0, 1.0, r, &p).unwrap();
            let b = edge_probability(2.0, 2.0, r, &q).unwrap();
            assert!((a - b).abs() < 1e-15);
        }
        // lambda = 1 is the identity.
        let p1 = params(1, 2.0, 1.0, const1());
        assert_eq!(p1.reparametrize_unit_lambda(), p1);
        // Pareto scaling preserves the tail exponent.
        let pp = params(
            1,
            2.0,
            0.25,
            WeightDistribution::pareto(2.0, 1.0).unwrap(),
        );
        let qq = pp.reparametrize_unit_lambda();
        assert_eq!(qq.weights.tau(), 2.0);
    }

    #[test]
    fn reparametrization_identity_random_sweep() {
        // p(w_x, w_y, r; lambda) = p(sqrt(lambda) w_x, sqrt(lambda) w_y, r; 1)
        // over a deterministic random sweep of the parameter space.
        for i in 0..1000u64 {
            let u = |k: u64| rng::uniform(2024, rng::STREAM_TRIALS, 5 * i + k);
            let lambda = 0.01 + 20.0 * u(0);
            let alpha = 0.2 + 4.0 * u(1);
            let wx = 5.0 * u(2);
            let wy = 5.0 * u(3);
            let r = 0.1 + 30.0 * u(4);
            let p = params(2, alpha, lambda, const1());
            let q = p.reparametrize_unit_lambda();
            let s = libm::sqrt(lambda);
            let a = edge_probability(wx, wy, r, &p).unwrap();
            let b = edge_probability(s * wx, s * wy, r, &q).unwrap();
            assert!((a - b).abs() <= 1e-12, "i = {i}: {a} vs {b}");
        }
    }
}
