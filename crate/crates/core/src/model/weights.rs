//! Vertex-weight distributions.
//!
//! Two families cover the model: a degenerate constant (recovering classical
//! long-range percolation) and a Pareto law with survival function
//! `P(W > w) = (w/w_min)^{-(tau-1)}` for `w >= w_min`, the canonical instance
//! of a regularly varying tail with constant slowly varying factor.
//!
//! An optional mean normalization rescales samples so that `E[W] = 1`; it is
//! folded into the distribution as a deterministic scale factor, so scaled
//! Pareto stays Pareto (same tail exponent, shifted `w_min`) and every moment
//! formula below stays closed-form.

use serde::Serialize;

use crate::error::{CoreError, Result};
use crate::quad;

const QUAD_REL_TOL_1D: f64 = 1e-9;

#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
#[serde(tag = "kind", rename_all = "lowercase")]
pub enum WeightKind {
    Constant { value: f64 },
    Pareto { tau: f64, w_min: f64 },
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct WeightDistribution {
    pub kind: WeightKind,
    pub normalize_mean: bool,
}

impl WeightDistribution {
    pub fn constant(value: f64) -> Result<Self> {
        if !value.is_finite() || value < 0.0 {
            return Err(CoreError::Domain(format!(
                "constant weight must be a nonnegative real, got {value}"
            )));
        }
        Ok(WeightDistribution {
            kind: WeightKind::Constant { value },
            normalize_mean: false,
        })
    }

    pub fn pareto(tau: f64, w_min: f64) -> Result<Self> {
        if !tau.is_finite() || tau <= 1.0 {
            return Err(CoreError::Domain(format!(
                "pareto tail exponent requires tau > 1, got {tau}"
            )));
        }
        if !w_min.is_finite() || w_min <= 0.0 {
            return Err(CoreError::Domain(format!(
                "pareto scale requires w_min > 0, got {w_min}"
            )));
        }
        Ok(WeightDistribution {
            kind: WeightKind::Pareto { tau, w_min },
            normalize_mean: false,
        })
    }

    /// Request rescaling so that `E[W] = 1`. Rejected when the mean is
    /// infinite (Pareto with tau <= 2) or zero (constant 0).
    pub fn with_normalized_mean(mut self) -> Result<Self> {
        match self.kind {
            WeightKind::Constant { value } if value == 0.0 => Err(CoreError::Domain(
                "cannot normalize the mean of an a.s. zero weight".into(),
            )),
            WeightKind::Pareto { tau, .. } if tau <= 2.0 => Err(CoreError::InfiniteMoment(format!(
                "cannot normalize the mean: E[W] is infinite for tau = {tau} <= 2"
            ))),
            _ => {
                self.normalize_mean = true;
                Ok(self)
            }
        }
    }

    /// Scale factor applied to raw samples (1 unless mean-normalized).
    fn scale(&self) -> f64 {
        if !self.normalize_mean {
            return 1.0;
        }
        match self.kind {
            WeightKind::Constant { value } => 1.0 / value,
            WeightKind::Pareto { tau, w_min } => (tau - 2.0) / ((tau - 1.0) * w_min),
        }
    }

    /// The distribution with all deterministic scaling folded in.
    pub fn effective(&self) -> WeightKind {
        let s = self.scale();
        match self.kind {
            WeightKind::Constant { value } => WeightKind::Constant { value: value * s },
            WeightKind::Pareto { tau, w_min } => WeightKind::Pareto {
                tau,
                w_min: w_min * s,
            },
        }
    }

    /// Multiply samples by `factor > 0`, returning a plain (non-normalizing)
    /// distribution of the same family with the scaling folded in.
    pub fn scaled(&self, factor: f64) -> Self {
        let kind = match self.effective() {
            WeightKind::Constant { value } => WeightKind::Constant {
                value: value * factor,
            },
            WeightKind::Pareto { tau, w_min } => WeightKind::Pareto {
                tau,
                w_min: w_min * factor,
            },
        };
        WeightDistribution {
            kind,
            normalize_mean: false,
        }
    }

    /// Inverse-transform sample: maps a uniform `u` in (0,1) to a weight via
    /// the survival function, `w = w_min * u^{-1/(tau-1)}` for Pareto.
    #[inline]
    pub fn quantile_from_uniform(&self, u: f64) -> f64 {
        debug_assert!(u > 0.0 && u < 1.0);
        match self.effective() {
            WeightKind::Constant { value } => value,
            WeightKind::Pareto { tau, w_min } => w_min * libm::pow(u, -1.0 / (tau - 1.0)),
        }
    }

    /// Survival function `P(W > w)`.
    pub fn survival(&self, w: f64) -> f64 {
        match self.effective() {
            WeightKind::Constant { value } => {
                if w < value {
                    1.0
                } else {
                    0.0
                }
            }
            WeightKind::Pareto { tau, w_min } => {
                if w < w_min {
                    1.0
                } else {
                    libm::pow(w / w_min, -(tau - 1.0))
                }
            }
        }
    }

    /// Tail exponent tau (infinite for constant weights, where every moment
    /// is finite).
    pub fn tau(&self) -> f64 {
        match self.kind {
            WeightKind::Constant { .. } => f64::INFINITY,
            WeightKind::Pareto { tau, .. } => tau,
        }
    }

    /// `E[W^s]`; returns infinity when the moment diverges (s >= tau - 1).
    pub fn moment(&self, s: f64) -> Result<f64> {
        if !s.is_finite() || s < 0.0 {
            return Err(CoreError::Domain(format!(
                "moment order must be a nonnegative real, got {s}"
            )));
        }
        Ok(match self.effective() {
            WeightKind::Constant { value } => libm::pow(value, s),
            WeightKind::Pareto { tau, w_min } => {
                if s < tau - 1.0 {
                    (tau - 1.0) * libm::pow(w_min, s) / (tau - 1.0 - s)
                } else {
                    f64::INFINITY
                }
            }
        })
    }

    /// `E[W]`, possibly infinite.
    pub fn mean(&self) -> f64 {
        self.moment(1.0).expect("s = 1 is always in-domain")
    }

    /// `E[W^p 1{W <= t}]` for the effective distribution (closed form).
    fn truncated_moment(&self, t: f64, p: f64) -> f64 {
        match self.effective() {
            WeightKind::Constant { value } => {
                if value <= t {
                    libm::pow(value, p)
                } else {
                    0.0
                }
            }
            WeightKind::Pareto { tau, w_min } => {
                if t <= w_min {
                    return 0.0;
                }
                let e = p - tau + 1.0;
                let c = (tau - 1.0) * libm::pow(w_min, tau - 1.0);
                if e.abs() < 1e-12 {
                    c * libm::log(t / w_min)
                } else {
                    c * (libm::pow(t, e) - libm::pow(w_min, e)) / e
                }
            }
        }
    }

    /// `E[(cW) ∧ 1]` in closed form; finite for every tau > 1.
    pub fn min_expectation(&self, c: f64) -> Result<f64> {
        if !c.is_finite() || c < 0.0 {
            return Err(CoreError::Domain(format!(
                "min_expectation requires c >= 0, got {c}"
            )));
        }
        if c == 0.0 {
            return Ok(0.0);
        }
        match self.effective() {
            WeightKind::Constant { value } => Ok((c * value).min(1.0)),
            WeightKind::Pareto { w_min, .. } => {
                let t = 1.0 / c;
                if t <= w_min {
                    Ok(1.0)
                } else {
                    Ok(self.survival(t) + c * self.truncated_moment(t, 1.0))
                }
            }
        }
    }

    /// Laplace transform `E[e^{-cW}]`.
    ///
    /// Closed form for constant weights; adaptive quadrature over the
    /// quantile representation for Pareto (relative error <= 1e-9).
    pub fn laplace(&self, c: f64) -> Result<f64> {
        Ok(1.0 - self.laplace_complement(c)?)
    }

    /// `E[1 - e^{-cW}]`, the quantity the edge law actually consumes.
    ///
    /// Computed directly (rather than as `1 - laplace`) so that tiny values
    /// keep full relative precision in degree sums over far shells.
    pub fn laplace_complement(&self, c: f64) -> Result<f64> {
        if !c.is_finite() || c < 0.0 {
            return Err(CoreError::Domain(format!(
                "laplace transform requires c >= 0, got {c}"
            )));
        }
        if c == 0.0 {
            return Ok(0.0);
        }
        match self.effective() {
            WeightKind::Constant { value } => Ok(-libm::expm1(-c * value)),
            WeightKind::Pareto { .. } => {
                let r = quad::integrate(
                    |u| -libm::expm1(-c * self.quantile_from_uniform(u)),
                    0.0,
                    1.0,
                    QUAD_REL_TOL_1D,
                    1e-300,
                )
                .map_err(|e| {
                    CoreError::Numerical(format!("laplace_complement(c = {c}): {e}"))
                })?;
                Ok(r.value)
            }
        }
    }
}

/// `E[((W1 W2 / u) ∧ 1)^power]` for independent copies `W1, W2`.
///
/// The inner expectation over `W2` is closed-form for both families; the
/// outer one is adaptive quadrature over the quantile of `W1` (relative
/// error <= 1e-6, the two-dimensional tolerance).
pub fn min_product_moment(dist: &WeightDistribution, u: f64, power: u32) -> Result<f64> {
    if !u.is_finite() || u <= 0.0 {
        return Err(CoreError::Domain(format!(
            "min_product_moment requires u > 0, got {u}"
        )));
    }
    if power != 1 && power != 2 {
        return Err(CoreError::Domain(format!(
            "min_product_moment power must be 1 or 2, got {power}"
        )));
    }
    let p = power as f64;
    let inner = |w1: f64| -> f64 {
        // E[((w1 W / u) ∧ 1)^p]
        let theta = u / w1;
        match dist.effective() {
            WeightKind::Constant { value } => libm::pow((value / theta).min(1.0), p),
            WeightKind::Pareto { w_min, .. } => {
                if theta <= w_min {
                    1.0
                } else {
                    dist.survival(theta)
                        + libm::pow(w1 / u, p) * dist.truncated_moment(theta, p)
                }
            }
        }
    };
    match dist.effective() {
        WeightKind::Constant { value } => Ok(inner(value)),
        WeightKind::Pareto { .. } => {
            let r = quad::integrate(
                |s| inner(dist.quantile_from_uniform(s)),
                0.0,
                1.0,
                1e-6,
                1e-300,
            )
            .map_err(|e| CoreError::Numerical(format!("min_product_moment(u = {u}): {e}")))?;
            Ok(r.value)
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::rng;

    #[test]
    fn construction_validates() {
        assert!(WeightDistribution::constant(-1.0).is_err());
        assert!(WeightDistribution::pareto(1.0, 1.0).is_err());
        assert!(WeightDistribution::pareto(2.0, 0.0).is_err());
        assert!(WeightDistribution::constant(0.0).is_ok());
    }

    #[test]
    fn normalization_rules() {
        // tau <= 2 has infinite mean.
        assert!(WeightDistribution::pareto(2.0, 1.0)
            .unwrap()
            .with_normalized_mean()
            .is_err());
        assert!(WeightDistribution::constant(0.0)
            .unwrap()
            .with_normalized_mean()
            .is_err());
        let d = WeightDistribution::pareto(4.0, 1.0)
            .unwrap()
            .with_normalized_mean()
            .unwrap();
        assert!((d.mean() - 1.0).abs() < 1e-12);
        // E[W^2] = 3 * (2/3)^2 = 4/3 for the normalized Pareto(4).
        assert!((d.moment(2.0).unwrap() - 4.0 / 3.0).abs() < 1e-12);
    }

    #[test]
    fn moments_match_closed_forms() {
        let d = WeightDistribution::pareto(3.0, 1.0).unwrap();
        // E[W^{1/2}] = 2/(2 - 1/2) = 4/3 via the closed form integral.
        assert!((d.moment(0.5).unwrap() - 4.0 / 3.0).abs() < 1e-12);
        assert_eq!(d.moment(2.0).unwrap(), f64::INFINITY);
        let c = WeightDistribution::constant(1.0).unwrap();
        assert_eq!(c.moment(7.3).unwrap(), 1.0);
        // Divergence boundary: s >= tau - 1.
        let d2 = WeightDistribution::pareto(2.0, 1.0).unwrap();
        assert_eq!(d2.moment(1.0).unwrap(), f64::INFINITY);
    }

    #[test]
    fn pareto_tail_is_exact() {
        let d = WeightDistribution::pareto(2.0, 1.0).unwrap();
        assert_eq!(d.survival(0.5), 1.0);
        assert!((d.survival(10.0) - 0.1).abs() < 1e-15);
        // Inverse transform hits the survival function: u = 0.25 -> w = 4.
        assert!((d.quantile_from_uniform(0.25) - 4.0).abs() < 1e-12);
    }

    #[test]
    fn laplace_closed_forms_and_quadrature() {
        let c1 = WeightDistribution::constant(1.0).unwrap();
        assert_eq!(c1.laplace(0.0).unwrap(), 1.0);
        assert!((c1.laplace(1.0).unwrap() - libm::exp(-1.0)).abs() < 1e-14);

        // Pareto(2), c = 1: E[e^{-W}] = e^{-1} - E_1(1) = 0.14849550677592205.
        let p2 = WeightDistribution::pareto(2.0, 1.0).unwrap();
        let v = p2.laplace(1.0).unwrap();
        assert!((v - 0.148_495_506_775_922_05).abs() < 1e-9, "{v}");
    }

    #[test]
    fn laplace_is_strictly_decreasing_from_one() {
        let d = WeightDistribution::pareto(2.5, 1.0).unwrap();
        let mut prev = d.laplace(0.0).unwrap();
        assert_eq!(prev, 1.0);
        for c in [1e-3, 1e-2, 0.1, 1.0, 10.0] {
            let v = d.laplace(c).unwrap();
            assert!(v < prev && v > 0.0, "c = {c}");
            prev = v;
        }
    }

    #[test]
    fn laplace_complement_against_monte_carlo() {
        // Independent route: sample 2e5 weights, average 1 - e^{-cW}.
        let d = WeightDistribution::pareto(1.7, 1.0).unwrap();
        let c = 0.37;
        let n = 200_000u64;
        let mut acc = 0.0;
        for i in 0..n {
            let w = d.quantile_from_uniform(rng::uniform(99, rng::STREAM_WEIGHTS, i));
            acc += -libm::expm1(-c * w);
        }
        let mc = acc / n as f64;
        let exact = d.laplace_complement(c).unwrap();
        assert!((mc - exact).abs() < 3e-3, "mc {mc} vs quad {exact}");
    }

    #[test]
    fn min_expectation_closed_form() {
        let c1 = WeightDistribution::constant(1.0).unwrap();
        assert_eq!(c1.min_expectation(0.5).unwrap(), 0.5);
        assert_eq!(c1.min_expectation(3.0).unwrap(), 1.0);
        // Pareto(3): brute force via quantile sampling.
        let d = WeightDistribution::pareto(3.0, 1.0).unwrap();
        for c in [0.01, 0.3, 2.0] {
            let exact = d.min_expectation(c).unwrap();
            let n = 200_000u64;
            let mut acc = 0.0;
            for i in 0..n {
                let w = d.quantile_from_uniform(rng::uniform(5, rng::STREAM_WEIGHTS, i));
                acc += (c * w).min(1.0);
            }
            let mc = acc / n as f64;
            assert!((mc - exact).abs() < 3e-3, "c = {c}: mc {mc} vs {exact}");
        }
    }

    #[test]
    fn min_product_moment_examples() {
        let c1 = WeightDistribution::constant(1.0).unwrap();
        assert_eq!(min_product_moment(&c1, 2.0, 2).unwrap(), 0.25);
        assert_eq!(min_product_moment(&c1, 0.5, 1).unwrap(), 1.0);
        assert_eq!(min_product_moment(&c1, 0.5, 2).unwrap(), 1.0);
        assert!(min_product_moment(&c1, 0.0, 2).is_err());
        assert!(min_product_moment(&c1, 1.0, 3).is_err());
    }

    #[test]
    fn min_product_moment_matches_monte_carlo() {
        let d = WeightDistribution::pareto(3.0, 1.0).unwrap();
        for (u, power) in [(10.0, 2u32), (100.0, 2), (10.0, 1)] {
            let exact = min_product_moment(&d, u, power).unwrap();
            let n = 400_000u64;
            let mut acc = 0.0;
            for i in 0..n {
                let w1 = d.quantile_from_uniform(rng::uniform(11, rng::STREAM_WEIGHTS, 2 * i));
                let w2 = d.quantile_from_uniform(rng::uniform(11, rng::STREAM_WEIGHTS, 2 * i + 1));
                acc += libm::pow((w1 * w2 / u).min(1.0), power as f64);
            }
            let mc = acc / n as f64;
            let tol = 4.0 * (exact / n as f64).sqrt() + 1e-4;
            assert!(
                (mc - exact).abs() < tol,
                "u = {u}, p = {power}: mc {mc} vs quad {exact}"
            );
        }
    }

    #[test]
    fn min_product_moment_nonincreasing_in_u() {
        let d = WeightDistribution::pareto(3.0, 1.0).unwrap();
        let mut prev = f64::INFINITY;
        for u in [1.0, 10.0, 100.0, 1000.0] {
            let g = min_product_moment(&d, u, 2).unwrap();
            assert!(g <= prev * (1.0 + 1e-9) && g >= 0.0 && g <= 1.0);
            prev = g;
        }
    }

    #[test]
    fn scaling_preserves_tail_exponent() {
        let d = WeightDistribution::pareto(2.0, 1.0).unwrap();
        let s = d.scaled(0.5);
        match s.kind {
            WeightKind::Pareto { tau, w_min } => {
                assert_eq!(tau, 2.0);
                assert!((w_min - 0.5).abs() < 1e-15);
            }
            _ => panic!("scaled Pareto must stay Pareto"),
        }
    }
}
