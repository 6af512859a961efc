//! Origin-centered degree sampling on the infinite lattice, truncated to a
//! ball of radius `R`, together with rigorous bounds on what the truncation
//! discards.
//!
//! Points are keyed by their coordinates (not by any box index), so degree
//! samples at different radii but equal seeds are coupled: enlarging the
//! ball only adds neighbors.

use std::collections::BTreeMap;

use crate::error::{CoreError, Result};
use crate::graph::scan::edge_prob_raw;
use crate::lattice::ball_offsets;
use crate::model::latsum::{
    lattice_tail_log_upper, lattice_tail_lower, lattice_tail_upper,
};
use crate::model::params::ModelParams;
use crate::model::weights::WeightKind;
use crate::rng;
use crate::special::unit_ball_volume;

const ENUM_BUDGET: u64 = 300_000_000;

/// Precomputed ball geometry shared by batches of origin-degree samples.
pub struct OriginBall {
    pub radius: f64,
    keys: Vec<u64>,
    norms: Vec<f64>,
    rpow: Vec<f64>,
    origin_key: u64,
}

impl OriginBall {
    pub fn new(dimension: u32, radius: f64, alpha: f64) -> Self {
        let offsets = ball_offsets(dimension, radius);
        let mut keys = Vec::with_capacity(offsets.len());
        let mut norms = Vec::with_capacity(offsets.len());
        let mut rpow = Vec::with_capacity(offsets.len());
        for (coords, n2) in &offsets {
            keys.push(rng::coord_key(coords));
            norms.push((*n2 as f64).sqrt());
            rpow.push(libm::pow(*n2 as f64, -alpha / 2.0));
        }
        OriginBall {
            radius,
            keys,
            norms,
            rpow,
            origin_key: rng::coord_key(&vec![0i64; dimension as usize]),
        }
    }
}

/// One truncated degree sample: draws `W_0` (unless pinned) and all ball
/// weights, then Bernoulli edges from the origin. Returns `(w0, degree)`.
pub fn origin_degree_with_ball(
    params: &ModelParams,
    ball: &OriginBall,
    seed: u64,
    pinned_w0: Option<f64>,
) -> (f64, u64) {
    let w0 = pinned_w0.unwrap_or_else(|| {
        params
            .weights
            .quantile_from_uniform(rng::uniform(seed, rng::STREAM_WEIGHTS, ball.origin_key))
    });
    let coef = params.lambda * w0;
    let mut degree = 0u64;
    const SAFETY: f64 = 1.0 + 1e-9;
    for k in 0..ball.keys.len() {
        let key = ball.keys[k];
        let u = rng::uniform(seed, rng::STREAM_EDGES, key);
        let w_y = params
            .weights
            .quantile_from_uniform(rng::uniform(seed, rng::STREAM_WEIGHTS, key));
        // Majorant rejection, then the exact edge law.
        if u < coef * w_y * ball.rpow[k] * SAFETY
            && u < edge_prob_raw(params.lambda, w0, w_y, ball.norms[k], params.alpha)
        {
            degree += 1;
        }
    }
    (w0, degree)
}

/// Truncated origin degree: samples `W_0` and every weight in the ball of
/// radius `radius`, then the edges from the origin.
pub fn origin_degree_sample(params: &ModelParams, radius: f64, seed: u64) -> (f64, u64) {
    let ball = OriginBall::new(params.dimension, radius, params.alpha);
    origin_degree_with_ball(params, &ball, seed, None)
}

/// `E[(cW) ∧ 1]`-based closure for the truncated-degree tail
/// `sum_{|y| > radius} (1 - E[e^{-c W |y|^{-alpha}}])`, all in closed form.
///
/// `c = lambda * w`. Requires `alpha > d`; returns infinity when the full
/// sum diverges (gamma <= 1).
fn tail_closure(params: &ModelParams, c: f64, radius: f64) -> Result<f64> {
    let d = params.dimension;
    let alpha = params.alpha;
    match params.weights.effective() {
        WeightKind::Constant { value } => {
            if value == 0.0 || c == 0.0 {
                return Ok(0.0);
            }
            Ok(c * value * lattice_tail_upper(d, alpha, radius)?)
        }
        WeightKind::Pareto { tau, w_min } => {
            if c == 0.0 {
                return Ok(0.0);
            }
            let gamma = params.gamma_exponent();
            if gamma <= 1.0 {
                return Ok(f64::INFINITY);
            }
            let cm = c * w_min;
            if tau > 2.0 {
                // Finite mean: 1 - E[e^{-x W}] <= x E[W].
                let mean = params.weights.mean();
                Ok(c * mean * lattice_tail_upper(d, alpha, radius)?)
            } else if tau < 2.0 {
                // E[(c'W) ∧ 1] <= (c' w_min)^{tau-1} (1 + (tau-1)/(2-tau))
                // valid once c' w_min <= 1, i.e. |y|^alpha >= cm.
                if cm * libm::pow(radius, -alpha) > 1.0 {
                    return Err(CoreError::Domain(format!(
                        "closure radius {radius} below the saturation scale (cm = {cm})"
                    )));
                }
                let a = libm::pow(cm, tau - 1.0) * (1.0 + (tau - 1.0) / (2.0 - tau));
                Ok(a * lattice_tail_upper(d, alpha * (tau - 1.0), radius)?)
            } else {
                // tau = 2: E[(c'W) ∧ 1] = c' w_min (1 - ln(c' w_min)); the
                // log splits into a plain and a log-weighted lattice tail.
                if cm * libm::pow(radius, -alpha) > 1.0 {
                    return Err(CoreError::Domain(format!(
                        "closure radius {radius} below the saturation scale (cm = {cm})"
                    )));
                }
                let plain_coef = 1.0 - libm::log(cm);
                let plain = if plain_coef >= 0.0 {
                    plain_coef * lattice_tail_upper(d, alpha, radius)?
                } else {
                    // Negative coefficient: a lower bound on the tail keeps
                    // the overall expression an upper bound.
                    plain_coef * lattice_tail_lower(d, alpha, radius)?
                };
                Ok(cm * (plain + alpha * lattice_tail_log_upper(d, alpha, radius)?))
            }
        }
    }
}

/// Distinct squared radii and multiplicities in the annulus `lo < |y| <= hi`.
fn annulus_shells(dimension: u32, lo: f64, hi: f64) -> Result<BTreeMap<u64, u64>> {
    let hi_int = libm::floor(hi) as i64;
    let points = ((2 * hi_int + 1) as u64).checked_pow(dimension).unwrap_or(u64::MAX);
    if points > ENUM_BUDGET {
        return Err(CoreError::Budget(format!(
            "shell enumeration to radius {hi} needs {points} points (budget {ENUM_BUDGET})"
        )));
    }
    let lo2 = lo * lo;
    let hi2 = hi * hi;
    let mut shells = BTreeMap::new();
    for (_, n2) in ball_offsets(dimension, hi) {
        let r2 = n2 as f64;
        if r2 > lo2 && r2 <= hi2 {
            *shells.entry(n2).or_insert(0u64) += 1;
        }
    }
    Ok(shells)
}

/// Upper bound on the expected degree lost to truncation,
/// `E[D_0 - D_0^{(R)} | W_0 = w]`, valid for every tau > 1.
///
/// Shells between `R` and the saturation scale are summed exactly (one
/// Laplace-transform evaluation per distinct radius); beyond that the
/// `1 - e^{-x} <= x ∧ 1` closure applies in closed form. Returns infinity
/// when the degree itself is a.s. infinite (gamma <= 1).
pub fn truncation_bound(params: &ModelParams, w: f64, radius: f64) -> Result<f64> {
    truncation_bound_impl(params, w, radius, false)
}

/// Closed-form-only variant of [`truncation_bound`]: skips the exact shell
/// sums, so it is looser near the saturation scale but costs microseconds.
pub fn truncation_bound_closed(params: &ModelParams, w: f64, radius: f64) -> Result<f64> {
    truncation_bound_impl(params, w, radius, true)
}

fn truncation_bound_impl(
    params: &ModelParams,
    w: f64,
    radius: f64,
    closed_only: bool,
) -> Result<f64> {
    let d = params.dimension;
    let df = d as f64;
    if params.alpha <= df {
        return Err(CoreError::Divergent(format!(
            "expected degree diverges for alpha = {} <= d = {d}",
            params.alpha
        )));
    }
    if !(w >= 0.0) || !(radius > 0.0) {
        return Err(CoreError::Domain(format!(
            "truncation_bound needs w >= 0 and radius > 0, got w = {w}, radius = {radius}"
        )));
    }
    if params.gamma_exponent() <= 1.0 {
        return Ok(f64::INFINITY);
    }
    let c = params.lambda * w;
    if c == 0.0 {
        return Ok(0.0);
    }
    let m_scale = match params.weights.effective() {
        WeightKind::Constant { value } => {
            if value == 0.0 {
                return Ok(0.0);
            }
            value
        }
        WeightKind::Pareto { w_min, .. } => w_min,
    };

    // Below this radius the edge probabilities saturate and the linear
    // closure is weak; above it `c w_min s^{-alpha} <= 1/100`.
    let saturation = libm::pow(100.0 * c * m_scale, 1.0 / params.alpha);
    let floor = libm::sqrt(df) + 2.0;
    let k = radius.max(saturation).max(floor);

    if closed_only {
        // Bound the saturated annulus by its point count (each term <= 1),
        // then close with the linear tail.
        let h = libm::sqrt(df) / 2.0;
        let vd = unit_ball_volume(d)?;
        let annulus = if k > radius {
            let outer = vd * libm::pow(k + h, df);
            let inner = vd * libm::pow((radius - h).max(0.0), df);
            (outer - inner).max(0.0)
        } else {
            0.0
        };
        return Ok(annulus + tail_closure(params, c, k)?);
    }

    let mut exact = 0.0;
    if k > radius {
        for (n2, count) in annulus_shells(d, radius, k)? {
            let arg = c * libm::pow(n2 as f64, -params.alpha / 2.0);
            exact += count as f64 * params.weights.laplace_complement(arg)?;
        }
    }
    Ok(exact + tail_closure(params, c, k)?)
}

/// Smallest power-of-two-stepped radius whose truncation bound is at most
/// `target`.
pub fn choose_truncation_radius(params: &ModelParams, w: f64, target: f64) -> Result<f64> {
    const RADIUS_CAP: f64 = 1e7;
    let mut radius = 16.0;
    loop {
        let bound = truncation_bound(params, w, radius)?;
        if bound <= target {
            return Ok(radius);
        }
        radius *= 2.0;
        if radius > RADIUS_CAP {
            return Err(CoreError::Budget(format!(
                "no radius below {RADIUS_CAP} brings the truncation bound under {target}"
            )));
        }
    }
}
