//! Tail-index estimation: the Hill estimator and a log-log CCDF regression
//! as an independent cross-check. Both estimate the exponent of
//! `P(X > s) ~ s^{-a}` and are exactly invariant under positive rescaling
//! of the sample.

use serde::Serialize;

use crate::error::{CoreError, Result};

#[derive(Debug, Clone, Copy, Serialize)]
pub struct TailEstimate {
    /// Estimated CCDF exponent (gamma for degrees, tau - 1 for weights).
    pub exponent: f64,
    /// Asymptotic standard error, `exponent / sqrt(k)`.
    pub stderr: f64,
    pub k: usize,
    pub n: usize,
}

/// Hill estimator from the top `k` order statistics: the reciprocal of the
/// mean log-excess over the (k+1)-th largest sample value.
pub fn hill_estimator(samples: &[f64], k: usize) -> Result<TailEstimate> {
    let n = samples.len();
    if k < 2 || k >= n {
        return Err(CoreError::DegenerateSample(format!(
            "hill estimator needs 2 <= k < n, got k = {k}, n = {n}"
        )));
    }
    if samples.iter().any(|&x| !(x > 0.0)) {
        return Err(CoreError::DegenerateSample(
            "hill estimator needs strictly positive samples".into(),
        ));
    }
    let mut sorted: Vec<f64> = samples.to_vec();
    sorted.sort_unstable_by(|a, b| b.total_cmp(a));
    let pivot = sorted[k];
    let sum_log: f64 = sorted[..k].iter().map(|&x| libm::log(x / pivot)).sum();
    if sum_log <= 0.0 {
        return Err(CoreError::DegenerateSample(
            "all top-order statistics equal; no tail to estimate".into(),
        ));
    }
    let exponent = k as f64 / sum_log;
    Ok(TailEstimate {
        exponent,
        stderr: exponent / (k as f64).sqrt(),
        k,
        n,
    })
}

/// Least-squares slope of `log ECCDF` against `log s` over the distinct
/// sample values `>= s_min`; returns the negated slope as the exponent.
pub fn ccdf_slope(samples: &[f64], s_min: f64) -> Result<f64> {
    let n = samples.len();
    if n == 0 {
        return Err(CoreError::DegenerateSample("empty sample".into()));
    }
    let mut sorted: Vec<f64> = samples.to_vec();
    sorted.sort_unstable_by(|a, b| a.total_cmp(b));
    // Distinct values >= s_min with exceedance counts #{x > v}.
    let mut points: Vec<(f64, f64)> = Vec::new();
    let mut i = 0usize;
    while i < n {
        let v = sorted[i];
        let mut j = i;
        while j < n && sorted[j] == v {
            j += 1;
        }
        if v >= s_min && v > 0.0 {
            let exceed = (n - j) as f64;
            if exceed > 0.0 {
                points.push((libm::log(v), libm::log(exceed / n as f64)));
            }
        }
        i = j;
    }
    if points.len() < 10 {
        return Err(CoreError::DegenerateSample(format!(
            "ccdf regression needs >= 10 distinct values above {s_min}, found {}",
            points.len()
        )));
    }
    let m = points.len() as f64;
    let sx: f64 = points.iter().map(|p| p.0).sum();
    let sy: f64 = points.iter().map(|p| p.1).sum();
    let sxx: f64 = points.iter().map(|p| p.0 * p.0).sum();
    let sxy: f64 = points.iter().map(|p| p.0 * p.1).sum();
    let denom = m * sxx - sx * sx;
    if denom <= 0.0 {
        return Err(CoreError::DegenerateSample(
            "degenerate abscissae in ccdf regression".into(),
        ));
    }
    let slope = (m * sxy - sx * sy) / denom;
    Ok(-slope)
}
