//! Envelope check for `g(u) = E[(W1 W2 / u ∧ 1)^2]`, which is bounded by
//! `C (1 + log u) u^{-((tau-1) ∧ 2)}`.

use serde::Serialize;

use crate::error::{CoreError, Result};
use crate::model::weights::{min_product_moment, WeightDistribution};

#[derive(Debug, Clone, Copy, Serialize)]
pub struct GfunRow {
    pub u: f64,
    pub g: f64,
    /// `g(u) u^{(tau-1) ∧ 2} / (1 + log u)`; bounded when the envelope holds.
    pub envelope_ratio: f64,
}

#[derive(Debug, Clone, Serialize)]
pub struct GfunTable {
    pub rows: Vec<GfunRow>,
    pub envelope_exponent: f64,
    pub max_ratio: f64,
}

pub fn gfun_envelope_check(dist: &WeightDistribution, u_grid: &[f64]) -> Result<GfunTable> {
    if u_grid.is_empty() {
        return Err(CoreError::Domain("empty u grid".into()));
    }
    if u_grid.windows(2).any(|w| w[0] >= w[1]) || u_grid[0] <= 0.0 {
        return Err(CoreError::Domain(
            "u grid must be positive and strictly ascending".into(),
        ));
    }
    let tau = dist.tau();
    let exponent = if tau.is_infinite() {
        2.0
    } else {
        (tau - 1.0).min(2.0)
    };
    let mut rows = Vec::with_capacity(u_grid.len());
    let mut max_ratio = 0.0f64;
    for &u in u_grid {
        let g = min_product_moment(dist, u, 2)?;
        let ratio = g * libm::pow(u, exponent) / (1.0 + libm::log(u));
        max_ratio = max_ratio.max(ratio);
        rows.push(GfunRow {
            u,
            g,
            envelope_ratio: ratio,
        });
    }
    Ok(GfunTable {
        rows,
        envelope_exponent: exponent,
        max_ratio,
    })
}
