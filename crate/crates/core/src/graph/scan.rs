//! Candidate-pair scanning for edge revelation.
//!
//! The edge test for a pair is `U < 1 - exp(-lambda W_i W_j / r^alpha)`.
//! Since `1 - e^{-x} <= x`, a pair can be rejected without evaluating the
//! exponential whenever its uniform exceeds `lambda W_i W_j r^{-alpha}`
//! (inflated by a safety factor covering rounding differences between the
//! majorant and the exact formula). Only the rare surviving candidates pay
//! for `pow`/`expm1`. The `r^{-alpha}` factors come from tables built once
//! per instance.
//!
//! The exact decision for a surviving pair always goes through
//! [`pair_edge`], with weights in canonical (min-index, max-index) order, so
//! full generation, lazy revelation and coupled multi-lambda sweeps agree
//! bit-for-bit.

use rayon::prelude::*;

use crate::error::{CoreError, Result};
use crate::lattice::LatticeBox;
use crate::rng::{to_unit_open, PairUniformSource};

/// Inflation applied to the `1 - e^{-x} <= x` majorant before the cheap
/// rejection test; covers the few-ulp disagreement between the tabulated
/// `r^{-alpha}` and the exact formula's `pow(sqrt(r2), alpha)`.
const PREFILTER_SAFETY: f64 = 1.0 + 1e-9;

/// Largest `r^2`-indexed power table (entries); beyond this the scan
/// evaluates `pow` inline.
const R2_TABLE_CAP: u64 = 1 << 23;

/// The exact edge-law evaluation shared by every code path.
#[inline(always)]
pub(crate) fn edge_prob_raw(lambda: f64, w_lo: f64, w_hi: f64, r: f64, alpha: f64) -> f64 {
    -libm::expm1(-(lambda * w_lo * w_hi / libm::pow(r, alpha)))
}

enum RPow {
    /// d = 1: indexed by |axis displacement|.
    Delta(Vec<f64>),
    /// d >= 2: indexed by integer squared distance.
    R2(Vec<f64>),
    /// Fallback: evaluate pow inline.
    Inline,
}

/// Precomputed `r^{-alpha}` lookups for one (box, alpha) pair.
pub(crate) struct ScanTables {
    rpow: RPow,
}

impl ScanTables {
    pub fn new(geometry: &LatticeBox, alpha: f64) -> Self {
        let side = geometry.side as u64;
        let rpow = if geometry.dimension == 1 {
            let mut t = vec![0.0; side as usize];
            for (delta, slot) in t.iter_mut().enumerate().skip(1) {
                *slot = libm::pow((delta * delta) as f64, -alpha / 2.0);
            }
            RPow::Delta(t)
        } else {
            let max_delta = match geometry.boundary {
                crate::lattice::Boundary::Torus => side / 2,
                crate::lattice::Boundary::Free => side - 1,
            };
            let max_r2 = geometry.dimension as u64 * max_delta * max_delta;
            if max_r2 < R2_TABLE_CAP {
                let mut t = vec![0.0; (max_r2 + 1) as usize];
                for (r2, slot) in t.iter_mut().enumerate().skip(1) {
                    *slot = libm::pow(r2 as f64, -alpha / 2.0);
                }
                RPow::R2(t)
            } else {
                RPow::Inline
            }
        };
        ScanTables { rpow }
    }
}

/// A survivor of the cheap rejection test; still needs [`pair_edge`].
#[derive(Debug, Clone, Copy)]
pub(crate) struct Candidate {
    pub j: u32,
    pub r2: u64,
}

pub(crate) struct EdgeScan<'a> {
    pub geometry: &'a LatticeBox,
    pub alpha: f64,
    pub lambda: f64,
    pub weights: &'a [f64],
    pub pairs: PairUniformSource,
    tables: &'a ScanTables,
}

impl<'a> EdgeScan<'a> {
    pub fn new(
        geometry: &'a LatticeBox,
        alpha: f64,
        lambda: f64,
        weights: &'a [f64],
        pairs: PairUniformSource,
        tables: &'a ScanTables,
    ) -> Self {
        EdgeScan {
            geometry,
            alpha,
            lambda,
            weights,
            pairs,
            tables,
        }
    }

    /// Exact edge decision for an unordered pair at squared distance `r2`,
    /// canonicalized so both orders give the identical answer.
    #[inline(always)]
    pub fn pair_edge(&self, i: u32, j: u32, r2: u64) -> bool {
        let (lo, hi) = if i < j { (i, j) } else { (j, i) };
        let u = self.pairs.uniform(lo as u64, hi as u64);
        let p = edge_prob_raw(
            self.lambda,
            self.weights[lo as usize],
            self.weights[hi as usize],
            (r2 as f64).sqrt(),
            self.alpha,
        );
        u < p
    }

    #[inline(always)]
    fn rpow_r2(&self, r2: u64) -> f64 {
        match &self.tables.rpow {
            RPow::Delta(t) => {
                // d = 1: r2 is a perfect square of the axis displacement.
                t[(r2 as f64).sqrt() as usize]
            }
            RPow::R2(t) => t[r2 as usize],
            RPow::Inline => libm::pow(r2 as f64, -self.alpha / 2.0),
        }
    }

    /// Scan every candidate `j` in `[j_start, j_end)`, `j != v`, reporting
    /// survivors of the majorant test with coefficient `coef` (callers pass
    /// `lambda_max * w_v`). Candidates arrive in ascending `j`.
    fn scan_range<F: FnMut(Candidate)>(&self, v: u32, coef: f64, j_start: u32, j_end: u32, f: &mut F) {
        let side = self.geometry.side as usize;
        let dim = self.geometry.dimension as usize;
        let coords_v = self.geometry.index_to_point(crate::lattice::PointIndex(v));

        if dim == 1 {
            let delta_pow = match &self.tables.rpow {
                RPow::Delta(t) => t.as_slice(),
                _ => unreachable!("d = 1 always uses the delta table"),
            };
            let cv = coords_v[0];
            for j in j_start..j_end {
                let delta = self.geometry.axis_displacement(j as i64, cv);
                if delta == 0 {
                    continue;
                }
                let abs = delta.unsigned_abs() as usize;
                let mu = coef * self.weights[j as usize] * delta_pow[abs];
                let h = self.pairs.raw(v.min(j) as u64, v.max(j) as u64);
                if to_unit_open(h) < mu * PREFILTER_SAFETY {
                    f(Candidate {
                        j,
                        r2: (abs * abs) as u64,
                    });
                }
            }
            return;
        }

        // d >= 2: per-axis squared-displacement tables indexed by coordinate.
        let mut axis_d2: Vec<Vec<i64>> = Vec::with_capacity(dim);
        for axis in 0..dim {
            let cv = coords_v[axis];
            let t: Vec<i64> = (0..side as i64)
                .map(|c| {
                    let delta = self.geometry.axis_displacement(c, cv);
                    delta * delta
                })
                .collect();
            axis_d2.push(t);
        }
        let last = &axis_d2[dim - 1];

        let row_start = j_start as usize / side;
        let row_end = (j_end as usize).div_ceil(side);
        let mut prefix: Vec<usize> = vec![0; dim - 1];
        // Seed the odometer at row_start.
        {
            let mut rem = row_start;
            for axis in (0..dim - 1).rev() {
                prefix[axis] = rem % side;
                rem /= side;
            }
        }
        for row in row_start..row_end {
            let s: i64 = prefix
                .iter()
                .zip(axis_d2[..dim - 1].iter())
                .map(|(&c, t)| t[c])
                .sum();
            let base = row * side;
            let c_lo = (j_start as usize).saturating_sub(base).min(side);
            let c_hi = (j_end as usize - base).min(side);
            self.scan_row(v, coef, base, c_lo, c_hi, s, last, f);
            // Advance prefix odometer.
            let mut axis = dim - 1;
            while axis > 0 {
                axis -= 1;
                prefix[axis] += 1;
                if prefix[axis] < side {
                    break;
                }
                prefix[axis] = 0;
            }
        }
    }

    #[inline(always)]
    fn scan_row<F: FnMut(Candidate)>(
        &self,
        v: u32,
        coef: f64,
        base: usize,
        c_lo: usize,
        c_hi: usize,
        prefix_d2: i64,
        last: &[i64],
        f: &mut F,
    ) {
        match &self.tables.rpow {
            RPow::R2(table) => {
                for c in c_lo..c_hi {
                    let r2 = (prefix_d2 + last[c]) as u64;
                    if r2 == 0 {
                        continue;
                    }
                    let j = (base + c) as u32;
                    let mu = coef * self.weights[base + c] * table[r2 as usize];
                    let h = self.pairs.raw(v.min(j) as u64, v.max(j) as u64);
                    if to_unit_open(h) < mu * PREFILTER_SAFETY {
                        f(Candidate { j, r2 });
                    }
                }
            }
            _ => {
                for c in c_lo..c_hi {
                    let r2 = (prefix_d2 + last[c]) as u64;
                    if r2 == 0 {
                        continue;
                    }
                    let j = (base + c) as u32;
                    let mu = coef
                        * self.weights[base + c]
                        * libm::pow(r2 as f64, -self.alpha / 2.0);
                    let h = self.pairs.raw(v.min(j) as u64, v.max(j) as u64);
                    if to_unit_open(h) < mu * PREFILTER_SAFETY {
                        f(Candidate { j, r2 });
                    }
                }
            }
        }
    }

    /// Survivors over all `j != v`, ascending.
    pub fn scan_all<F: FnMut(Candidate)>(&self, v: u32, coef: f64, f: &mut F) {
        let n = self.geometry.point_count() as u32;
        self.scan_range(v, coef, 0, n, f);
    }

    /// Survivors over `j > v` only (unordered-pair enumeration).
    pub fn scan_above<F: FnMut(Candidate)>(&self, v: u32, coef: f64, f: &mut F) {
        let n = self.geometry.point_count() as u32;
        if v + 1 < n {
            self.scan_range(v, coef, v + 1, n, f);
        }
    }

    /// Parallel survivor collection over all `j != v`; the candidate space
    /// is cut into fixed-size chunks independent of the thread count, so the
    /// concatenated result is deterministic and ascending.
    pub fn par_scan_all(&self, v: u32, coef: f64) -> Vec<Candidate> {
        let n = self.geometry.point_count() as u32;
        const CHUNK: u32 = 1 << 16;
        let chunks: Vec<(u32, u32)> = (0..n)
            .step_by(CHUNK as usize)
            .map(|lo| (lo, (lo + CHUNK).min(n)))
            .collect();
        let nested: Vec<Vec<Candidate>> = chunks
            .into_par_iter()
            .map(|(lo, hi)| {
                let mut out = Vec::new();
                self.scan_range(v, coef, lo, hi, &mut |c| out.push(c));
                out
            })
            .collect();
        nested.into_iter().flatten().collect()
    }

    /// Survivors restricted to the window `|j - v|_axis <= rho` per axis and
    /// `r2 <= rho^2` (interaction cutoff mode). Ascending in `j` is NOT
    /// guaranteed here; callers sort if they need it.
    pub fn scan_within<F: FnMut(Candidate)>(&self, v: u32, coef: f64, rho: f64, f: &mut F) -> Result<()> {
        let side = self.geometry.side as i64;
        let dim = self.geometry.dimension as usize;
        let reach = libm::floor(rho) as i64;
        if reach < 0 {
            return Ok(());
        }
        if self.geometry.boundary == crate::lattice::Boundary::Torus && 2 * reach >= side {
            return Err(CoreError::Domain(format!(
                "interaction cutoff {rho} does not fit inside a torus of side {side}"
            )));
        }
        let rho2 = rho * rho;
        let coords_v = self.geometry.index_to_point(crate::lattice::PointIndex(v));
        let mut offset = vec![-reach; dim];
        'outer: loop {
            let r2: i64 = offset.iter().map(|&o| o * o).sum();
            if r2 > 0 && (r2 as f64) <= rho2 {
                // Materialize the candidate coordinate, wrapping on a torus.
                let mut ok = true;
                let mut idx: u64 = 0;
                for axis in 0..dim {
                    let mut c = coords_v[axis] + offset[axis];
                    match self.geometry.boundary {
                        crate::lattice::Boundary::Torus => c = c.rem_euclid(side),
                        crate::lattice::Boundary::Free => {
                            if c < 0 || c >= side {
                                ok = false;
                                break;
                            }
                        }
                    }
                    idx = idx * side as u64 + c as u64;
                }
                if ok {
                    let j = idx as u32;
                    let mu = coef * self.weights[j as usize] * self.rpow_r2(r2 as u64);
                    let h = self.pairs.raw(v.min(j) as u64, v.max(j) as u64);
                    if to_unit_open(h) < mu * PREFILTER_SAFETY {
                        f(Candidate { j, r2: r2 as u64 });
                    }
                }
            }
            let mut axis = dim;
            loop {
                if axis == 0 {
                    break 'outer;
                }
                axis -= 1;
                offset[axis] += 1;
                if offset[axis] <= reach {
                    break;
                }
                offset[axis] = -reach;
            }
        }
        Ok(())
    }
}
