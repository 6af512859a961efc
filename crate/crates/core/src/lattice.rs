//! Finite box/torus geometry over Z^d.
//!
//! Points live on a hypercubic box with `side` points per axis, coordinates
//! in `[0, side)`, linearized row-major (first axis most significant). On a
//! torus, displacements are reduced per axis to the minimal image in
//! `[-side/2, side/2]`. The metric is Euclidean.

use serde::Serialize;

use crate::error::{CoreError, Result};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum Boundary {
    Free,
    Torus,
}

/// Linear index of a lattice point, row-major over coordinates in `[0, L)`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize)]
#[repr(transparent)]
pub struct PointIndex(pub u32);

impl PointIndex {
    #[inline]
    pub fn index(self) -> usize {
        self.0 as usize
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub struct LatticeBox {
    pub dimension: u32,
    pub side: u32,
    pub boundary: Boundary,
}

impl LatticeBox {
    pub fn new(dimension: u32, side: u32, boundary: Boundary) -> Result<Self> {
        if dimension < 1 {
            return Err(CoreError::Domain("lattice dimension must be >= 1".into()));
        }
        if side < 1 {
            return Err(CoreError::Domain("lattice side must be >= 1".into()));
        }
        // Indices are stored as u32 throughout the graph machinery.
        let mut count: u64 = 1;
        for _ in 0..dimension {
            count = count
                .checked_mul(side as u64)
                .ok_or_else(|| CoreError::Budget("lattice point count overflows".into()))?;
            if count > u32::MAX as u64 {
                return Err(CoreError::Budget(format!(
                    "lattice point count {side}^{dimension} exceeds the u32 index type"
                )));
            }
        }
        Ok(LatticeBox {
            dimension,
            side,
            boundary,
        })
    }

    /// Total number of lattice points, `side^dimension`.
    pub fn point_count(&self) -> usize {
        (self.side as u64).pow(self.dimension) as usize
    }

    /// Row-major linearization of a coordinate vector.
    pub fn point_to_index(&self, point: &[i64]) -> Result<PointIndex> {
        if point.len() != self.dimension as usize {
            return Err(CoreError::Domain(format!(
                "point has {} coordinates, box has dimension {}",
                point.len(),
                self.dimension
            )));
        }
        let mut idx: u64 = 0;
        for &c in point {
            if c < 0 || c >= self.side as i64 {
                return Err(CoreError::Domain(format!(
                    "coordinate {c} out of range [0, {})",
                    self.side
                )));
            }
            idx = idx * self.side as u64 + c as u64;
        }
        Ok(PointIndex(idx as u32))
    }

    /// Inverse of [`point_to_index`](Self::point_to_index).
    pub fn index_to_point(&self, index: PointIndex) -> Vec<i64> {
        let mut rem = index.0 as u64;
        let mut coords = vec![0i64; self.dimension as usize];
        for axis in (0..self.dimension as usize).rev() {
            coords[axis] = (rem % self.side as u64) as i64;
            rem /= self.side as u64;
        }
        coords
    }

    /// Per-axis displacement reduced to the minimal image on a torus.
    #[inline]
    pub fn axis_displacement(&self, a: i64, b: i64) -> i64 {
        let mut delta = a - b;
        if self.boundary == Boundary::Torus {
            let side = self.side as i64;
            delta = delta.rem_euclid(side);
            if 2 * delta > side {
                delta -= side;
            }
        }
        delta
    }

    /// Squared Euclidean displacement between two points (minimal image on
    /// a torus). Exact in integers.
    pub fn displacement_sq(&self, p: PointIndex, q: PointIndex) -> u64 {
        let pc = self.index_to_point(p);
        let qc = self.index_to_point(q);
        let mut acc: u64 = 0;
        for axis in 0..self.dimension as usize {
            let delta = self.axis_displacement(pc[axis], qc[axis]);
            acc += (delta * delta) as u64;
        }
        acc
    }

    /// Euclidean distance between two points.
    pub fn displacement_norm(&self, p: PointIndex, q: PointIndex) -> f64 {
        (self.displacement_sq(p, q) as f64).sqrt()
    }

    /// All indices `q != center` with `|q - center| <= r`, ascending.
    ///
    /// Membership compares exact integer squared displacements against
    /// `r * r`, so boundary points are classified consistently whenever
    /// `r^2` is exactly representable (all half-integer radii in particular).
    pub fn ball_indices(&self, center: PointIndex, r: f64) -> Vec<PointIndex> {
        let mut out = Vec::new();
        if r < 0.0 {
            return out;
        }
        let r2 = r * r;
        let n = self.point_count() as u32;
        for raw in 0..n {
            let q = PointIndex(raw);
            if q == center {
                continue;
            }
            if (self.displacement_sq(center, q) as f64) <= r2 {
                out.push(q);
            }
        }
        out
    }
}

/// Offsets `y != 0` of the infinite lattice Z^d with `|y| <= r`, in
/// lexicographic order, each with its exact squared norm.
///
/// Used by origin-centered degree sampling, where the window is a ball
/// around the origin rather than a finite box.
pub fn ball_offsets(dimension: u32, r: f64) -> Vec<(Vec<i64>, u64)> {
    let mut out = Vec::new();
    if r < 0.0 {
        return out;
    }
    let r_int = libm::floor(r) as i64;
    let r2 = r * r;
    let mut coords = vec![-r_int; dimension as usize];
    if r_int < 0 {
        return out;
    }
    'outer: loop {
        let norm2: i64 = coords.iter().map(|&c| c * c).sum();
        if norm2 > 0 && (norm2 as f64) <= r2 {
            out.push((coords.clone(), norm2 as u64));
        }
        let mut axis = dimension as usize;
        loop {
            if axis == 0 {
                break 'outer;
            }
            axis -= 1;
            coords[axis] += 1;
            if coords[axis] <= r_int {
                break;
            }
            coords[axis] = -r_int;
        }
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::special::unit_ball_volume;

    #[test]
    fn row_major_examples() {
        let b = LatticeBox::new(2, 10, Boundary::Free).unwrap();
        assert_eq!(b.point_to_index(&[0, 0]).unwrap(), PointIndex(0));
        assert_eq!(b.point_to_index(&[3, 7]).unwrap(), PointIndex(37));
        assert!(b.point_to_index(&[10, 0]).is_err());
        assert!(b.point_to_index(&[-1, 0]).is_err());
        assert!(b.point_to_index(&[0]).is_err());
    }

    #[test]
    fn index_roundtrip() {
        let b = LatticeBox::new(3, 7, Boundary::Torus).unwrap();
        for raw in 0..b.point_count() as u32 {
            let p = b.index_to_point(PointIndex(raw));
            assert_eq!(b.point_to_index(&p).unwrap(), PointIndex(raw));
        }
    }

    #[test]
    fn construction_guards() {
        assert!(LatticeBox::new(0, 10, Boundary::Free).is_err());
        assert!(LatticeBox::new(2, 0, Boundary::Free).is_err());
        // 2^32 points exceed the index type.
        assert!(LatticeBox::new(2, 65_536, Boundary::Free).is_err());
        assert!(LatticeBox::new(2, 65_535, Boundary::Free).is_ok());
    }

    #[test]
    fn norms_free_and_torus() {
        let free = LatticeBox::new(2, 10, Boundary::Free).unwrap();
        let p = free.point_to_index(&[0, 0]).unwrap();
        let q = free.point_to_index(&[3, 4]).unwrap();
        assert_eq!(free.displacement_norm(p, q), 5.0);
        assert_eq!(free.displacement_norm(p, p), 0.0);

        let torus = LatticeBox::new(1, 10, Boundary::Torus).unwrap();
        let a = torus.point_to_index(&[1]).unwrap();
        let b = torus.point_to_index(&[9]).unwrap();
        assert_eq!(torus.displacement_norm(a, b), 2.0);
    }

    #[test]
    fn norm_is_a_metric() {
        let torus = LatticeBox::new(2, 8, Boundary::Torus).unwrap();
        let free = LatticeBox::new(2, 8, Boundary::Free).unwrap();
        for boxed in [torus, free] {
            let n = boxed.point_count() as u32;
            // Deterministic sample of triples.
            for t in 0..200u32 {
                let p = PointIndex((t * 7919) % n);
                let q = PointIndex((t * 104_729 + 13) % n);
                let r = PointIndex((t * 1_299_709 + 31) % n);
                let dpq = boxed.displacement_norm(p, q);
                let dqp = boxed.displacement_norm(q, p);
                assert_eq!(dpq, dqp);
                assert_eq!(dpq == 0.0, p == q);
                assert!(
                    boxed.displacement_norm(p, r) <= dpq + boxed.displacement_norm(q, r) + 1e-12
                );
            }
        }
    }

    #[test]
    fn torus_diameter_bound() {
        let torus = LatticeBox::new(2, 9, Boundary::Torus).unwrap();
        let bound = (torus.side as f64 / 2.0) * (torus.dimension as f64).sqrt();
        let n = torus.point_count() as u32;
        for p in 0..n {
            let d = torus.displacement_norm(PointIndex(0), PointIndex(p));
            assert!(d <= bound + 1e-12);
        }
    }

    #[test]
    fn ball_examples() {
        let b1 = LatticeBox::new(1, 21, Boundary::Free).unwrap();
        let center = b1.point_to_index(&[10]).unwrap();
        assert!(b1.ball_indices(center, 0.0).is_empty());
        assert_eq!(b1.ball_indices(center, 2.0).len(), 4);

        let b2 = LatticeBox::new(2, 21, Boundary::Free).unwrap();
        let center = b2.point_to_index(&[10, 10]).unwrap();
        // r = 1.5: the 8 offsets in {-1,0,1}^2 minus the center
        // (oracle: enumerate offsets, check dx^2 + dy^2 <= 2.25).
        let ball = b2.ball_indices(center, 1.5);
        assert_eq!(ball.len(), 8);
        let mut sorted = ball.clone();
        sorted.sort();
        assert_eq!(ball, sorted);
    }

    #[test]
    fn ball_volume_consistency() {
        // |ball(r)| / (v_d r^d) -> 1; within 5% at r = 50 in d = 2.
        let r = 50.0;
        let b = LatticeBox::new(2, 121, Boundary::Free).unwrap();
        let center = b.point_to_index(&[60, 60]).unwrap();
        let count = b.ball_indices(center, r).len() as f64;
        let expected = unit_ball_volume(2).unwrap() * r * r;
        assert!(
            (count / expected - 1.0).abs() < 0.05,
            "count {count} vs v_2 r^2 = {expected}"
        );
    }

    #[test]
    fn ball_offsets_match_box_ball() {
        let offsets = ball_offsets(2, 1.5);
        assert_eq!(offsets.len(), 8);
        // Deterministic lexicographic order, exact norms.
        assert_eq!(offsets[0].0, vec![-1, -1]);
        assert_eq!(offsets[0].1, 2);
        assert!(ball_offsets(2, 0.0).is_empty());
        assert_eq!(ball_offsets(1, 2.0).len(), 4);
    }
}
