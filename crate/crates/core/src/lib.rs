//! Simulation and analysis toolkit for inhomogeneous long-range percolation
//! on finite boxes and tori of Z^d.
//!
//! Each lattice point carries an i.i.d. weight `W_x`; conditionally on the
//! weights, an edge joins `x` and `y` with probability
//! `1 - exp(-lambda W_x W_y / |x-y|^alpha)`, independently across pairs.
//! The crate provides:
//!
//! * [`model`]: parameters, the edge law, weight families, phase-diagram
//!   classification and closed-form constants (lattice sums, moments,
//!   degree-growth and distance constants),
//! * [`lattice`]: finite box/torus geometry with minimal-image metric,
//! * [`graph`]: deterministic seed-driven sampling (full and lazy, mutually
//!   consistent), cluster and shortest-path algorithms,
//! * [`estimators`]: tail-index estimators, percolation curves, conditional
//!   degree oracles and distance-scaling experiments.
//!
//! All sampling is counter-based: any weight, pair uniform or trial seed is
//! a pure function of the master seed, so runs are bit-reproducible and
//! edge sets are monotonically coupled across the percolation parameter.

pub mod error;
pub mod estimators;
pub mod graph;
pub mod lattice;
pub mod model;
pub mod quad;
pub mod rng;
pub mod special;

pub use error::{CoreError, Result};
