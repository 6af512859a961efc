//! Model parameters, the edge law, weight distributions, phase-diagram
//! classification and every closed-form constant of the model.

pub mod constants;
pub mod latsum;
pub mod params;
pub mod regime;
pub mod weights;

pub use constants::{
    distance_constant, distance_constants_from_exponents, lambda_c_lower_bound, xi_constant,
    DistanceConstants,
};
pub use latsum::{lattice_sum, LatticeSum};
pub use params::{edge_probability, ModelParams, Norm};
pub use regime::{classify_regime, RegimeReport, TriState};
pub use weights::{min_product_moment, WeightDistribution, WeightKind};
