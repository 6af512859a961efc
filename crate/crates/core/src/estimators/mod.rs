//! Statistical and numerical estimators turning simulation output into
//! checks of the model's degree, percolation and distance behavior.

pub mod degree;
pub mod distance;
pub mod gfun;
pub mod percolation;
pub mod tail;

pub use degree::{conditional_degree_empirical, conditional_degree_quadrature};
pub use distance::{
    distance_scaling, DistanceScaling, DistanceScalingSpec, PairSample, RegressionComparison,
    SeparationRow,
};
pub use gfun::{gfun_envelope_check, GfunRow, GfunTable};
pub use percolation::{
    coupled_trial_fractions, crossing_lambda_estimate, percolation_curve, CrossingEstimate,
    CurveRow, PercolationCurve, PercolationResult, SideCrossing, TrialRow,
};
pub use tail::{ccdf_slope, hill_estimator, TailEstimate};
