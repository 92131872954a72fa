//! Short-time theory around a hyperbolic point: the local expansion of
//! `H_cl`, its linearized flow and the resulting anti-squeezing.

pub mod bosonic;
pub mod covariance;
pub mod expansion;

pub use bosonic::{bosonic_coefficients, BosonicCoefficients};
pub use covariance::{
    analytic_antisqueezing, analytic_series, covariance_flow, ln_analytic_antisqueezing, optimal_angle_flow,
    AnalyticSample, CovarianceFlow,
};
pub use expansion::{local_expansion, LocalExpansion};
