//! Exact finite-`N` dynamics: spectral propagation, the echo protocol,
//! anti-squeezing and Husimi distributions.

pub mod echo;
pub mod husimi;
pub mod matched;
pub mod propagator;
pub mod squeezing;

pub use crate::classical::separatrix::{separatrix, Polyline};
pub use echo::{
    echo_protocol, echo_with, infidelity_curve, infidelity_scan, EchoResult, InfidelityCurve,
    RotationGenerator,
};
pub use husimi::{husimi, husimi_at, HusimiField, HusimiGrid, HusimiNode};
pub use matched::{matched_lambda_along, matched_lambda_comparison, MatchedPair};
pub use propagator::{evolve, Propagator};
pub use squeezing::{
    anti_squeezing, fit_growth_band, fit_growth_rate, gain_curve, hyperbolic_initial_state, qfi,
    steadiest_window_slope, AlphaPolicy, AntiSqueezing, GainCurve, GrowthFit, TransverseCovariance,
};
