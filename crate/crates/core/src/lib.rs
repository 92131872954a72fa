//! Instability-enhanced phase sensing in a collective spin model with
//! quadratic and quartic twisting,
//!
//! ```text
//! H = Ω Sz − χ₂ Sx² − χ₄ Sx⁴,   Ω = 2h, χ₂ = 2J/S, χ₄ = 2K/S³.
//! ```
//!
//! The crate is split along the two halves of the problem:
//!
//! * [`spin`] and [`quantum`] handle the exact finite-N dynamics in the Dicke
//!   basis: the time-reversal echo, anti-squeezing, gain curves and Husimi
//!   distributions.
//! * [`classical`] and [`analytics`] handle the mean-field limit: disk
//!   coordinates, fixed points, the region diagram, local Lyapunov exponents
//!   and the linearized covariance theory near a hyperbolic point.
//!
//! [`cli`] wires everything into the `spinlyap` batch front-end.

// `!(x > 0.0)` rejects NaN along with the out-of-range values
#![allow(clippy::neg_cmp_op_on_partial_ord)]

pub mod analytics;
pub mod classical;
pub mod cli;
mod error;
pub mod numerics;
mod params;
pub mod quantum;
pub mod spin;

pub use error::{Error, Result};
pub use params::ModelParams;
