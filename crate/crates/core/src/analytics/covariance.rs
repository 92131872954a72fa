//! Linearized flow `δẋ = A δx`, `A = [[0, 2ν], [−2μ, 0]]`, and the classical
//! covariance it transports.

use std::f64::consts::{FRAC_PI_2, PI};

use nalgebra::Matrix2;
use serde::{Deserialize, Serialize};

use super::expansion::LocalExpansion;
use crate::numerics::sym_eigen2;

#[derive(Clone, Copy, Debug, PartialEq)]
pub struct CovarianceFlow {
    pub t: f64,
    pub m: Matrix2<f64>,
    /// `M Γ_C(0) Mᵀ` with `Γ_C(0) = 𝟙`, i.e. in units of the initial
    /// isotropic variance.
    pub gamma_c: Matrix2<f64>,
    /// Set when `λ = 0` and `M = 𝟙 + At` was used.
    pub limit_form: bool,
}

impl CovarianceFlow {
    pub fn largest_eigenvalue(&self) -> f64 {
        sym_eigen2(self.gamma_c[(0, 0)], self.gamma_c[(0, 1)], self.gamma_c[(1, 1)]).larger
    }
}

pub fn generator(exp: &LocalExpansion) -> Matrix2<f64> {
    Matrix2::new(0.0, 2.0 * exp.nu, -2.0 * exp.mu, 0.0)
}

/// `M(t) = cosh(λt) 𝟙 + sinh(λt)/λ · A`.
pub fn covariance_flow(exp: &LocalExpansion, t: f64) -> CovarianceFlow {
    let a = generator(exp);
    let (m, limit_form) = if exp.lambda == 0.0 {
        // A² = −4μν 𝟙 = 0, so the series stops after the linear term
        (Matrix2::identity() + a * t, true)
    } else {
        let lt = exp.lambda * t;
        (
            Matrix2::identity() * lt.cosh() + a * (lt.sinh() / exp.lambda),
            false,
        )
    };
    CovarianceFlow {
        t,
        m,
        gamma_c: m * m.transpose(),
        limit_form,
    }
}

/// `ρ = (κ/λ)² sinh²(λt)`, or `κ²t²` at `λ = 0`.
fn rho_sqrt(exp: &LocalExpansion, t: f64) -> f64 {
    if exp.lambda == 0.0 {
        exp.kappa * t.abs()
    } else {
        (exp.kappa / exp.lambda * (exp.lambda * t).sinh()).abs()
    }
}

/// `ξ_C² = (√(1 + ρ) + √ρ)²`, the largest eigenvalue of `MMᵀ`.
pub fn analytic_antisqueezing(exp: &LocalExpansion, t: f64) -> f64 {
    let r = rho_sqrt(exp, t);
    let v = (1.0 + r * r).sqrt() + r;
    v * v
}

/// `ln ξ_C² = 2 asinh((κ/λ) sinh(λt))`, accurate for large `λt`.
pub fn ln_analytic_antisqueezing(exp: &LocalExpansion, t: f64) -> f64 {
    2.0 * rho_sqrt(exp, t).asinh()
}

/// Angle `α` of the anti-squeezed direction in the transverse spin basis
/// `(e₁, e₂)`. A direction at angle `β` in `(δQ, δP)` maps to `α = π/2 − β`.
///
/// `None` at `t = 0` (isotropic). Consecutive angles are unwrapped by
/// multiples of `π` for continuity, starting in `[0, π)`.
pub fn optimal_angle_flow(exp: &LocalExpansion, t_grid: &[f64]) -> Vec<Option<f64>> {
    let mut prev: Option<f64> = None;
    t_grid
        .iter()
        .map(|&t| {
            let g = covariance_flow(exp, t).gamma_c;
            let e = sym_eigen2(g[(0, 0)], g[(0, 1)], g[(1, 1)]);
            if e.larger - e.smaller <= 1e-14 * (e.larger + e.smaller) {
                return None;
            }
            let mut alpha = (FRAC_PI_2 - e.angle).rem_euclid(PI);
            if let Some(p) = prev {
                alpha += PI * ((p - alpha) / PI).round();
            }
            prev = Some(alpha);
            Some(alpha)
        })
        .collect()
}

/// One row of the analytic anti-squeezing table.
#[derive(Clone, Copy, Debug, PartialEq, Serialize, Deserialize)]
pub struct AnalyticSample {
    pub t: f64,
    pub xi_c_sq: f64,
    pub ln_xi_c_sq: f64,
    pub alpha_max: Option<f64>,
}

pub fn analytic_series(exp: &LocalExpansion, t_grid: &[f64]) -> Vec<AnalyticSample> {
    let angles = optimal_angle_flow(exp, t_grid);
    t_grid
        .iter()
        .zip(angles)
        .map(|(&t, alpha_max)| AnalyticSample {
            t,
            xi_c_sq: analytic_antisqueezing(exp, t),
            ln_xi_c_sq: ln_analytic_antisqueezing(exp, t),
            alpha_max,
        })
        .collect()
}
