//! Transverse covariance, anti-squeezing and metrological gain.

use std::f64::consts::PI;

use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use super::propagator::{evolve, Propagator};
use crate::classical::{primary_hyperbolic_point, FixedPoint};
use crate::numerics::{fit_line, golden_max, sym_eigen2, LineFit};
use crate::spin::{coherent_state, component_moments, variance, CMatrix, QuantumState, SpinOperators};
use crate::{Error, ModelParams, Result};

/// Relative eigenvalue gap below which `Γ_Q` is treated as isotropic.
pub const ISOTROPY_TOL: f64 = 1e-9;

/// `F_Q = 4 Var(G)` for a pure state.
pub fn qfi(state: &QuantumState, generator: &CMatrix) -> Result<f64> {
    Ok(4.0 * variance(state, generator)?)
}

/// Symmetrized covariance of `(Ŝ_e₁, Ŝ_e₂)`.
#[derive(Clone, Copy, Debug, PartialEq, Serialize, Deserialize)]
pub struct TransverseCovariance {
    pub g11: f64,
    pub g12: f64,
    pub g22: f64,
}

impl TransverseCovariance {
    /// `Var(Ŝ_α)` for `Ŝ_α = Ŝ_e₁ cos α + Ŝ_e₂ sin α`.
    pub fn variance_at(&self, alpha: f64) -> f64 {
        let (s, c) = alpha.sin_cos();
        c * c * self.g11 + 2.0 * s * c * self.g12 + s * s * self.g22
    }

    pub fn max_variance(&self) -> f64 {
        sym_eigen2(self.g11, self.g12, self.g22).larger
    }

    /// Closed-form maximizing angle in `[0, π)`, `None` if isotropic.
    pub fn alpha_max(&self) -> Option<f64> {
        let e = sym_eigen2(self.g11, self.g12, self.g22);
        let scale = e.larger.abs() + e.smaller.abs();
        (e.larger - e.smaller > ISOTROPY_TOL * scale).then_some(e.angle)
    }

    /// Maximizing angle by a 181-point scan over `[0, π)` refined with
    /// golden-section search. Independent of the eigenvector route.
    pub fn alpha_by_search(&self) -> f64 {
        let step = PI / 180.0;
        let best = (0..181)
            .map(|i| i as f64 * step)
            .max_by(|a, b| self.variance_at(*a).total_cmp(&self.variance_at(*b)))
            .unwrap_or(0.0);
        let (a, _) = golden_max(|a| self.variance_at(a), best - step, best + step, 1e-12);
        a.rem_euclid(PI)
    }
}

pub fn transverse_covariance(
    state: &QuantumState,
    theta_hyp: f64,
    ops: &SpinOperators,
) -> Result<TransverseCovariance> {
    let e2 = [theta_hyp.cos(), 0.0, -theta_hyp.sin()];
    let [_, _, g11, g22, g12] = component_moments(state, ops, [0.0, 1.0, 0.0], e2)?;
    Ok(TransverseCovariance { g11, g12, g22 })
}

#[derive(Clone, Copy, Debug, PartialEq, Serialize, Deserialize)]
pub struct AntiSqueezing {
    /// `τ₊ / (S/2)`
    pub xi_plus_sq: f64,
    pub alpha_max: Option<f64>,
    pub covariance: TransverseCovariance,
}

pub fn anti_squeezing(state: &QuantumState, theta_hyp: f64, ops: &SpinOperators) -> Result<AntiSqueezing> {
    let cov = transverse_covariance(state, theta_hyp, ops)?;
    Ok(AntiSqueezing {
        xi_plus_sq: cov.max_variance() / (0.5 * ops.spin()),
        alpha_max: cov.alpha_max(),
        covariance: cov,
    })
}

#[derive(Clone, Copy, Debug, PartialEq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase", tag = "policy", content = "alpha")]
pub enum AlphaPolicy {
    /// Maximize over `α` at every time step.
    Optimal,
    Fixed(f64),
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct GainCurve {
    pub times: Vec<f64>,
    pub gain_sq: Vec<f64>,
    /// Angle used at each time; `None` where the optimum is degenerate.
    pub alpha: Vec<Option<f64>>,
    pub alpha_policy: AlphaPolicy,
}

impl GainCurve {
    pub fn ln_gain_sq(&self) -> Vec<f64> {
        self.gain_sq.iter().map(|g| g.ln()).collect()
    }
}

/// Coherent state centred on the primary hyperbolic point.
pub fn hyperbolic_initial_state(params: &ModelParams) -> Result<(QuantumState, FixedPoint)> {
    let fp = primary_hyperbolic_point(params)?;
    Ok((coherent_state(fp.bloch_theta, fp.bloch_phi, params.n)?, fp))
}

/// `G²(t) = Var(Ŝ_α)/(S/2)` along `t_grid`, starting from the coherent state
/// at the hyperbolic point.
pub fn gain_curve(params: &ModelParams, t_grid: &[f64], policy: AlphaPolicy) -> Result<GainCurve> {
    let (psi0, fp) = hyperbolic_initial_state(params)?;
    let prop = Propagator::cached(params)?;
    let ops = SpinOperators::new(params.n)?;
    let s_half = 0.5 * ops.spin();
    let rows: Vec<(f64, Option<f64>)> = t_grid
        .par_iter()
        .map(|&t| {
            let psi = evolve(&psi0, &prop, t)?;
            let cov = transverse_covariance(&psi, fp.bloch_theta, &ops)?;
            Ok(match policy {
                AlphaPolicy::Optimal => (cov.max_variance() / s_half, cov.alpha_max()),
                AlphaPolicy::Fixed(a) => (cov.variance_at(a) / s_half, Some(a)),
            })
        })
        .collect::<Result<_>>()?;
    if let Some((g, _)) = rows.iter().find(|(g, _)| !(*g > 0.0 && g.is_finite())) {
        return Err(Error::Numerical(format!("non-positive gain {g}")));
    }
    let (gain_sq, alpha) = rows.into_iter().unzip();
    Ok(GainCurve {
        times: t_grid.to_vec(),
        gain_sq,
        alpha,
        alpha_policy: policy,
    })
}

/// Straight-line fit of `ln G²` against `t` over a contiguous sample range.
#[derive(Clone, Copy, Debug, PartialEq, Serialize, Deserialize)]
pub struct GrowthFit {
    pub slope: f64,
    pub intercept: f64,
    pub t_start: f64,
    pub t_end: f64,
    pub points: usize,
}

impl GrowthFit {
    fn from_line(line: LineFit, times: &[f64]) -> Self {
        Self {
            slope: line.slope,
            intercept: line.intercept,
            t_start: times[0],
            t_end: times[times.len() - 1],
            points: times.len(),
        }
    }
}

/// Fit over the first contiguous run of samples with `lower ≤ ln G² ≤ upper`.
///
/// Below `lower` the state still remembers its initial isotropic shape; above
/// `upper` finite-`N` saturation sets in.
pub fn fit_growth_band(times: &[f64], ln_g2: &[f64], lower: f64, upper: f64) -> Result<GrowthFit> {
    if times.len() != ln_g2.len() {
        return Err(Error::DimensionMismatch {
            expected: times.len(),
            got: ln_g2.len(),
        });
    }
    let start = ln_g2
        .iter()
        .position(|&y| (lower..=upper).contains(&y))
        .ok_or_else(|| Error::InsufficientData(format!("no samples with {lower} ≤ ln G² ≤ {upper}")))?;
    let len = ln_g2[start..]
        .iter()
        .take_while(|&&y| (lower..=upper).contains(&y))
        .count();
    if len < 3 {
        return Err(Error::InsufficientData(format!(
            "only {len} samples in the growth band"
        )));
    }
    let (t, y) = (&times[start..start + len], &ln_g2[start..start + len]);
    Ok(GrowthFit::from_line(fit_line(t, y)?, t))
}

/// [`fit_growth_band`] with the default band `1 ≤ ln G² ≤ ½ ln(2S)`.
pub fn fit_growth_rate(curve: &GainCurve, n: usize) -> Result<GrowthFit> {
    fit_growth_band(&curve.times, &curve.ln_gain_sq(), 1.0, 0.5 * (n as f64).ln())
}

/// Sliding-window fit: among windows of `window` samples with positive mean
/// slope, the one whose local (finite-difference) slopes vary least relative
/// to their mean.
pub fn steadiest_window_slope(times: &[f64], ln_g2: &[f64], window: usize) -> Result<GrowthFit> {
    if times.len() != ln_g2.len() {
        return Err(Error::DimensionMismatch {
            expected: times.len(),
            got: ln_g2.len(),
        });
    }
    if window < 3 || window > times.len() {
        return Err(Error::InsufficientData(format!(
            "window {window} with {} samples",
            times.len()
        )));
    }
    let local: Vec<f64> = times
        .windows(2)
        .zip(ln_g2.windows(2))
        .map(|(t, y)| (y[1] - y[0]) / (t[1] - t[0]))
        .collect();
    let mut best: Option<(f64, usize)> = None;
    for start in 0..=times.len() - window {
        let slopes = &local[start..start + window - 1];
        let mean = slopes.iter().sum::<f64>() / slopes.len() as f64;
        if mean <= 0.0 {
            continue;
        }
        let lo = slopes.iter().cloned().fold(f64::INFINITY, f64::min);
        let hi = slopes.iter().cloned().fold(f64::NEG_INFINITY, f64::max);
        let spread = (hi - lo) / mean;
        if best.is_none_or(|(s, _)| spread < s) {
            best = Some((spread, start));
        }
    }
    let (_, start) = best.ok_or_else(|| Error::InsufficientData("no growing window".into()))?;
    let (t, y) = (&times[start..start + window], &ln_g2[start..start + window]);
    Ok(GrowthFit::from_line(fit_line(t, y)?, t))
}
