//! Fixed points of the mean-field flow. All of them sit on `P = 0`: the
//! origin plus symmetric pairs `(±√x, 0)` where `x = Q²` solves
//!
//! ```text
//! x³ − 6x² − 2(J − 4K)/K · x − 2(h − 2J)/K = 0.
//! ```

use serde::{Deserialize, Serialize};

use super::cubic::{depressed_discriminant, solve_depressed};
use super::disk::{potential_curvature, PhasePoint};
use super::lyapunov::jacobian_entries;
use crate::{Error, ModelParams, Result};

/// Physical roots closer than this to 0 or to each other are merged.
pub const ROOT_MERGE_TOL: f64 = 1e-9;
/// `u·v` threshold separating hyperbolic from elliptic points.
pub const HYPERBOLIC_TOL: f64 = 1e-10;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Stability {
    /// `u·v > 0`: one expanding and one contracting direction.
    Hyperbolic,
    /// Elliptic with positive curvature, a well of `V`.
    Minimum,
    /// Elliptic with negative curvature.
    Maximum,
    /// `|u·v|` below tolerance, e.g. exactly on a bifurcation line.
    Marginal,
}

impl Stability {
    pub fn as_str(&self) -> &'static str {
        match self {
            Stability::Hyperbolic => "hyperbolic",
            Stability::Minimum => "minimum",
            Stability::Maximum => "maximum",
            Stability::Marginal => "marginal",
        }
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Serialize, Deserialize)]
pub struct FixedPoint {
    pub location: PhasePoint,
    pub stability: Stability,
    /// Polar angle with `cos θ = Q²/2 − 1`.
    pub bloch_theta: f64,
    /// `0` for `Q ≥ 0`, `π` for `Q < 0`.
    pub bloch_phi: f64,
}

impl FixedPoint {
    /// Builds the fixed point at `(q, 0)` and classifies it.
    pub fn at(q: f64, params: &ModelParams) -> Self {
        let (u, v) = jacobian_entries(q, params);
        let uv = u * v;
        let stability = if uv > HYPERBOLIC_TOL {
            Stability::Hyperbolic
        } else if uv < -HYPERBOLIC_TOL {
            if potential_curvature(q, params) > 0.0 {
                Stability::Minimum
            } else {
                Stability::Maximum
            }
        } else {
            Stability::Marginal
        };
        let bloch_theta = (q * q / 2.0 - 1.0).clamp(-1.0, 1.0).acos();
        let bloch_phi = if q < 0.0 { std::f64::consts::PI } else { 0.0 };
        Self {
            location: PhasePoint::new(q, 0.0),
            stability,
            bloch_theta,
            bloch_phi,
        }
    }

    pub fn q(&self) -> f64 {
        self.location.q
    }

    pub fn is_hyperbolic(&self) -> bool {
        self.stability == Stability::Hyperbolic
    }
}

/// Depressed-cubic coefficients `(c, d)` of the fixed-point equation after
/// `x = z + 2`: `c = −2(J + 2K)/K`, `d = −2h/K`. `None` when `K = 0`.
pub fn depressed_coefficients(params: &ModelParams) -> Option<(f64, f64)> {
    (params.k > 0.0).then(|| {
        (
            -2.0 * (params.j + 2.0 * params.k) / params.k,
            -2.0 * params.h / params.k,
        )
    })
}

/// Cardano discriminant of the fixed-point cubic in dimensionless form,
/// `D = [32(1 + 2K/J)³ − 108(h/J)²(K/J)] / (K/J)³`. Vanishes on `h = h₂`.
pub fn fixed_point_discriminant(params: &ModelParams) -> Result<f64> {
    let h = params.h_over_j()?;
    let k = params.k_over_j()?;
    if k == 0.0 {
        return Err(Error::InvalidParameter {
            field: "K",
            reason: "the cubic degenerates when K = 0".into(),
        });
    }
    let c = -2.0 * (1.0 + 2.0 * k) / k;
    let d = -2.0 * h / k;
    Ok(depressed_discriminant(c, d))
}

/// Roots `x = Q²` of the fixed-point equation with `0 < x ≤ 4`, ascending.
pub fn physical_roots(params: &ModelParams) -> Result<Vec<f64>> {
    let candidates: Vec<f64> = match depressed_coefficients(params) {
        Some((c, d)) => {
            let scale = (4.0 * c.abs().powi(3)).max(27.0 * d * d).max(1.0);
            solve_depressed(c, d, 1e-13 * scale)
                .real_roots()
                .into_iter()
                .map(|z| z + 2.0)
                .collect()
        }
        None if params.j != 0.0 => vec![2.0 - params.h / params.j],
        None => return Err(Error::DegenerateCouplings),
    };
    let mut roots: Vec<f64> = Vec::new();
    for x in candidates {
        if x <= ROOT_MERGE_TOL || x > 4.0 * (1.0 + 1e-12) {
            continue;
        }
        let x = x.min(4.0);
        if roots.iter().all(|r| (r - x).abs() > ROOT_MERGE_TOL) {
            roots.push(x);
        }
    }
    roots.sort_by(f64::total_cmp);
    Ok(roots)
}

/// All fixed points, sorted by `Q`. The count is 1, 3 or 5.
pub fn find_fixed_points(params: &ModelParams) -> Result<Vec<FixedPoint>> {
    if params.j == 0.0 && params.k == 0.0 {
        return Err(Error::DegenerateCouplings);
    }
    let roots = physical_roots(params)?;
    let mut points = Vec::with_capacity(2 * roots.len() + 1);
    points.push(FixedPoint::at(0.0, params));
    for x in roots {
        let q = x.sqrt();
        points.push(FixedPoint::at(q, params));
        points.push(FixedPoint::at(-q, params));
    }
    points.sort_by(|a, b| a.q().total_cmp(&b.q()));
    Ok(points)
}
