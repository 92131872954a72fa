//! Local Lyapunov exponents at hyperbolic fixed points, the `(h/J, K/J)`
//! exponent map and the fit of its ridge.

use nalgebra::Matrix2;
use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use super::fixed_points::{find_fixed_points, FixedPoint, Stability};
use super::region::{classify_region, Region, RegionLabel};
use crate::numerics::{fit_line, linspace, LineFit};
use crate::{Error, ModelParams, Result};

/// Off-diagonal Jacobian entries at `(Q, 0)`:
/// `u = ∂²H/∂P²`, `v = −∂²H/∂Q²`.
pub fn jacobian_entries(q: f64, params: &ModelParams) -> (f64, f64) {
    let (h, j, k) = (params.h, params.j, params.k);
    let x = q * q;
    let u = 2.0 * h + j * x + 2.0 * k * x * x - 0.5 * k * x * x * x;
    let v = -2.0 * h + 4.0 * j - 6.0 * j * x + 24.0 * k * x - 30.0 * k * x * x + 7.0 * k * x * x * x;
    (u, v)
}

/// Linearized Hamiltonian flow `[[0, u], [v, 0]]` at a fixed point.
pub fn jacobian_at(fp: &FixedPoint, params: &ModelParams) -> Matrix2<f64> {
    let (u, v) = jacobian_entries(fp.q(), params);
    Matrix2::new(0.0, u, v, 0.0)
}

/// `λ = √(u v)` at a hyperbolic point; `None` for elliptic or marginal points.
pub fn lyapunov_exponent(fp: &FixedPoint, params: &ModelParams) -> Option<f64> {
    if fp.stability != Stability::Hyperbolic {
        return None;
    }
    let (u, v) = jacobian_entries(fp.q(), params);
    Some((u * v).sqrt())
}

/// Closed form at the origin, `2√(h(2J − h))`; zero outside `0 < h < 2J`.
pub fn lyapunov_origin(h: f64, j: f64) -> f64 {
    let arg = h * (2.0 * j - h);
    if arg > 0.0 {
        2.0 * arg.sqrt()
    } else {
        0.0
    }
}

/// Largest local exponent over all hyperbolic points, `0` if there are none.
pub fn max_lyapunov(params: &ModelParams) -> Result<f64> {
    Ok(find_fixed_points(params)?
        .iter()
        .filter_map(|fp| lyapunov_exponent(fp, params))
        .fold(0.0, f64::max))
}

/// The hyperbolic point a sensing protocol is centered on: the origin in
/// region I, `+Q_hyp` in region II.
pub fn primary_hyperbolic_point(params: &ModelParams) -> Result<FixedPoint> {
    let points = find_fixed_points(params)?;
    points
        .iter()
        .filter(|fp| fp.is_hyperbolic() && fp.q() >= 0.0)
        .copied()
        .map(|fp| (fp, lyapunov_exponent(&fp, params).unwrap_or(0.0)))
        .max_by(|a, b| a.1.total_cmp(&b.1).then(b.0.q().total_cmp(&a.0.q())))
        .map(|(fp, _)| fp)
        .ok_or_else(|| Error::NoHyperbolicPoint {
            h_over_j: params.h / params.j,
            k_over_j: params.k / params.j,
            region: classify_region(params)
                .map(|r| r.label.to_string())
                .unwrap_or_else(|_| "unclassified".into()),
        })
}

/// Rectangular grid in `(h/J, K/J)` with `J = 1`.
#[derive(Clone, Copy, Debug, PartialEq, Serialize, Deserialize)]
pub struct MapGrid {
    pub h_min: f64,
    pub h_max: f64,
    pub k_min: f64,
    pub k_max: f64,
    pub h_steps: usize,
    pub k_steps: usize,
}

impl Default for MapGrid {
    fn default() -> Self {
        Self {
            h_min: 0.0,
            h_max: 6.0,
            k_min: 0.0,
            k_max: 4.0,
            h_steps: 300,
            k_steps: 300,
        }
    }
}

impl MapGrid {
    /// Window at large `h/J` where the exponent ridge is straight; see
    /// [`fit_max_lyapunov_line`].
    pub fn ridge_fit() -> Self {
        Self {
            h_min: 10.0,
            h_max: 60.0,
            k_min: 5.0,
            k_max: 45.0,
            h_steps: 300,
            k_steps: 300,
        }
    }

    pub fn with_resolution(self, h_steps: usize, k_steps: usize) -> Self {
        Self {
            h_steps,
            k_steps,
            ..self
        }
    }

    pub fn validate(&self) -> Result<()> {
        if self.h_steps < 2 || self.k_steps < 2 {
            return Err(Error::Config(format!(
                "map grid needs at least 2 steps per axis, got {}×{}",
                self.h_steps, self.k_steps
            )));
        }
        if !(self.h_max > self.h_min && self.k_max > self.k_min) || self.k_min < 0.0 {
            return Err(Error::Config(format!(
                "map grid bounds must satisfy h_min < h_max and 0 ≤ K_min < K_max, got h∈[{}, {}], K∈[{}, {}]",
                self.h_min, self.h_max, self.k_min, self.k_max
            )));
        }
        Ok(())
    }

    pub fn h_values(&self) -> Vec<f64> {
        linspace(self.h_min, self.h_max, self.h_steps)
    }

    pub fn k_values(&self) -> Vec<f64> {
        linspace(self.k_min, self.k_max, self.k_steps)
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Serialize, Deserialize)]
pub struct MapCell {
    pub h_over_j: f64,
    pub k_over_j: f64,
    pub lambda: f64,
    pub region: RegionLabel,
}

/// Exponent field, row-major with `K/J` as the slow index.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct LyapunovMap {
    pub grid: MapGrid,
    pub cells: Vec<MapCell>,
}

impl LyapunovMap {
    pub fn row(&self, k_index: usize) -> &[MapCell] {
        let w = self.grid.h_steps;
        &self.cells[k_index * w..(k_index + 1) * w]
    }
}

pub fn lyapunov_cell(h_over_j: f64, k_over_j: f64) -> Result<MapCell> {
    let params = ModelParams::new(h_over_j, 1.0, k_over_j, 2)?;
    let region = classify_region(&params)?.label;
    let lambda = if region == RegionLabel::Region(Region::III) {
        0.0
    } else {
        max_lyapunov(&params)?
    };
    Ok(MapCell {
        h_over_j,
        k_over_j,
        lambda,
        region,
    })
}

/// Exponent map over `grid`, evaluated in parallel.
pub fn lyapunov_map(grid: &MapGrid) -> Result<LyapunovMap> {
    grid.validate()?;
    let hs = grid.h_values();
    let ks = grid.k_values();
    let cells = ks
        .iter()
        .flat_map(|&k| hs.iter().map(move |&h| (h, k)))
        .collect::<Vec<_>>()
        .into_par_iter()
        .map(|(h, k)| lyapunov_cell(h, k))
        .collect::<Result<Vec<_>>>()?;
    Ok(LyapunovMap { grid: *grid, cells })
}

/// Ridge fit `K_opt ≈ slope·h + intercept` (with `J = 1`).
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct RidgeFit {
    pub slope: f64,
    pub intercept: f64,
    pub rms: f64,
    /// `(h/J, K/J)` ridge samples the line was fitted to.
    pub ridge: Vec<(f64, f64)>,
}

/// Least-squares line through the ridge of maximal exponent in region II.
///
/// For each `K/J` row the region-II cell of largest `λ` is taken; rows whose
/// maximum falls on the first or last `h/J` column are dropped because the
/// ridge lies outside the grid there. The ridge is curved near the
/// `h/J = 2` bifurcation and straightens at large `h/J`.
pub fn fit_max_lyapunov_line(map: &LyapunovMap) -> Result<RidgeFit> {
    let last = map.grid.h_steps - 1;
    let mut ridge = Vec::new();
    for row in 0..map.grid.k_steps {
        let best = map
            .row(row)
            .iter()
            .enumerate()
            .filter(|(_, c)| c.region == RegionLabel::Region(Region::II) && c.lambda > 0.0)
            .max_by(|a, b| a.1.lambda.total_cmp(&b.1.lambda));
        if let Some((i, cell)) = best {
            if i != 0 && i != last {
                ridge.push((cell.h_over_j, cell.k_over_j));
            }
        }
    }
    if ridge.len() < 3 {
        return Err(Error::InsufficientData(format!(
            "only {} region-II ridge points inside the grid",
            ridge.len()
        )));
    }
    let (hs, ks): (Vec<f64>, Vec<f64>) = ridge.iter().copied().unzip();
    let LineFit {
        slope,
        intercept,
        rms,
        ..
    } = fit_line(&hs, &ks)?;
    Ok(RidgeFit {
        slope,
        intercept,
        rms,
        ridge,
    })
}
