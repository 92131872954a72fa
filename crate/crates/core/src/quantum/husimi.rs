//! Husimi distribution `Q(θ, φ) = |⟨θ, φ|ψ⟩|²` on sphere or disk lattices.

use std::f64::consts::PI;

use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::classical::PhasePoint;
use crate::numerics::linspace;
use crate::spin::{coherent_state, Complex, QuantumState};
use crate::{Error, Result};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase", tag = "kind")]
pub enum HusimiGrid {
    /// Midpoint lattice in `θ ∈ (0, π)`, `φ ∈ [0, 2π)`.
    Sphere { theta_steps: usize, phi_steps: usize },
    /// Square lattice over `[−2, 2]²` in `(Q, P)`; nodes outside the disk are
    /// dropped.
    Disk { q_steps: usize, p_steps: usize },
}

impl Default for HusimiGrid {
    fn default() -> Self {
        HusimiGrid::Disk {
            q_steps: 201,
            p_steps: 201,
        }
    }
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct HusimiNode {
    /// `(θ, φ)` on the sphere grid, `(Q, P)` on the disk grid.
    pub x: f64,
    pub y: f64,
    /// Unnormalized `|⟨θ, φ|ψ⟩|²`.
    pub value: f64,
    /// Solid angle (sphere) or disk area (disk) attached to the node.
    pub weight: f64,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct HusimiField {
    pub grid: HusimiGrid,
    pub n: usize,
    pub nodes: Vec<HusimiNode>,
}

impl HusimiField {
    pub fn max_value(&self) -> f64 {
        self.nodes.iter().map(|n| n.value).fold(0.0, f64::max)
    }

    /// Values scaled to a maximum of 1.
    pub fn normalized(&self) -> Vec<f64> {
        let m = self.max_value();
        self.nodes
            .iter()
            .map(|n| if m > 0.0 { n.value / m } else { 0.0 })
            .collect()
    }

    /// `(N + 1)/(4π) Σ Q dΩ`; 1 for any normalized state up to quadrature
    /// error. The disk chart preserves area, so the same sum applies there.
    pub fn quadrature(&self) -> f64 {
        let total: f64 = self.nodes.iter().map(|n| n.value * n.weight).sum();
        (self.n + 1) as f64 / (4.0 * PI) * total
    }
}

/// `|⟨θ, φ|ψ⟩|²` at a single point.
pub fn husimi_at(state: &QuantumState, theta: f64, phi: f64) -> Result<f64> {
    let cs = coherent_state(theta.clamp(0.0, PI), phi, state.n())?;
    Ok(cs.inner(state)?.norm_sqr())
}

pub fn husimi(state: &QuantumState, grid: HusimiGrid) -> Result<HusimiField> {
    let n = state.n();
    let nodes = match grid {
        HusimiGrid::Sphere {
            theta_steps,
            phi_steps,
        } => {
            check_steps(theta_steps, phi_steps)?;
            let dtheta = PI / theta_steps as f64;
            let dphi = 2.0 * PI / phi_steps as f64;
            let rows: Vec<Vec<HusimiNode>> = (0..theta_steps)
                .into_par_iter()
                .map(|i| {
                    let theta = (i as f64 + 0.5) * dtheta;
                    // real magnitudes at φ = 0; the φ dependence is e^{i(N−k)φ}
                    let radial = coherent_state(theta, 0.0, n)?;
                    let weight = theta.sin() * dtheta * dphi;
                    Ok((0..phi_steps)
                        .map(|j| {
                            let phi = j as f64 * dphi;
                            let amp: Complex = radial
                                .amplitudes()
                                .iter()
                                .zip(state.amplitudes().iter())
                                .enumerate()
                                .map(|(k, (a, s))| {
                                    a.conj() * s * Complex::from_polar(1.0, -((n - k) as f64) * phi)
                                })
                                .sum();
                            HusimiNode {
                                x: theta,
                                y: phi,
                                value: amp.norm_sqr(),
                                weight,
                            }
                        })
                        .collect())
                })
                .collect::<Result<_>>()?;
            rows.into_iter().flatten().collect()
        }
        HusimiGrid::Disk { q_steps, p_steps } => {
            check_steps(q_steps, p_steps)?;
            let qs = linspace(-2.0, 2.0, q_steps);
            let ps = linspace(-2.0, 2.0, p_steps);
            let area = (4.0 / (q_steps - 1) as f64) * (4.0 / (p_steps - 1) as f64);
            let rows: Vec<Vec<HusimiNode>> = qs
                .par_iter()
                .map(|&q| {
                    ps.iter()
                        .filter_map(|&p| {
                            let pt = PhasePoint::new(q, p);
                            pt.in_disk().then_some(pt)
                        })
                        .map(|pt| {
                            let (theta, phi) = pt.to_bloch();
                            Ok(HusimiNode {
                                x: pt.q,
                                y: pt.p,
                                value: husimi_at(state, theta, phi)?,
                                weight: area,
                            })
                        })
                        .collect::<Result<_>>()
                })
                .collect::<Result<_>>()?;
            rows.into_iter().flatten().collect()
        }
    };
    Ok(HusimiField { grid, n, nodes })
}

fn check_steps(a: usize, b: usize) -> Result<()> {
    if a < 2 || b < 2 {
        return Err(Error::Config(format!(
            "Husimi grid needs at least 2×2 nodes, got {a}×{b}"
        )));
    }
    Ok(())
}
