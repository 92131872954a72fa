//! Canonical disk chart of the Bloch sphere and the mean-field Hamiltonian.
//!
//! `Q = r cos φ`, `P = −r sin φ`, `r = √(2(1 + cos θ))`. The south pole sits
//! at the origin and the north pole on the rim `Q² + P² = 4`.

use serde::{Deserialize, Serialize};

use crate::{Error, ModelParams, Result};

/// Radius² of the disk boundary.
pub const DISK_RADIUS_SQ: f64 = 4.0;

#[derive(Clone, Copy, Debug, PartialEq, Serialize, Deserialize)]
pub struct PhasePoint {
    pub q: f64,
    pub p: f64,
}

impl PhasePoint {
    pub const ORIGIN: PhasePoint = PhasePoint { q: 0.0, p: 0.0 };

    pub fn new(q: f64, p: f64) -> Self {
        Self { q, p }
    }

    pub fn radius_sq(&self) -> f64 {
        self.q * self.q + self.p * self.p
    }

    pub fn in_disk(&self) -> bool {
        self.radius_sq() <= DISK_RADIUS_SQ * (1.0 + 1e-12)
    }

    pub fn from_bloch(theta: f64, phi: f64) -> Self {
        let r = (2.0 * (1.0 + theta.cos())).max(0.0).sqrt();
        Self {
            q: r * phi.cos(),
            p: -r * phi.sin(),
        }
    }

    /// Inverse chart: `(θ, φ)` with `θ ∈ [0, π]`, `φ ∈ (−π, π]`. At the
    /// south pole `φ` is reported as 0.
    pub fn to_bloch(&self) -> (f64, f64) {
        let r2 = self.radius_sq().min(DISK_RADIUS_SQ);
        let theta = (r2 / 2.0 - 1.0).clamp(-1.0, 1.0).acos();
        let phi = if r2 == 0.0 { 0.0 } else { (-self.p).atan2(self.q) };
        (theta, phi)
    }

    /// Unit mean-spin vector `(s_x, s_y, s_z)`.
    pub fn spin_components(&self) -> [f64; 3] {
        let r2 = self.radius_sq();
        let c = (1.0 - r2 / 4.0).max(0.0).sqrt();
        [self.q * c, -self.p * c, r2 / 2.0 - 1.0]
    }
}

fn require_disk(point: &PhasePoint) -> Result<()> {
    if point.in_disk() {
        Ok(())
    } else {
        Err(Error::OutsideDisk {
            q: point.q,
            p: point.p,
        })
    }
}

/// Mean-field energy per spin, `H_cl(Q, P)`.
pub fn classical_hamiltonian(point: &PhasePoint, params: &ModelParams) -> Result<f64> {
    require_disk(point)?;
    Ok(hamiltonian_unchecked(point.q, point.p, params))
}

pub(crate) fn hamiltonian_unchecked(q: f64, p: f64, params: &ModelParams) -> f64 {
    let (h, j, k) = (params.h, params.j, params.k);
    let q2 = q * q;
    let p2 = p * p;
    let q4 = q2 * q2;
    let q6 = q4 * q2;
    -2.0 * h + h * (q2 + p2) - 2.0 * j * q2 + 0.5 * j * q2 * p2 + 0.5 * j * q4 - 2.0 * k * q4 + k * q4 * p2
        - 0.125 * k * q4 * p2 * p2
        + k * q6
        - 0.25 * k * q6 * p2
        - 0.125 * k * q4 * q4
}

/// `(∂H/∂Q, ∂H/∂P)`.
pub fn hamiltonian_gradient(point: &PhasePoint, params: &ModelParams) -> [f64; 2] {
    let (h, j, k) = (params.h, params.j, params.k);
    let (q, p) = (point.q, point.p);
    let q2 = q * q;
    let p2 = p * p;
    let q3 = q2 * q;
    let q5 = q3 * q2;
    let q7 = q5 * q2;
    let d_q = 2.0 * h * q - 4.0 * j * q + j * q * p2 + 2.0 * j * q3 - 8.0 * k * q3 + 4.0 * k * q3 * p2
        - 0.5 * k * q3 * p2 * p2
        + 6.0 * k * q5
        - 1.5 * k * q5 * p2
        - k * q7;
    let q4 = q2 * q2;
    let d_p = 2.0 * h * p + j * q2 * p + 2.0 * k * q4 * p - 0.5 * k * q4 * p2 * p - 0.5 * k * q4 * q2 * p;
    [d_q, d_p]
}

/// Hamilton's equations `(Q̇, Ṗ) = (∂H/∂P, −∂H/∂Q)`.
pub fn hamilton_flow(point: &PhasePoint, params: &ModelParams) -> [f64; 2] {
    let [d_q, d_p] = hamiltonian_gradient(point, params);
    [d_p, -d_q]
}

/// `V(Q) = H_cl(Q, 0)`.
pub fn effective_potential(q: f64, params: &ModelParams) -> f64 {
    let (h, j, k) = (params.h, params.j, params.k);
    let x = q * q;
    -2.0 * h + (h - 2.0 * j) * x + (0.5 * j - 2.0 * k) * x * x + k * x * x * x - 0.125 * k * x * x * x * x
}

/// `V'(Q)`.
pub fn potential_slope(q: f64, params: &ModelParams) -> f64 {
    let (h, j, k) = (params.h, params.j, params.k);
    let x = q * q;
    q * (2.0 * (h - 2.0 * j) + (2.0 * j - 8.0 * k) * x + 6.0 * k * x * x - k * x * x * x)
}

/// `V''(Q)`.
pub fn potential_curvature(q: f64, params: &ModelParams) -> f64 {
    let (h, j, k) = (params.h, params.j, params.k);
    let x = q * q;
    2.0 * (h - 2.0 * j) + (6.0 * j - 24.0 * k) * x + 30.0 * k * x * x - 7.0 * k * x * x * x
}
