//! Time-reversal echo `e^{+iHt} e^{−iδφ Ŝ_α} e^{−iHt} |ψ₀⟩`.

use std::f64::consts::FRAC_PI_4;

use nalgebra::{DMatrix, DVector, SymmetricEigen};
use serde::{Deserialize, Serialize};

use super::propagator::{apply_real, evolve, Propagator};
use super::squeezing::{anti_squeezing, hyperbolic_initial_state, AlphaPolicy};
use crate::spin::{component_moments, spin_alpha_operator, CVector, Complex, QuantumState, SpinOperators};
use crate::{Error, ModelParams, Result};

/// Spectral form of the rotation generator `Ŝ_α`.
///
/// `Ŝ_α = n·S` has a complex tridiagonal matrix in the Dicke basis, but the
/// phase of its off-diagonal is the same on every row, so `Ŝ_α = D T D†` with
/// `D = diag(e^{−ikβ})` and `T` real symmetric.
#[derive(Clone, Debug)]
pub struct RotationGenerator {
    alpha: f64,
    theta_hyp: f64,
    beta: f64,
    eigenvalues: DVector<f64>,
    eigenvectors: DMatrix<f64>,
}

impl RotationGenerator {
    pub fn new(alpha: f64, theta_hyp: f64, n: usize) -> Result<Self> {
        let ops = SpinOperators::new(n)?;
        let (sa, ca) = alpha.sin_cos();
        let (nx, ny, nz) = (sa * theta_hyp.cos(), ca, -sa * theta_hyp.sin());
        let rho = nx.hypot(ny);
        let beta = ny.atan2(nx);
        let dim = ops.dim();
        let mut t = DMatrix::zeros(dim, dim);
        for (k, m) in ops.m_values().enumerate() {
            t[(k, k)] = nz * m;
        }
        for (k, &l) in ops.ladder().iter().enumerate() {
            t[(k + 1, k)] = 0.5 * l * rho;
            t[(k, k + 1)] = 0.5 * l * rho;
        }
        let eig = SymmetricEigen::new(t);
        Ok(Self {
            alpha,
            theta_hyp,
            beta,
            eigenvalues: eig.eigenvalues,
            eigenvectors: eig.eigenvectors,
        })
    }

    pub fn alpha(&self) -> f64 {
        self.alpha
    }

    pub fn theta_hyp(&self) -> f64 {
        self.theta_hyp
    }

    pub fn dim(&self) -> usize {
        self.eigenvalues.len()
    }

    /// Spectrum of `Ŝ_α`; the values `−S..=S` up to rounding.
    pub fn eigenvalues(&self) -> &DVector<f64> {
        &self.eigenvalues
    }

    pub fn operator(&self, ops: &SpinOperators) -> crate::spin::CMatrix {
        spin_alpha_operator(self.alpha, self.theta_hyp, ops)
    }

    /// Amplitudes of `ψ` in the eigenbasis of `Ŝ_α`.
    fn coefficients(&self, psi: &CVector) -> CVector {
        // D†ψ, then Wᵀ
        let gauged = CVector::from_fn(psi.len(), |k, _| {
            psi[k] * Complex::from_polar(1.0, k as f64 * self.beta)
        });
        apply_real(&self.eigenvectors.transpose(), &gauged)
    }

    /// `e^{−iδφ Ŝ_α} ψ`.
    pub fn rotate(&self, state: &QuantumState, delta_phi: f64) -> Result<QuantumState> {
        if state.dim() != self.dim() {
            return Err(Error::DimensionMismatch {
                expected: self.dim(),
                got: state.dim(),
            });
        }
        let mut c = self.coefficients(state.amplitudes());
        for (ck, e) in c.iter_mut().zip(self.eigenvalues.iter()) {
            *ck *= Complex::from_polar(1.0, -delta_phi * e);
        }
        let back = apply_real(&self.eigenvectors, &c);
        let out = CVector::from_fn(back.len(), |k, _| {
            back[k] * Complex::from_polar(1.0, -(k as f64) * self.beta)
        });
        Ok(QuantumState::from_unitary_image(out))
    }

    /// Weights `|⟨k|ψ⟩|²` over the eigenvectors of `Ŝ_α`.
    pub fn weights(&self, state: &QuantumState) -> Result<Vec<f64>> {
        if state.dim() != self.dim() {
            return Err(Error::DimensionMismatch {
                expected: self.dim(),
                got: state.dim(),
            });
        }
        Ok(self
            .coefficients(state.amplitudes())
            .iter()
            .map(|c| c.norm_sqr())
            .collect())
    }
}

#[derive(Clone, Debug)]
pub struct EchoResult {
    pub delta_phi: f64,
    pub state: QuantumState,
    /// `|⟨ψ₀|ψ_t(δφ)⟩|²`
    pub fidelity: f64,
    /// `⟨Ŝ_α⟩` on the echoed state.
    pub s_alpha_mean: f64,
    /// Length of the transverse mean spin `(⟨Ŝ_e₁⟩, ⟨Ŝ_e₂⟩)` on the echoed
    /// state. The rotation kicks the state perpendicular to `n_α`, so in the
    /// linear regime this is `S sin(G δφ)` while `⟨Ŝ_α⟩` itself stays near 0.
    pub transverse_shift: f64,
}

impl EchoResult {
    /// `G` read off as `arcsin(shift / S) / |δφ|`.
    pub fn readout_gain(&self) -> Option<f64> {
        let s = self.state.n() as f64 / 2.0;
        (self.delta_phi != 0.0).then(|| (self.transverse_shift / s).min(1.0).asin() / self.delta_phi.abs())
    }
}

/// Full echo with an explicit generator, for reuse across `δφ` values.
pub fn echo_with(
    psi0: &QuantumState,
    prop: &Propagator,
    generator: &RotationGenerator,
    ops: &SpinOperators,
    t: f64,
    delta_phi: f64,
) -> Result<EchoResult> {
    let forward = evolve(psi0, prop, t)?;
    let kicked = generator.rotate(&forward, delta_phi)?;
    let state = evolve(&kicked, prop, -t)?;
    let fidelity = psi0.fidelity(&state)?;
    let th = generator.theta_hyp();
    let [m1, m2, ..] = component_moments(&state, ops, [0.0, 1.0, 0.0], [th.cos(), 0.0, -th.sin()])?;
    let (sa, ca) = generator.alpha().sin_cos();
    let s_alpha_mean = ca * m1 + sa * m2;
    Ok(EchoResult {
        delta_phi,
        state,
        fidelity,
        s_alpha_mean,
        transverse_shift: m1.hypot(m2),
    })
}

pub fn echo_protocol(
    psi0: &QuantumState,
    prop: &Propagator,
    t: f64,
    delta_phi: f64,
    alpha: f64,
    theta_hyp: f64,
) -> Result<EchoResult> {
    let n = psi0.n();
    let generator = RotationGenerator::new(alpha, theta_hyp, n)?;
    let ops = SpinOperators::new(n)?;
    echo_with(psi0, prop, &generator, &ops, t, delta_phi)
}

/// `1 − F(δφ)` for each `δφ` without forming `F`.
///
/// `F = |⟨φ|e^{−iδφ Ŝ_α}|φ⟩|²` with `φ = e^{−iHt}ψ₀`, so with weights `p_k`
/// over the `Ŝ_α` spectrum `s_k`,
/// `1 − F = Σ_{k,l} p_k p_l · 2 sin²(δφ (s_k − s_l) / 2)`, which has no
/// cancellation at small `δφ`.
pub fn infidelity_scan(
    psi0: &QuantumState,
    prop: &Propagator,
    generator: &RotationGenerator,
    t: f64,
    delta_phis: &[f64],
) -> Result<Vec<f64>> {
    let forward = evolve(psi0, prop, t)?;
    let w = generator.weights(&forward)?;
    let s = generator.eigenvalues();
    // drop negligible weights: they cannot move 1 − F at double precision
    let max_w = w.iter().cloned().fold(0.0, f64::max);
    let keep: Vec<usize> = (0..w.len()).filter(|&k| w[k] > 1e-30 * max_w).collect();
    Ok(delta_phis
        .iter()
        .map(|&dp| {
            let mut acc = 0.0;
            for (a, &k) in keep.iter().enumerate() {
                for &l in &keep[a + 1..] {
                    let x = (0.5 * dp * (s[k] - s[l])).sin();
                    acc += w[k] * w[l] * x * x;
                }
            }
            4.0 * acc
        })
        .collect())
}

/// Echo infidelity against `δφ` at one time, starting from the coherent
/// state at the hyperbolic point.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct InfidelityCurve {
    pub t: f64,
    /// Kick direction used; for [`AlphaPolicy::Optimal`] the anti-squeezed
    /// direction of the forward-evolved state (`π/4` if isotropic).
    pub alpha: f64,
    pub delta_phi: Vec<f64>,
    pub one_minus_f: Vec<f64>,
}

pub fn infidelity_curve(
    params: &ModelParams,
    t: f64,
    delta_phis: &[f64],
    policy: AlphaPolicy,
) -> Result<InfidelityCurve> {
    let (psi0, fp) = hyperbolic_initial_state(params)?;
    let prop = Propagator::cached(params)?;
    let alpha = match policy {
        AlphaPolicy::Fixed(a) => a,
        AlphaPolicy::Optimal => {
            let ops = SpinOperators::new(params.n)?;
            let fwd = evolve(&psi0, &prop, t)?;
            anti_squeezing(&fwd, fp.bloch_theta, &ops)?
                .alpha_max
                .unwrap_or(FRAC_PI_4)
        }
    };
    let generator = RotationGenerator::new(alpha, fp.bloch_theta, params.n)?;
    let one_minus_f = infidelity_scan(&psi0, &prop, &generator, t, delta_phis)?;
    Ok(InfidelityCurve {
        t,
        alpha,
        delta_phi: delta_phis.to_vec(),
        one_minus_f,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::spin::{coherent_state, hermitian_residual, variance, CMatrix};

    fn dense_exp(op: &CMatrix, dp: f64) -> CMatrix {
        // Taylor series; fine for small ‖δφ S‖
        let dim = op.nrows();
        let a = op * Complex::new(0.0, -dp);
        let mut term = CMatrix::identity(dim, dim);
        let mut sum = term.clone();
        for k in 1..60 {
            term = &term * &a / Complex::from(k as f64);
            sum += &term;
        }
        sum
    }

    #[test]
    fn gauge_form_reproduces_generator() {
        for n in [1, 2, 7, 30] {
            let ops = SpinOperators::new(n).unwrap();
            for (alpha, theta) in [(0.3, 2.0), (FRAC_PI_4, 3.0), (2.9, 0.4), (0.0, 1.0), (1.2, 0.0)] {
                let g = RotationGenerator::new(alpha, theta, n).unwrap();
                let psi = coherent_state(1.3, 0.2, n).unwrap();
                let dense = dense_exp(&g.operator(&ops), 0.37) * psi.amplitudes();
                let fast = g.rotate(&psi, 0.37).unwrap();
                assert!(
                    (fast.amplitudes() - dense).camax() < 1e-11,
                    "n={n} α={alpha} θ={theta}"
                );
                let mut spec: Vec<f64> = g.eigenvalues().iter().cloned().collect();
                spec.sort_by(f64::total_cmp);
                for (k, s) in spec.iter().enumerate() {
                    assert!((s - (k as f64 - n as f64 / 2.0)).abs() < 1e-10);
                }
            }
        }
    }

    #[test]
    fn echo_identity_at_zero_kick() {
        let p = ModelParams::new(3.265, 1.0, 1.5, 60).unwrap();
        let prop = Propagator::new(&p).unwrap();
        let psi = coherent_state(2.6, 0.0, 60).unwrap();
        for t in [0.1, 0.5, 2.0] {
            let r = echo_protocol(&psi, &prop, t, 0.0, FRAC_PI_4, 2.6).unwrap();
            assert!((r.fidelity - 1.0).abs() < 1e-10);
            assert!((r.state.norm() - 1.0).abs() < 1e-10);
        }
    }

    #[test]
    fn fidelity_symmetric_in_kick_sign() {
        let p = ModelParams::new(3.265, 1.0, 1.5, 40).unwrap();
        let prop = Propagator::new(&p).unwrap();
        let psi = coherent_state(2.6, 0.0, 40).unwrap();
        for dp in [1e-3, 3e-2, 0.2] {
            let a = echo_protocol(&psi, &prop, 0.3, dp, 0.9, 2.6).unwrap();
            let b = echo_protocol(&psi, &prop, 0.3, -dp, 0.9, 2.6).unwrap();
            assert!((a.fidelity - b.fidelity).abs() < 1e-8);
        }
    }

    #[test]
    fn pairwise_infidelity_matches_overlap() {
        let n = 30;
        let p = ModelParams::new(1.0, 1.0, 0.0, n).unwrap();
        let prop = Propagator::new(&p).unwrap();
        let psi = coherent_state(std::f64::consts::PI, 0.0, n).unwrap();
        let g = RotationGenerator::new(FRAC_PI_4, std::f64::consts::PI, n).unwrap();
        let ops = SpinOperators::new(n).unwrap();
        let dps = [1e-2, 0.1, 0.5];
        let scan = infidelity_scan(&psi, &prop, &g, 0.4, &dps).unwrap();
        for (dp, got) in dps.iter().zip(scan) {
            let full = echo_with(&psi, &prop, &g, &ops, 0.4, *dp).unwrap();
            assert!((got - (1.0 - full.fidelity)).abs() < 1e-12);
        }
    }

    #[test]
    fn small_kick_curvature_is_quarter_qfi() {
        let n = 50;
        let p = ModelParams::new(1.0, 1.0, 0.0, n).unwrap();
        let prop = Propagator::new(&p).unwrap();
        let theta = std::f64::consts::PI;
        let psi = coherent_state(theta, 0.0, n).unwrap();
        let ops = SpinOperators::new(n).unwrap();
        let g = RotationGenerator::new(FRAC_PI_4, theta, n).unwrap();
        let fwd = evolve(&psi, &prop, 0.3).unwrap();
        let fq = 4.0 * variance(&fwd, &g.operator(&ops)).unwrap();
        let scan = infidelity_scan(&psi, &prop, &g, 0.3, &[1e-4]).unwrap();
        assert!((scan[0] / 1e-8 - fq / 4.0).abs() < 1e-4 * fq);
        assert!(hermitian_residual(&g.operator(&ops)) < 1e-14);
    }
}
