//! Collective spin operators in the Dicke basis `|S, m⟩`, the model
//! Hamiltonian, spin coherent states and moments.
//!
//! Basis index `k = 0..=N` corresponds to `m = k − S`, i.e. `m` ascending from
//! `−S` (south pole) to `+S` (north pole).

use nalgebra::{DMatrix, DVector};

use crate::{Error, ModelParams, Result};

pub type Complex = nalgebra::Complex<f64>;
pub type CMatrix = DMatrix<Complex>;
pub type CVector = DVector<Complex>;

/// Relative tolerance for the Hermiticity check in [`expectation`].
pub const HERMITIAN_TOL: f64 = 1e-12;

/// `Sx`, `Sy`, `Sz` for spin `S = N/2`.
#[derive(Clone, Debug)]
pub struct SpinOperators {
    n: usize,
    /// `⟨m+1|S₊|m⟩ = √(S(S+1) − m(m+1))`, one entry per adjacent pair.
    ladder: Vec<f64>,
    sx: DMatrix<f64>,
    sy: CMatrix,
    sz: DMatrix<f64>,
}

impl SpinOperators {
    pub fn new(n: usize) -> Result<Self> {
        if n == 0 {
            return Err(Error::InvalidDimension("N must be at least 1".into()));
        }
        let s = n as f64 / 2.0;
        let dim = n + 1;
        let ladder: Vec<f64> = (0..n)
            .map(|k| {
                let m = k as f64 - s;
                (s * (s + 1.0) - m * (m + 1.0)).sqrt()
            })
            .collect();
        let mut sx = DMatrix::zeros(dim, dim);
        let mut sy = CMatrix::zeros(dim, dim);
        for (k, &l) in ladder.iter().enumerate() {
            sx[(k + 1, k)] = 0.5 * l;
            sx[(k, k + 1)] = 0.5 * l;
            // Sy = (S₊ − S₋) / 2i
            sy[(k + 1, k)] = Complex::new(0.0, -0.5 * l);
            sy[(k, k + 1)] = Complex::new(0.0, 0.5 * l);
        }
        let sz = DMatrix::from_diagonal(&DVector::from_iterator(dim, (0..dim).map(|k| k as f64 - s)));
        Ok(Self {
            n,
            ladder,
            sx,
            sy,
            sz,
        })
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn spin(&self) -> f64 {
        self.n as f64 / 2.0
    }

    pub fn dim(&self) -> usize {
        self.n + 1
    }

    pub fn ladder(&self) -> &[f64] {
        &self.ladder
    }

    pub fn m_values(&self) -> impl Iterator<Item = f64> + '_ {
        let s = self.spin();
        (0..self.dim()).map(move |k| k as f64 - s)
    }

    pub fn sx(&self) -> &DMatrix<f64> {
        &self.sx
    }

    pub fn sy(&self) -> &CMatrix {
        &self.sy
    }

    pub fn sz(&self) -> &DMatrix<f64> {
        &self.sz
    }

    pub fn sx_complex(&self) -> CMatrix {
        to_complex(&self.sx)
    }

    pub fn sz_complex(&self) -> CMatrix {
        to_complex(&self.sz)
    }

    /// Spin component `n·S` along a real 3-vector.
    pub fn component(&self, dir: [f64; 3]) -> CMatrix {
        to_complex(&(&self.sx * dir[0] + &self.sz * dir[2])) + &self.sy * Complex::from(dir[1])
    }

    /// The two transverse components `(S_e₁, S_e₂)` at polar angle
    /// `theta` on the `φ = 0` meridian, with `e₁ = ŷ` and
    /// `e₂ = (cos θ, 0, −sin θ)`.
    pub fn transverse_pair(&self, theta: f64) -> (CMatrix, CMatrix) {
        (self.sy.clone(), self.component([theta.cos(), 0.0, -theta.sin()]))
    }

    /// `(n·S)ψ` using the tridiagonal structure, `O(N)`.
    pub fn apply(&self, dir: [f64; 3], psi: &CVector) -> CVector {
        let [nx, ny, nz] = dir;
        let s = self.spin();
        // ⟨k+1|n·S|k⟩ = (l/2)(nx − i ny)
        let lower = Complex::new(nx, -ny);
        let mut out = CVector::from_fn(psi.len(), |k, _| psi[k] * (nz * (k as f64 - s)));
        for (k, &l) in self.ladder.iter().enumerate() {
            out[k + 1] += lower * psi[k] * (0.5 * l);
            out[k] += lower.conj() * psi[k + 1] * (0.5 * l);
        }
        out
    }
}

/// Mean, variance and symmetrized covariance of two spin components,
/// `(⟨A⟩, ⟨B⟩, Var A, Var B, Cov(A, B))`.
pub fn component_moments(
    state: &QuantumState,
    ops: &SpinOperators,
    a: [f64; 3],
    b: [f64; 3],
) -> Result<[f64; 5]> {
    check_dim(ops.dim(), state.dim())?;
    let psi = state.amplitudes();
    let a_psi = ops.apply(a, psi);
    let b_psi = ops.apply(b, psi);
    let ma = psi.dotc(&a_psi).re;
    let mb = psi.dotc(&b_psi).re;
    Ok([
        ma,
        mb,
        a_psi.norm_squared() - ma * ma,
        b_psi.norm_squared() - mb * mb,
        a_psi.dotc(&b_psi).re - ma * mb,
    ])
}

pub fn build_operators(params: &ModelParams) -> Result<SpinOperators> {
    SpinOperators::new(params.n)
}

pub fn to_complex(m: &DMatrix<f64>) -> CMatrix {
    m.map(Complex::from)
}

/// `Ŝ_α = Ŝy cos α + (cos θ Ŝx − sin θ Ŝz) sin α`, the spin component at angle
/// `α` in the plane transverse to the mean spin at `(θ, φ = 0)`.
pub fn spin_alpha_operator(alpha: f64, theta_hyp: f64, ops: &SpinOperators) -> CMatrix {
    let (s, c) = alpha.sin_cos();
    ops.component([s * theta_hyp.cos(), c, -s * theta_hyp.sin()])
}

/// Real symmetric Hamiltonian matrix in the Dicke basis; bandwidth 4.
#[derive(Clone, Debug)]
pub struct Hamiltonian {
    params: ModelParams,
    matrix: DMatrix<f64>,
}

impl Hamiltonian {
    pub fn params(&self) -> &ModelParams {
        &self.params
    }

    pub fn matrix(&self) -> &DMatrix<f64> {
        &self.matrix
    }

    pub fn into_matrix(self) -> DMatrix<f64> {
        self.matrix
    }

    /// Largest `|i − j|` with a nonzero entry.
    pub fn bandwidth(&self) -> usize {
        let m = &self.matrix;
        let mut bw = 0;
        for j in 0..m.ncols() {
            for i in 0..m.nrows() {
                if m[(i, j)] != 0.0 {
                    bw = bw.max(i.abs_diff(j));
                }
            }
        }
        bw
    }
}

pub fn build_hamiltonian(params: &ModelParams) -> Result<Hamiltonian> {
    params.validate()?;
    build_hamiltonian_with(params, &SpinOperators::new(params.n)?)
}

/// `H = Ω Sz − χ₂ Sx² − χ₄ Sx⁴` from precomputed operators.
pub fn build_hamiltonian_with(params: &ModelParams, ops: &SpinOperators) -> Result<Hamiltonian> {
    if ops.n() != params.n {
        return Err(Error::DimensionMismatch {
            expected: params.dim(),
            got: ops.dim(),
        });
    }
    let sx2 = banded_product(ops.sx(), 1, ops.sx(), 1);
    let sx4 = banded_product(&sx2, 2, &sx2, 2);
    let mut matrix = ops.sz() * params.omega() - sx2 * params.chi2() - sx4 * params.chi4();
    // exact symmetry; products of symmetric banded factors agree only to rounding
    let dim = matrix.nrows();
    for i in 0..dim {
        for j in (i + 1)..dim.min(i + 5) {
            let avg = 0.5 * (matrix[(i, j)] + matrix[(j, i)]);
            matrix[(i, j)] = avg;
            matrix[(j, i)] = avg;
        }
    }
    Ok(Hamiltonian {
        params: *params,
        matrix,
    })
}

/// Product of two square banded matrices with half-bandwidths `bw_a`, `bw_b`.
fn banded_product(a: &DMatrix<f64>, bw_a: usize, b: &DMatrix<f64>, bw_b: usize) -> DMatrix<f64> {
    let dim = a.nrows();
    let bw = bw_a + bw_b;
    let mut out = DMatrix::zeros(dim, dim);
    for i in 0..dim {
        let j_lo = i.saturating_sub(bw);
        let j_hi = (i + bw).min(dim - 1);
        for j in j_lo..=j_hi {
            let k_lo = i.saturating_sub(bw_a).max(j.saturating_sub(bw_b));
            let k_hi = (i + bw_a).min(j + bw_b).min(dim - 1);
            let mut acc = 0.0;
            for k in k_lo..=k_hi {
                acc += a[(i, k)] * b[(k, j)];
            }
            out[(i, j)] = acc;
        }
    }
    out
}

/// Normalized pure state over the `N + 1` Dicke states.
#[derive(Clone, Debug, PartialEq)]
pub struct QuantumState {
    amplitudes: CVector,
}

impl QuantumState {
    /// Normalizes `amplitudes`; fails on a zero or non-finite vector.
    pub fn new(amplitudes: CVector) -> Result<Self> {
        let norm = amplitudes.norm();
        if !(norm.is_finite() && norm > 0.0) {
            return Err(Error::Numerical(format!(
                "cannot normalize state with norm {norm}"
            )));
        }
        Ok(Self {
            amplitudes: amplitudes / Complex::from(norm),
        })
    }

    /// Wraps amplitudes that are already normalized (used by unitary maps).
    pub(crate) fn from_unitary_image(amplitudes: CVector) -> Self {
        Self { amplitudes }
    }

    /// Dicke state `|S, m⟩` for basis index `k = S + m`.
    pub fn dicke(n: usize, index: usize) -> Result<Self> {
        if index > n {
            return Err(Error::InvalidDimension(format!(
                "Dicke index {index} outside 0..={n}"
            )));
        }
        let mut v = CVector::zeros(n + 1);
        v[index] = Complex::from(1.0);
        Ok(Self { amplitudes: v })
    }

    pub fn dim(&self) -> usize {
        self.amplitudes.len()
    }

    pub fn n(&self) -> usize {
        self.dim() - 1
    }

    pub fn amplitudes(&self) -> &CVector {
        &self.amplitudes
    }

    pub fn norm(&self) -> f64 {
        self.amplitudes.norm()
    }

    /// `⟨self|other⟩`.
    pub fn inner(&self, other: &QuantumState) -> Result<Complex> {
        check_dim(self.dim(), other.dim())?;
        Ok(self.amplitudes.dotc(&other.amplitudes))
    }

    pub fn fidelity(&self, other: &QuantumState) -> Result<f64> {
        Ok(self.inner(other)?.norm_sqr())
    }
}

/// Spin coherent state `|θ, φ⟩` with amplitudes
/// `cos^{S+m}(θ/2) sin^{S−m}(θ/2) e^{i(S−m)φ} √C(2S, S+m)`.
///
/// Evaluated in log space so large `N` does not underflow; the poles are
/// returned as exact Dicke states.
pub fn coherent_state(theta: f64, phi: f64, n: usize) -> Result<QuantumState> {
    if n == 0 {
        return Err(Error::InvalidDimension("N must be at least 1".into()));
    }
    if !(0.0..=std::f64::consts::PI).contains(&theta) {
        return Err(Error::InvalidParameter {
            field: "theta",
            reason: format!("polar angle must lie in [0, π], got {theta}"),
        });
    }
    if theta == 0.0 {
        return QuantumState::dicke(n, n);
    }
    if theta == std::f64::consts::PI {
        return QuantumState::dicke(n, 0);
    }
    Ok(QuantumState::from_unitary_image(coherent_amplitudes(
        theta, phi, n,
    )))
}

/// Coherent-state amplitudes for `0 < θ < π`, normalized.
pub(crate) fn coherent_amplitudes(theta: f64, phi: f64, n: usize) -> CVector {
    let ln_cos = (0.5 * theta).cos().ln();
    let ln_sin = (0.5 * theta).sin().ln();
    let ln_binom = ln_binomials(n);
    let logs: Vec<f64> = (0..=n)
        .map(|k| 0.5 * ln_binom[k] + k as f64 * ln_cos + (n - k) as f64 * ln_sin)
        .collect();
    let max = logs.iter().cloned().fold(f64::NEG_INFINITY, f64::max);
    let mut v = CVector::from_iterator(
        n + 1,
        logs.iter()
            .enumerate()
            .map(|(k, &l)| Complex::from_polar((l - max).exp(), (n - k) as f64 * phi)),
    );
    let norm = v.norm();
    v /= Complex::from(norm);
    v
}

/// `ln C(n, k)` for `k = 0..=n`.
pub(crate) fn ln_binomials(n: usize) -> Vec<f64> {
    let mut ln_fact = vec![0.0; n + 1];
    for k in 1..=n {
        ln_fact[k] = ln_fact[k - 1] + (k as f64).ln();
    }
    (0..=n)
        .map(|k| ln_fact[n] - ln_fact[k] - ln_fact[n - k])
        .collect()
}

fn check_dim(expected: usize, got: usize) -> Result<()> {
    if expected == got {
        Ok(())
    } else {
        Err(Error::DimensionMismatch { expected, got })
    }
}

/// `max |A − A†|`.
pub fn hermitian_residual(op: &CMatrix) -> f64 {
    let mut worst: f64 = 0.0;
    for j in 0..op.ncols() {
        for i in 0..=j.min(op.nrows() - 1) {
            worst = worst.max((op[(i, j)] - op[(j, i)].conj()).norm());
        }
    }
    worst
}

fn check_operator(state: &QuantumState, op: &CMatrix) -> Result<()> {
    if op.nrows() != op.ncols() {
        return Err(Error::InvalidDimension(format!(
            "operator is {}×{}",
            op.nrows(),
            op.ncols()
        )));
    }
    check_dim(state.dim(), op.nrows())?;
    let scale = op.iter().map(|z| z.norm()).fold(1.0, f64::max);
    let residual = hermitian_residual(op);
    if residual > HERMITIAN_TOL * scale {
        return Err(Error::NotHermitian(residual));
    }
    Ok(())
}

/// `⟨ψ|A|ψ⟩` for Hermitian `A`.
pub fn expectation(state: &QuantumState, op: &CMatrix) -> Result<f64> {
    check_operator(state, op)?;
    let value = state.amplitudes.dotc(&(op * &state.amplitudes));
    let scale = value.re.abs().max(1.0);
    if value.im.abs() > 1e-10 * scale {
        return Err(Error::Numerical(format!(
            "expectation value has imaginary part {:e}",
            value.im
        )));
    }
    Ok(value.re)
}

/// `⟨A²⟩ − ⟨A⟩²`, evaluated as `‖Aψ‖² − ⟨A⟩²`.
pub fn variance(state: &QuantumState, op: &CMatrix) -> Result<f64> {
    check_operator(state, op)?;
    let a_psi = op * &state.amplitudes;
    let mean = state.amplitudes.dotc(&a_psi).re;
    Ok(a_psi.norm_squared() - mean * mean)
}

/// Symmetrized covariance `½⟨{A, B}⟩ − ⟨A⟩⟨B⟩` for Hermitian `A`, `B`.
pub fn covariance(state: &QuantumState, a: &CMatrix, b: &CMatrix) -> Result<f64> {
    check_operator(state, a)?;
    check_operator(state, b)?;
    let a_psi = a * &state.amplitudes;
    let b_psi = b * &state.amplitudes;
    let mean_a = state.amplitudes.dotc(&a_psi).re;
    let mean_b = state.amplitudes.dotc(&b_psi).re;
    // ½⟨AB + BA⟩ = Re⟨Aψ|Bψ⟩
    Ok(a_psi.dotc(&b_psi).re - mean_a * mean_b)
}

#[cfg(test)]
mod tests {
    use super::*;
    use std::f64::consts::{FRAC_1_SQRT_2, PI};

    fn commutator(a: &CMatrix, b: &CMatrix) -> CMatrix {
        a * b - b * a
    }

    fn max_abs(m: &CMatrix) -> f64 {
        m.iter().map(|z| z.norm()).fold(0.0, f64::max)
    }

    #[test]
    fn spin_half_is_pauli_over_two() {
        let ops = SpinOperators::new(1).unwrap();
        assert_eq!(ops.sx().as_slice(), &[0.0, 0.5, 0.5, 0.0]);
        assert_eq!(ops.sz()[(0, 0)], -0.5);
        assert_eq!(ops.sz()[(1, 1)], 0.5);
        assert_eq!(ops.sy()[(0, 1)], Complex::new(0.0, 0.5));
    }

    #[test]
    fn spin_one_matrix_elements() {
        let ops = SpinOperators::new(2).unwrap();
        let diag: Vec<f64> = ops.sz().diagonal().iter().copied().collect();
        assert_eq!(diag, vec![-1.0, 0.0, 1.0]);
        assert!((ops.sx()[(0, 1)] - FRAC_1_SQRT_2).abs() < 1e-15);
        assert!((ops.sx()[(1, 2)] - FRAC_1_SQRT_2).abs() < 1e-15);
        assert_eq!(ops.sx()[(0, 2)], 0.0);
    }

    #[test]
    fn su2_algebra_and_casimir_exhaustive_to_50() {
        for n in 1..=50 {
            let ops = SpinOperators::new(n).unwrap();
            let (x, y, z) = (ops.sx_complex(), ops.sy().clone(), ops.sz_complex());
            let i = Complex::new(0.0, 1.0);
            assert!(max_abs(&(commutator(&x, &y) - &z * i)) < 1e-12, "[Sx,Sy] N={n}");
            assert!(max_abs(&(commutator(&y, &z) - &x * i)) < 1e-12, "[Sy,Sz] N={n}");
            assert!(max_abs(&(commutator(&z, &x) - &y * i)) < 1e-12, "[Sz,Sx] N={n}");
            let s = ops.spin();
            let casimir = &x * &x + &y * &y + &z * &z;
            let target = CMatrix::identity(ops.dim(), ops.dim()) * Complex::from(s * (s + 1.0));
            assert!(
                max_abs(&(casimir - target)) <= 1e-10 * s * (s + 1.0),
                "Casimir N={n}"
            );
        }
    }

    #[test]
    fn zero_particles_rejected() {
        assert!(matches!(SpinOperators::new(0), Err(Error::InvalidDimension(_))));
    }

    #[test]
    fn lmg_limit_and_zero_couplings() {
        let p = ModelParams::lmg(0.7, 1.3, 6).unwrap();
        let h = build_hamiltonian(&p).unwrap();
        let ops = SpinOperators::new(6).unwrap();
        let s = 3.0;
        let expect = ops.sz() * (2.0 * 0.7) - ops.sx() * ops.sx() * (2.0 * 1.3 / s);
        assert!((h.matrix() - expect).amax() < 1e-13);
        assert_eq!(h.bandwidth(), 2);

        let zero = build_hamiltonian(&ModelParams::new(0.0, 0.0, 0.0, 5).unwrap()).unwrap();
        assert_eq!(zero.matrix().amax(), 0.0);
    }

    #[test]
    fn hamiltonian_n2_matches_direct_power_sum() {
        // Oracle: dense operator powers without the banded shortcut.
        let p = ModelParams::new(1.0, 1.0, 1.0, 2).unwrap();
        let ops = SpinOperators::new(2).unwrap();
        let sx = ops.sx().clone();
        let mut sx4 = DMatrix::identity(3, 3);
        for _ in 0..4 {
            sx4 = &sx4 * &sx;
        }
        let oracle = ops.sz() * 2.0 - &sx * &sx * 2.0 - sx4 * 2.0;
        let h = build_hamiltonian(&p).unwrap();
        assert!((h.matrix() - &oracle).amax() < 1e-14);
        // hand values: Sx² for S=1 is [[.5,0,.5],[0,1,0],[.5,0,.5]] = Sx⁴
        assert!((h.matrix()[(0, 0)] - (-2.0 - 1.0 - 1.0)).abs() < 1e-14);
        assert!((h.matrix()[(0, 2)] - (-1.0 - 1.0)).abs() < 1e-14);
    }

    #[test]
    fn hamiltonian_is_symmetric_with_bandwidth_four() {
        for n in [4, 9, 30] {
            let h = build_hamiltonian(&ModelParams::new(3.265, 1.0, 1.5, n).unwrap()).unwrap();
            assert_eq!(h.bandwidth(), 4);
            let m = h.matrix();
            assert_eq!(m, &m.transpose());
        }
        let ops = SpinOperators::new(4).unwrap();
        let p = ModelParams::new(1.0, 1.0, 1.0, 6).unwrap();
        assert!(matches!(
            build_hamiltonian_with(&p, &ops),
            Err(Error::DimensionMismatch { .. })
        ));
    }

    #[test]
    fn coherent_state_poles() {
        let north = coherent_state(0.0, 1.2, 7).unwrap();
        assert_eq!(north, QuantumState::dicke(7, 7).unwrap());
        let south = coherent_state(PI, 0.3, 7).unwrap();
        assert_eq!(south, QuantumState::dicke(7, 0).unwrap());
        assert!(coherent_state(-0.1, 0.0, 3).is_err());
        assert!(coherent_state(1.0, 0.0, 0).is_err());
    }

    #[test]
    fn coherent_state_mean_spin_grid() {
        for n in [1, 6, 41] {
            let ops = SpinOperators::new(n).unwrap();
            let s = ops.spin();
            let (x, z) = (ops.sx_complex(), ops.sz_complex());
            for i in 0..10 {
                for j in 0..10 {
                    let theta = PI * (i as f64 + 0.5) / 10.0;
                    let phi = 2.0 * PI * j as f64 / 10.0;
                    let psi = coherent_state(theta, phi, n).unwrap();
                    assert!((psi.norm() - 1.0).abs() < 1e-12);
                    let mx = expectation(&psi, &x).unwrap();
                    let my = expectation(&psi, ops.sy()).unwrap();
                    let mz = expectation(&psi, &z).unwrap();
                    assert!((mx - s * theta.sin() * phi.cos()).abs() < 1e-10);
                    assert!((my - s * theta.sin() * phi.sin()).abs() < 1e-10);
                    assert!((mz - s * theta.cos()).abs() < 1e-10);
                }
            }
        }
    }

    #[test]
    fn large_n_coherent_state_does_not_underflow() {
        let psi = coherent_state(1e-3, 0.0, 2000).unwrap();
        assert!((psi.norm() - 1.0).abs() < 1e-12);
        let psi = coherent_state(PI - 1e-3, 0.0, 2000).unwrap();
        assert!((psi.norm() - 1.0).abs() < 1e-12);
    }

    #[test]
    fn coherent_transverse_variance_is_half_spin() {
        let n = 40;
        let ops = SpinOperators::new(n).unwrap();
        for theta in [0.4, 1.3, 2.9] {
            let psi = coherent_state(theta, 0.0, n).unwrap();
            for alpha in [0.0, 0.5, 2.0] {
                let sa = spin_alpha_operator(alpha, theta, &ops);
                assert!((variance(&psi, &sa).unwrap() - 10.0).abs() < 1e-9);
                assert!(expectation(&psi, &sa).unwrap().abs() < 1e-8 * ops.spin());
            }
        }
    }

    #[test]
    fn dicke_state_has_no_sz_variance() {
        let ops = SpinOperators::new(5).unwrap();
        for k in 0..=5 {
            let psi = QuantumState::dicke(5, k).unwrap();
            assert!(variance(&psi, &ops.sz_complex()).unwrap().abs() < 1e-14);
        }
    }

    #[test]
    fn variance_of_sx_in_lowest_state_of_spin_one() {
        // (1,0,0): Sx ψ = (0, 1/√2, 0), ⟨Sx⟩ = 0, ⟨Sx²⟩ = 1/2
        let ops = SpinOperators::new(2).unwrap();
        let psi = QuantumState::dicke(2, 0).unwrap();
        assert!((variance(&psi, &ops.sx_complex()).unwrap() - 0.5).abs() < 1e-15);
    }

    #[test]
    fn non_hermitian_operator_rejected() {
        let ops = SpinOperators::new(2).unwrap();
        let psi = QuantumState::dicke(2, 1).unwrap();
        let mut bad = ops.sx_complex();
        bad[(0, 1)] = Complex::new(1.0, 0.0);
        assert!(matches!(expectation(&psi, &bad), Err(Error::NotHermitian(_))));
        assert!(matches!(
            expectation(&QuantumState::dicke(3, 0).unwrap(), &ops.sx_complex()),
            Err(Error::DimensionMismatch { .. })
        ));
    }

    #[test]
    fn spin_alpha_special_angles() {
        let ops = SpinOperators::new(6).unwrap();
        let a0 = spin_alpha_operator(0.0, 1.1, &ops);
        assert!(max_abs(&(a0 - ops.sy())) < 1e-15);
        let a = spin_alpha_operator(PI / 2.0, PI, &ops);
        assert!(max_abs(&(a + ops.sx_complex())) < 1e-15);
    }

    #[test]
    fn covariance_matches_variance_on_diagonal() {
        let ops = SpinOperators::new(10).unwrap();
        let psi = coherent_state(1.0, 0.4, 10).unwrap();
        let a = spin_alpha_operator(0.3, 1.0, &ops);
        let c = covariance(&psi, &a, &a).unwrap();
        assert!((c - variance(&psi, &a).unwrap()).abs() < 1e-12);
    }

    #[test]
    fn tridiagonal_apply_matches_dense() {
        for n in [1, 4, 33] {
            let ops = SpinOperators::new(n).unwrap();
            let psi = coherent_state(0.9, 1.7, n).unwrap();
            for dir in [
                [1.0, 0.0, 0.0],
                [0.0, 1.0, 0.0],
                [0.0, 0.0, 1.0],
                [0.3, -0.5, 0.8],
            ] {
                let dense = ops.component(dir) * psi.amplitudes();
                let fast = ops.apply(dir, psi.amplitudes());
                assert!((dense - fast).camax() < 1e-13);
            }
            let a = [0.0, 1.0, 0.0];
            let b = [0.6, 0.0, -0.8];
            let m = component_moments(&psi, &ops, a, b).unwrap();
            let (da, db) = (ops.component(a), ops.component(b));
            assert!((m[0] - expectation(&psi, &da).unwrap()).abs() < 1e-12);
            assert!((m[2] - variance(&psi, &da).unwrap()).abs() < 1e-12);
            assert!((m[3] - variance(&psi, &db).unwrap()).abs() < 1e-12);
            assert!((m[4] - covariance(&psi, &da, &db).unwrap()).abs() < 1e-12);
        }
    }
}
