use std::collections::HashMap;
use std::sync::{Arc, OnceLock, RwLock};

use nalgebra::{DMatrix, DVector, SymmetricEigen};

use crate::spin::{build_hamiltonian, CVector, Complex, QuantumState};
use crate::{Error, ModelParams, Result};

/// Spectral decomposition `H = V diag(E) Vᵀ` of the (real symmetric)
/// Hamiltonian. Immutable once built, so it can be shared across threads.
#[derive(Clone, Debug)]
pub struct Propagator {
    params: ModelParams,
    eigenvalues: DVector<f64>,
    eigenvectors: DMatrix<f64>,
}

type CacheKey = (u64, u64, u64, usize);

fn cache() -> &'static RwLock<HashMap<CacheKey, Arc<Propagator>>> {
    static CACHE: OnceLock<RwLock<HashMap<CacheKey, Arc<Propagator>>>> = OnceLock::new();
    CACHE.get_or_init(|| RwLock::new(HashMap::new()))
}

impl Propagator {
    pub fn new(params: &ModelParams) -> Result<Self> {
        let h = build_hamiltonian(params)?.into_matrix();
        let eig = SymmetricEigen::new(h);
        if eig.eigenvalues.iter().any(|e| !e.is_finite()) {
            return Err(Error::Numerical(
                "non-finite eigenvalue in Hamiltonian spectrum".into(),
            ));
        }
        Ok(Self {
            params: *params,
            eigenvalues: eig.eigenvalues,
            eigenvectors: eig.eigenvectors,
        })
    }

    /// Shared instance for `params`, built on first request.
    pub fn cached(params: &ModelParams) -> Result<Arc<Self>> {
        params.validate()?;
        let key = (
            params.h.to_bits(),
            params.j.to_bits(),
            params.k.to_bits(),
            params.n,
        );
        if let Some(p) = cache().read().expect("propagator cache poisoned").get(&key) {
            return Ok(Arc::clone(p));
        }
        let built = Arc::new(Self::new(params)?);
        let mut guard = cache().write().expect("propagator cache poisoned");
        Ok(Arc::clone(guard.entry(key).or_insert(built)))
    }

    pub fn params(&self) -> &ModelParams {
        &self.params
    }

    pub fn dim(&self) -> usize {
        self.eigenvalues.len()
    }

    pub fn eigenvalues(&self) -> &DVector<f64> {
        &self.eigenvalues
    }

    pub fn eigenvectors(&self) -> &DMatrix<f64> {
        &self.eigenvectors
    }

    /// `max |VᵀHV − diag(E)|` for a Hamiltonian matrix `h`.
    pub fn reconstruction_error(&self, h: &DMatrix<f64>) -> f64 {
        let mut d = self.eigenvectors.transpose() * h * &self.eigenvectors;
        for (i, e) in self.eigenvalues.iter().enumerate() {
            d[(i, i)] -= e;
        }
        d.amax()
    }

    /// Coefficients `Vᵀψ` in the energy eigenbasis.
    pub fn to_eigenbasis(&self, psi: &CVector) -> CVector {
        apply_real(&self.eigenvectors.transpose(), psi)
    }

    pub fn from_eigenbasis(&self, c: &CVector) -> CVector {
        apply_real(&self.eigenvectors, c)
    }
}

/// Real matrix times complex vector, done on the real and imaginary parts.
pub(crate) fn apply_real(m: &DMatrix<f64>, v: &CVector) -> CVector {
    let re = m * v.map(|z| z.re);
    let im = m * v.map(|z| z.im);
    CVector::from_fn(m.nrows(), |i, _| Complex::new(re[i], im[i]))
}

/// `e^{−iHt}ψ`.
pub fn evolve(state: &QuantumState, prop: &Propagator, t: f64) -> Result<QuantumState> {
    if state.dim() != prop.dim() {
        return Err(Error::DimensionMismatch {
            expected: prop.dim(),
            got: state.dim(),
        });
    }
    let mut c = prop.to_eigenbasis(state.amplitudes());
    for (ck, e) in c.iter_mut().zip(prop.eigenvalues.iter()) {
        *ck *= Complex::from_polar(1.0, -e * t);
    }
    Ok(QuantumState::from_unitary_image(prop.from_eigenbasis(&c)))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::spin::{build_hamiltonian, coherent_state, expectation, to_complex};
    use rand::{Rng, SeedableRng};
    use rand_chacha::ChaCha8Rng;

    fn random_state(dim: usize, rng: &mut ChaCha8Rng) -> QuantumState {
        let v = CVector::from_fn(dim, |_, _| {
            Complex::new(rng.random_range(-1.0..1.0), rng.random_range(-1.0..1.0))
        });
        QuantumState::new(v).unwrap()
    }

    #[test]
    fn reconstructs_hamiltonian() {
        for n in [2, 10, 100] {
            let p = ModelParams::new(3.265, 1.0, 1.5, n).unwrap();
            let h = build_hamiltonian(&p).unwrap().into_matrix();
            let prop = Propagator::new(&p).unwrap();
            assert!(prop.reconstruction_error(&h) < 1e-9 * h.amax(), "n={n}");
        }
    }

    #[test]
    fn zero_time_is_identity() {
        let p = ModelParams::new(1.0, 1.0, 0.0, 20).unwrap();
        let prop = Propagator::new(&p).unwrap();
        let psi = coherent_state(1.1, 0.4, 20).unwrap();
        let out = evolve(&psi, &prop, 0.0).unwrap();
        assert!((out.amplitudes() - psi.amplitudes()).camax() < 1e-12);
    }

    #[test]
    fn eigenstate_only_picks_up_phase() {
        let p = ModelParams::new(2.5, 1.0, 0.7, 30).unwrap();
        let prop = Propagator::new(&p).unwrap();
        let v = prop.eigenvectors().column(7).map(|x| Complex::new(x, 0.0));
        let psi = QuantumState::new(v).unwrap();
        let out = evolve(&psi, &prop, 1.3).unwrap();
        assert!((psi.fidelity(&out).unwrap() - 1.0).abs() < 1e-10);
        let h = to_complex(&build_hamiltonian(&p).unwrap().into_matrix());
        let e0 = expectation(&psi, &h).unwrap();
        let e1 = expectation(&out, &h).unwrap();
        assert!((e0 - e1).abs() < 1e-10 * e0.abs().max(1.0));
    }

    #[test]
    fn forward_then_backward_is_identity() {
        let p = ModelParams::new(3.265, 1.0, 1.5, 40).unwrap();
        let prop = Propagator::new(&p).unwrap();
        let mut rng = ChaCha8Rng::seed_from_u64(7);
        for _ in 0..100 {
            let psi = random_state(41, &mut rng);
            let t = rng.random_range(0.0..2.0);
            let fwd = evolve(&psi, &prop, t).unwrap();
            assert!((fwd.norm() - 1.0).abs() < 1e-10);
            let back = evolve(&fwd, &prop, -t).unwrap();
            assert!((back.amplitudes() - psi.amplitudes()).camax() < 1e-9);
        }
    }

    #[test]
    fn dimension_mismatch() {
        let prop = Propagator::new(&ModelParams::lmg(1.0, 1.0, 4).unwrap()).unwrap();
        let psi = coherent_state(1.0, 0.0, 5).unwrap();
        assert!(matches!(
            evolve(&psi, &prop, 1.0),
            Err(Error::DimensionMismatch { .. })
        ));
    }

    #[test]
    fn cache_returns_shared_instance() {
        let p = ModelParams::new(1.234, 1.0, 0.5, 12).unwrap();
        let a = Propagator::cached(&p).unwrap();
        let b = Propagator::cached(&p).unwrap();
        assert!(Arc::ptr_eq(&a, &b));
        let c = Propagator::cached(&p.with_n(13)).unwrap();
        assert_eq!(c.dim(), 14);
    }
}
