use serde::{Deserialize, Serialize};

use crate::classical::disk::hamiltonian_unchecked;
use crate::classical::FixedPoint;
use crate::{Error, ModelParams, Result};

/// Cubic Taylor expansion of `H_cl` about a hyperbolic point `(Q_hyp, 0)`,
///
/// ```text
/// H ≈ H₀ + μ δQ² + ν δP² + γ δQ³ + η δQ δP².
/// ```
#[derive(Clone, Copy, Debug, PartialEq, Serialize, Deserialize)]
pub struct LocalExpansion {
    pub q_hyp: f64,
    #[serde(rename = "H0")]
    pub h0: f64,
    pub mu: f64,
    pub nu: f64,
    pub gamma: f64,
    pub eta: f64,
    /// `|ν − μ|`
    pub kappa: f64,
    /// `2√(−μν)`
    pub lambda: f64,
}

impl LocalExpansion {
    /// Builds the expansion from raw coefficients (used for sweeps and
    /// tests that do not start from a model).
    pub fn from_coefficients(h0: f64, mu: f64, nu: f64, gamma: f64, eta: f64) -> Result<Self> {
        if !(mu * nu <= 0.0) {
            return Err(Error::NotHyperbolic(mu * nu));
        }
        Ok(Self {
            q_hyp: f64::NAN,
            h0,
            mu,
            nu,
            gamma,
            eta,
            kappa: (nu - mu).abs(),
            lambda: 2.0 * (-mu * nu).sqrt(),
        })
    }

    /// `κ/λ`; 1 means purely exponential anti-squeezing.
    pub fn kappa_over_lambda(&self) -> f64 {
        self.kappa / self.lambda
    }
}

pub fn expansion_coefficients(q: f64, params: &ModelParams) -> (f64, f64, f64, f64) {
    let (h, j, k) = (params.h, params.j, params.k);
    let q2 = q * q;
    let q4 = q2 * q2;
    let q6 = q4 * q2;
    let mu = h - 2.0 * j + 3.0 * j * q2 - 12.0 * k * q2 + 15.0 * k * q4 - 3.5 * k * q6;
    let nu = h + 0.5 * j * q2 + k * q4 - 0.25 * k * q6;
    let gamma = q * (2.0 * j - 8.0 * k + 20.0 * k * q2 - 7.0 * k * q4);
    let eta = q * (j + 4.0 * k * q2 - 1.5 * k * q4);
    (mu, nu, gamma, eta)
}

pub fn local_expansion(params: &ModelParams, fp: &FixedPoint) -> Result<LocalExpansion> {
    let q = fp.q();
    let (mu, nu, gamma, eta) = expansion_coefficients(q, params);
    if !(mu * nu < 0.0) {
        return Err(Error::NotHyperbolic(mu * nu));
    }
    Ok(LocalExpansion {
        q_hyp: q,
        h0: hamiltonian_unchecked(q, 0.0, params),
        mu,
        nu,
        gamma,
        eta,
        kappa: (nu - mu).abs(),
        lambda: 2.0 * (-mu * nu).sqrt(),
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::classical::lyapunov::jacobian_entries;
    use crate::classical::{find_fixed_points, lyapunov_exponent, primary_hyperbolic_point};
    use rand::{Rng, SeedableRng};
    use rand_chacha::ChaCha8Rng;

    fn h(p: &ModelParams, q: f64, pp: f64) -> f64 {
        hamiltonian_unchecked(q, pp, p)
    }

    #[test]
    fn lmg_origin() {
        for (hh, j) in [(1.0, 1.0), (0.4, 1.0), (1.5, 2.0)] {
            let p = ModelParams::lmg(hh, j, 2).unwrap();
            let e = local_expansion(&p, &primary_hyperbolic_point(&p).unwrap()).unwrap();
            assert_eq!(e.mu, hh - 2.0 * j);
            assert_eq!(e.nu, hh);
            assert_eq!((e.gamma, e.eta), (0.0, 0.0));
        }
        let p = ModelParams::lmg(1.0, 1.0, 2).unwrap();
        let e = local_expansion(&p, &primary_hyperbolic_point(&p).unwrap()).unwrap();
        assert_eq!(e.lambda, 2.0);
        assert_eq!(e.kappa, 2.0);
        assert_eq!(e.h0, -2.0);
    }

    #[test]
    fn coefficients_match_finite_differences() {
        let d = 1e-4;
        for (hh, k) in [(3.265, 1.5), (1.0, 0.7), (2.8, 3.0), (0.5, 2.0)] {
            let p = ModelParams::new(hh, 1.0, k, 2).unwrap();
            let fp = primary_hyperbolic_point(&p).unwrap();
            let e = local_expansion(&p, &fp).unwrap();
            let q = fp.q();
            let f = |a: f64, b: f64| h(&p, q + a, b);
            let mu = (f(d, 0.0) - 2.0 * f(0.0, 0.0) + f(-d, 0.0)) / (2.0 * d * d);
            let nu = (f(0.0, d) - 2.0 * f(0.0, 0.0) + f(0.0, -d)) / (2.0 * d * d);
            // third derivatives: step 1e-4 drowns in rounding, so use a
            // coarser step with one Richardson extrapolation
            let g3 = |d: f64| {
                (f(2.0 * d, 0.0) - 2.0 * f(d, 0.0) + 2.0 * f(-d, 0.0) - f(-2.0 * d, 0.0)) / (12.0 * d * d * d)
            };
            let e3 = |d: f64| {
                ((f(d, d) - 2.0 * f(d, 0.0) + f(d, -d)) - (f(-d, d) - 2.0 * f(-d, 0.0) + f(-d, -d)))
                    / (4.0 * d * d * d)
            };
            let big = 1e-2;
            let gamma = (4.0 * g3(big / 2.0) - g3(big)) / 3.0;
            let eta = (4.0 * e3(big / 2.0) - e3(big)) / 3.0;
            let rel = |a: f64, b: f64| (a - b).abs() / b.abs().max(1.0);
            assert!(rel(mu, e.mu) < 1e-5, "μ {mu} vs {}", e.mu);
            assert!(rel(nu, e.nu) < 1e-5, "ν {nu} vs {}", e.nu);
            assert!(rel(gamma, e.gamma) < 1e-5, "γ {gamma} vs {}", e.gamma);
            assert!(rel(eta, e.eta) < 1e-5, "η {eta} vs {}", e.eta);
        }
    }

    #[test]
    fn consistent_with_jacobian_on_random_draws() {
        let mut rng = ChaCha8Rng::seed_from_u64(3);
        let mut seen = 0;
        while seen < 1000 {
            let hh = rng.random_range(0.0..6.0);
            let k = rng.random_range(0.0..4.0);
            let p = ModelParams::new(hh, 1.0, k, 2).unwrap();
            let Ok(fp) = primary_hyperbolic_point(&p) else {
                continue;
            };
            seen += 1;
            let e = local_expansion(&p, &fp).unwrap();
            let (u, v) = jacobian_entries(fp.q(), &p);
            assert!((2.0 * e.nu - u).abs() < 1e-10 * u.abs().max(1.0));
            assert!((-2.0 * e.mu - v).abs() < 1e-10 * v.abs().max(1.0));
            assert!(e.mu < 0.0 && e.nu > 0.0, "h={hh} k={k}");
            let lam = lyapunov_exponent(&fp, &p).unwrap();
            assert!((e.lambda - lam).abs() < 1e-10 * lam.max(1.0));
        }
    }

    #[test]
    fn elliptic_points_rejected() {
        let p = ModelParams::new(1.0, 1.0, 0.0, 2).unwrap();
        let pts = find_fixed_points(&p).unwrap();
        let minimum = pts.iter().find(|f| !f.is_hyperbolic()).unwrap();
        assert!(matches!(
            local_expansion(&p, minimum),
            Err(Error::NotHyperbolic(_))
        ));
        assert!(LocalExpansion::from_coefficients(0.0, 1.0, 1.0, 0.0, 0.0).is_err());
    }
}
