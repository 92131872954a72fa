use std::f64::consts::SQRT_2;

use nalgebra::DMatrix;
use serde::{Deserialize, Serialize};

use super::expansion::LocalExpansion;

/// Coefficients of the symmetrized local Hamiltonian after
/// `δQ = (a + a†)/√2`, `δP = (a − a†)/(i√2)`:
///
/// ```text
/// H = c₀ + ω a†a + s (a² + a†²) + g₃ (a³ + a†³) + g₁ (a†²a + a†a² + a + a†)
/// ```
#[derive(Clone, Copy, Debug, PartialEq, Serialize, Deserialize)]
pub struct BosonicCoefficients {
    /// `(μ + ν)/2 + H₀`
    pub constant: f64,
    /// `μ + ν`
    pub number: f64,
    /// `(μ − ν)/2`
    pub squeezing: f64,
    /// `(γ − η)/(2√2)`
    pub cubic_pure: f64,
    /// `(3γ + η)/(2√2)`
    pub cubic_mixed: f64,
}

pub fn bosonic_coefficients(exp: &LocalExpansion) -> BosonicCoefficients {
    let r = 2.0 * SQRT_2;
    BosonicCoefficients {
        constant: 0.5 * (exp.mu + exp.nu) + exp.h0,
        number: exp.mu + exp.nu,
        squeezing: 0.5 * (exp.mu - exp.nu),
        cubic_pure: (exp.gamma - exp.eta) / r,
        cubic_mixed: (3.0 * exp.gamma + exp.eta) / r,
    }
}

/// Annihilation operator on the first `dim` Fock states.
pub fn annihilation(dim: usize) -> DMatrix<f64> {
    DMatrix::from_fn(dim, dim, |i, j| if j == i + 1 { (j as f64).sqrt() } else { 0.0 })
}

impl BosonicCoefficients {
    /// The Hamiltonian on a truncated Fock space. Entries within three
    /// levels of the cutoff are affected by truncation.
    pub fn truncated_matrix(&self, dim: usize) -> DMatrix<f64> {
        let a = annihilation(dim);
        let ad = a.transpose();
        let id = DMatrix::identity(dim, dim);
        let a2 = &a * &a;
        let ad2 = &ad * &ad;
        id * self.constant
            + (&ad * &a) * self.number
            + (&a2 + &ad2) * self.squeezing
            + (&a2 * &a + &ad2 * &ad) * self.cubic_pure
            + (&ad2 * &a + &ad * &a2 + &a + &ad) * self.cubic_mixed
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::analytics::local_expansion;
    use crate::classical::primary_hyperbolic_point;
    use crate::ModelParams;

    #[test]
    fn lmg_is_pure_squeezing() {
        let p = ModelParams::lmg(1.0, 1.0, 2).unwrap();
        let e = local_expansion(&p, &primary_hyperbolic_point(&p).unwrap()).unwrap();
        let b = bosonic_coefficients(&e);
        assert_eq!(b.squeezing, -1.0);
        assert_eq!(b.number, 0.0);
        assert_eq!((b.cubic_pure, b.cubic_mixed), (0.0, 0.0));
    }

    #[test]
    fn matches_direct_substitution_on_truncated_fock_space() {
        // q = (a + a†)/√2, p² = −(a − a†)²/2; δQδP² is Weyl-ordered as
        // (q p² + p² q)/2.
        let dim = 10;
        let a = annihilation(dim);
        let ad = a.transpose();
        let q = (&a + &ad) / SQRT_2;
        let d = &a - &ad;
        let p2 = -(&d * &d) / 2.0;
        for (h0, mu, nu, gamma, eta) in [
            (-2.0, -1.0, 1.0, 0.0, 0.0),
            (0.3, -2.2, 0.7, 1.3, -0.4),
            (-5.0, -0.1, 3.1, -2.0, 2.5),
        ] {
            let e = LocalExpansion::from_coefficients(h0, mu, nu, gamma, eta).unwrap();
            let direct = DMatrix::identity(dim, dim) * h0
                + &q * &q * mu
                + &p2 * nu
                + &q * &q * &q * gamma
                + (&q * &p2 + &p2 * &q) * (0.5 * eta);
            let built = bosonic_coefficients(&e).truncated_matrix(dim);
            let diff = (direct.view((0, 0), (4, 4)) - built.view((0, 0), (4, 4))).amax();
            assert!(diff < 1e-12, "{diff}");
        }
    }
}
