use serde::{Deserialize, Serialize};

use crate::{Error, Result};

/// Couplings `(h, J, K)` and particle number `N = 2S`.
///
/// The Hamiltonian prefactors Ω, χ₂ and χ₄ are always derived from these four
/// numbers and never stored.
#[derive(Clone, Copy, Debug, PartialEq, Serialize, Deserialize)]
pub struct ModelParams {
    pub h: f64,
    #[serde(rename = "J")]
    pub j: f64,
    #[serde(rename = "K")]
    pub k: f64,
    #[serde(rename = "N")]
    pub n: usize,
}

impl ModelParams {
    pub fn new(h: f64, j: f64, k: f64, n: usize) -> Result<Self> {
        let params = Self { h, j, k, n };
        params.validate()?;
        Ok(params)
    }

    /// Quadratic-only (Lipkin-Meshkov-Glick) limit, `K = 0`.
    pub fn lmg(h: f64, j: f64, n: usize) -> Result<Self> {
        Self::new(h, j, 0.0, n)
    }

    pub fn validate(&self) -> Result<()> {
        if self.n == 0 {
            return Err(Error::InvalidDimension("N must be at least 1".into()));
        }
        for (field, value) in [("h", self.h), ("J", self.j), ("K", self.k)] {
            if !value.is_finite() {
                return Err(Error::InvalidParameter {
                    field,
                    reason: format!("must be finite, got {value}"),
                });
            }
        }
        if self.k < 0.0 {
            return Err(Error::InvalidParameter {
                field: "K",
                reason: format!("quartic coupling must be non-negative, got {}", self.k),
            });
        }
        Ok(())
    }

    /// Total spin `S = N/2`.
    pub fn spin(&self) -> f64 {
        self.n as f64 / 2.0
    }

    pub fn dim(&self) -> usize {
        self.n + 1
    }

    pub fn omega(&self) -> f64 {
        2.0 * self.h
    }

    pub fn chi2(&self) -> f64 {
        2.0 * self.j / self.spin()
    }

    pub fn chi4(&self) -> f64 {
        2.0 * self.k / self.spin().powi(3)
    }

    pub fn h_over_j(&self) -> Result<f64> {
        self.require_positive_j()?;
        Ok(self.h / self.j)
    }

    pub fn k_over_j(&self) -> Result<f64> {
        self.require_positive_j()?;
        Ok(self.k / self.j)
    }

    pub fn with_n(self, n: usize) -> Self {
        Self { n, ..self }
    }

    fn require_positive_j(&self) -> Result<()> {
        if self.j > 0.0 {
            Ok(())
        } else {
            Err(Error::InvalidParameter {
                field: "J",
                reason: format!("ratios h/J and K/J need J > 0, got {}", self.j),
            })
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn derived_prefactors() {
        let p = ModelParams::new(1.5, 1.0, 2.0, 4).unwrap();
        assert_eq!(p.spin(), 2.0);
        assert_eq!(p.omega(), 3.0);
        assert_eq!(p.chi2(), 1.0);
        assert_eq!(p.chi4(), 0.5);
    }

    #[test]
    fn odd_n_gives_half_integer_spin() {
        let p = ModelParams::new(1.0, 1.0, 0.0, 3).unwrap();
        assert_eq!(p.spin(), 1.5);
        assert_eq!(p.dim(), 4);
    }

    #[test]
    fn rejects_bad_input() {
        assert!(matches!(
            ModelParams::new(1.0, 1.0, 0.0, 0),
            Err(Error::InvalidDimension(_))
        ));
        assert!(matches!(
            ModelParams::new(1.0, 1.0, -0.1, 4),
            Err(Error::InvalidParameter { field: "K", .. })
        ));
        assert!(ModelParams::new(f64::NAN, 1.0, 0.0, 4).is_err());
        let p = ModelParams::new(1.0, 0.0, 1.0, 4).unwrap();
        assert!(p.h_over_j().is_err());
    }

    #[test]
    fn serde_uses_physics_names() {
        let p = ModelParams::new(3.265, 1.0, 1.5, 500).unwrap();
        let s = serde_json::to_string(&p).unwrap();
        assert_eq!(s, r#"{"h":3.265,"J":1.0,"K":1.5,"N":500}"#);
        let back: ModelParams = serde_json::from_str(&s).unwrap();
        assert_eq!(back, p);
    }
}
