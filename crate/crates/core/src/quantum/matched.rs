//! Pairs of LMG and quartic parameter sets with the same local Lyapunov
//! exponent.

use serde::{Deserialize, Serialize};

use crate::classical::{h2_over_j, max_lyapunov};
use crate::numerics::{bisect, golden_max};
use crate::{Error, ModelParams, Result};

/// Default `K/J` along which the quartic partner is searched.
pub const DEFAULT_QUARTIC_K_OVER_J: f64 = 1.5;
/// Required agreement of the quartic exponent with the target.
pub const MATCH_TOL: f64 = 1e-6;

#[derive(Clone, Copy, Debug, PartialEq, Serialize, Deserialize)]
pub struct MatchedPair {
    pub lambda_target: f64,
    pub lmg: ModelParams,
    pub quartic: ModelParams,
    pub lambda_lmg: f64,
    pub lambda_quartic: f64,
}

/// LMG field with `2√(h(2J − h)) = λ` on the branch `h ≤ J`.
pub fn lmg_field_for_lambda(lambda: f64, j: f64) -> Result<f64> {
    if !(j > 0.0) {
        return Err(Error::InvalidParameter {
            field: "J",
            reason: "must be positive".into(),
        });
    }
    if !(lambda > 0.0 && lambda <= 2.0 * j * (1.0 + 1e-12)) {
        return Err(Error::Unreachable(format!(
            "LMG exponent ranges over (0, 2J] = (0, {}], got λ = {lambda}",
            2.0 * j
        )));
    }
    let disc = (j * j - 0.25 * lambda * lambda).max(0.0);
    Ok(j - disc.sqrt())
}

/// Region-II field at fixed `K` with `λ(Q_hyp) = λ`, on the rising branch
/// between `h₁ = 2J` and the maximum of `λ` over `h`.
pub fn quartic_field_for_lambda(lambda: f64, j: f64, k: f64) -> Result<f64> {
    let k_over_j = k / j;
    let h2 = h2_over_j(k_over_j)
        .filter(|_| k_over_j > crate::classical::region::K_THRESHOLD_OVER_J)
        .ok_or_else(|| Error::Unreachable(format!("no region II at K/J = {k_over_j}")))?
        * j;
    let h1 = 2.0 * j;
    let lam = |h: f64| {
        ModelParams::new(h, j, k, 2)
            .and_then(|p| max_lyapunov(&p))
            .unwrap_or(0.0)
    };
    let pad = 1e-9 * j;
    let (h_peak, lam_peak) = golden_max(lam, h1 + pad, h2 - pad, 1e-10 * j);
    if lam_peak < lambda {
        return Err(Error::Unreachable(format!(
            "λ = {lambda} exceeds the largest region-II exponent {lam_peak:.6} at K/J = {k_over_j}"
        )));
    }
    bisect(|h| lam(h) - lambda, h1 + pad, h_peak, 1e-14 * j)
}

/// LMG and quartic parameters with `λ = lambda_target`, the quartic one on
/// the default `K/J` path. `J = 1`.
pub fn matched_lambda_comparison(lambda_target: f64, n: usize) -> Result<MatchedPair> {
    matched_lambda_along(lambda_target, 1.0, DEFAULT_QUARTIC_K_OVER_J, n)
}

pub fn matched_lambda_along(lambda_target: f64, j: f64, k: f64, n: usize) -> Result<MatchedPair> {
    let lmg = ModelParams::lmg(lmg_field_for_lambda(lambda_target, j)?, j, n)?;
    let quartic = ModelParams::new(quartic_field_for_lambda(lambda_target, j, k)?, j, k, n)?;
    let lambda_lmg = max_lyapunov(&lmg)?;
    let lambda_quartic = max_lyapunov(&quartic)?;
    for (name, got) in [("LMG", lambda_lmg), ("quartic", lambda_quartic)] {
        if (got - lambda_target).abs() > MATCH_TOL {
            return Err(Error::Numerical(format!(
                "{name} exponent {got} misses target {lambda_target}"
            )));
        }
    }
    Ok(MatchedPair {
        lambda_target,
        lmg,
        quartic,
        lambda_lmg,
        lambda_quartic,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::classical::{classify_region, Region};

    #[test]
    fn lmg_branch() {
        assert!((lmg_field_for_lambda(2.0, 1.0).unwrap() - 1.0).abs() < 1e-15);
        // 2√(h(2 − h)) = 1.2 → h = 1 − 0.8
        assert!((lmg_field_for_lambda(1.2, 1.0).unwrap() - 0.2).abs() < 1e-15);
        assert!(lmg_field_for_lambda(2.5, 1.0).is_err());
        assert!(lmg_field_for_lambda(0.0, 1.0).is_err());
    }

    #[test]
    fn matched_pair_hits_target() {
        let pair = matched_lambda_comparison(2.0, 50).unwrap();
        assert!((pair.lmg.h - 1.0).abs() < 1e-12);
        assert!((pair.lambda_quartic - 2.0).abs() < 1e-6);
        let region = classify_region(&pair.quartic).unwrap().label.region();
        assert_eq!(region, Some(Region::II));
        assert!(pair.quartic.h > 2.0 && pair.quartic.h < 2.5);
    }

    #[test]
    fn unreachable_targets() {
        assert!(matches!(
            quartic_field_for_lambda(2.0, 1.0, 0.5),
            Err(Error::Unreachable(_))
        ));
        assert!(matches!(
            quartic_field_for_lambda(1.0, 1.0, 0.1),
            Err(Error::Unreachable(_))
        ));
    }
}
