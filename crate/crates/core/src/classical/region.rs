use std::fmt;

use serde::{Deserialize, Serialize};

use crate::{ModelParams, Result};

/// `h₁/J`, where the origin changes stability.
pub const H1_OVER_J: f64 = 2.0;
/// Below this `K/J` the triple-well region does not exist.
pub const K_THRESHOLD_OVER_J: f64 = 0.25;
/// Relative tolerance for landing on a boundary line.
pub const BOUNDARY_TOL: f64 = 1e-12;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub enum Region {
    /// Double well, hyperbolic point at the origin.
    I,
    /// Triple well, hyperbolic pair at `±Q_hyp`.
    II,
    /// Single well, no instability.
    III,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub enum Boundary {
    /// `h/J = 2`
    H1,
    /// `h/J = h₂/J` with `K/J > 1/4`
    H2,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub enum RegionLabel {
    Region(Region),
    Boundary(Boundary),
}

impl RegionLabel {
    pub fn region(&self) -> Option<Region> {
        match self {
            RegionLabel::Region(r) => Some(*r),
            RegionLabel::Boundary(_) => None,
        }
    }
}

impl fmt::Display for RegionLabel {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            RegionLabel::Region(Region::I) => f.write_str("I"),
            RegionLabel::Region(Region::II) => f.write_str("II"),
            RegionLabel::Region(Region::III) => f.write_str("III"),
            RegionLabel::Boundary(Boundary::H1) => f.write_str("boundary-h1"),
            RegionLabel::Boundary(Boundary::H2) => f.write_str("boundary-h2"),
        }
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Serialize, Deserialize)]
pub struct RegionInfo {
    pub label: RegionLabel,
    pub h1_over_j: f64,
    /// `None` when `K = 0`.
    pub h2_over_j: Option<f64>,
}

/// `h₂/J = √(8(1 + 2K/J)³ / (27 K/J))`.
pub fn h2_over_j(k_over_j: f64) -> Option<f64> {
    (k_over_j > 0.0).then(|| (8.0 * (1.0 + 2.0 * k_over_j).powi(3) / (27.0 * k_over_j)).sqrt())
}

pub fn classify_region(params: &ModelParams) -> Result<RegionInfo> {
    let h = params.h_over_j()?;
    let k = params.k_over_j()?;
    let h2 = h2_over_j(k);
    let near = |a: f64, b: f64| (a - b).abs() <= BOUNDARY_TOL * b.abs().max(1.0);
    let label = if near(h, H1_OVER_J) {
        RegionLabel::Boundary(Boundary::H1)
    } else if h < H1_OVER_J {
        RegionLabel::Region(Region::I)
    } else {
        match h2 {
            Some(h2) if k > K_THRESHOLD_OVER_J && near(h, h2) => RegionLabel::Boundary(Boundary::H2),
            Some(h2) if k > K_THRESHOLD_OVER_J && h < h2 => RegionLabel::Region(Region::II),
            _ => RegionLabel::Region(Region::III),
        }
    };
    Ok(RegionInfo {
        label,
        h1_over_j: H1_OVER_J,
        h2_over_j: h2,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::classical::fixed_points::find_fixed_points;
    use rand::{Rng, SeedableRng};
    use rand_chacha::ChaCha8Rng;

    fn label(h: f64, k: f64) -> RegionLabel {
        classify_region(&ModelParams::new(h, 1.0, k, 2).unwrap())
            .unwrap()
            .label
    }

    #[test]
    fn h2_values() {
        // 8·1.5³ / (27·0.25) = 4
        assert!((h2_over_j(0.25).unwrap() - 2.0).abs() < 1e-12);
        // 8·4³ / 40.5 = 12.641975…
        assert!((h2_over_j(1.5).unwrap() - 3.5555555555555554).abs() < 1e-12);
        assert_eq!(h2_over_j(0.0), None);
        assert!((h2_over_j(0.5).unwrap() - (64.0f64 / 13.5).sqrt()).abs() < 1e-14);
    }

    #[test]
    fn partition() {
        assert_eq!(label(1.0, 0.0), RegionLabel::Region(Region::I));
        assert_eq!(label(1.0, 3.0), RegionLabel::Region(Region::I));
        assert_eq!(label(3.265, 1.5), RegionLabel::Region(Region::II));
        assert_eq!(label(3.6, 1.5), RegionLabel::Region(Region::III));
        assert_eq!(label(5.0, 0.5), RegionLabel::Region(Region::III));
        // K/J < 1/4: h₂ exceeds 2 again but there is no region II
        assert_eq!(label(2.1, 0.1), RegionLabel::Region(Region::III));
        assert_eq!(label(2.0, 0.0), RegionLabel::Boundary(Boundary::H1));
        let h2 = h2_over_j(1.5).unwrap();
        assert_eq!(label(h2, 1.5), RegionLabel::Boundary(Boundary::H2));
    }

    #[test]
    fn needs_positive_j() {
        assert!(classify_region(&ModelParams::new(1.0, 0.0, 1.0, 2).unwrap()).is_err());
    }

    #[test]
    fn region_matches_fixed_point_count() {
        let mut rng = ChaCha8Rng::seed_from_u64(99);
        for _ in 0..5000 {
            let h = rng.random_range(0.0..6.0);
            let k = rng.random_range(0.0..4.0);
            let p = ModelParams::new(h, 1.0, k, 2).unwrap();
            let pts = find_fixed_points(&p).unwrap();
            let hyperbolic = pts.iter().filter(|f| f.is_hyperbolic()).count();
            match label(h, k) {
                RegionLabel::Region(Region::I) => {
                    assert_eq!(pts.len(), 3, "h={h} k={k}");
                    assert_eq!(hyperbolic, 1);
                }
                RegionLabel::Region(Region::II) => {
                    assert_eq!(pts.len(), 5, "h={h} k={k}");
                    assert_eq!(hyperbolic, 2);
                }
                RegionLabel::Region(Region::III) => {
                    assert_eq!(pts.len(), 1, "h={h} k={k}");
                    assert_eq!(hyperbolic, 0);
                }
                RegionLabel::Boundary(_) => {}
            }
        }
    }
}
