//! Real roots of cubics via the depressed form `z³ + c z + d = 0` and
//! Cardano's discriminant.

/// Real-root structure of a depressed cubic.
#[derive(Clone, Copy, Debug, PartialEq)]
pub enum CubicRoots {
    /// `Δ > 0`: three distinct real roots, ascending.
    Three([f64; 3]),
    /// `Δ = 0` with `c ≠ 0`: a simple root and a double root.
    SimpleAndDouble { simple: f64, double: f64 },
    /// `c = d = 0`.
    Triple(f64),
    /// `Δ < 0`: one real root and a complex pair.
    One(f64),
}

impl CubicRoots {
    /// Distinct real roots, ascending.
    pub fn real_roots(&self) -> Vec<f64> {
        match *self {
            CubicRoots::Three(r) => r.to_vec(),
            CubicRoots::SimpleAndDouble { simple, double } => {
                let mut v = vec![simple, double];
                v.sort_by(f64::total_cmp);
                v
            }
            CubicRoots::Triple(r) | CubicRoots::One(r) => vec![r],
        }
    }
}

/// `Δ = −(4c³ + 27d²)` for `z³ + c z + d`.
pub fn depressed_discriminant(c: f64, d: f64) -> f64 {
    -(4.0 * c * c * c + 27.0 * d * d)
}

/// Solves `z³ + c z + d = 0`. `degenerate_tol` is the absolute threshold on
/// `|Δ|` below which the double-root branch is taken.
pub fn solve_depressed(c: f64, d: f64, degenerate_tol: f64) -> CubicRoots {
    let disc = depressed_discriminant(c, d);
    if c == 0.0 && d == 0.0 {
        return CubicRoots::Triple(0.0);
    }
    if disc.abs() <= degenerate_tol {
        if c == 0.0 {
            return CubicRoots::Triple(-d.cbrt());
        }
        // z = 3d/c (simple), z = −3d/(2c) (double)
        return CubicRoots::SimpleAndDouble {
            simple: 3.0 * d / c,
            double: -1.5 * d / c,
        };
    }
    if disc > 0.0 {
        // trigonometric form, c < 0 here
        let m = 2.0 * (-c / 3.0).sqrt();
        let arg = ((3.0 * d / (2.0 * c)) * (-3.0 / c).sqrt()).clamp(-1.0, 1.0);
        let base = arg.acos() / 3.0;
        let tau = 2.0 * std::f64::consts::PI / 3.0;
        let mut roots = [0.0, 1.0, 2.0].map(|k: f64| polish(c, d, m * (base - tau * k).cos()));
        roots.sort_by(f64::total_cmp);
        CubicRoots::Three(roots)
    } else {
        let half_d = 0.5 * d;
        let root = (half_d * half_d + (c / 3.0).powi(3)).sqrt();
        // avoid cancellation: pick the larger-magnitude cube root first
        let u = (-half_d - half_d.signum() * root).cbrt();
        let z = if u == 0.0 { 0.0 } else { u - c / (3.0 * u) };
        CubicRoots::One(polish(c, d, z))
    }
}

/// Two Newton steps on `z³ + c z + d`.
fn polish(c: f64, d: f64, mut z: f64) -> f64 {
    for _ in 0..2 {
        let f = z * z * z + c * z + d;
        let df = 3.0 * z * z + c;
        if df == 0.0 {
            break;
        }
        let next = z - f / df;
        if (next * next * next + c * next + d).abs() < f.abs() {
            z = next;
        } else {
            break;
        }
    }
    z
}

/// Real roots of the monic cubic `x³ + a x² + b x + c` (ascending, distinct).
pub fn solve_monic(a: f64, b: f64, c: f64, degenerate_tol: f64) -> (CubicRoots, Vec<f64>) {
    // x = z − a/3
    let shift = -a / 3.0;
    let p = b - a * a / 3.0;
    let q = 2.0 * a * a * a / 27.0 - a * b / 3.0 + c;
    let roots = solve_depressed(p, q, degenerate_tol);
    let xs = roots.real_roots().into_iter().map(|z| z + shift).collect();
    (roots, xs)
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    fn eval(c: f64, d: f64, z: f64) -> f64 {
        z * z * z + c * z + d
    }

    #[test]
    fn three_distinct_roots() {
        // (z−1)(z−2)(z+3) = z³ − 7z + 6
        match solve_depressed(-7.0, 6.0, 1e-12) {
            CubicRoots::Three(r) => {
                for (got, want) in r.iter().zip([-3.0, 1.0, 2.0]) {
                    assert!((got - want).abs() < 1e-13);
                }
            }
            other => panic!("expected three roots, got {other:?}"),
        }
    }

    #[test]
    fn double_root() {
        // (z−1)²(z+2) = z³ − 3z + 2, Δ = 0
        match solve_depressed(-3.0, 2.0, 1e-9) {
            CubicRoots::SimpleAndDouble { simple, double } => {
                assert!((simple + 2.0).abs() < 1e-14);
                assert!((double - 1.0).abs() < 1e-14);
            }
            other => panic!("{other:?}"),
        }
        assert_eq!(solve_depressed(0.0, 0.0, 1e-9), CubicRoots::Triple(0.0));
    }

    #[test]
    fn one_real_root() {
        // z³ + z + 2 = (z+1)(z² − z + 2)
        match solve_depressed(1.0, 2.0, 1e-12) {
            CubicRoots::One(z) => assert!((z + 1.0).abs() < 1e-14),
            other => panic!("{other:?}"),
        }
        match solve_depressed(0.0, -8.0, 1e-12) {
            CubicRoots::One(z) => assert!((z - 2.0).abs() < 1e-14),
            other => panic!("{other:?}"),
        }
    }

    #[test]
    fn monic_shift() {
        // (x−1)(x−2)(x−3) = x³ − 6x² + 11x − 6
        let (_, xs) = solve_monic(-6.0, 11.0, -6.0, 1e-12);
        assert_eq!(xs.len(), 3);
        for (got, want) in xs.iter().zip([1.0, 2.0, 3.0]) {
            assert!((got - want).abs() < 1e-12);
        }
    }

    proptest! {
        #[test]
        fn roots_from_known_factors(r1 in -5.0f64..5.0, r2 in -5.0f64..5.0, r3 in -5.0f64..5.0) {
            // monic with roots r1, r2, r3
            let a = -(r1 + r2 + r3);
            let b = r1 * r2 + r1 * r3 + r2 * r3;
            let c = -r1 * r2 * r3;
            let mut want = [r1, r2, r3];
            want.sort_by(f64::total_cmp);
            let (_, xs) = solve_monic(a, b, c, 0.0);
            // every returned root annihilates the polynomial
            for x in &xs {
                let f = x * x * x + a * x * x + b * x + c;
                prop_assert!(f.abs() < 1e-8 * (1.0 + x.abs().powi(3)));
            }
            // well-separated roots are all recovered
            if (want[1] - want[0]).abs() > 1e-2 && (want[2] - want[1]).abs() > 1e-2 {
                prop_assert_eq!(xs.len(), 3);
                for (x, w) in xs.iter().zip(want) {
                    prop_assert!((x - w).abs() < 1e-7);
                }
            }
        }

        #[test]
        fn single_root_residual(c in 0.0f64..10.0, d in -10.0f64..10.0) {
            let r = solve_depressed(c, d, 0.0);
            for z in r.real_roots() {
                prop_assert!(eval(c, d, z).abs() < 1e-10 * (1.0 + z.abs().powi(3)));
            }
        }
    }
}
