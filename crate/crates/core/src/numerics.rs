//! Small scalar routines shared by the physics modules: bracketing root
//! search, golden-section maximization, line fits and 2×2 symmetric
//! eigenproblems.

use crate::{Error, Result};

/// Evenly spaced samples including both endpoints.
pub fn linspace(start: f64, end: f64, count: usize) -> Vec<f64> {
    match count {
        0 => Vec::new(),
        1 => vec![start],
        _ => {
            let step = (end - start) / (count - 1) as f64;
            (0..count)
                .map(|i| {
                    if i + 1 == count {
                        end
                    } else {
                        start + step * i as f64
                    }
                })
                .collect()
        }
    }
}

/// Logarithmically spaced samples, `start` and `end` both positive. The
/// endpoints are returned exactly.
pub fn logspace(start: f64, end: f64, count: usize) -> Vec<f64> {
    let mut v: Vec<f64> = linspace(start.ln(), end.ln(), count)
        .into_iter()
        .map(f64::exp)
        .collect();
    if let Some(first) = v.first_mut() {
        *first = start;
    }
    if count > 1 {
        v[count - 1] = end;
    }
    v
}

/// Bisection on a sign-changing bracket. Terminates when the bracket is below
/// `tol` or after 200 halvings.
pub fn bisect<F: FnMut(f64) -> f64>(mut f: F, mut lo: f64, mut hi: f64, tol: f64) -> Result<f64> {
    let mut f_lo = f(lo);
    let f_hi = f(hi);
    if f_lo == 0.0 {
        return Ok(lo);
    }
    if f_hi == 0.0 {
        return Ok(hi);
    }
    if f_lo.signum() == f_hi.signum() {
        return Err(Error::Unreachable(format!(
            "no sign change on [{lo}, {hi}] (f = {f_lo:e}, {f_hi:e})"
        )));
    }
    for _ in 0..200 {
        let mid = 0.5 * (lo + hi);
        if hi - lo <= tol {
            return Ok(mid);
        }
        let f_mid = f(mid);
        if f_mid == 0.0 {
            return Ok(mid);
        }
        if f_mid.signum() == f_lo.signum() {
            lo = mid;
            f_lo = f_mid;
        } else {
            hi = mid;
        }
    }
    Ok(0.5 * (lo + hi))
}

/// Golden-section search for the maximum of a unimodal function on `[lo, hi]`.
/// Returns `(argmax, max)`.
pub fn golden_max<F: FnMut(f64) -> f64>(mut f: F, mut lo: f64, mut hi: f64, tol: f64) -> (f64, f64) {
    let inv_phi = (5f64.sqrt() - 1.0) / 2.0;
    let mut x1 = hi - inv_phi * (hi - lo);
    let mut x2 = lo + inv_phi * (hi - lo);
    let mut f1 = f(x1);
    let mut f2 = f(x2);
    while hi - lo > tol {
        if f1 < f2 {
            lo = x1;
            x1 = x2;
            f1 = f2;
            x2 = lo + inv_phi * (hi - lo);
            f2 = f(x2);
        } else {
            hi = x2;
            x2 = x1;
            f2 = f1;
            x1 = hi - inv_phi * (hi - lo);
            f1 = f(x1);
        }
    }
    let x = 0.5 * (lo + hi);
    (x, f(x))
}

/// Ordinary least-squares line `y ≈ slope·x + intercept`.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct LineFit {
    pub slope: f64,
    pub intercept: f64,
    /// Root-mean-square residual.
    pub rms: f64,
    pub points: usize,
}

pub fn fit_line(xs: &[f64], ys: &[f64]) -> Result<LineFit> {
    if xs.len() != ys.len() {
        return Err(Error::DimensionMismatch {
            expected: xs.len(),
            got: ys.len(),
        });
    }
    let n = xs.len();
    if n < 2 {
        return Err(Error::InsufficientData(format!(
            "a line fit needs at least 2 points, got {n}"
        )));
    }
    let nf = n as f64;
    let mx = xs.iter().sum::<f64>() / nf;
    let my = ys.iter().sum::<f64>() / nf;
    let (mut sxx, mut sxy) = (0.0, 0.0);
    for (x, y) in xs.iter().zip(ys) {
        sxx += (x - mx) * (x - mx);
        sxy += (x - mx) * (y - my);
    }
    if sxx == 0.0 {
        return Err(Error::InsufficientData("all abscissae coincide".into()));
    }
    let slope = sxy / sxx;
    let intercept = my - slope * mx;
    let rms = (xs
        .iter()
        .zip(ys)
        .map(|(x, y)| (y - slope * x - intercept).powi(2))
        .sum::<f64>()
        / nf)
        .sqrt();
    Ok(LineFit {
        slope,
        intercept,
        rms,
        points: n,
    })
}

/// Eigen-decomposition of the symmetric matrix `[[a, b], [b, d]]`.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct SymEigen2 {
    pub larger: f64,
    pub smaller: f64,
    /// Angle of the leading eigenvector measured from the first axis, in
    /// `[0, π)`.
    pub angle: f64,
}

pub fn sym_eigen2(a: f64, b: f64, d: f64) -> SymEigen2 {
    let mean = 0.5 * (a + d);
    let half_gap = (0.25 * (a - d) * (a - d) + b * b).sqrt();
    let angle = (0.5 * (2.0 * b).atan2(a - d)).rem_euclid(std::f64::consts::PI);
    SymEigen2 {
        larger: mean + half_gap,
        smaller: mean - half_gap,
        angle,
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use std::f64::consts::PI;

    #[test]
    fn linspace_hits_endpoints() {
        let v = linspace(0.0, 1.0, 11);
        assert_eq!(v.len(), 11);
        assert_eq!(v[0], 0.0);
        assert_eq!(v[10], 1.0);
        assert!((v[3] - 0.3).abs() < 1e-15);
        assert_eq!(linspace(2.0, 3.0, 1), vec![2.0]);
        let l = logspace(1e-5, 1e-1, 5);
        assert_eq!((l[0], l[4]), (1e-5, 1e-1));
        assert!((l[2] - 1e-3).abs() < 1e-15);
    }

    #[test]
    fn bisection_finds_sqrt2() {
        let r = bisect(|x| x * x - 2.0, 0.0, 2.0, 1e-14).unwrap();
        assert!((r - 2f64.sqrt()).abs() < 1e-13);
        assert!(bisect(|x| x * x + 1.0, 0.0, 2.0, 1e-12).is_err());
    }

    #[test]
    fn golden_section_on_parabola() {
        // flat maximum: location is only resolvable to ~√ε
        let (x, y) = golden_max(|x| -(x - 0.3) * (x - 0.3) + 2.0, -1.0, 1.0, 1e-10);
        assert!((x - 0.3).abs() < 1e-7);
        assert!((y - 2.0).abs() < 1e-14);
    }

    #[test]
    fn exact_line_recovered() {
        let xs: Vec<f64> = (0..10).map(f64::from).collect();
        let ys: Vec<f64> = xs.iter().map(|x| 0.75 * x - 0.87).collect();
        let fit = fit_line(&xs, &ys).unwrap();
        assert!((fit.slope - 0.75).abs() < 1e-12);
        assert!((fit.intercept + 0.87).abs() < 1e-12);
        assert!(fit.rms < 1e-12);
        assert!(fit_line(&[1.0], &[1.0]).is_err());
    }

    #[test]
    fn eigen2_matches_rotation() {
        let theta: f64 = 0.4;
        let (c, s) = (theta.cos(), theta.sin());
        // R diag(5, 2) Rᵀ
        let a = 5.0 * c * c + 2.0 * s * s;
        let b = 3.0 * c * s;
        let d = 5.0 * s * s + 2.0 * c * c;
        let e = sym_eigen2(a, b, d);
        assert!((e.larger - 5.0).abs() < 1e-12);
        assert!((e.smaller - 2.0).abs() < 1e-12);
        assert!((e.angle - theta).abs() < 1e-12);
        let e = sym_eigen2(1.0, -1.0, 1.0);
        assert!((e.angle - 3.0 * PI / 4.0).abs() < 1e-12);
    }
}
