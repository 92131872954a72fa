// Short-time theory near the hyperbolic point: local expansion, the
// covariance flow `MMᵀ`, the closed-form anti-squeezing and the drift of
// the optimal angle.
//
// Run with `cargo run --example covariance_theory`.

use spinlyap::analytics::{analytic_series, bosonic_coefficients, local_expansion};
use spinlyap::classical::primary_hyperbolic_point;
use spinlyap::numerics::linspace;
use spinlyap::ModelParams;

/// `κ/λ` for the LMG and quartic caption parameters.
pub fn run_example() -> spinlyap::Result<Vec<f64>> {
    let mut ratios = Vec::new();
    for p in [
        ModelParams::lmg(1.0, 1.0, 500)?,
        ModelParams::new(3.265, 1.0, 1.5, 500)?,
    ] {
        let e = local_expansion(&p, &primary_hyperbolic_point(&p)?)?;
        let b = bosonic_coefficients(&e);
        println!("h/J={} K/J={}", p.h, p.k);
        println!(
            "  μ={:.4} ν={:.4} γ={:.4} η={:.4}  λ={:.4} κ/λ={:.4}",
            e.mu,
            e.nu,
            e.gamma,
            e.eta,
            e.lambda,
            e.kappa_over_lambda()
        );
        println!(
            "  boson form: ω={:.4} squeeze={:.4} cubic {:.4}/{:.4}",
            b.number, b.squeezing, b.cubic_pure, b.cubic_mixed
        );
        for s in analytic_series(&e, &linspace(0.0, 0.5, 6)) {
            println!(
                "  Jt={:.1}  ln ξ_C²={:.4}  2λt={:.4}  α_max={}",
                s.t,
                s.ln_xi_c_sq,
                2.0 * e.lambda * s.t,
                s.alpha_max.map_or("-".into(), |a| format!("{a:.4}"))
            );
        }
        ratios.push(e.kappa_over_lambda());
    }
    Ok(ratios)
}

fn main() -> spinlyap::Result<()> {
    run_example().map(|_| ())
}
