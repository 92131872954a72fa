// The time-reversal echo: kick a forward-evolved state by `δφ` along the
// anti-squeezed direction, evolve back and read the displacement.
//
// Run with `cargo run --release --example echo_sensing`.

use spinlyap::numerics::logspace;
use spinlyap::quantum::{
    anti_squeezing, echo_with, evolve, hyperbolic_initial_state, infidelity_scan, Propagator,
    RotationGenerator,
};
use spinlyap::spin::SpinOperators;
use spinlyap::ModelParams;

/// `(G from the variance, G from the echo readout)` at `Jt = 0.25`.
pub fn run_example() -> spinlyap::Result<(f64, f64)> {
    let p = ModelParams::new(3.265, 1.0, 1.5, 300)?;
    let t = 0.25;
    let ops = SpinOperators::new(p.n)?;
    let prop = Propagator::cached(&p)?;
    let (psi0, fp) = hyperbolic_initial_state(&p)?;

    let anti = anti_squeezing(&evolve(&psi0, &prop, t)?, fp.bloch_theta, &ops)?;
    let alpha = anti.alpha_max.unwrap_or(std::f64::consts::FRAC_PI_4);
    let generator = RotationGenerator::new(alpha, fp.bloch_theta, p.n)?;
    let echo = echo_with(&psi0, &prop, &generator, &ops, t, 1e-4)?;
    let g_var = anti.xi_plus_sq.sqrt();
    let g_echo = echo.readout_gain().unwrap_or(f64::NAN);
    println!("α_max = {alpha:.4}, G from variance {g_var:.4}, from echo readout {g_echo:.4}");
    println!("F(δφ=1e-4) = {:.12}", echo.fidelity);

    let deltas = logspace(1e-4, 1e-1, 7);
    for (d, v) in deltas
        .iter()
        .zip(infidelity_scan(&psi0, &prop, &generator, t, &deltas)?)
    {
        println!("δφ = {d:.1e}: 1 - F = {v:.4e}");
    }
    Ok((g_var, g_echo))
}

fn main() -> spinlyap::Result<()> {
    run_example().map(|_| ())
}
