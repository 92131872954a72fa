// Collective spin operators in the Dicke basis and a spin-coherent state.
//
// Run with `cargo run --example spin_algebra`.

use spinlyap::spin::{coherent_state, expectation, variance, Complex, SpinOperators};

/// Largest entry of `[Sx, Sy] − i Sz` and the variance of `Sx` in the
/// coherent state pointing along +x.
pub fn run_example() -> spinlyap::Result<(f64, f64)> {
    let n = 12;
    let ops = SpinOperators::new(n)?;
    let sx = ops.sx_complex();
    let sy = ops.sy();
    let sz = ops.sz_complex();
    let comm = &sx * sy - sy * &sx - sz * Complex::i();
    let residual = comm.iter().map(|c| c.norm()).fold(0.0, f64::max);

    // θ = π/2, φ = 0 points along +x: ⟨Sx⟩ = S and Var(Sy) = S/2
    let psi = coherent_state(std::f64::consts::FRAC_PI_2, 0.0, n)?;
    let mean_x = expectation(&psi, &sx)?;
    let var_y = variance(&psi, sy)?;
    println!("N = {n}: max |[Sx,Sy] - iSz| = {residual:.1e}");
    println!(
        "coherent state along +x: <Sx> = {mean_x:.6}, Var(Sy) = {var_y:.6} (S/2 = {})",
        ops.spin() / 2.0
    );
    Ok((residual, var_y))
}

fn main() -> spinlyap::Result<()> {
    run_example().map(|_| ())
}
