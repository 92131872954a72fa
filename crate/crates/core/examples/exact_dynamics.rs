// Spectral propagation of a coherent state and conservation of `⟨H⟩`.
//
// Run with `cargo run --example exact_dynamics`.

use spinlyap::quantum::{evolve, hyperbolic_initial_state, Propagator};
use spinlyap::spin::{build_hamiltonian, expectation, to_complex};
use spinlyap::ModelParams;

/// Largest relative drift of `⟨H⟩` over the run.
pub fn run_example() -> spinlyap::Result<f64> {
    let p = ModelParams::new(3.265, 1.0, 1.5, 200)?;
    let h = to_complex(build_hamiltonian(&p)?.matrix());
    let prop = Propagator::cached(&p)?;
    let (psi0, fp) = hyperbolic_initial_state(&p)?;
    println!(
        "N = {}, start at Q_hyp = {:.4} (θ = {:.4})",
        p.n,
        fp.q(),
        fp.bloch_theta
    );
    println!(
        "ground energy {:.6}, top {:.6}",
        prop.eigenvalues().min(),
        prop.eigenvalues().max()
    );
    let e0 = expectation(&psi0, &h)?;
    let mut drift: f64 = 0.0;
    for t in [0.1, 0.5, 1.0, 5.0] {
        let psi = evolve(&psi0, &prop, t)?;
        let e = expectation(&psi, &h)?;
        drift = drift.max(((e - e0) / e0).abs());
        println!(
            "t = {t:4.1}: <H> = {e:.10}, |<psi0|psi(t)>|^2 = {:.3e}",
            psi0.fidelity(&psi)?
        );
    }
    println!("max relative energy drift {drift:.1e}");
    Ok(drift)
}

fn main() -> spinlyap::Result<()> {
    run_example().map(|_| ())
}
