// Two models with the same Lyapunov exponent: the quartic one still wins at
// short times.
//
// Run with `cargo run --release --example matched_lambda`.

use spinlyap::quantum::{gain_curve, matched_lambda_comparison, AlphaPolicy};

/// `(G² LMG, G² quartic)` at `Jt = 0.25`.
pub fn run_example() -> spinlyap::Result<(f64, f64)> {
    let pair = matched_lambda_comparison(2.0, 300)?;
    println!(
        "λ = 2: LMG h/J = {}, quartic h/J = {:.6} at K/J = {} (λ = {:.9})",
        pair.lmg.h, pair.quartic.h, pair.quartic.k, pair.lambda_quartic
    );
    let t = [0.25];
    let g_lmg = gain_curve(&pair.lmg, &t, AlphaPolicy::Optimal)?.gain_sq[0];
    let g_quartic = gain_curve(&pair.quartic, &t, AlphaPolicy::Optimal)?.gain_sq[0];
    println!("G²(Jt = 0.25): LMG {g_lmg:.4}, quartic {g_quartic:.4}");
    Ok((g_lmg, g_quartic))
}

fn main() -> spinlyap::Result<()> {
    run_example().map(|_| ())
}
