// Regions, fixed points and the Lyapunov-exponent map in the `(h/J, K/J)`
// plane.
//
// Run with `cargo run --example phase_diagram`.

use spinlyap::classical::{
    classify_region, find_fixed_points, h2_over_j, lyapunov_map, max_lyapunov, MapGrid,
};
use spinlyap::ModelParams;

pub fn run_example() -> spinlyap::Result<Vec<(String, usize, f64)>> {
    let mut rows = Vec::new();
    for (h, k) in [(1.0, 0.0), (3.265, 1.5), (5.0, 1.5)] {
        let p = ModelParams::new(h, 1.0, k, 2)?;
        let region = classify_region(&p)?.label.to_string();
        let fps = find_fixed_points(&p)?;
        let lambda = max_lyapunov(&p).unwrap_or(0.0);
        println!(
            "h/J = {h:5.3}, K/J = {k:3.1}: region {region:>3}, {} fixed points, λ = {lambda:.4}",
            fps.len()
        );
        for fp in &fps {
            println!("    Q = {:+.4}  {}", fp.q(), fp.stability.as_str());
        }
        rows.push((region, fps.len(), lambda));
    }
    println!("h2/J at K/J = 1/4: {}", h2_over_j(0.25).unwrap());

    let map = lyapunov_map(&MapGrid::default().with_resolution(61, 41))?;
    let best = map
        .cells
        .iter()
        .max_by(|a, b| a.lambda.total_cmp(&b.lambda))
        .unwrap();
    println!(
        "coarse map: largest λ = {:.3} at h/J = {:.2}, K/J = {:.2} (region {})",
        best.lambda, best.h_over_j, best.k_over_j, best.region
    );
    Ok(rows)
}

fn main() -> spinlyap::Result<()> {
    run_example().map(|_| ())
}
