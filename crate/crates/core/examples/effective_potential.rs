// The effective potential `V(Q) = H_cl(Q, 0)` in the three regions, drawn
// as a coarse text plot.
//
// Run with `cargo run --example effective_potential`.

use spinlyap::classical::effective_potential;
use spinlyap::numerics::linspace;
use spinlyap::ModelParams;

/// Number of interior local minima of `V` on `Q ∈ [−2, 2]` per region.
pub fn run_example() -> spinlyap::Result<Vec<usize>> {
    let qs = linspace(-2.0, 2.0, 401);
    let mut wells = Vec::new();
    for (name, h, k) in [("I", 1.0, 1.5), ("II", 3.265, 1.5), ("III", 5.0, 1.5)] {
        let p = ModelParams::new(h, 1.0, k, 2)?;
        let v: Vec<f64> = qs.iter().map(|&q| effective_potential(q, &p)).collect();
        let minima = (1..v.len() - 1)
            .filter(|&i| v[i] < v[i - 1] && v[i] < v[i + 1])
            .count();
        let (lo, hi) = v
            .iter()
            .fold((f64::MAX, f64::MIN), |(a, b), &x| (a.min(x), b.max(x)));
        let line: String = v
            .iter()
            .step_by(8)
            .map(|x| {
                let level = ((x - lo) / (hi - lo) * 7.0).round() as usize;
                [' ', '.', ':', '-', '=', '+', '*', '#'][level.min(7)]
            })
            .collect();
        println!("region {name:>3} (h/J={h}, K/J={k}): {minima} well(s)  |{line}|");
        wells.push(minima);
    }
    Ok(wells)
}

fn main() -> spinlyap::Result<()> {
    run_example().map(|_| ())
}
