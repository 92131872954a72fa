// Husimi distribution of the spreading state on the phase-space disk, with
// the classical separatrix, printed as character art.
//
// Run with `cargo run --release --example husimi_snapshot`.

use spinlyap::quantum::{evolve, husimi, hyperbolic_initial_state, separatrix, HusimiGrid, Propagator};
use spinlyap::ModelParams;

/// Quadrature of the Husimi function at each snapshot (should be 1).
pub fn run_example() -> spinlyap::Result<Vec<f64>> {
    let p = ModelParams::new(3.265, 1.0, 1.5, 200)?;
    let prop = Propagator::cached(&p)?;
    let (psi0, _) = hyperbolic_initial_state(&p)?;
    let side = 61;
    let grid = HusimiGrid::Disk {
        q_steps: side,
        p_steps: side,
    };
    let sep = separatrix(&p, 201)?;
    println!(
        "separatrix: {} branch(es), {} points",
        sep.len(),
        sep.iter().map(|l| l.points.len()).sum::<usize>()
    );

    let mut sums = Vec::new();
    for t in [0.0, 0.3] {
        let field = husimi(&evolve(&psi0, &prop, t)?, grid)?;
        let (max, step) = (field.max_value(), 4.0 / (side - 1) as f64);
        let mut canvas = vec![vec![' '; side]; side];
        for node in &field.nodes {
            let i = ((node.x + 2.0) / step).round() as usize;
            let j = ((2.0 - node.y) / step).round() as usize;
            let v = node.value / max;
            canvas[j][i] = if v > 0.5 {
                '#'
            } else if v > 0.1 {
                '+'
            } else if v > 0.01 {
                '.'
            } else {
                ' '
            };
        }
        for pt in sep.iter().flat_map(|l| &l.points) {
            let i = ((pt.q + 2.0) / step).round() as usize;
            let j = ((2.0 - pt.p) / step).round() as usize;
            if canvas[j][i] == ' ' {
                canvas[j][i] = '~';
            }
        }
        println!("Jt = {t}, quadrature {:.6}", field.quadrature());
        for row in canvas.into_iter().filter(|r| r.iter().any(|&c| c != ' ')) {
            println!("  {}", row.into_iter().collect::<String>());
        }
        sums.push(field.quadrature());
    }
    Ok(sums)
}

fn main() -> spinlyap::Result<()> {
    run_example().map(|_| ())
}
