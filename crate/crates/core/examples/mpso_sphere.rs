//! Modified particle swarm on the 3-D sphere function, with the coefficient
//! schedule and convergence trace.
//!
//! cargo run --release --example mpso_sphere [-- <seed>]

use pidsmc::mpso::{coefficients, optimize, SwarmConfig, Variant};

fn main() -> pidsmc::Result<()> {
    let seed = std::env::args().nth(1).and_then(|s| s.parse().ok()).unwrap_or(0);

    println!("schedule (k_max = 90):");
    for i in [0, 10, 30, 60, 90] {
        let c = coefficients(i, 90);
        println!("  i = {i:>2}: w = {:.4}, C1 = {:.4}, C2 = {:.4}", c.w, c.c1, c.c2);
    }

    let sphere = |x: &[f64]| x.iter().map(|v| v * v).sum::<f64>();
    let config = SwarmConfig::new(vec![(-5.0, 5.0); 3], seed);
    let result = optimize(&sphere, &config)?;

    println!("\niter  best_fitness");
    for row in result.trace.iter().step_by(10) {
        println!("{:>4}  {:.3e}", row.iter, row.best_fitness);
    }
    println!("\nbest {:.3e} at {:?}", result.best_fitness, result.best_position);

    // constant inertia-weight swarm on the same seed, for reference
    let standard = SwarmConfig {
        variant: Variant::Standard { w: 0.7298, c1: 1.49618, c2: 1.49618 },
        ..config
    };
    let result = optimize(&sphere, &standard)?;
    println!("standard coefficients: best {:.3e}", result.best_fitness);
    Ok(())
}
