//! Van der Pol oscillator tracking 0.1·sin(t) under a 10·sin(t) disturbance.
//!
//! cargo run --example van_der_pol_tracking

use pidsmc::harness::load_scenario;

fn main() -> pidsmc::Result<()> {
    let traj = load_scenario("preset:van_der_pol")?.simulate()?;
    let late = traj
        .t
        .iter()
        .zip(&traj.e)
        .filter(|(t, _)| **t > 5.0)
        .map(|(_, e)| e.abs())
        .fold(0.0, f64::max);

    println!("{:>6} {:>10} {:>10} {:>10}", "t", "y", "ref", "e");
    for k in (0..traj.len()).step_by(200) {
        println!(
            "{:>6.1} {:>10.5} {:>10.5} {:>10.2e}",
            traj.t[k], traj.state[0][k], traj.reference[k], traj.e[k]
        );
    }
    println!("\nmax |e| after 5 s: {late:.3e}");
    Ok(())
}
