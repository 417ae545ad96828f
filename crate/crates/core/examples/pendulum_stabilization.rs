//! Stabilize the inverted pendulum from 30° under a 10·sin(t) disturbance.
//!
//! cargo run --example pendulum_stabilization

use pidsmc::harness::load_scenario;
use pidsmc::MetricReport;

fn main() -> pidsmc::Result<()> {
    let scenario = load_scenario("preset:pendulum")?;
    let traj = scenario.simulate()?;

    println!("{:>6} {:>10} {:>10} {:>10}", "t", "theta", "s", "u");
    for k in (0..traj.len()).step_by(25).take(12) {
        println!(
            "{:>6.2} {:>10.5} {:>10.5} {:>10.3}",
            traj.t[k], traj.state[0][k], traj.s[k], traj.u[k]
        );
    }

    let report = MetricReport::from_trajectory("proposed", &traj, scenario.controller.boundary_layer());
    println!("\n{}", serde_json::to_string_pretty(&report)?);
    Ok(())
}
