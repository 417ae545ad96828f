//! Level control of the conical tank with a leak opening at t = 200 s.
//!
//! cargo run --release --example conical_tank

use pidsmc::dynamics::{Plant, TankParams};
use pidsmc::harness::load_scenario;

fn main() -> pidsmc::Result<()> {
    let scenario = load_scenario("preset:tank")?;
    let Plant::Tank(tank) = &scenario.plant else {
        unreachable!("tank preset")
    };
    let p: &TankParams = &tank.params;
    let h_max = (p.max_inflow / p.discharge_coeff).powi(2);
    println!(
        "pump limit {:.2} cm^3/s sustains at most h = {h_max:.2} cm without leak",
        p.max_inflow
    );

    let traj = scenario.simulate()?;
    println!("{:>6} {:>8} {:>8}", "t", "h", "u");
    for k in (0..traj.len()).step_by(5000) {
        println!("{:>6.0} {:>8.3} {:>8.2}", traj.t[k], traj.state[0][k], traj.u[k]);
    }
    Ok(())
}
