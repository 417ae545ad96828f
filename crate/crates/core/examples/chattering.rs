//! Chattering of the classical sliding mode baseline with a hard sign switch
//! versus the saturated boundary layer.
//!
//! cargo run --example chattering

use pidsmc::harness::load_scenario;
use pidsmc::metrics::chattering_amplitude;
use pidsmc::smc::{Controller, SwitchingFn};

fn main() -> pidsmc::Result<()> {
    let base = load_scenario("preset:pendulum")?;
    for switching in [SwitchingFn::Sat, SwitchingFn::Sign] {
        let sc = base.with_controller(Controller::Smc1 {
            lambda: 5.0,
            k_sc: 15.0,
            delta: 0.05,
            switching,
        });
        let traj = sc.simulate()?;
        println!(
            "{switching:?}: mean |du| over the last 20% = {:.4}",
            chattering_amplitude(&traj.t, &traj.u)
        );
    }
    Ok(())
}
