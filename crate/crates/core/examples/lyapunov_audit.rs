//! Audit V = s²/2 along closed-loop runs: how many samples outside the boundary
//! layer fail to decrease V, with and without a disturbance, and with a switching
//! gain large enough to dominate it.
//!
//! cargo run --release --example lyapunov_audit

use pidsmc::dynamics::DisturbanceSpec;
use pidsmc::harness::load_scenario;
use pidsmc::metrics::lyapunov_audit;
use pidsmc::smc::{Controller, ReachingParams};

fn main() -> pidsmc::Result<()> {
    let base = load_scenario("preset:pendulum")?;
    let Controller::PidSmcProposed { gains, reaching } = base.controller.clone() else {
        unreachable!("pendulum preset uses the proposed controller")
    };

    let mut cases = Vec::new();
    cases.push(("d = 10 sin t, k_sc = 1.5", base.clone()));
    let mut quiet = base.clone();
    quiet.disturbance = DisturbanceSpec::None;
    cases.push(("no disturbance", quiet));
    let mut strong = base.with_controller(Controller::PidSmcProposed {
        gains,
        reaching: ReachingParams { k_sc: 40.0, ..reaching },
    });
    strong.dt = 0.001;
    cases.push(("d = 10 sin t, k_sc = 40, dt = 1 ms", strong));

    for (label, sc) in cases {
        let traj = sc.simulate()?;
        let audit = lyapunov_audit(&traj.t, &traj.s, sc.controller.boundary_layer());
        println!("{label:<36} violations {:>4}  worst {:?}", audit.violations, audit.worst_margin);
    }
    Ok(())
}
