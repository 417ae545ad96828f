//! Write the five standard figure files (output, error, control, phase plane,
//! sliding variable) for the pendulum run.
//!
//! cargo run --example plot_data [-- <out-dir>]

use pidsmc::harness::{emit_plot_data, load_scenario, Figure};

fn main() -> pidsmc::Result<()> {
    let dir = std::env::args().nth(1).unwrap_or_else(|| "plotdata".into());
    let traj = load_scenario("preset:pendulum")?.simulate()?;
    let header = vec![format!("pidsmc {}", pidsmc::VERSION), "scenario: preset:pendulum".into()];
    for path in emit_plot_data(&traj, &Figure::ALL, dir.as_ref(), &header)? {
        println!("{}", path.display());
    }
    Ok(())
}
