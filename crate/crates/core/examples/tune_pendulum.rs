//! Tune the proposed controller's gains on the disturbed pendulum by minimizing
//! ISE, then compare against the hand-set gains.
//!
//! cargo run --release --example tune_pendulum [-- <out-dir>]

use pidsmc::harness::{load_experiment, run_tuning};

fn main() -> pidsmc::Result<()> {
    let exp = load_experiment("preset:tune_pendulum")?;
    let outcome = run_tuning(&exp)?;

    for (param, value) in outcome.best_params() {
        println!("{:<6} {value:.4}", param.name());
    }
    let before = outcome.before.rows()[0].ise.unwrap_or(f64::NAN);
    let after = outcome.after.rows()[0].ise.unwrap_or(f64::NAN);
    println!("ISE hand-set {before:.6e} -> tuned {after:.6e}");

    if let Some(dir) = std::env::args().nth(1) {
        outcome.write(dir.as_ref())?;
        println!("trace, tuned config and before/after reports in {dir}");
    }
    Ok(())
}
