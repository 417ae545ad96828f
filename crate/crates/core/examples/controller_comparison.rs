//! Classical SMC, equivalent-control PID-SMC and the proposed law on the same
//! disturbed pendulum, printed as a table.
//!
//! cargo run --example controller_comparison [-- <out-dir>]

use pidsmc::harness::{load_experiment, run_experiment};

fn fmt(v: Option<f64>) -> String {
    v.map_or("-".into(), |x| format!("{x:.4}"))
}

fn main() -> pidsmc::Result<()> {
    let exp = load_experiment("preset:controller_comparison")?;
    let report = run_experiment(&exp)?;

    println!("{:<18} {:>8} {:>8} {:>10} {:>10}", "controller", "rise", "settle", "ISE", "chatter");
    for r in report.rows() {
        println!(
            "{:<18} {:>8} {:>8} {:>10} {:>10}",
            r.controller,
            fmt(r.rise_time),
            fmt(r.settling_time),
            fmt(r.ise),
            fmt(r.chattering)
        );
    }

    if let Some(dir) = std::env::args().nth(1) {
        let written = report.write(dir.as_ref())?;
        println!("\nwrote {} files to {dir}", written.len());
    }
    Ok(())
}
