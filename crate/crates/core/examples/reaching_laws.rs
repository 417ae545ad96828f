//! The power-rate exponential reaching law against the constant-plus-exponential
//! law: surface rate at a few values of s, and the time each needs to pull s from
//! 10 into the boundary layer.
//!
//! cargo run --example reaching_laws

use pidsmc::smc::{reaching_rate, ReachingParams};

fn entry_time(p: &ReachingParams, s0: f64) -> f64 {
    let dt = 1e-5;
    let (mut s, mut t) = (s0, 0.0);
    while s.abs() > p.delta {
        s += dt * reaching_rate(p, s);
        t += dt;
    }
    t
}

fn main() {
    let proposed = ReachingParams::proposed(35.0, 1.5, 0.5, 0.05);
    let classic = ReachingParams::constant_exponential(35.0, 1.5);

    println!("{:>8} {:>12} {:>12}", "s", "proposed", "const+exp");
    for s in [-2.0, -0.5, -0.05, -0.01, 0.0, 0.01, 0.05, 0.5, 2.0] {
        println!("{s:>8.2} {:>12.4} {:>12.4}", reaching_rate(&proposed, s), reaching_rate(&classic, s));
    }

    println!("\ntime to reach |s| <= 0.05 from s = 10:");
    for k_sc in [0.5, 1.5, 5.0, 15.0] {
        let p = ReachingParams::proposed(35.0, k_sc, 0.5, 0.05);
        println!("  k_sc = {k_sc:>5}: {:.4} s", entry_time(&p, 10.0));
    }
}
