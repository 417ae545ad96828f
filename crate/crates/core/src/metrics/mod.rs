//! Performance metrics over logged trajectories.
//!
//! Timing conventions: rise time is the time for the deviation `|y − target|` to fall
//! from 90% to 10% of its initial value; settling time is the earliest time after
//! which the deviation stays inside a 2% band (floored at 1e-4). Crossing times are
//! linearly interpolated between samples and measured from the first sample.

use serde::{Deserialize, Serialize};

use crate::dynamics::Trajectory;

pub const DEFAULT_SETTLING_BAND: f64 = 0.02;
pub const SETTLING_FLOOR: f64 = 1e-4;
/// Trailing share of the horizon used by steady-state and chattering estimates.
pub const TAIL_FRACTION: f64 = 0.2;

pub const RISE_CONVENTION: &str = "90%->10% of initial deviation, interpolated";
pub const SETTLING_CONVENTION: &str = "2% of initial deviation (floor 1e-4), interpolated";

/// Interpolated time at which `dev` first drops to `level`, starting the search at `from`.
fn first_fall(t: &[f64], dev: &[f64], level: f64, from: usize) -> Option<(usize, f64)> {
    let k = (from..dev.len()).find(|&k| dev[k] <= level)?;
    if k == 0 || k == from {
        return Some((k, t[k]));
    }
    let (a, b) = (dev[k - 1], dev[k]);
    let frac = if a > b { (a - level) / (a - b) } else { 1.0 };
    Some((k, t[k - 1] + frac * (t[k] - t[k - 1])))
}

/// Time for `|y − target|` to fall from 90% to 10% of `|initial − target|`.
pub fn rise_time(t: &[f64], y: &[f64], initial: f64, target: f64) -> Option<f64> {
    let dev0 = (initial - target).abs();
    let dev: Vec<f64> = y.iter().map(|v| (v - target).abs()).collect();
    if dev0 == 0.0 {
        return dev.first().map(|_| 0.0);
    }
    let (k90, t90) = first_fall(t, &dev, 0.9 * dev0, 0)?;
    let (_, t10) = first_fall(t, &dev, 0.1 * dev0, k90)?;
    Some(t10 - t90)
}

/// Earliest time (relative to `t[0]`) after which `|y − target|` stays inside the band.
pub fn settling_time(t: &[f64], y: &[f64], initial: f64, target: f64, band: f64) -> Option<f64> {
    let limit = (band * (initial - target).abs()).max(SETTLING_FLOOR);
    let dev: Vec<f64> = y.iter().map(|v| (v - target).abs()).collect();
    match dev.iter().rposition(|&d| d > limit) {
        None => t.first().map(|_| 0.0),
        Some(k) if k + 1 == dev.len() => None,
        Some(k) => {
            let (a, b) = (dev[k], dev[k + 1]);
            let frac = (a - limit) / (a - b);
            Some(t[k] + frac * (t[k + 1] - t[k]) - t[0])
        }
    }
}

/// `∫ e² dt` by the trapezoidal rule on the sample grid.
pub fn ise(t: &[f64], e: &[f64]) -> f64 {
    t.windows(2)
        .zip(e.windows(2))
        .map(|(tw, ew)| 0.5 * (tw[1] - tw[0]) * (ew[0] * ew[0] + ew[1] * ew[1]))
        .sum()
}

/// First sample index of the trailing window covering the last `TAIL_FRACTION` of the horizon.
fn tail_start(t: &[f64]) -> usize {
    let (Some(&t0), Some(&t1)) = (t.first(), t.last()) else {
        return 0;
    };
    let cut = t1 - TAIL_FRACTION * (t1 - t0);
    t.iter().position(|&ti| ti >= cut - 1e-9 * (t1 - t0).abs()).unwrap_or(0)
}

/// Mean `|e|` over the trailing window.
pub fn steady_state_error(t: &[f64], e: &[f64]) -> f64 {
    let tail = &e[tail_start(t)..];
    if tail.is_empty() {
        return 0.0;
    }
    tail.iter().map(|v| v.abs()).sum::<f64>() / tail.len() as f64
}

/// Mean `|u[k] − u[k−1]|` over the trailing window.
pub fn chattering_amplitude(t: &[f64], u: &[f64]) -> f64 {
    let tail = &u[tail_start(t)..];
    if tail.len() < 2 {
        return 0.0;
    }
    tail.windows(2).map(|w| (w[1] - w[0]).abs()).sum::<f64>() / (tail.len() - 1) as f64
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct LyapunovAudit {
    /// Samples outside the boundary layer where `V̇ ≥ 0`.
    pub violations: usize,
    /// Largest `V̇` among the violating samples.
    pub worst_margin: Option<f64>,
}

/// `V = s²/2` along the trajectory; `V̇` by central differences (one-sided at the ends).
pub fn lyapunov_rate(t: &[f64], s: &[f64]) -> Vec<f64> {
    let n = s.len();
    let v: Vec<f64> = s.iter().map(|x| 0.5 * x * x).collect();
    (0..n)
        .map(|k| {
            if n < 2 {
                return 0.0;
            }
            let (a, b) = match k {
                0 => (0, 1),
                k if k == n - 1 => (n - 2, n - 1),
                k => (k - 1, k + 1),
            };
            (v[b] - v[a]) / (t[b] - t[a])
        })
        .collect()
}

/// Counts samples with `|s| > delta` at which the discrete `V̇` is not negative.
pub fn lyapunov_audit(t: &[f64], s: &[f64], delta: f64) -> LyapunovAudit {
    let rate = lyapunov_rate(t, s);
    let mut audit = LyapunovAudit {
        violations: 0,
        worst_margin: None,
    };
    for (sk, vdot) in s.iter().zip(rate) {
        if sk.abs() > delta && vdot >= 0.0 {
            audit.violations += 1;
            audit.worst_margin = Some(audit.worst_margin.map_or(vdot, |w: f64| w.max(vdot)));
        }
    }
    audit
}

/// Flat summary of one closed-loop run. `None` timing fields mean "not reached".
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct MetricReport {
    pub controller: String,
    pub diverged: bool,
    pub rise_time: Option<f64>,
    pub settling_time: Option<f64>,
    pub ise: Option<f64>,
    pub steady_state_error: Option<f64>,
    pub chattering: Option<f64>,
    pub lyapunov_violations: Option<usize>,
    pub lyapunov_worst_margin: Option<f64>,
    pub rise_convention: String,
    pub settling_convention: String,
}

impl MetricReport {
    /// Metrics on the tracking error channel (target 0, initial value `e[0]`).
    pub fn from_trajectory(label: &str, traj: &Trajectory, boundary_layer: f64) -> Self {
        let e0 = traj.e.first().copied().unwrap_or(0.0);
        let audit = lyapunov_audit(&traj.t, &traj.s, boundary_layer);
        MetricReport {
            controller: label.to_string(),
            diverged: false,
            rise_time: rise_time(&traj.t, &traj.e, e0, 0.0),
            settling_time: settling_time(&traj.t, &traj.e, e0, 0.0, DEFAULT_SETTLING_BAND),
            ise: Some(ise(&traj.t, &traj.e)),
            steady_state_error: Some(steady_state_error(&traj.t, &traj.e)),
            chattering: Some(chattering_amplitude(&traj.t, &traj.u)),
            lyapunov_violations: Some(audit.violations),
            lyapunov_worst_margin: audit.worst_margin,
            rise_convention: RISE_CONVENTION.into(),
            settling_convention: SETTLING_CONVENTION.into(),
        }
    }

    pub fn diverged(label: &str) -> Self {
        MetricReport {
            controller: label.to_string(),
            diverged: true,
            rise_time: None,
            settling_time: None,
            ise: None,
            steady_state_error: None,
            chattering: None,
            lyapunov_violations: None,
            lyapunov_worst_margin: None,
            rise_convention: RISE_CONVENTION.into(),
            settling_convention: SETTLING_CONVENTION.into(),
        }
    }
}
