//! Bundled scenario and experiment files, addressable as `preset:<name>`.

pub const SCENARIOS: [&str; 4] = ["pendulum", "pendulum_impulse", "tank", "van_der_pol"];
pub const EXPERIMENTS: [&str; 6] = [
    "controller_comparison",
    "impulse_rejection",
    "tank_leak",
    "vdp_tracking",
    "tune_pendulum",
    "tune_van_der_pol",
];

pub fn get(name: &str) -> Option<&'static str> {
    Some(match name {
        "pendulum" => include_str!("../../presets/pendulum.toml"),
        "pendulum_impulse" => include_str!("../../presets/pendulum_impulse.toml"),
        "tank" => include_str!("../../presets/tank.toml"),
        "van_der_pol" => include_str!("../../presets/van_der_pol.toml"),
        "controller_comparison" => include_str!("../../presets/controller_comparison.toml"),
        "impulse_rejection" => include_str!("../../presets/impulse_rejection.toml"),
        "tank_leak" => include_str!("../../presets/tank_leak.toml"),
        "vdp_tracking" => include_str!("../../presets/vdp_tracking.toml"),
        "tune_pendulum" => include_str!("../../presets/tune_pendulum.toml"),
        "tune_van_der_pol" => include_str!("../../presets/tune_van_der_pol.toml"),
        _ => return None,
    })
}
