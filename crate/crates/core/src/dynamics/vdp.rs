//! Forced Van der Pol oscillator `ẍ = −2x + 3(1 − x²)ẋ + u + d`, output `y = x`.

/// Drift of the second state, `−2x₁ + 3(1 − x₁²)x₂`. The input gain is 1.
pub fn vdp_drift(state: &[f64]) -> f64 {
    let (x1, x2) = (state[0], state[1]);
    -2.0 * x1 + 3.0 * (1.0 - x1 * x1) * x2
}

pub fn vdp_rate(state: &[f64], u: f64, d: f64) -> [f64; 2] {
    [state[1], vdp_drift(state) + u + d]
}
