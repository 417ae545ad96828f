//! Single-stage inverted pendulum on a cart, reduced to its angular dynamics.
//!
//! The plant is the closed-form angular acceleration
//!
//! ```text
//! θ̈ = (m g l sinθ − m² l² cosθ sinθ θ̇² + u m l cosθ) / (m² l² cos²θ − (I + m l²))
//! ```
//!
//! written in control-affine form `θ̈ = f + g_in·u + d`. The cart coordinate is not
//! integrated: the controllers only act on θ.

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

/// Denominators smaller than this are treated as a singular model.
pub const DENOMINATOR_FLOOR: f64 = 1e-12;

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct PendulumParams {
    /// Cart mass M (kg).
    pub cart_mass: f64,
    /// Bob mass m (kg).
    pub bob_mass: f64,
    /// Moment of inertia I (kg·m²).
    pub inertia: f64,
    /// Pendulum length l (m).
    pub length: f64,
    /// Gravitational acceleration (m/s²).
    pub gravity: f64,
    /// Cart friction b (N·s/m). The reduced model assumes b = 0; the field is kept
    /// for completeness and validated but does not enter the angular dynamics.
    #[serde(default)]
    pub friction: f64,
}

impl PendulumParams {
    /// Laboratory rig values: M = 1 kg, m = 0.1 kg, I = 0.006 kg·m², l = 0.3 m.
    pub fn reference_rig() -> Self {
        Self {
            cart_mass: 1.0,
            bob_mass: 0.1,
            inertia: 0.006,
            length: 0.3,
            gravity: 9.8,
            friction: 0.0,
        }
    }

    pub fn validate(&self) -> Result<()> {
        let checks = [
            (self.cart_mass > 0.0, "cart_mass must be > 0"),
            (self.bob_mass > 0.0, "bob_mass must be > 0"),
            (self.inertia >= 0.0, "inertia must be >= 0"),
            (self.length > 0.0, "length must be > 0"),
            (self.gravity > 0.0, "gravity must be > 0"),
            (self.friction >= 0.0, "friction must be >= 0"),
        ];
        for (ok, msg) in checks {
            if !ok {
                return Err(Error::DegenerateParameters(msg.into()));
            }
        }
        // The denominator m²l²cos²θ − (I + ml²) keeps one sign for every θ only when
        // m²l² < I + ml².
        let ml = self.bob_mass * self.length;
        if ml * ml >= self.rotational_inertia() {
            return Err(Error::DegenerateParameters(format!(
                "m²l² = {} must be below I + ml² = {}; the angular denominator vanishes",
                ml * ml,
                self.rotational_inertia()
            )));
        }
        Ok(())
    }

    /// I + m l², the inertia about the pivot.
    pub fn rotational_inertia(&self) -> f64 {
        self.inertia + self.bob_mass * self.length * self.length
    }
}

impl Default for PendulumParams {
    fn default() -> Self {
        Self::reference_rig()
    }
}

/// Drift `f` (rad/s²) and input gain `g_in` (rad/(s²·N)) at `state = [θ, θ̇]`.
pub fn pendulum_f_g(state: &[f64], params: &PendulumParams) -> Result<(f64, f64)> {
    let (theta, theta_dot) = (state[0], state[1]);
    let (sin, cos) = theta.sin_cos();
    let m = params.bob_mass;
    let l = params.length;
    let ml = m * l;
    let denom = ml * ml * cos * cos - params.rotational_inertia();
    if denom.abs() < DENOMINATOR_FLOOR {
        return Err(Error::DegenerateParameters(format!(
            "pendulum denominator {denom:e} at θ = {theta}"
        )));
    }
    let f = (m * params.gravity * l * sin - ml * ml * cos * sin * theta_dot * theta_dot) / denom;
    let g_in = ml * cos / denom;
    Ok((f, g_in))
}

/// Angular rate of the rotational subsystem with the cart held still:
/// `(I + ml²) θ̈ + m g l sinθ = 0`.
pub fn frozen_cart_rate(state: &[f64], params: &PendulumParams) -> [f64; 2] {
    let m = params.bob_mass;
    let l = params.length;
    [
        state[1],
        -m * params.gravity * l * state[0].sin() / params.rotational_inertia(),
    ]
}

/// Conserved energy of [`frozen_cart_rate`]: `½(I + ml²)θ̇² − m g l cosθ`.
pub fn frozen_cart_energy(state: &[f64], params: &PendulumParams) -> f64 {
    0.5 * params.rotational_inertia() * state[1] * state[1]
        - params.bob_mass * params.gravity * params.length * state[0].cos()
}
