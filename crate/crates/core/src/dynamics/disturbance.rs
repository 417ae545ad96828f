use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

/// External disturbance `d(t)` acting on the highest derivative of the plant output.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize, Default)]
#[serde(tag = "kind", rename_all = "snake_case")]
pub enum DisturbanceSpec {
    #[default]
    None,
    /// `amplitude · sin(angular_freq · t)`.
    Sinusoid { amplitude: f64, angular_freq: f64 },
    /// Dirac impulse of the given area, discretised as a single-sample pulse.
    /// `1000 δ(10 t)` has area 100.
    Impulse {
        area: f64,
        #[serde(default)]
        onset_time: f64,
    },
    /// Tank leak: extra outflow `coefficient · √h` from `onset_time` on.
    Leak {
        coefficient: f64,
        #[serde(default)]
        onset_time: f64,
    },
}

impl DisturbanceSpec {
    pub fn validate(&self) -> Result<()> {
        let ok = match *self {
            DisturbanceSpec::None => true,
            DisturbanceSpec::Sinusoid {
                amplitude,
                angular_freq,
            } => amplitude >= 0.0 && angular_freq.is_finite(),
            DisturbanceSpec::Impulse { area, onset_time } => {
                area.is_finite() && onset_time.is_finite()
            }
            DisturbanceSpec::Leak {
                coefficient,
                onset_time,
            } => coefficient >= 0.0 && onset_time.is_finite(),
        };
        if ok {
            Ok(())
        } else {
            Err(Error::InvalidParameter(format!("disturbance {self:?}")))
        }
    }

    /// Largest |d(t)| on a grid of step `dt`, when it is expressible as an
    /// additive bound. Leaks depend on the plant state and return `None`.
    pub fn bound(&self, dt: f64) -> Option<f64> {
        match *self {
            DisturbanceSpec::None => Some(0.0),
            DisturbanceSpec::Sinusoid { amplitude, .. } => Some(amplitude),
            DisturbanceSpec::Impulse { area, .. } => Some(area.abs() / dt),
            DisturbanceSpec::Leak { .. } => None,
        }
    }

    /// Leak coefficient in force at time `t` (zero for every other kind).
    pub fn leak_coefficient(&self, t: f64) -> f64 {
        match *self {
            DisturbanceSpec::Leak {
                coefficient,
                onset_time,
            } if t >= onset_time => coefficient,
            _ => 0.0,
        }
    }
}

/// Additive disturbance value on the sampling grid.
///
/// An impulse occupies exactly the first sample at or after `onset_time`, with
/// height `area / dt`, so the sampled signal integrates to `area`.
pub fn eval_disturbance(spec: &DisturbanceSpec, t: f64, dt: f64) -> f64 {
    match *spec {
        DisturbanceSpec::None | DisturbanceSpec::Leak { .. } => 0.0,
        DisturbanceSpec::Sinusoid {
            amplitude,
            angular_freq,
        } => amplitude * (angular_freq * t).sin(),
        DisturbanceSpec::Impulse { area, onset_time } => {
            let tol = 1e-9 * dt;
            let lag = t - onset_time;
            if lag >= -tol && lag < dt - tol {
                area / dt
            } else {
                0.0
            }
        }
    }
}
