use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

/// Coefficients of the PID sliding surface `s = K_p e + K_d ė + K_i ∫e`.
///
/// `kd = 0` gives the PI surface used on first-order plants.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct SurfaceGains {
    pub kp: f64,
    pub ki: f64,
    #[serde(default)]
    pub kd: f64,
}

impl SurfaceGains {
    pub fn new(kp: f64, ki: f64, kd: f64) -> Self {
        Self { kp, ki, kd }
    }

    /// Positive `kp`, `ki` and non-negative `kd`. With all coefficients positive the
    /// characteristic polynomial `kd λ² + kp λ + ki` is Hurwitz.
    pub fn validate(&self) -> Result<()> {
        if self.kp > 0.0 && self.ki > 0.0 && self.kd >= 0.0 && self.kd.is_finite() {
            Ok(())
        } else {
            Err(Error::InvalidParameter(format!(
                "surface gains need kp > 0, ki > 0, kd >= 0 (got {self:?})"
            )))
        }
    }
}

/// Tracking error, its rate and integral, plus the reference derivatives the
/// control laws need.
#[derive(Debug, Clone, Copy, PartialEq, Default)]
pub struct ErrorFrame {
    pub e: f64,
    pub edot: f64,
    pub eint: f64,
    pub ref_rate: f64,
    pub ref_accel: f64,
}

impl ErrorFrame {
    pub fn new(e: f64, edot: f64, eint: f64) -> Self {
        Self {
            e,
            edot,
            eint,
            ..Default::default()
        }
    }
}

pub fn surface(gains: &SurfaceGains, frame: &ErrorFrame) -> f64 {
    gains.kp * frame.e + gains.kd * frame.edot + gains.ki * frame.eint
}
