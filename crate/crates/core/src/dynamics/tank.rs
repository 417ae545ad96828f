//! Conical tank level process in centimetre–second units.
//!
//! Mass balance `F_in − k√h = A(h)·ḣ` with the free-surface area of a cone,
//! `A(h) = π R² h² / H²`.

use std::f64::consts::PI;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

/// Levels at or below this (cm) are evaluated here; `A(h) → 0` as `h → 0`.
pub const TANK_LEVEL_FLOOR: f64 = 0.1;

/// 1 L/h expressed in cm³/s.
pub const LPH_TO_CM3_PER_S: f64 = 1000.0 / 3600.0;

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct TankParams {
    /// Radius of the cone at the top (cm).
    pub top_radius: f64,
    /// Height of the cone (cm).
    pub max_height: f64,
    /// Outlet discharge coefficient (cm^2.5/s).
    pub discharge_coeff: f64,
    /// Pump capacity (cm³/s).
    pub max_inflow: f64,
}

impl TankParams {
    /// R = 17.5 cm, H = 70 cm, k = 55, pump 400 L/h.
    pub fn reference_rig() -> Self {
        Self {
            top_radius: 17.5,
            max_height: 70.0,
            discharge_coeff: 55.0,
            max_inflow: 400.0 * LPH_TO_CM3_PER_S,
        }
    }

    pub fn validate(&self) -> Result<()> {
        if self.top_radius > 0.0
            && self.max_height > 0.0
            && self.discharge_coeff > 0.0
            && self.max_inflow > 0.0
        {
            Ok(())
        } else {
            Err(Error::DegenerateParameters(format!(
                "tank parameters must all be positive: {self:?}"
            )))
        }
    }

    /// Free-surface area at level `h` (cm²).
    pub fn area(&self, h: f64) -> f64 {
        PI * self.top_radius * self.top_radius * h * h / (self.max_height * self.max_height)
    }

    /// Inflow that holds level `h` steady with no leak.
    pub fn equilibrium_inflow(&self, h: f64) -> f64 {
        self.discharge_coeff * h.max(0.0).sqrt()
    }
}

impl Default for TankParams {
    fn default() -> Self {
        Self::reference_rig()
    }
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct TankRate {
    /// dh/dt including any leak (cm/s).
    pub rate: f64,
    /// Nominal drift `−k√h / A` (cm/s).
    pub drift: f64,
    /// Input gain `1 / A` (1/cm²).
    pub input_gain: f64,
    /// Set when `h` was lifted to [`TANK_LEVEL_FLOOR`].
    pub floor_active: bool,
}

/// Level rate for inflow `inflow` (cm³/s). `leak` is an extra outlet coefficient
/// that adds `leak·√h` to the outflow; it is not part of the nominal drift.
pub fn tank_rate(h: f64, inflow: f64, params: &TankParams, leak: f64) -> TankRate {
    let floor_active = h <= TANK_LEVEL_FLOOR;
    let h = if floor_active { TANK_LEVEL_FLOOR } else { h };
    let area = params.area(h);
    let root = h.sqrt();
    let drift = -params.discharge_coeff * root / area;
    let input_gain = 1.0 / area;
    TankRate {
        rate: drift + input_gain * inflow - leak * root / area,
        drift,
        input_gain,
        floor_active,
    }
}
