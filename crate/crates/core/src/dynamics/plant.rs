use serde::{Deserialize, Serialize};

use super::pendulum::{pendulum_f_g, PendulumParams};
use super::tank::{tank_rate, TankParams, LPH_TO_CM3_PER_S};
use super::vdp::{vdp_drift, vdp_rate};
use crate::error::{Error, Result};

/// Inputs applied over one integration step.
#[derive(Debug, Clone, Copy, PartialEq, Default)]
pub struct Forcing {
    /// Control input (zero-order hold).
    pub u: f64,
    /// Additive disturbance on the highest output derivative.
    pub d: f64,
    /// Extra outlet coefficient (tank only).
    pub leak: f64,
}

/// `y⁽ⁿ⁾ = drift + input_gain · u + d`, with `n` the plant order.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct ControlAffine {
    pub drift: f64,
    pub input_gain: f64,
}

/// A single-input single-output plant in control-affine form.
pub trait PlantModel {
    /// Relative degree of the output with respect to the input (1 or 2).
    fn order(&self) -> usize;

    fn state_names(&self) -> &'static [&'static str];

    fn validate(&self) -> Result<()>;

    /// Nominal `f` and `g` at `x` (no disturbance, no leak).
    fn affine(&self, x: &[f64]) -> Result<ControlAffine>;

    fn derivative(&self, x: &[f64], forcing: Forcing) -> Result<Vec<f64>>;

    fn output(&self, x: &[f64]) -> f64 {
        x[0]
    }

    /// Actuator range applied to every command.
    fn input_limits(&self) -> Option<(f64, f64)> {
        None
    }

    /// Keeps the state inside its physical domain after a step.
    fn project(&self, _x: &mut [f64]) {}
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize, Default)]
pub struct InvertedPendulum {
    #[serde(flatten)]
    pub params: PendulumParams,
    /// Optional symmetric clamp on the cart force (N).
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub force_limit: Option<f64>,
}

impl PlantModel for InvertedPendulum {
    fn order(&self) -> usize {
        2
    }

    fn state_names(&self) -> &'static [&'static str] {
        &["theta", "theta_dot"]
    }

    fn validate(&self) -> Result<()> {
        self.params.validate()?;
        match self.force_limit {
            Some(l) if !(l > 0.0) => Err(Error::InvalidParameter(format!(
                "force_limit must be positive, got {l}"
            ))),
            _ => Ok(()),
        }
    }

    fn affine(&self, x: &[f64]) -> Result<ControlAffine> {
        let (drift, input_gain) = pendulum_f_g(x, &self.params)?;
        Ok(ControlAffine { drift, input_gain })
    }

    fn derivative(&self, x: &[f64], forcing: Forcing) -> Result<Vec<f64>> {
        let (f, g) = pendulum_f_g(x, &self.params)?;
        Ok(vec![x[1], f + g * forcing.u + forcing.d])
    }

    fn input_limits(&self) -> Option<(f64, f64)> {
        self.force_limit.map(|l| (-l, l))
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
#[serde(try_from = "TankConfig", into = "TankConfig")]
pub struct ConicalTank {
    pub params: TankParams,
}

/// Serialized tank block: the pump may be given in cm³/s or in litres per hour.
#[derive(Debug, Clone, Copy, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
struct TankConfig {
    top_radius: f64,
    max_height: f64,
    discharge_coeff: f64,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    max_inflow: Option<f64>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    max_inflow_lph: Option<f64>,
}

impl TryFrom<TankConfig> for ConicalTank {
    type Error = String;

    fn try_from(c: TankConfig) -> std::result::Result<Self, String> {
        let max_inflow = match (c.max_inflow, c.max_inflow_lph) {
            (Some(v), None) => v,
            (None, Some(lph)) => lph * LPH_TO_CM3_PER_S,
            (None, None) => return Err("tank needs max_inflow or max_inflow_lph".into()),
            (Some(_), Some(_)) => {
                return Err("give only one of max_inflow and max_inflow_lph".into())
            }
        };
        Ok(ConicalTank {
            params: TankParams {
                top_radius: c.top_radius,
                max_height: c.max_height,
                discharge_coeff: c.discharge_coeff,
                max_inflow,
            },
        })
    }
}

impl From<ConicalTank> for TankConfig {
    fn from(t: ConicalTank) -> Self {
        TankConfig {
            top_radius: t.params.top_radius,
            max_height: t.params.max_height,
            discharge_coeff: t.params.discharge_coeff,
            max_inflow: Some(t.params.max_inflow),
            max_inflow_lph: None,
        }
    }
}

impl PlantModel for ConicalTank {
    fn order(&self) -> usize {
        1
    }

    fn state_names(&self) -> &'static [&'static str] {
        &["h"]
    }

    fn validate(&self) -> Result<()> {
        self.params.validate()
    }

    fn affine(&self, x: &[f64]) -> Result<ControlAffine> {
        let r = tank_rate(x[0], 0.0, &self.params, 0.0);
        Ok(ControlAffine {
            drift: r.drift,
            input_gain: r.input_gain,
        })
    }

    fn derivative(&self, x: &[f64], forcing: Forcing) -> Result<Vec<f64>> {
        let r = tank_rate(x[0], forcing.u, &self.params, forcing.leak);
        Ok(vec![r.rate + forcing.d])
    }

    fn input_limits(&self) -> Option<(f64, f64)> {
        Some((0.0, self.params.max_inflow))
    }

    fn project(&self, x: &mut [f64]) {
        x[0] = x[0].clamp(0.0, self.params.max_height);
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Default)]
pub struct VanDerPol;

impl PlantModel for VanDerPol {
    fn order(&self) -> usize {
        2
    }

    fn state_names(&self) -> &'static [&'static str] {
        &["x1", "x2"]
    }

    fn validate(&self) -> Result<()> {
        Ok(())
    }

    fn affine(&self, x: &[f64]) -> Result<ControlAffine> {
        Ok(ControlAffine {
            drift: vdp_drift(x),
            input_gain: 1.0,
        })
    }

    fn derivative(&self, x: &[f64], forcing: Forcing) -> Result<Vec<f64>> {
        Ok(vdp_rate(x, forcing.u, forcing.d).to_vec())
    }
}

/// Plant selector used by scenario files.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(tag = "kind", rename_all = "snake_case")]
pub enum Plant {
    Pendulum(InvertedPendulum),
    Tank(ConicalTank),
    VanDerPol,
}

impl Plant {
    pub fn name(&self) -> &'static str {
        match self {
            Plant::Pendulum(_) => "pendulum",
            Plant::Tank(_) => "tank",
            Plant::VanDerPol => "van_der_pol",
        }
    }

    fn model(&self) -> &dyn PlantModel {
        match self {
            Plant::Pendulum(p) => p,
            Plant::Tank(t) => t,
            Plant::VanDerPol => &VanDerPol,
        }
    }
}

impl PlantModel for Plant {
    fn order(&self) -> usize {
        self.model().order()
    }

    fn state_names(&self) -> &'static [&'static str] {
        self.model().state_names()
    }

    fn validate(&self) -> Result<()> {
        self.model().validate()
    }

    fn affine(&self, x: &[f64]) -> Result<ControlAffine> {
        self.model().affine(x)
    }

    fn derivative(&self, x: &[f64], forcing: Forcing) -> Result<Vec<f64>> {
        self.model().derivative(x, forcing)
    }

    fn output(&self, x: &[f64]) -> f64 {
        self.model().output(x)
    }

    fn input_limits(&self) -> Option<(f64, f64)> {
        self.model().input_limits()
    }

    fn project(&self, x: &mut [f64]) {
        self.model().project(x)
    }
}
