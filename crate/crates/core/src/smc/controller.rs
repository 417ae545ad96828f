use serde::{Deserialize, Serialize};

use super::laws::{classical_smc, pid_control, reaching_law_control, switching_control, SurfaceDynamics};
use super::reaching::{ReachingParams, DEFAULT_DELTA};
use super::surface::{surface, ErrorFrame, SurfaceGains};
use super::switching::SwitchingFn;
use crate::error::{Error, Result};

/// Baseline λ for the classical sliding surface `s = ė + λe`.
pub const DEFAULT_LAMBDA: f64 = 5.0;

fn default_lambda() -> f64 {
    DEFAULT_LAMBDA
}

fn default_delta() -> f64 {
    DEFAULT_DELTA
}

/// Orientation of the PID baseline relative to the plant's input gain.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize, Default)]
#[serde(rename_all = "snake_case")]
pub enum Direction {
    /// Multiply by the sign of the current input gain.
    #[default]
    Auto,
    Direct,
    Reverse,
}

/// Controller blocks as they appear in scenario files.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(tag = "kind", rename_all = "snake_case")]
pub enum Controller {
    /// Parallel PID on the tracking error.
    Pid {
        #[serde(flatten)]
        gains: SurfaceGains,
        #[serde(default)]
        direction: Direction,
    },
    /// Classical first-order sliding mode on `s = ė + λe`.
    Smc1 {
        #[serde(default = "default_lambda")]
        lambda: f64,
        k_sc: f64,
        #[serde(default = "default_delta")]
        delta: f64,
        #[serde(default)]
        switching: SwitchingFn,
    },
    /// PID surface with equivalent control plus constant-plus-exponential switching,
    /// `u = u_eq + k s / (K_d g) + u_sw`.
    PidSmcEq {
        #[serde(flatten)]
        gains: SurfaceGains,
        k: f64,
        k_sc: f64,
    },
    /// PID surface with the power-rate exponential reaching law.
    PidSmcProposed {
        #[serde(flatten)]
        gains: SurfaceGains,
        #[serde(flatten)]
        reaching: ReachingParams,
    },
    /// Open-loop constant input.
    Constant { u: f64 },
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct ControlOutput {
    pub u: f64,
    pub s: f64,
}

/// Parameters that tuning can address by name.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum TunableParam {
    Kp,
    Ki,
    Kd,
    K,
    KSc,
    Alpha,
    Delta,
    Lambda,
}

impl TunableParam {
    pub fn name(self) -> &'static str {
        match self {
            TunableParam::Kp => "kp",
            TunableParam::Ki => "ki",
            TunableParam::Kd => "kd",
            TunableParam::K => "k",
            TunableParam::KSc => "k_sc",
            TunableParam::Alpha => "alpha",
            TunableParam::Delta => "delta",
            TunableParam::Lambda => "lambda",
        }
    }

    /// Search interval used when a tuning block gives none.
    pub fn default_bounds(self) -> (f64, f64) {
        match self {
            TunableParam::Alpha => (0.0, 2.0),
            _ => (0.0, 200.0),
        }
    }
}

impl Controller {
    pub fn name(&self) -> &'static str {
        match self {
            Controller::Pid { .. } => "pid",
            Controller::Smc1 { .. } => "smc1",
            Controller::PidSmcEq { .. } => "pid_smc_eq",
            Controller::PidSmcProposed { .. } => "pid_smc_proposed",
            Controller::Constant { .. } => "constant",
        }
    }

    /// Proposed controller with the default α and Δ.
    pub fn proposed(kp: f64, ki: f64, kd: f64, k: f64, k_sc: f64) -> Self {
        Controller::PidSmcProposed {
            gains: SurfaceGains::new(kp, ki, kd),
            reaching: ReachingParams::proposed(k, k_sc, super::reaching::DEFAULT_ALPHA, DEFAULT_DELTA),
        }
    }

    /// Checks parameters and compatibility with a plant of the given order.
    pub fn validate(&self, order: usize) -> Result<()> {
        let needs_rate = |kd: f64| -> Result<()> {
            if order == 1 && kd != 0.0 {
                Err(Error::Config(format!(
                    "{} uses the error rate (kd = {kd}) but a first-order plant does not expose it; set kd = 0",
                    self.name()
                )))
            } else {
                Ok(())
            }
        };
        match self {
            Controller::Pid { gains, .. } => {
                if !(gains.kp >= 0.0 && gains.ki >= 0.0 && gains.kd >= 0.0) {
                    return Err(Error::InvalidParameter(format!(
                        "pid gains must be non-negative: {gains:?}"
                    )));
                }
                needs_rate(gains.kd)
            }
            Controller::Smc1 {
                lambda, k_sc, delta, ..
            } => {
                if *lambda > 0.0 && *k_sc > 0.0 && *delta > 0.0 {
                    Ok(())
                } else {
                    Err(Error::InvalidParameter(format!(
                        "smc1 needs lambda, k_sc, delta > 0 (got {lambda}, {k_sc}, {delta})"
                    )))
                }
            }
            Controller::PidSmcEq { gains, k, k_sc } => {
                gains.validate()?;
                ReachingParams::constant_exponential(*k, *k_sc).validate()?;
                needs_rate(gains.kd)?;
                needs_kd(order, gains)
            }
            Controller::PidSmcProposed { gains, reaching } => {
                gains.validate()?;
                reaching.validate()?;
                needs_rate(gains.kd)?;
                needs_kd(order, gains)
            }
            Controller::Constant { u } => {
                if u.is_finite() {
                    Ok(())
                } else {
                    Err(Error::InvalidParameter("constant input must be finite".into()))
                }
            }
        }
    }

    /// Sliding variable logged alongside the control.
    pub fn sliding_variable(&self, order: usize, frame: &ErrorFrame) -> f64 {
        match self {
            Controller::Pid { gains, .. }
            | Controller::PidSmcEq { gains, .. }
            | Controller::PidSmcProposed { gains, .. } => surface(gains, frame),
            Controller::Smc1 { lambda, .. } => {
                if order == 1 {
                    frame.e
                } else {
                    frame.edot + lambda * frame.e
                }
            }
            Controller::Constant { .. } => 0.0,
        }
    }

    /// Control command for nominal plant drift `f` and input gain `g`.
    pub fn control(&self, order: usize, f: f64, g: f64, frame: &ErrorFrame) -> Result<ControlOutput> {
        let s = self.sliding_variable(order, frame);
        let u = match self {
            Controller::Pid { gains, direction } => {
                let sign = match direction {
                    Direction::Auto => g.signum(),
                    Direction::Direct => 1.0,
                    Direction::Reverse => -1.0,
                };
                sign * pid_control(gains, frame)
            }
            Controller::Smc1 {
                lambda,
                k_sc,
                delta,
                switching,
            } => classical_smc(*lambda, *k_sc, *switching, *delta, frame, f, g, order)?,
            Controller::PidSmcEq { gains, k, k_sc } => {
                let dynamics = SurfaceDynamics::new(gains, frame, f, g, order);
                let u_eq = dynamics.solve(0.0)?;
                let u_exp = dynamics.solve(-k * s)? - u_eq;
                u_eq + u_exp + switching_control(*k_sc, dynamics.input_gain, s)?
            }
            Controller::PidSmcProposed { gains, reaching } => {
                reaching_law_control(gains, reaching, frame, f, g, order)?
            }
            Controller::Constant { u } => *u,
        };
        Ok(ControlOutput { u, s })
    }

    /// Reaching law the surface follows under this controller, when it has one.
    pub fn reaching(&self) -> Option<ReachingParams> {
        match self {
            Controller::PidSmcEq { k, k_sc, .. } => {
                Some(ReachingParams::constant_exponential(*k, *k_sc))
            }
            Controller::PidSmcProposed { reaching, .. } => Some(*reaching),
            _ => None,
        }
    }

    /// Boundary-layer half-width used by the Lyapunov audit.
    pub fn boundary_layer(&self) -> f64 {
        match self {
            Controller::Smc1 { delta, .. } => *delta,
            Controller::PidSmcProposed { reaching, .. } => reaching.delta,
            Controller::PidSmcEq { .. } => DEFAULT_DELTA,
            _ => 0.0,
        }
    }

    /// Switching gain, for comparison with a disturbance bound.
    pub fn switching_gain(&self) -> Option<f64> {
        match self {
            Controller::Smc1 { k_sc, .. }
            | Controller::PidSmcEq { k_sc, .. }
            | Controller::PidSmcProposed {
                reaching: ReachingParams { k_sc, .. },
                ..
            } => Some(*k_sc),
            _ => None,
        }
    }

    pub fn param(&self, p: TunableParam) -> Result<f64> {
        let mut copy = self.clone();
        Ok(*copy.param_mut(p)?)
    }

    pub fn with_param(&self, p: TunableParam, value: f64) -> Result<Controller> {
        let mut copy = self.clone();
        *copy.param_mut(p)? = value;
        Ok(copy)
    }

    fn param_mut(&mut self, p: TunableParam) -> Result<&mut f64> {
        use TunableParam as T;
        let kind = self.name();
        let slot = match (self, p) {
            (
                Controller::Pid { gains, .. }
                | Controller::PidSmcEq { gains, .. }
                | Controller::PidSmcProposed { gains, .. },
                T::Kp | T::Ki | T::Kd,
            ) => match p {
                T::Kp => Some(&mut gains.kp),
                T::Ki => Some(&mut gains.ki),
                _ => Some(&mut gains.kd),
            },
            (Controller::PidSmcEq { k, .. }, T::K) => Some(k),
            (Controller::PidSmcEq { k_sc, .. }, T::KSc) => Some(k_sc),
            (Controller::PidSmcProposed { reaching, .. }, T::K) => Some(&mut reaching.k),
            (Controller::PidSmcProposed { reaching, .. }, T::KSc) => Some(&mut reaching.k_sc),
            (Controller::PidSmcProposed { reaching, .. }, T::Alpha) => Some(&mut reaching.alpha),
            (Controller::PidSmcProposed { reaching, .. }, T::Delta) => Some(&mut reaching.delta),
            (Controller::Smc1 { lambda, .. }, T::Lambda) => Some(lambda),
            (Controller::Smc1 { k_sc, .. }, T::KSc) => Some(k_sc),
            (Controller::Smc1 { delta, .. }, T::Delta) => Some(delta),
            _ => None,
        };
        slot.ok_or_else(|| Error::Config(format!("{kind} has no tunable parameter '{}'", p.name())))
    }
}

fn needs_kd(order: usize, gains: &SurfaceGains) -> Result<()> {
    if order == 2 && gains.kd <= 0.0 {
        Err(Error::InvalidParameter(
            "a PID surface on a second-order plant needs kd > 0".into(),
        ))
    } else {
        Ok(())
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn controller_blocks_parse() {
        let c: Controller = toml::from_str(
            r#"
            kind = "pid_smc_proposed"
            kp = 105
            ki = 4
            kd = 0.8
            k = 35
            k_sc = 1.5
            "#,
        )
        .unwrap();
        assert_eq!(c, Controller::proposed(105.0, 4.0, 0.8, 35.0, 1.5));

        let c: Controller = toml::from_str(
            r#"
            kind = "smc1"
            k_sc = 15
            switching = "sign"
            "#,
        )
        .unwrap();
        assert_eq!(
            c,
            Controller::Smc1 {
                lambda: 5.0,
                k_sc: 15.0,
                delta: 0.05,
                switching: SwitchingFn::Sign
            }
        );
    }

    #[test]
    fn unknown_controller_is_rejected() {
        let r: std::result::Result<Controller, _> = toml::from_str("kind = \"fuzzy\"\nkp = 1");
        assert!(r.is_err());
    }

    #[test]
    fn derivative_gain_rejected_on_first_order_plant() {
        let c = Controller::proposed(105.0, 4.2, 0.8, 35.0, 1.5);
        assert!(matches!(c.validate(1), Err(Error::Config(_))));
        assert!(c.validate(2).is_ok());
        let pi = Controller::proposed(105.0, 4.2, 0.0, 35.0, 1.5);
        assert!(pi.validate(1).is_ok());
        assert!(pi.validate(2).is_err());
    }

    #[test]
    fn param_access() {
        let c = Controller::proposed(105.0, 4.0, 0.8, 35.0, 1.5);
        let c2 = c.with_param(TunableParam::K, 50.0).unwrap();
        assert_eq!(c2.param(TunableParam::K).unwrap(), 50.0);
        assert_eq!(c2.param(TunableParam::Kp).unwrap(), 105.0);
        assert!(c.with_param(TunableParam::Lambda, 1.0).is_err());
        let pid = Controller::Pid {
            gains: SurfaceGains::new(1.0, 1.0, 1.0),
            direction: Direction::Auto,
        };
        assert!(pid.param(TunableParam::Alpha).is_err());
    }

    #[test]
    fn eq_controller_follows_constant_exponential_law() {
        let c = Controller::PidSmcEq {
            gains: SurfaceGains::new(105.0, 4.0, 0.8),
            k: 35.0,
            k_sc: 1.5,
        };
        let frame = ErrorFrame {
            e: 0.03,
            edot: -0.2,
            eint: 0.01,
            ref_rate: 0.0,
            ref_accel: 0.0,
        };
        let (f, g) = (-12.0, -2.1);
        let out = c.control(2, f, g, &frame).unwrap();
        let dynamics = SurfaceDynamics::new(&SurfaceGains::new(105.0, 4.0, 0.8), &frame, f, g, 2);
        let target = crate::smc::reaching_rate(&c.reaching().unwrap(), out.s);
        assert!((dynamics.rate(out.u) - target).abs() <= 1e-10 * target.abs().max(1.0));
    }
}
