//! Control laws on the PID sliding surface.
//!
//! All sliding-mode laws are derived from the same surface dynamics. For a plant
//! `y⁽ⁿ⁾ = f + g u + d` and error `e = r − y`,
//!
//! ```text
//! n = 2:  ṡ = K_i e + K_p ė + K_d (r̈ − f − g u − d)
//! n = 1:  ṡ = K_i e + K_p (ṙ − f − g u − d)        (K_d = 0)
//! ```
//!
//! which is affine in `u`: `ṡ = drift + input_gain · u` when `d = 0`. Every law
//! solves that relation for the `u` that produces its target `ṡ`, so the leading
//! sign of the closed form follows from the algebra rather than being chosen.

use super::reaching::{reaching_rate, ReachingParams};
use super::surface::{surface, ErrorFrame, SurfaceGains};
use super::switching::{sign_fn, SwitchingFn};
use crate::error::{Error, Result};

/// Input gains with smaller magnitude abort the run instead of saturating.
pub const SINGULARITY_FLOOR: f64 = 1e-9;

/// Nominal `ṡ = drift + input_gain · u`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct SurfaceDynamics {
    pub drift: f64,
    pub input_gain: f64,
}

impl SurfaceDynamics {
    pub fn new(gains: &SurfaceGains, frame: &ErrorFrame, f: f64, g: f64, order: usize) -> Self {
        if order == 1 {
            SurfaceDynamics {
                drift: gains.ki * frame.e + gains.kp * (frame.ref_rate - f),
                input_gain: -gains.kp * g,
            }
        } else {
            SurfaceDynamics {
                drift: gains.ki * frame.e
                    + gains.kp * frame.edot
                    + gains.kd * (frame.ref_accel - f),
                input_gain: -gains.kd * g,
            }
        }
    }

    pub fn rate(&self, u: f64) -> f64 {
        self.drift + self.input_gain * u
    }

    /// The input that makes `ṡ` equal `target`.
    pub fn solve(&self, target: f64) -> Result<f64> {
        check_gain(self.input_gain)?;
        Ok((target - self.drift) / self.input_gain)
    }
}

fn check_gain(gain: f64) -> Result<()> {
    if gain.abs() < SINGULARITY_FLOOR || !gain.is_finite() {
        Err(Error::ControlSingularity { gain, time: None })
    } else {
        Ok(())
    }
}

/// Input that holds `ṡ = 0` on a second-order plant:
/// `u_eq = (K_i e + K_p ė + K_d (r̈ − f)) / (K_d g)`.
pub fn equivalent_control(gains: &SurfaceGains, frame: &ErrorFrame, f: f64, g: f64) -> Result<f64> {
    SurfaceDynamics::new(gains, frame, f, g, 2).solve(0.0)
}

/// Input that makes the surface follow `reaching` exactly on a plant of the given order.
pub fn reaching_law_control(
    gains: &SurfaceGains,
    reaching: &ReachingParams,
    frame: &ErrorFrame,
    f: f64,
    g: f64,
    order: usize,
) -> Result<f64> {
    let s = surface(gains, frame);
    SurfaceDynamics::new(gains, frame, f, g, order).solve(reaching_rate(reaching, s))
}

/// PID-surface law with the power-rate exponential reaching term, second-order plant:
///
/// ```text
/// u = (K_i e + K_p ė + K_d (r̈ − f) + k s + k_sc |s|^α sat(s)) / (K_d g)
/// ```
pub fn proposed_control(
    gains: &SurfaceGains,
    reaching: &ReachingParams,
    frame: &ErrorFrame,
    f: f64,
    g: f64,
) -> Result<f64> {
    reaching_law_control(gains, reaching, frame, f, g, 2)
}

/// First-order counterpart on the PI surface `s = K_p e + K_i ∫e`:
///
/// ```text
/// u = (K_i e + K_p (ṙ − f) + k s + k_sc |s|^α sat(s)) / (K_p g)
/// ```
pub fn proposed_control_pi(
    gains: &SurfaceGains,
    reaching: &ReachingParams,
    frame: &ErrorFrame,
    f: f64,
    g: f64,
) -> Result<f64> {
    reaching_law_control(gains, reaching, frame, f, g, 1)
}

/// Classical first-order sliding mode on `s = ė + λe` (or `s = e` for order 1),
/// driving `ṡ = −k_sc ψ(s)` with ψ the chosen switching function.
pub fn classical_smc(
    lambda: f64,
    k_sc: f64,
    switching: SwitchingFn,
    delta: f64,
    frame: &ErrorFrame,
    f: f64,
    g: f64,
    order: usize,
) -> Result<f64> {
    check_gain(g)?;
    if order == 1 {
        let s = frame.e;
        Ok((frame.ref_rate - f + k_sc * switching.eval(s, delta)) / g)
    } else {
        let s = frame.edot + lambda * frame.e;
        Ok((frame.ref_accel - f + lambda * frame.edot + k_sc * switching.eval(s, delta)) / g)
    }
}

/// `u = (r̈ − f + λ ė + k_sc sat(s, Δ)) / g` with `s = ė + λ e`.
pub fn first_order_smc_control(
    lambda: f64,
    k_sc: f64,
    frame: &ErrorFrame,
    f: f64,
    g: f64,
    delta: f64,
) -> Result<f64> {
    classical_smc(lambda, k_sc, SwitchingFn::Sat, delta, frame, f, g, 2)
}

/// Parallel PID on the tracking error.
pub fn pid_control(gains: &SurfaceGains, frame: &ErrorFrame) -> f64 {
    gains.kp * frame.e + gains.ki * frame.eint + gains.kd * frame.edot
}

/// Constant-gain switching term `u_sw = −(k_sc / g_in) sign(s)`. With `g_in` the
/// input gain of `ṡ`, it contributes `−k_sc sign(s)` to the surface velocity.
pub fn switching_control(k_sc: f64, g_in: f64, s: f64) -> Result<f64> {
    check_gain(g_in)?;
    Ok(-(k_sc / g_in) * sign_fn(s))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::smc::reaching::ReachingParams;
    use approx::assert_relative_eq;

    fn nominal_gains() -> SurfaceGains {
        SurfaceGains::new(105.0, 4.0, 0.8)
    }

    #[test]
    fn equivalent_control_at_rest() {
        let u = equivalent_control(&nominal_gains(), &ErrorFrame::default(), 0.0, 2.0).unwrap();
        assert_eq!(u, 0.0);
    }

    #[test]
    fn equivalent_control_substitution() {
        let frame = ErrorFrame::new(0.1, 0.0, 0.0);
        let u = equivalent_control(&nominal_gains(), &frame, -19.6, 2.0).unwrap();
        assert_relative_eq!(u, 10.05, epsilon = 1e-12);
        let dynamics = SurfaceDynamics::new(&nominal_gains(), &frame, -19.6, 2.0, 2);
        assert!(dynamics.rate(u).abs() < 1e-12);
    }

    #[test]
    fn equivalent_control_singular_when_input_gain_vanishes() {
        let err = equivalent_control(&nominal_gains(), &ErrorFrame::default(), -19.6, 0.0)
            .unwrap_err();
        assert!(matches!(err, Error::ControlSingularity { .. }));
        let no_kd = SurfaceGains::new(105.0, 4.2, 0.0);
        assert!(equivalent_control(&no_kd, &ErrorFrame::default(), 0.0, 1.0).is_err());
    }

    #[test]
    fn proposed_control_on_manifold_at_rest() {
        let r = ReachingParams::proposed(35.0, 1.5, 0.5, 0.05);
        let u = proposed_control(&nominal_gains(), &r, &ErrorFrame::default(), 0.0, 2.0).unwrap();
        assert_eq!(u, 0.0);
    }

    #[test]
    fn proposed_control_pi_closed_form() {
        let gains = SurfaceGains::new(105.0, 4.2, 0.0);
        let r = ReachingParams::proposed(35.0, 1.5, 0.5, 0.05);
        let frame = ErrorFrame {
            e: 2.0,
            edot: 0.0,
            eint: 0.3,
            ref_rate: 0.01,
            ref_accel: 0.0,
        };
        let (f, g) = (-1.1, 1.0 / 314.0);
        let s: f64 = 105.0 * 2.0 + 4.2 * 0.3;
        let expected = (4.2 * 2.0 + 105.0 * (0.01 - f) + 35.0 * s + 1.5 * s.sqrt()) / (105.0 * g);
        let u = proposed_control_pi(&gains, &r, &frame, f, g).unwrap();
        assert_relative_eq!(u, expected, max_relative = 1e-13);
    }

    #[test]
    fn classical_smc_examples() {
        let frame = ErrorFrame::default();
        assert_eq!(first_order_smc_control(5.0, 1.5, &frame, 0.0, 2.0, 0.05).unwrap(), 0.0);
        // s = ė + λe = 1.0 outside the layer, so the switching term is saturated
        let frame = ErrorFrame::new(0.2, 0.0, 0.0);
        let u = first_order_smc_control(5.0, 1.5, &frame, 0.0, 2.0, 0.05).unwrap();
        assert_relative_eq!(u, 1.5 / 2.0);
    }

    #[test]
    fn pid_examples() {
        assert_eq!(pid_control(&SurfaceGains::new(2.0, 3.0, 1.0), &ErrorFrame::default()), 0.0);
        let u = pid_control(&SurfaceGains::new(2.0, 3.0, 1.0), &ErrorFrame::new(1.0, 0.5, 0.2));
        assert_relative_eq!(u, 3.1, epsilon = 1e-15);
    }

    #[test]
    fn switching_examples() {
        assert_eq!(switching_control(1.5, 2.0, 0.0).unwrap(), 0.0);
        assert_eq!(switching_control(1.5, 2.0, 0.3).unwrap(), -0.75);
        assert_eq!(switching_control(1.5, -0.5, 0.3).unwrap(), 3.0);
        assert!(switching_control(1.5, 0.0, 0.3).is_err());
    }
}
