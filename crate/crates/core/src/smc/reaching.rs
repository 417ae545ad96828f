use serde::{Deserialize, Serialize};

use super::switching::{sat_fn, sign_fn};
use crate::error::{Error, Result};

pub const DEFAULT_ALPHA: f64 = 0.5;
pub const DEFAULT_DELTA: f64 = 0.05;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize, Default)]
#[serde(rename_all = "snake_case")]
pub enum ReachingLaw {
    /// `ṡ = −k s − k_sc |s|^α sat(s)`.
    #[default]
    Proposed,
    /// `ṡ = −k s − k_sc sign(s)`.
    ConstantExponential,
}

fn default_alpha() -> f64 {
    DEFAULT_ALPHA
}

fn default_delta() -> f64 {
    DEFAULT_DELTA
}

/// Reaching-law parameters. For the constant-plus-exponential law `k` and `k_sc`
/// play the roles of the proportional and constant rates; `alpha` is unused.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct ReachingParams {
    pub k: f64,
    pub k_sc: f64,
    #[serde(default = "default_alpha")]
    pub alpha: f64,
    /// Boundary-layer half-width.
    #[serde(default = "default_delta")]
    pub delta: f64,
    #[serde(default)]
    pub law: ReachingLaw,
}

impl ReachingParams {
    pub fn proposed(k: f64, k_sc: f64, alpha: f64, delta: f64) -> Self {
        Self {
            k,
            k_sc,
            alpha,
            delta,
            law: ReachingLaw::Proposed,
        }
    }

    pub fn constant_exponential(k: f64, k_sc: f64) -> Self {
        Self {
            k,
            k_sc,
            alpha: DEFAULT_ALPHA,
            delta: DEFAULT_DELTA,
            law: ReachingLaw::ConstantExponential,
        }
    }

    pub fn validate(&self) -> Result<()> {
        if self.k > 0.0
            && self.k_sc > 0.0
            && (0.0..=2.0).contains(&self.alpha)
            && self.delta > 0.0
            && self.k.is_finite()
            && self.k_sc.is_finite()
            && self.delta.is_finite()
        {
            Ok(())
        } else {
            Err(Error::InvalidParameter(format!(
                "reaching law needs k > 0, k_sc > 0, 0 <= alpha <= 2, delta > 0 (got {self:?})"
            )))
        }
    }

    /// Switching gain must dominate a known disturbance bound.
    pub fn check_disturbance_bound(&self, d_max: f64) -> Result<()> {
        if self.k_sc > d_max {
            Ok(())
        } else {
            Err(Error::InvalidParameter(format!(
                "switching gain k_sc = {} does not exceed the disturbance bound {d_max}",
                self.k_sc
            )))
        }
    }
}

/// Target surface velocity `ṡ` prescribed by the reaching law.
pub fn reaching_rate(params: &ReachingParams, s: f64) -> f64 {
    match params.law {
        ReachingLaw::Proposed => {
            -params.k * s - params.k_sc * s.abs().powf(params.alpha) * sat_fn(s, params.delta)
        }
        ReachingLaw::ConstantExponential => -params.k * s - params.k_sc * sign_fn(s),
    }
}
