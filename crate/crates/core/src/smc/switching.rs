use serde::{Deserialize, Serialize};

/// Three-valued signum: 0 exactly on the manifold.
pub fn sign_fn(s: f64) -> f64 {
    if s > 0.0 {
        1.0
    } else if s < 0.0 {
        -1.0
    } else {
        0.0
    }
}

/// Boundary-layer saturation of half-width `delta`.
pub fn sat_fn(s: f64, delta: f64) -> f64 {
    if s > delta {
        1.0
    } else if s < -delta {
        -1.0
    } else {
        s / delta
    }
}

/// Which discontinuity a switching term uses.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize, Default)]
#[serde(rename_all = "snake_case")]
pub enum SwitchingFn {
    #[default]
    Sat,
    Sign,
}

impl SwitchingFn {
    pub fn eval(self, s: f64, delta: f64) -> f64 {
        match self {
            SwitchingFn::Sat => sat_fn(s, delta),
            SwitchingFn::Sign => sign_fn(s),
        }
    }
}
