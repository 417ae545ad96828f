use serde::{Deserialize, Serialize};

/// Desired output trajectory with analytic first and second derivatives.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
#[serde(tag = "kind", rename_all = "snake_case")]
pub enum Reference {
    Constant {
        value: f64,
    },
    /// `offset + amplitude · sin(angular_freq · t)`.
    Sine {
        amplitude: f64,
        angular_freq: f64,
        #[serde(default)]
        offset: f64,
    },
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct ReferenceSample {
    pub value: f64,
    pub rate: f64,
    pub accel: f64,
}

impl Reference {
    pub fn sample(&self, t: f64) -> ReferenceSample {
        match *self {
            Reference::Constant { value } => ReferenceSample {
                value,
                rate: 0.0,
                accel: 0.0,
            },
            Reference::Sine {
                amplitude,
                angular_freq: w,
                offset,
            } => {
                let (sin, cos) = (w * t).sin_cos();
                ReferenceSample {
                    value: offset + amplitude * sin,
                    rate: amplitude * w * cos,
                    accel: -amplitude * w * w * sin,
                }
            }
        }
    }
}

impl Default for Reference {
    fn default() -> Self {
        Reference::Constant { value: 0.0 }
    }
}
