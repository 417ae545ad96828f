use thiserror::Error;

use crate::mpso::TraceRow;

pub type Result<T> = std::result::Result<T, Error>;

#[derive(Debug, Error)]
pub enum Error {
    /// Plant parameters make the model ill-posed (e.g. a vanishing inertia denominator).
    #[error("degenerate plant parameters: {0}")]
    DegenerateParameters(String),

    #[error("invalid parameter: {0}")]
    InvalidParameter(String),

    /// The control law divides by an input gain that is numerically zero.
    #[error("control singularity: |input gain| = {gain:e} below floor{}", fmt_time(.time))]
    ControlSingularity { gain: f64, time: Option<f64> },

    #[error("simulation diverged at t = {time}")]
    SimulationDiverged { time: f64 },

    #[error("configuration error: {0}")]
    Config(String),

    #[error("tuning failed: every particle diverged over {} iterations", .trace.len())]
    TuningFailed { trace: Vec<TraceRow> },

    #[error(transparent)]
    Io(#[from] std::io::Error),

    #[error(transparent)]
    TomlParse(#[from] toml::de::Error),

    #[error(transparent)]
    TomlWrite(#[from] toml::ser::Error),

    #[error(transparent)]
    Json(#[from] serde_json::Error),

    #[error(transparent)]
    Csv(#[from] csv::Error),
}

fn fmt_time(time: &Option<f64>) -> String {
    match time {
        Some(t) => format!(" at t = {t}"),
        None => String::new(),
    }
}

impl Error {
    /// Short machine-readable category, used for the CLI's JSON error output.
    pub fn kind(&self) -> &'static str {
        match self {
            Error::DegenerateParameters(_) => "degenerate_parameters",
            Error::InvalidParameter(_) => "invalid_parameter",
            Error::ControlSingularity { .. } => "control_singularity",
            Error::SimulationDiverged { .. } => "simulation_diverged",
            Error::Config(_) | Error::TomlParse(_) | Error::TomlWrite(_) => "config",
            Error::TuningFailed { .. } => "tuning_failed",
            Error::Io(_) | Error::Csv(_) | Error::Json(_) => "io",
        }
    }

    pub(crate) fn at_time(self, t: f64) -> Self {
        match self {
            Error::ControlSingularity { gain, time: None } => {
                Error::ControlSingularity { gain, time: Some(t) }
            }
            other => other,
        }
    }

    /// True for failures that happen during a rollout rather than before it.
    pub fn is_divergence(&self) -> bool {
        matches!(
            self,
            Error::SimulationDiverged { .. } | Error::ControlSingularity { .. }
        )
    }
}
