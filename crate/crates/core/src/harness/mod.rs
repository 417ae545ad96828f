//! Scenario and experiment files, controller comparisons, tuning runs and the
//! files they produce.

mod config;
mod experiment;
mod output;
mod plot;
pub mod presets;
mod tuning;

pub use config::{
    load_experiment, load_scenario, parse_experiment, parse_scenario, ControllerEntry, Experiment,
    Overrides, TuneBounds, TuneSpec, PRESET_PREFIX,
};
pub use experiment::{run_experiment, ExperimentReport, RunOutcome};
pub use output::{
    report_json, write_comparison, write_report, write_trace, write_trajectory, Provenance,
};
pub use plot::{emit_plot_data, select_channels, write_channels, Figure};
pub use tuning::{run_tuning, TuningOutcome};
