use std::path::{Path, PathBuf};

use rayon::prelude::*;

use super::config::Experiment;
use super::output::{self, Provenance};
use crate::dynamics::Trajectory;
use crate::error::Result;
use crate::metrics::MetricReport;

/// Result of simulating one controller of an experiment.
#[derive(Debug, Clone)]
pub struct RunOutcome {
    pub label: String,
    pub report: MetricReport,
    /// `None` when the run diverged.
    pub trajectory: Option<Trajectory>,
    /// Failure message for a diverged run.
    pub failure: Option<String>,
}

#[derive(Debug, Clone)]
pub struct ExperimentReport {
    pub name: String,
    pub provenance: Provenance,
    /// One entry per controller, in the order they are listed.
    pub runs: Vec<RunOutcome>,
}

impl ExperimentReport {
    pub fn rows(&self) -> Vec<MetricReport> {
        self.runs.iter().map(|r| r.report.clone()).collect()
    }

    pub fn run(&self, label: &str) -> Option<&RunOutcome> {
        self.runs.iter().find(|r| r.label == label)
    }

    /// Writes `<label>.csv` and `<label>.json` per controller, `comparison.csv` and the
    /// resolved `experiment.toml`. Returns the paths written.
    pub fn write(&self, dir: &Path) -> Result<Vec<PathBuf>> {
        let mut written = Vec::new();
        for run in &self.runs {
            if let Some(traj) = &run.trajectory {
                let path = dir.join(format!("{}.csv", run.label));
                output::write_trajectory(&path, traj, &self.provenance)?;
                written.push(path);
            }
            let path = dir.join(format!("{}.json", run.label));
            output::write_report(&path, &run.report, &self.provenance)?;
            written.push(path);
        }
        let path = dir.join("comparison.csv");
        let rows = self.rows();
        output::write_with(&path, |out| output::write_comparison(out, &rows, &self.provenance))?;
        written.push(path);
        let path = dir.join("experiment.toml");
        output::write_text(&path, &self.provenance.config, &self.provenance)?;
        written.push(path);
        Ok(written)
    }
}

fn run_one(exp: &Experiment, index: usize) -> RunOutcome {
    let label = exp.controllers[index].label.clone();
    let scenario = exp.scenario_for(index);
    match scenario.simulate() {
        Ok(traj) => {
            let layer = scenario.controller.boundary_layer();
            RunOutcome {
                report: MetricReport::from_trajectory(&label, &traj, layer),
                label,
                trajectory: Some(traj),
                failure: None,
            }
        }
        Err(err) => {
            log::warn!("{label}: {err}");
            RunOutcome {
                report: MetricReport::diverged(&label),
                label,
                trajectory: None,
                failure: Some(err.to_string()),
            }
        }
    }
}

/// Simulates every controller on the same scenario. Configuration problems are
/// reported before anything runs; a controller that fails mid-run is recorded as
/// diverged and the others still complete.
pub fn run_experiment(exp: &Experiment) -> Result<ExperimentReport> {
    exp.validate()?;
    let provenance = Provenance {
        seed: exp.seed,
        config: exp.to_toml()?,
    };
    let runs = (0..exp.controllers.len())
        .into_par_iter()
        .map(|i| run_one(exp, i))
        .collect();
    Ok(ExperimentReport {
        name: exp.name.clone(),
        provenance,
        runs,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::harness::config::load_experiment;

    #[test]
    fn rows_follow_listing_order() {
        let exp = load_experiment("preset:controller_comparison").unwrap();
        let report = run_experiment(&exp).unwrap();
        let labels: Vec<_> = report.runs.iter().map(|r| r.label.as_str()).collect();
        assert_eq!(labels, ["smc1", "pid_smc_eq", "pid_smc_proposed"]);
        assert!(report.runs.iter().all(|r| !r.report.diverged));
    }

    #[test]
    fn undisturbed_upright_start_is_already_settled() {
        let mut exp = load_experiment("preset:controller_comparison").unwrap();
        exp.scenario.initial_state = vec![0.0, 0.0];
        exp.scenario.disturbance = Default::default();
        let report = run_experiment(&exp).unwrap();
        for r in report.rows() {
            assert_eq!((r.rise_time, r.settling_time), (Some(0.0), Some(0.0)), "{}", r.controller);
        }
    }

    #[test]
    fn singular_run_is_reported_not_fatal() {
        let mut exp = load_experiment("preset:controller_comparison").unwrap();
        exp.scenario.initial_state = vec![std::f64::consts::FRAC_PI_2, 0.0];
        let report = run_experiment(&exp).unwrap();
        assert!(report.runs.iter().all(|r| r.report.diverged && r.failure.is_some()));
    }
}
