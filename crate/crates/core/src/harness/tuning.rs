use std::path::{Path, PathBuf};

use super::config::Experiment;
use super::experiment::{run_experiment, ExperimentReport};
use super::output::{self, Provenance};
use crate::error::{Error, Result};
use crate::mpso::{apply_params, ise_objective, optimize, OptimizeResult};
use crate::smc::{Controller, TunableParam};

#[derive(Debug, Clone)]
pub struct TuningOutcome {
    pub params: Vec<TunableParam>,
    pub result: OptimizeResult,
    pub tuned_controller: Controller,
    /// The experiment with the tuned controller substituted in.
    pub tuned: Experiment,
    pub before: ExperimentReport,
    pub after: ExperimentReport,
}

impl TuningOutcome {
    pub fn best_params(&self) -> Vec<(TunableParam, f64)> {
        self.params
            .iter()
            .copied()
            .zip(self.result.best_position.iter().copied())
            .collect()
    }

    /// Writes `trace.csv`, `tuned.toml` and the before/after experiment outputs.
    pub fn write(&self, dir: &Path) -> Result<Vec<PathBuf>> {
        let prov = Provenance {
            seed: self.tuned.seed,
            config: self.tuned.to_toml()?,
        };
        let mut written = Vec::new();
        let path = dir.join("trace.csv");
        output::write_with(&path, |out| output::write_trace(out, &self.result.trace, &prov))?;
        written.push(path);
        let path = dir.join("tuned.toml");
        output::write_text(&path, &prov.config, &prov)?;
        written.push(path);
        written.extend(self.before.write(&dir.join("before"))?);
        written.extend(self.after.write(&dir.join("after"))?);
        Ok(written)
    }
}

/// Tunes the addressed controller by minimizing ISE over the scenario, then
/// reruns the experiment with the tuned gains.
pub fn run_tuning(exp: &Experiment) -> Result<TuningOutcome> {
    exp.validate()?;
    let tune = exp.tune.as_ref().expect("validated experiment has a tune block");
    let index = exp.tuned_entry()?;
    let swarm = tune.swarm_config(exp.seed)?;
    let template = exp.scenario_for(index);
    let params = tune.params.clone();

    let objective = |x: &[f64]| ise_objective(&template, &params, x);
    let result = optimize(&objective, &swarm)?;
    if !result.best_fitness.is_finite() {
        return Err(Error::TuningFailed {
            trace: result.trace,
        });
    }
    log::info!(
        "tuned {} to ISE {} after {} iterations",
        exp.controllers[index].label,
        result.best_fitness,
        swarm.max_iter
    );

    let tuned_controller = apply_params(&template, &params, &result.best_position)?.controller;
    let mut tuned = exp.clone();
    tuned.controllers[index].controller = tuned_controller.clone();

    let before = run_experiment(exp)?;
    let after = run_experiment(&tuned)?;
    Ok(TuningOutcome {
        params,
        result,
        tuned_controller,
        tuned,
        before,
        after,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::harness::config::{load_experiment, TuneBounds};

    fn small(name: &str) -> Experiment {
        let mut exp = load_experiment(name).unwrap();
        exp.scenario.horizon = 1.0;
        let t = exp.tune.as_mut().unwrap();
        t.n = 10;
        t.subpopulations = 2;
        t.kmax = 4;
        exp
    }

    #[test]
    fn pinned_box_returns_the_point() {
        let mut exp = small("preset:tune_pendulum");
        exp.tune.as_mut().unwrap().bounds = TuneBounds::Explicit(vec![
            [105.0, 105.0],
            [4.0, 4.0],
            [0.8, 0.8],
            [35.0, 35.0],
            [1.5, 1.5],
        ]);
        let out = run_tuning(&exp).unwrap();
        assert_eq!(out.result.best_position, vec![105.0, 4.0, 0.8, 35.0, 1.5]);
        let first = out.result.trace[0].best_fitness;
        assert!(out.result.trace.iter().all(|r| r.best_fitness == first));
        assert_eq!(out.tuned_controller, exp.controllers[0].controller);
    }

    #[test]
    fn all_diverged_swarm_fails_with_trace() {
        let mut exp = small("preset:tune_pendulum");
        // a negative proportional gain is rejected by validation for every particle
        exp.tune.as_mut().unwrap().params = vec![TunableParam::Kp];
        exp.tune.as_mut().unwrap().bounds = TuneBounds::Explicit(vec![[-10.0, -1.0]]);
        match run_tuning(&exp) {
            Err(Error::TuningFailed { trace }) => assert_eq!(trace.len(), 5),
            other => panic!("expected tuning failure, got {other:?}"),
        }
    }
}
