use std::path::{Path, PathBuf};

use serde::{Deserialize, Serialize};

use super::presets;
use crate::dynamics::Scenario;
use crate::error::{Error, Result};
use crate::mpso::{SwarmConfig, Variant};
use crate::smc::{Controller, TunableParam};

/// Prefix that selects a bundled preset instead of a file, e.g. `preset:pendulum`.
pub const PRESET_PREFIX: &str = "preset:";

/// Command-line overrides applied after loading.
#[derive(Debug, Clone, Default, PartialEq)]
pub struct Overrides {
    pub seed: Option<u64>,
    pub out: Option<PathBuf>,
    pub dt: Option<f64>,
    pub horizon: Option<f64>,
}

impl Overrides {
    pub fn apply_to_scenario(&self, sc: &mut Scenario) {
        if let Some(seed) = self.seed {
            sc.seed = seed;
        }
        if let Some(dt) = self.dt {
            sc.dt = dt;
        }
        if let Some(h) = self.horizon {
            sc.horizon = h;
        }
    }

    pub fn apply_to_experiment(&self, exp: &mut Experiment) {
        if let Some(seed) = self.seed {
            exp.seed = seed;
            if let Some(t) = exp.tune.as_mut() {
                t.seed = Some(seed);
            }
        }
        if let Some(out) = &self.out {
            exp.out = Some(out.clone());
        }
        self.apply_to_scenario(&mut exp.scenario);
        exp.scenario.seed = exp.seed;
    }
}

/// A controller to compare, with the label used for its output files and table row.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct ControllerEntry {
    pub label: String,
    #[serde(flatten)]
    pub controller: Controller,
}

/// Search box for tuning: `"default"`, `"narrow"` (every parameter in `[−5, 5]`),
/// or explicit `[lo, hi]` pairs.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(untagged)]
pub enum TuneBounds {
    Named(String),
    Explicit(Vec<[f64; 2]>),
}

impl Default for TuneBounds {
    fn default() -> Self {
        TuneBounds::Named("default".into())
    }
}

impl TuneBounds {
    pub fn resolve(&self, params: &[TunableParam]) -> Result<Vec<(f64, f64)>> {
        match self {
            TuneBounds::Named(n) if n == "default" => {
                Ok(params.iter().map(|p| p.default_bounds()).collect())
            }
            TuneBounds::Named(n) if n == "narrow" => Ok(vec![(-5.0, 5.0); params.len()]),
            TuneBounds::Named(n) => Err(Error::Config(format!(
                "unknown bounds '{n}'; use \"default\", \"narrow\" or explicit pairs"
            ))),
            TuneBounds::Explicit(pairs) if pairs.len() == params.len() => {
                Ok(pairs.iter().map(|[lo, hi]| (*lo, *hi)).collect())
            }
            TuneBounds::Explicit(pairs) => Err(Error::Config(format!(
                "{} bounds for {} parameters",
                pairs.len(),
                params.len()
            ))),
        }
    }
}

fn default_particles() -> usize {
    50
}
fn default_subpopulations() -> usize {
    5
}
fn default_kmax() -> usize {
    90
}
fn yes() -> bool {
    true
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct TuneSpec {
    /// Label of the controller entry to tune; defaults to the first entry.
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub controller: Option<String>,
    pub params: Vec<TunableParam>,
    #[serde(default)]
    pub bounds: TuneBounds,
    #[serde(default = "default_particles")]
    pub n: usize,
    #[serde(default = "default_subpopulations")]
    pub subpopulations: usize,
    #[serde(default = "default_kmax")]
    pub kmax: usize,
    /// Swarm seed; defaults to the experiment seed.
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub seed: Option<u64>,
    #[serde(default)]
    pub variant: Variant,
    #[serde(default = "yes")]
    pub stochastic: bool,
}

impl TuneSpec {
    pub fn swarm_config(&self, experiment_seed: u64) -> Result<SwarmConfig> {
        if self.params.is_empty() {
            return Err(Error::Config("tune.params is empty".into()));
        }
        let cfg = SwarmConfig {
            particles: self.n,
            subpopulations: self.subpopulations,
            max_iter: self.kmax,
            bounds: self.bounds.resolve(&self.params)?,
            seed: self.seed.unwrap_or(experiment_seed),
            variant: self.variant,
            stochastic: self.stochastic,
        };
        cfg.validate().map_err(|e| Error::Config(e.to_string()))?;
        Ok(cfg)
    }
}

/// Scenario given inline or by path/preset name.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(untagged)]
enum ScenarioRef {
    Inline(Box<Scenario>),
    Path(String),
}

#[derive(Debug, Clone, Deserialize)]
#[serde(deny_unknown_fields)]
struct ExperimentFile {
    name: String,
    #[serde(default)]
    seed: u64,
    #[serde(default)]
    out: Option<PathBuf>,
    scenario: ScenarioRef,
    controllers: Vec<ControllerEntry>,
    #[serde(default)]
    tune: Option<TuneSpec>,
}

/// A fully resolved experiment: one scenario, the controllers to run on it, and an
/// optional tuning block.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct Experiment {
    pub name: String,
    pub seed: u64,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub out: Option<PathBuf>,
    pub scenario: Scenario,
    pub controllers: Vec<ControllerEntry>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub tune: Option<TuneSpec>,
}

impl Experiment {
    /// Checks every controller against the scenario without simulating anything.
    pub fn validate(&self) -> Result<()> {
        if self.controllers.is_empty() {
            return Err(Error::Config("experiment lists no controllers".into()));
        }
        let mut seen = std::collections::HashSet::new();
        for entry in &self.controllers {
            if entry.label.is_empty() || entry.label.contains(['/', '\\']) {
                return Err(Error::Config(format!("bad controller label '{}'", entry.label)));
            }
            if !seen.insert(entry.label.as_str()) {
                return Err(Error::Config(format!("duplicate controller label '{}'", entry.label)));
            }
            self.scenario
                .with_controller(entry.controller.clone())
                .validate()
                .map_err(|e| Error::Config(format!("controller '{}': {e}", entry.label)))?;
        }
        if let Some(t) = &self.tune {
            t.swarm_config(self.seed)?;
            self.tuned_entry()?;
        }
        Ok(())
    }

    /// Index of the controller entry the tuning block addresses.
    pub fn tuned_entry(&self) -> Result<usize> {
        let tune = self
            .tune
            .as_ref()
            .ok_or_else(|| Error::Config("experiment has no [tune] block".into()))?;
        match &tune.controller {
            None => Ok(0),
            Some(label) => self
                .controllers
                .iter()
                .position(|c| &c.label == label)
                .ok_or_else(|| Error::Config(format!("tune.controller '{label}' is not listed"))),
        }
    }

    pub fn scenario_for(&self, index: usize) -> Scenario {
        let mut sc = self.scenario.with_controller(self.controllers[index].controller.clone());
        sc.name = format!("{}/{}", self.name, self.controllers[index].label);
        sc
    }

    pub fn out_dir(&self) -> PathBuf {
        self.out.clone().unwrap_or_else(|| Path::new("out").join(&self.name))
    }

    pub fn to_toml(&self) -> Result<String> {
        Ok(toml::to_string(self)?)
    }
}

fn read_source(source: &str) -> Result<(String, Option<PathBuf>)> {
    if let Some(name) = source.strip_prefix(PRESET_PREFIX) {
        let text = presets::get(name)
            .ok_or_else(|| Error::Config(format!("no preset named '{name}'")))?;
        return Ok((text.to_string(), None));
    }
    let path = PathBuf::from(source);
    let text = std::fs::read_to_string(&path)
        .map_err(|e| Error::Config(format!("cannot read {}: {e}", path.display())))?;
    Ok((text, path.parent().map(Path::to_path_buf)))
}

pub fn parse_scenario(text: &str) -> Result<Scenario> {
    let sc: Scenario = toml::from_str(text)?;
    Ok(sc)
}

/// Loads a scenario from a TOML file or `preset:<name>`.
pub fn load_scenario(source: &str) -> Result<Scenario> {
    let (text, _) = read_source(source)?;
    parse_scenario(&text)
}

/// Parses an experiment; a scenario given by relative path is resolved against `base`.
pub fn parse_experiment(text: &str, base: Option<&Path>) -> Result<Experiment> {
    let file: ExperimentFile = toml::from_str(text)?;
    let mut scenario = match file.scenario {
        ScenarioRef::Inline(sc) => *sc,
        ScenarioRef::Path(p) if p.starts_with(PRESET_PREFIX) => load_scenario(&p)?,
        ScenarioRef::Path(p) => {
            let path = match base {
                Some(b) if Path::new(&p).is_relative() => b.join(&p),
                _ => PathBuf::from(&p),
            };
            load_scenario(&path.to_string_lossy())?
        }
    };
    scenario.seed = file.seed;
    Ok(Experiment {
        name: file.name,
        seed: file.seed,
        out: file.out,
        scenario,
        controllers: file.controllers,
        tune: file.tune,
    })
}

/// Loads an experiment from a TOML file or `preset:<name>`.
pub fn load_experiment(source: &str) -> Result<Experiment> {
    let (text, base) = read_source(source)?;
    parse_experiment(&text, base.as_deref())
}

#[cfg(test)]
mod tests {
    use super::*;

    const INLINE: &str = r#"
        name = "inline"
        seed = 3

        [scenario]
        horizon = 1.0
        dt = 0.01
        initial_state = [0.1, 0.0]
        plant = { kind = "pendulum", cart_mass = 1.0, bob_mass = 0.1, inertia = 0.006, length = 0.3, gravity = 9.8 }
        controller = { kind = "constant", u = 0.0 }

        [[controllers]]
        label = "pid"
        kind = "pid"
        kp = 10
        ki = 1
        kd = 1
    "#;

    #[test]
    fn inline_scenario_and_seed() {
        let exp = parse_experiment(INLINE, None).unwrap();
        assert_eq!(exp.scenario.seed, 3);
        assert_eq!(exp.controllers[0].label, "pid");
        exp.validate().unwrap();
        let back = exp.to_toml().unwrap();
        assert!(back.contains("label = \"pid\""));
    }

    #[test]
    fn unknown_controller_kind_is_a_parse_error() {
        let text = INLINE.replace("kind = \"pid\"", "kind = \"fuzzy\"");
        let err = parse_experiment(&text, None).unwrap_err();
        assert_eq!(err.kind(), "config");
    }

    #[test]
    fn presets_resolve() {
        for name in presets::SCENARIOS {
            load_scenario(&format!("preset:{name}")).unwrap().validate().unwrap();
        }
        for name in presets::EXPERIMENTS {
            load_experiment(&format!("preset:{name}")).unwrap().validate().unwrap();
        }
        assert!(load_scenario("preset:nope").is_err());
    }

    #[test]
    fn bounds_resolution() {
        let params = [TunableParam::Kp, TunableParam::Alpha];
        assert_eq!(
            TuneBounds::default().resolve(&params).unwrap(),
            vec![(0.0, 200.0), (0.0, 2.0)]
        );
        assert_eq!(
            TuneBounds::Named("narrow".into()).resolve(&params).unwrap(),
            vec![(-5.0, 5.0); 2]
        );
        assert!(TuneBounds::Explicit(vec![[0.0, 1.0]]).resolve(&params).is_err());
    }

    #[test]
    fn overrides_apply() {
        let mut exp = parse_experiment(INLINE, None).unwrap();
        Overrides {
            seed: Some(11),
            out: Some("x".into()),
            dt: Some(0.005),
            horizon: Some(2.0),
        }
        .apply_to_experiment(&mut exp);
        assert_eq!((exp.seed, exp.scenario.seed), (11, 11));
        assert_eq!((exp.scenario.dt, exp.scenario.horizon), (0.005, 2.0));
        assert_eq!(exp.out_dir(), PathBuf::from("x"));
    }
}
