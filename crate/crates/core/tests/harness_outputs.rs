use std::collections::BTreeMap;
use std::fs;
use std::path::Path;
use std::process::Command;

use pidsmc::harness::{load_experiment, run_experiment, run_tuning, Overrides};
use pidsmc::{Trajectory, VERSION};

fn read_dir(dir: &Path) -> BTreeMap<String, Vec<u8>> {
    let mut files = BTreeMap::new();
    for entry in walk(dir) {
        let rel = entry.strip_prefix(dir).unwrap().to_string_lossy().into_owned();
        files.insert(rel, fs::read(&entry).unwrap());
    }
    files
}

fn walk(dir: &Path) -> Vec<std::path::PathBuf> {
    let mut out = Vec::new();
    for entry in fs::read_dir(dir).unwrap() {
        let path = entry.unwrap().path();
        if path.is_dir() {
            out.extend(walk(&path));
        } else {
            out.push(path);
        }
    }
    out
}

#[test]
fn experiment_outputs_are_reproducible_and_replayable() {
    let tmp = tempfile::tempdir().unwrap();
    let exp = load_experiment("preset:controller_comparison").unwrap();
    let a = tmp.path().join("a");
    let b = tmp.path().join("b");
    run_experiment(&exp).unwrap().write(&a).unwrap();
    run_experiment(&exp).unwrap().write(&b).unwrap();
    let first = read_dir(&a);
    assert_eq!(first, read_dir(&b));
    assert_eq!(first.len(), 3 * 2 + 2);

    // the persisted resolved config reproduces every file
    let replay = load_experiment(a.join("experiment.toml").to_str().unwrap()).unwrap();
    assert_eq!(replay, exp);
    let c = tmp.path().join("c");
    run_experiment(&replay).unwrap().write(&c).unwrap();
    assert_eq!(first, read_dir(&c));
}

#[test]
fn every_output_embeds_provenance() {
    let tmp = tempfile::tempdir().unwrap();
    let exp = load_experiment("preset:controller_comparison").unwrap();
    run_experiment(&exp).unwrap().write(tmp.path()).unwrap();
    for (name, bytes) in read_dir(tmp.path()) {
        let text = String::from_utf8(bytes).unwrap();
        if name.ends_with(".json") {
            let v: serde_json::Value = serde_json::from_str(&text).unwrap();
            assert_eq!(v["toolkit_version"], VERSION);
            assert_eq!(v["seed"], exp.seed);
            assert!(v["config"].as_str().unwrap().contains("[scenario.plant]"));
        } else {
            assert!(text.starts_with(&format!("# pidsmc {VERSION}\n# seed = {}\n", exp.seed)), "{name}");
            if name.ends_with(".csv") {
                assert!(text.contains("#   kind = \"pid_smc_proposed\""), "{name}");
            }
        }
    }
}

#[test]
fn comparison_rows_follow_the_listing() {
    let tmp = tempfile::tempdir().unwrap();
    let mut exp = load_experiment("preset:controller_comparison").unwrap();
    exp.controllers.reverse();
    run_experiment(&exp).unwrap().write(tmp.path()).unwrap();
    let text = fs::read_to_string(tmp.path().join("comparison.csv")).unwrap();
    let labels: Vec<&str> = text
        .lines()
        .filter(|l| !l.starts_with('#'))
        .skip(1)
        .map(|l| l.split(',').next().unwrap())
        .collect();
    assert_eq!(labels, ["pid_smc_proposed", "pid_smc_eq", "smc1"]);
}

#[test]
fn trajectory_files_read_back() {
    let tmp = tempfile::tempdir().unwrap();
    let exp = load_experiment("preset:vdp_tracking").unwrap();
    let report = run_experiment(&exp).unwrap();
    report.write(tmp.path()).unwrap();
    let text = fs::read_to_string(tmp.path().join("pid_smc_proposed.csv")).unwrap();
    let back = Trajectory::read_csv(text.as_bytes()).unwrap();
    assert_eq!(&back, report.run("pid_smc_proposed").unwrap().trajectory.as_ref().unwrap());
}

#[test]
fn van_der_pol_tuning_beats_unit_gains() {
    let mut exp = load_experiment("preset:tune_van_der_pol").unwrap();
    Overrides {
        horizon: Some(10.0),
        ..Default::default()
    }
    .apply_to_experiment(&mut exp);
    let t = exp.tune.as_mut().unwrap();
    t.kmax = 30;
    let outcome = run_tuning(&exp).unwrap();
    let before = outcome.before.rows()[0].ise.unwrap();
    let after = outcome.after.rows()[0].ise.unwrap();
    assert!(after < before, "tuned ISE {after} vs unit gains {before}");
    assert_eq!(outcome.result.best_fitness, after);

    let tmp = tempfile::tempdir().unwrap();
    outcome.write(tmp.path()).unwrap();
    let trace = fs::read_to_string(tmp.path().join("trace.csv")).unwrap();
    let rows: Vec<&str> = trace.lines().filter(|l| !l.starts_with('#')).collect();
    assert_eq!(rows[0], "iter,best_fitness,mean_fitness");
    assert_eq!(rows.len(), 1 + 31);
    assert!(tmp.path().join("tuned.toml").exists());
    assert!(tmp.path().join("before/comparison.csv").exists());
    assert!(tmp.path().join("after/comparison.csv").exists());
    let tuned = load_experiment(tmp.path().join("tuned.toml").to_str().unwrap()).unwrap();
    assert_eq!(tuned.controllers[0].controller, outcome.tuned_controller);
}

fn cli(args: &[&str], cwd: &Path) -> std::process::Output {
    Command::new(env!("CARGO_BIN_EXE_pidsmc"))
        .args(args)
        .current_dir(cwd)
        .output()
        .unwrap()
}

#[test]
fn cli_verbs_and_errors() {
    let tmp = tempfile::tempdir().unwrap();
    let dir = tmp.path();

    let out = cli(&["simulate", "preset:pendulum", "--horizon", "1", "--dt", "0.005", "--out", "sim"], dir);
    assert!(out.status.success(), "{}", String::from_utf8_lossy(&out.stderr));
    let traj_text = fs::read_to_string(dir.join("sim/pendulum.csv")).unwrap();
    let traj = Trajectory::read_csv(traj_text.as_bytes()).unwrap();
    assert_eq!(traj.len(), 201);

    let out = cli(&["plotdata", "sim/pendulum.csv", "--channels", "t,e", "--out", "te.csv"], dir);
    assert!(out.status.success());
    let te = fs::read_to_string(dir.join("te.csv")).unwrap();
    let rows: Vec<&str> = te.lines().filter(|l| !l.starts_with('#')).collect();
    assert_eq!(rows[0], "t,e");
    assert_eq!(rows.len(), traj.len() + 1);

    let out = cli(&["plotdata", "sim/pendulum.csv", "--figures", "all", "--out", "figs"], dir);
    assert!(out.status.success());
    for f in ["output", "error", "control", "phase", "surface"] {
        assert!(dir.join(format!("figs/{f}.csv")).exists());
    }

    let out = cli(&["compare", "preset:controller_comparison", "--seed", "5", "--out", "cmp"], dir);
    assert!(out.status.success());
    let cmp = fs::read_to_string(dir.join("cmp/comparison.csv")).unwrap();
    assert!(cmp.contains("# seed = 5"));

    let out = cli(&["plotdata", "sim/pendulum.csv", "--channels", "t,nope"], dir);
    assert_eq!(out.status.code(), Some(2));
    let err: serde_json::Value = serde_json::from_slice(&out.stderr).unwrap();
    assert_eq!(err["error"], "config");

    let out = cli(&["plotdata", "sim/pendulum.csv"], dir);
    assert!(!out.status.success());

    fs::write(dir.join("bad.toml"), "name = \"x\"\nscenario = \"preset:pendulum\"\n[[controllers]]\nlabel = \"a\"\nkind = \"fuzzy\"\n").unwrap();
    let out = cli(&["compare", "bad.toml"], dir);
    assert_eq!(out.status.code(), Some(2));
    assert!(!dir.join("out").exists());

    let out = cli(&["simulate", "preset:pendulum", "--dt=-1"], dir);
    assert!(!out.status.success());
    let err: serde_json::Value = serde_json::from_slice(&out.stderr).unwrap();
    assert_eq!(err["error"], "invalid_parameter");
}

#[test]
fn cli_reports_singularity_as_json() {
    let tmp = tempfile::tempdir().unwrap();
    let text = pidsmc::harness::presets::get("pendulum")
        .unwrap()
        .replace("initial_state = [0.5235987755982988, 0.0]", "initial_state = [1.5707963267948966, 0.0]");
    fs::write(tmp.path().join("flat.toml"), text).unwrap();
    let out = cli(&["simulate", "flat.toml"], tmp.path());
    assert_eq!(out.status.code(), Some(1));
    let err: serde_json::Value = serde_json::from_slice(&out.stderr).unwrap();
    assert_eq!(err["error"], "control_singularity");
    assert_eq!(err["time"], 0.0);
}
