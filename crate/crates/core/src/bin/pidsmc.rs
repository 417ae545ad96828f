use std::path::{Path, PathBuf};
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand};
use pidsmc::harness::{
    emit_plot_data, load_experiment, load_scenario, run_experiment, run_tuning, write_channels,
    write_report, write_trajectory, Figure, Overrides, Provenance,
};
use pidsmc::{Error, MetricReport, Result, Trajectory};

#[derive(Parser)]
#[command(name = "pidsmc", version, about = "PID-surface sliding mode control toolkit")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Args, Clone)]
struct Common {
    /// Seed recorded in outputs and used by the tuner.
    #[arg(long)]
    seed: Option<u64>,
    /// Output directory (or file for `plotdata --channels`).
    #[arg(long)]
    out: Option<PathBuf>,
    /// Integration step (s).
    #[arg(long)]
    dt: Option<f64>,
    /// Simulated horizon (s).
    #[arg(long)]
    horizon: Option<f64>,
}

impl Common {
    fn overrides(&self) -> Overrides {
        Overrides {
            seed: self.seed,
            out: self.out.clone(),
            dt: self.dt,
            horizon: self.horizon,
        }
    }
}

#[derive(Subcommand)]
enum Command {
    /// Run one scenario file (or `preset:<name>`).
    Simulate {
        scenario: String,
        #[command(flatten)]
        common: Common,
    },
    /// Run every controller of an experiment on its scenario.
    Compare {
        experiment: String,
        #[command(flatten)]
        common: Common,
    },
    /// Tune the experiment's controller, then compare before and after.
    Tune {
        experiment: String,
        #[command(flatten)]
        common: Common,
    },
    /// Extract channels or standard figures from a trajectory CSV.
    Plotdata {
        trajectory: PathBuf,
        /// Comma-separated channel names, e.g. `t,e`.
        #[arg(long, value_delimiter = ',')]
        channels: Vec<String>,
        /// Comma-separated figures (output, error, control, phase, surface) or `all`.
        #[arg(long, value_delimiter = ',')]
        figures: Vec<String>,
        #[arg(long)]
        out: Option<PathBuf>,
    },
}

fn simulate(source: &str, common: &Common) -> Result<()> {
    let mut sc = load_scenario(source)?;
    common.overrides().apply_to_scenario(&mut sc);
    let name = if sc.name.is_empty() { "scenario".to_string() } else { sc.name.clone() };
    let dir = common.out.clone().unwrap_or_else(|| Path::new("out").join(&name));
    let traj = sc.simulate()?;
    let prov = Provenance {
        seed: sc.seed,
        config: toml::to_string(&sc)?,
    };
    let report = MetricReport::from_trajectory(sc.controller.name(), &traj, sc.controller.boundary_layer());
    write_trajectory(&dir.join(format!("{name}.csv")), &traj, &prov)?;
    write_report(&dir.join(format!("{name}.json")), &report, &prov)?;
    println!("{}", serde_json::to_string(&report)?);
    Ok(())
}

fn compare(source: &str, common: &Common) -> Result<()> {
    let mut exp = load_experiment(source)?;
    common.overrides().apply_to_experiment(&mut exp);
    let report = run_experiment(&exp)?;
    let written = report.write(&exp.out_dir())?;
    for row in report.rows() {
        println!("{}", serde_json::to_string(&row)?);
    }
    log::info!("wrote {} files to {}", written.len(), exp.out_dir().display());
    Ok(())
}

fn tune(source: &str, common: &Common) -> Result<()> {
    let mut exp = load_experiment(source)?;
    common.overrides().apply_to_experiment(&mut exp);
    let outcome = run_tuning(&exp)?;
    outcome.write(&exp.out_dir())?;
    let best: serde_json::Map<String, serde_json::Value> = outcome
        .best_params()
        .into_iter()
        .map(|(p, v)| (p.name().to_string(), v.into()))
        .collect();
    println!(
        "{}",
        serde_json::json!({ "best_fitness": outcome.result.best_fitness, "params": best })
    );
    Ok(())
}

fn plotdata(path: &Path, channels: &[String], figures: &[String], out: Option<&Path>) -> Result<()> {
    let text = std::fs::read_to_string(path)?;
    let traj = Trajectory::read_csv(text.as_bytes())?;
    let mut header = vec![format!("source: {}", path.display())];
    header.extend(
        text.lines()
            .take_while(|l| l.starts_with('#'))
            .map(|l| l.trim_start_matches('#').trim_start().to_string()),
    );
    if !figures.is_empty() {
        let figs = if figures.iter().any(|f| f == "all") {
            Figure::ALL.to_vec()
        } else {
            figures.iter().map(|f| Figure::parse(f)).collect::<Result<_>>()?
        };
        let dir = out.unwrap_or(Path::new("plotdata"));
        for p in emit_plot_data(&traj, &figs, dir, &header)? {
            println!("{}", p.display());
        }
        return Ok(());
    }
    match out {
        Some(file) => {
            if let Some(dir) = file.parent().filter(|d| !d.as_os_str().is_empty()) {
                std::fs::create_dir_all(dir)?;
            }
            write_channels(&traj, channels, std::fs::File::create(file)?, &header)
        }
        None => write_channels(&traj, channels, std::io::stdout().lock(), &header),
    }
}

fn error_json(err: &Error) -> serde_json::Value {
    let mut v = serde_json::json!({ "error": err.kind(), "message": err.to_string() });
    match err {
        Error::ControlSingularity { gain, time } => {
            v["gain"] = (*gain).into();
            v["time"] = (*time).into();
        }
        Error::SimulationDiverged { time } => v["time"] = (*time).into(),
        Error::TuningFailed { trace } => v["iterations"] = trace.len().into(),
        _ => {}
    }
    v
}

fn main() -> ExitCode {
    env_logger::Builder::from_env(env_logger::Env::default().default_filter_or("warn")).init();
    let cli = Cli::parse();
    let result = match &cli.command {
        Command::Simulate { scenario, common } => simulate(scenario, common),
        Command::Compare { experiment, common } => compare(experiment, common),
        Command::Tune { experiment, common } => tune(experiment, common),
        Command::Plotdata {
            trajectory,
            channels,
            figures,
            out,
        } => plotdata(trajectory, channels, figures, out.as_deref()),
    };
    match result {
        Ok(()) => ExitCode::SUCCESS,
        Err(err) => {
            eprintln!("{}", error_json(&err));
            ExitCode::from(if err.kind() == "config" { 2 } else { 1 })
        }
    }
}
