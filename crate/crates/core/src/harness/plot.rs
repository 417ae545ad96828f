use std::io::Write;
use std::path::{Path, PathBuf};

use serde::{Deserialize, Serialize};

use super::output;
use crate::dynamics::{write_columns, Trajectory};
use crate::error::{Error, Result};

/// Standard figure layouts.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Figure {
    /// Plant output and reference against time.
    Output,
    Error,
    Control,
    /// `e` against `ė`.
    Phase,
    Surface,
}

impl Figure {
    pub const ALL: [Figure; 5] = [
        Figure::Output,
        Figure::Error,
        Figure::Control,
        Figure::Phase,
        Figure::Surface,
    ];

    pub fn name(self) -> &'static str {
        match self {
            Figure::Output => "output",
            Figure::Error => "error",
            Figure::Control => "control",
            Figure::Phase => "phase",
            Figure::Surface => "surface",
        }
    }

    pub fn parse(name: &str) -> Result<Figure> {
        Figure::ALL
            .into_iter()
            .find(|f| f.name() == name)
            .ok_or_else(|| Error::Config(format!("unknown figure '{name}'")))
    }

    pub fn channels(self, traj: &Trajectory) -> Vec<String> {
        let v = |names: &[&str]| names.iter().map(|s| s.to_string()).collect();
        match self {
            Figure::Output => vec!["t".into(), traj.state_names[0].clone(), "ref".into()],
            Figure::Error => v(&["t", "e"]),
            Figure::Control => v(&["t", "u"]),
            Figure::Phase => v(&["e", "edot"]),
            Figure::Surface => v(&["t", "s"]),
        }
    }
}

/// Looks up the requested channels; empty or unknown names are configuration errors.
pub fn select_channels<'a>(traj: &'a Trajectory, channels: &[String]) -> Result<Vec<&'a [f64]>> {
    if channels.is_empty() {
        return Err(Error::Config("no channels requested".into()));
    }
    channels
        .iter()
        .map(|c| {
            traj.channel(c).ok_or_else(|| {
                Error::Config(format!(
                    "unknown channel '{c}'; available: {}",
                    traj.channel_names().join(",")
                ))
            })
        })
        .collect()
}

/// Columnar CSV of the requested channels, one row per sample.
pub fn write_channels<W: Write>(
    traj: &Trajectory,
    channels: &[String],
    mut out: W,
    header: &[String],
) -> Result<()> {
    let cols = select_channels(traj, channels)?;
    for line in header {
        writeln!(out, "# {line}")?;
    }
    write_columns(out, channels, &cols)
}

/// Writes `<figure>.csv` for each requested figure into `dir`.
pub fn emit_plot_data(
    traj: &Trajectory,
    figures: &[Figure],
    dir: &Path,
    header: &[String],
) -> Result<Vec<PathBuf>> {
    if figures.is_empty() {
        return Err(Error::Config("no figures requested".into()));
    }
    figures
        .iter()
        .map(|fig| {
            let path = dir.join(format!("{}.csv", fig.name()));
            let channels = fig.channels(traj);
            output::write_with(&path, |out| write_channels(traj, &channels, out, header))?;
            Ok(path)
        })
        .collect()
}
