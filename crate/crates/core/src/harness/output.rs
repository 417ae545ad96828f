use std::fs;
use std::io::{BufWriter, Write};
use std::path::Path;

use crate::dynamics::Trajectory;
use crate::error::Result;
use crate::metrics::{MetricReport, RISE_CONVENTION, SETTLING_CONVENTION};
use crate::mpso::TraceRow;
use crate::VERSION;

/// Provenance lines written at the top of every output file.
#[derive(Debug, Clone, PartialEq)]
pub struct Provenance {
    pub seed: u64,
    /// Fully resolved configuration, as TOML.
    pub config: String,
}

impl Provenance {
    pub fn lines(&self) -> Vec<String> {
        let mut lines = vec![
            format!("pidsmc {VERSION}"),
            format!("seed = {}", self.seed),
            format!("rise time: {RISE_CONVENTION}"),
            format!("settling time: {SETTLING_CONVENTION}"),
            "config:".to_string(),
        ];
        lines.extend(self.config.lines().map(|l| format!("  {l}")));
        lines
    }

    fn write_comment<W: Write>(&self, out: &mut W) -> Result<()> {
        for line in self.lines() {
            writeln!(out, "# {}", line.trim_end())?;
        }
        Ok(())
    }
}

fn create(path: &Path) -> Result<BufWriter<fs::File>> {
    if let Some(dir) = path.parent() {
        fs::create_dir_all(dir)?;
    }
    Ok(BufWriter::new(fs::File::create(path)?))
}

pub fn write_trajectory(path: &Path, traj: &Trajectory, prov: &Provenance) -> Result<()> {
    let mut out = create(path)?;
    let header: Vec<String> = prov.lines().iter().map(|l| l.trim_end().to_string()).collect();
    traj.write_csv(&mut out, &header)?;
    out.flush()?;
    Ok(())
}

/// The report's fields plus `toolkit_version`, `seed` and `config` in one flat object.
pub fn report_json(report: &MetricReport, prov: &Provenance) -> Result<serde_json::Value> {
    let mut value = serde_json::to_value(report)?;
    let obj = value.as_object_mut().expect("report serializes to an object");
    obj.insert("toolkit_version".into(), VERSION.into());
    obj.insert("seed".into(), prov.seed.into());
    obj.insert("config".into(), prov.config.clone().into());
    Ok(value)
}

pub fn write_report(path: &Path, report: &MetricReport, prov: &Provenance) -> Result<()> {
    let mut out = create(path)?;
    serde_json::to_writer_pretty(&mut out, &report_json(report, prov)?)?;
    writeln!(out)?;
    out.flush()?;
    Ok(())
}

fn cell(v: Option<f64>, diverged: bool) -> String {
    match v {
        Some(x) => x.to_string(),
        None if diverged => String::new(),
        None => "not_reached".into(),
    }
}

/// One row per controller, in the given order.
pub fn write_comparison<W: Write>(mut out: W, rows: &[MetricReport], prov: &Provenance) -> Result<()> {
    prov.write_comment(&mut out)?;
    let mut w = csv::Writer::from_writer(out);
    w.write_record([
        "controller",
        "status",
        "rise_time",
        "settling_time",
        "ise",
        "chattering",
        "steady_state_error",
        "lyapunov_violations",
    ])?;
    for r in rows {
        let dv = r.diverged;
        w.write_record([
            r.controller.clone(),
            if dv { "diverged" } else { "ok" }.to_string(),
            cell(r.rise_time, dv),
            cell(r.settling_time, dv),
            cell(r.ise, dv),
            cell(r.chattering, dv),
            cell(r.steady_state_error, dv),
            r.lyapunov_violations.map(|v| v.to_string()).unwrap_or_default(),
        ])?;
    }
    w.flush()?;
    Ok(())
}

pub fn write_trace<W: Write>(mut out: W, trace: &[TraceRow], prov: &Provenance) -> Result<()> {
    prov.write_comment(&mut out)?;
    let mut w = csv::Writer::from_writer(out);
    w.write_record(["iter", "best_fitness", "mean_fitness"])?;
    for row in trace {
        w.write_record([
            row.iter.to_string(),
            row.best_fitness.to_string(),
            row.mean_fitness.to_string(),
        ])?;
    }
    w.flush()?;
    Ok(())
}

pub fn write_text(path: &Path, text: &str, prov: &Provenance) -> Result<()> {
    let mut out = create(path)?;
    writeln!(out, "# pidsmc {VERSION}")?;
    writeln!(out, "# seed = {}", prov.seed)?;
    out.write_all(text.as_bytes())?;
    out.flush()?;
    Ok(())
}

pub fn write_with<F>(path: &Path, body: F) -> Result<()>
where
    F: FnOnce(&mut BufWriter<fs::File>) -> Result<()>,
{
    let mut out = create(path)?;
    body(&mut out)?;
    out.flush()?;
    Ok(())
}

#[cfg(test)]
mod tests {
    use super::*;

    fn prov() -> Provenance {
        Provenance {
            seed: 4,
            config: "a = 1\n[b]\nc = 2\n".into(),
        }
    }

    #[test]
    fn comparison_marks_missing_values() {
        let mut ok = MetricReport::diverged("a");
        ok.diverged = false;
        ok.ise = Some(0.5);
        let rows = [ok, MetricReport::diverged("b")];
        let mut buf = Vec::new();
        write_comparison(&mut buf, &rows, &prov()).unwrap();
        let text = String::from_utf8(buf).unwrap();
        assert!(text.starts_with(&format!("# pidsmc {VERSION}\n# seed = 4\n")));
        assert!(text.contains("#   [b]\n"));
        assert!(text.contains("\na,ok,not_reached,not_reached,0.5,not_reached,not_reached,\n"));
        assert!(text.contains("\nb,diverged,,,,,,\n"));
    }

    #[test]
    fn report_json_carries_provenance() {
        let v = report_json(&MetricReport::diverged("x"), &prov()).unwrap();
        assert_eq!(v["seed"], 4);
        assert_eq!(v["toolkit_version"], VERSION);
        assert_eq!(v["controller"], "x");
    }
}
