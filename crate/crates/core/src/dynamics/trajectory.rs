use std::io::{Read, Write};

use crate::error::{Error, Result};

/// Closed-loop record on a uniform time grid. Every channel has one entry per sample.
#[derive(Debug, Clone, PartialEq, Default)]
pub struct Trajectory {
    pub state_names: Vec<String>,
    pub t: Vec<f64>,
    /// One column per state component.
    pub state: Vec<Vec<f64>>,
    pub reference: Vec<f64>,
    pub e: Vec<f64>,
    pub edot: Vec<f64>,
    pub eint: Vec<f64>,
    pub s: Vec<f64>,
    pub u: Vec<f64>,
    pub d: Vec<f64>,
}

/// Channels that follow the state columns, in CSV order.
const TAIL: [&str; 7] = ["ref", "e", "edot", "eint", "s", "u", "d"];

#[derive(Debug, Clone, Copy)]
pub(crate) struct Sample<'a> {
    pub t: f64,
    pub x: &'a [f64],
    pub reference: f64,
    pub e: f64,
    pub edot: f64,
    pub eint: f64,
    pub s: f64,
    pub u: f64,
    pub d: f64,
}

impl Trajectory {
    pub fn new(state_names: &[&str], capacity: usize) -> Self {
        let col = || Vec::with_capacity(capacity);
        Self {
            state_names: state_names.iter().map(|s| s.to_string()).collect(),
            t: col(),
            state: state_names.iter().map(|_| col()).collect(),
            reference: col(),
            e: col(),
            edot: col(),
            eint: col(),
            s: col(),
            u: col(),
            d: col(),
        }
    }

    pub(crate) fn push(&mut self, p: Sample<'_>) {
        self.t.push(p.t);
        for (col, v) in self.state.iter_mut().zip(p.x) {
            col.push(*v);
        }
        self.reference.push(p.reference);
        self.e.push(p.e);
        self.edot.push(p.edot);
        self.eint.push(p.eint);
        self.s.push(p.s);
        self.u.push(p.u);
        self.d.push(p.d);
    }

    pub fn len(&self) -> usize {
        self.t.len()
    }

    pub fn is_empty(&self) -> bool {
        self.t.is_empty()
    }

    /// Plant output (first state component).
    pub fn output(&self) -> &[f64] {
        &self.state[0]
    }

    pub fn dt(&self) -> Option<f64> {
        (self.t.len() > 1).then(|| self.t[1] - self.t[0])
    }

    /// Column names in CSV order: `t`, the state components, then `ref,e,edot,eint,s,u,d`.
    pub fn channel_names(&self) -> Vec<String> {
        std::iter::once("t".to_string())
            .chain(self.state_names.iter().cloned())
            .chain(TAIL.iter().map(|s| s.to_string()))
            .collect()
    }

    pub fn channel(&self, name: &str) -> Option<&[f64]> {
        let col = match name {
            "t" => &self.t,
            "ref" => &self.reference,
            "e" => &self.e,
            "edot" => &self.edot,
            "eint" => &self.eint,
            "s" => &self.s,
            "u" => &self.u,
            "d" => &self.d,
            other => {
                let i = self.state_names.iter().position(|n| n == other)?;
                &self.state[i]
            }
        };
        Some(col.as_slice())
    }

    /// Writes `# `-prefixed header lines, the column header, then one row per sample.
    pub fn write_csv<W: Write>(&self, mut out: W, header: &[String]) -> Result<()> {
        for line in header {
            writeln!(out, "# {line}")?;
        }
        let names = self.channel_names();
        let cols: Vec<&[f64]> = names
            .iter()
            .map(|n| self.channel(n).expect("own channel"))
            .collect();
        write_columns(out, &names, &cols)
    }

    pub fn read_csv<R: Read>(input: R) -> Result<Trajectory> {
        let mut reader = csv::ReaderBuilder::new()
            .comment(Some(b'#'))
            .from_reader(input);
        let headers: Vec<String> = reader.headers()?.iter().map(str::to_string).collect();
        let n = headers.len();
        if n < 1 + TAIL.len() + 1 || headers[0] != "t" || headers[n - TAIL.len()..] != TAIL {
            return Err(Error::Config(format!(
                "not a trajectory file; header was {headers:?}"
            )));
        }
        let state_names = &headers[1..n - TAIL.len()];
        let mut columns: Vec<Vec<f64>> = vec![Vec::new(); n];
        for record in reader.records() {
            let record = record?;
            for (i, field) in record.iter().enumerate() {
                let v: f64 = field.trim().parse().map_err(|_| {
                    Error::Config(format!("bad number '{field}' in column {}", headers[i]))
                })?;
                columns[i].push(v);
            }
        }
        let mut columns = columns.into_iter();
        let mut next = || columns.next().expect("column count checked");
        let t = next();
        let state = state_names.iter().map(|_| next()).collect();
        Ok(Trajectory {
            state_names: state_names.to_vec(),
            t,
            state,
            reference: next(),
            e: next(),
            edot: next(),
            eint: next(),
            s: next(),
            u: next(),
            d: next(),
        })
    }
}

/// Column-major numeric CSV with shortest round-trip float formatting.
pub(crate) fn write_columns<W: Write>(out: W, names: &[String], cols: &[&[f64]]) -> Result<()> {
    let mut w = csv::Writer::from_writer(out);
    w.write_record(names)?;
    let rows = cols.first().map_or(0, |c| c.len());
    let mut record = Vec::with_capacity(cols.len());
    for i in 0..rows {
        record.clear();
        record.extend(cols.iter().map(|c| c[i].to_string()));
        w.write_record(&record)?;
    }
    w.flush()?;
    Ok(())
}

#[cfg(test)]
mod tests {
    use super::*;

    fn sample_traj() -> Trajectory {
        let mut tr = Trajectory::new(&["x1", "x2"], 3);
        for i in 0..3 {
            let t = i as f64 * 0.01;
            tr.push(Sample {
                t,
                x: &[t.sin(), 1.0 / 3.0],
                reference: 0.1,
                e: -1e-17,
                edot: f64::INFINITY,
                eint: 2.5e300,
                s: 0.3,
                u: -7.0,
                d: 0.0,
            });
        }
        tr
    }

    #[test]
    fn csv_round_trip_is_exact() {
        let tr = sample_traj();
        let mut buf = Vec::new();
        tr.write_csv(&mut buf, &["pidsmc test".into()]).unwrap();
        let text = String::from_utf8(buf.clone()).unwrap();
        assert!(text.starts_with("# pidsmc test\nt,x1,x2,ref,e,edot,eint,s,u,d\n"));
        let back = Trajectory::read_csv(buf.as_slice()).unwrap();
        assert_eq!(back, tr);
    }

    #[test]
    fn channel_lookup() {
        let tr = sample_traj();
        assert_eq!(tr.channel("x2").unwrap(), &[1.0 / 3.0; 3]);
        assert!(tr.channel("theta").is_none());
        assert_eq!(tr.output(), tr.channel("x1").unwrap());
    }
}
