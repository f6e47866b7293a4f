//! CSV result tables: a `# config:` line, a header row, then data rows with
//! the wall time in milliseconds as the last column.

use std::fs::File;
use std::io::{self, Write};
use std::path::{Path, PathBuf};

use crate::settings::{CliResult, Settings};

/// Seventeen significant digits, enough to round-trip an `f64`.
pub fn float(x: f64) -> String {
    format!("{x:.16e}")
}

pub fn flag(ok: bool) -> String {
    if ok { "pass" } else { "fail" }.to_string()
}

pub struct Table {
    header: Vec<String>,
    rows: Vec<Vec<String>>,
}

impl Table {
    pub fn new<S: Into<String>>(columns: impl IntoIterator<Item = S>) -> Self {
        let mut header: Vec<String> = columns.into_iter().map(Into::into).collect();
        header.push("wall_ms".into());
        Self {
            header,
            rows: Vec::new(),
        }
    }

    pub fn push(&mut self, mut row: Vec<String>, wall_ms: f64) {
        assert_eq!(row.len() + 1, self.header.len(), "row width");
        row.push(format!("{wall_ms:.3}"));
        self.rows.push(row);
    }

    pub fn write_to<W: Write>(&self, settings: &Settings, out: W) -> CliResult<()> {
        let mut out = out;
        writeln!(out, "# config: {}", settings.echo())?;
        let mut writer = csv::Writer::from_writer(out);
        writer.write_record(&self.header)?;
        for row in &self.rows {
            writer.write_record(row)?;
        }
        writer.flush()?;
        Ok(())
    }

    /// Write to `--out` when given, else to stdout.
    pub fn emit(&self, settings: &Settings) -> CliResult<()> {
        match out_path(settings) {
            Some(path) => self.write_to(settings, File::create(path)?),
            None => self.write_to(settings, io::stdout().lock()),
        }
    }
}

pub fn out_path(settings: &Settings) -> Option<PathBuf> {
    settings.raw("out").map(PathBuf::from)
}

/// `--out` with a `.json` extension, or `None` when writing to stdout.
pub fn json_path(settings: &Settings) -> Option<PathBuf> {
    out_path(settings).map(|p| Path::new(&p).with_extension("json"))
}

/// Milliseconds elapsed while running `f`.
pub fn timed<R>(f: impl FnOnce() -> R) -> (R, f64) {
    let start = std::time::Instant::now();
    let r = f();
    (r, start.elapsed().as_secs_f64() * 1e3)
}
