//! CSV tables and key=value reports.

use std::fmt::Write as _;
use std::fs;
use std::path::{Path, PathBuf};

use crate::config::RunConfig;

pub const VERSION: &str = env!("CARGO_PKG_VERSION");

/// Scientific notation with 13 significant digits.
pub fn sci(v: f64) -> String {
    format!("{v:.12e}")
}

#[derive(Debug, Clone, PartialEq)]
pub enum Cell {
    Num(f64),
    Text(String),
}

impl Cell {
    fn render(&self) -> String {
        match self {
            Cell::Num(v) => sci(*v),
            Cell::Text(t) => t.clone(),
        }
    }
}

impl From<f64> for Cell {
    fn from(v: f64) -> Self {
        Cell::Num(v)
    }
}

impl From<&str> for Cell {
    fn from(v: &str) -> Self {
        Cell::Text(v.to_string())
    }
}

impl From<String> for Cell {
    fn from(v: String) -> Self {
        Cell::Text(v)
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct Table {
    pub file: String,
    /// Extra `#` lines after the version line.
    pub notes: Vec<String>,
    pub header: Vec<&'static str>,
    pub rows: Vec<Vec<Cell>>,
}

impl Table {
    pub fn new(file: impl Into<String>, header: &[&'static str]) -> Self {
        Self {
            file: file.into(),
            notes: Vec::new(),
            header: header.to_vec(),
            rows: Vec::new(),
        }
    }

    pub fn note(mut self, note: impl Into<String>) -> Self {
        self.notes.push(note.into());
        self
    }

    pub fn push(&mut self, row: Vec<Cell>) {
        debug_assert_eq!(row.len(), self.header.len());
        self.rows.push(row);
    }

    pub fn render(&self, config: &RunConfig) -> String {
        let mut out = format!(
            "# gravbec {VERSION} command={} seed={} config-sha256={}\n",
            config.command,
            config.seed,
            config.hash()
        );
        for n in &self.notes {
            let _ = writeln!(out, "# {n}");
        }
        out.push_str(&self.header.join(","));
        out.push('\n');
        for row in &self.rows {
            let cells: Vec<String> = row.iter().map(Cell::render).collect();
            out.push_str(&cells.join(","));
            out.push('\n');
        }
        out
    }
}

/// Ordered `key=value` lines.
#[derive(Debug, Clone, Default, PartialEq)]
pub struct Report {
    lines: Vec<(String, String)>,
}

impl Report {
    pub fn num(&mut self, key: impl Into<String>, v: f64) -> &mut Self {
        self.lines.push((key.into(), sci(v)));
        self
    }

    pub fn text(&mut self, key: impl Into<String>, v: impl ToString) -> &mut Self {
        self.lines.push((key.into(), v.to_string()));
        self
    }

    pub fn render(&self, config: &RunConfig) -> String {
        let mut out = format!("# gravbec {VERSION} config-sha256={}\ncommand={}\n", config.hash(), config.command);
        for (k, v) in &self.lines {
            let _ = writeln!(out, "{k}={v}");
        }
        out
    }
}

#[derive(Debug, Clone, Default, PartialEq)]
pub struct Artifacts {
    pub report: Report,
    pub tables: Vec<Table>,
}

/// Writes `report.txt` and every table into the output directory, in order.
pub fn write_artifacts(config: &RunConfig, artifacts: &Artifacts) -> std::io::Result<Vec<PathBuf>> {
    let dir: &Path = &config.output_dir;
    fs::create_dir_all(dir)?;
    let mut written = Vec::new();
    let report = dir.join("report.txt");
    fs::write(&report, artifacts.report.render(config))?;
    written.push(report);
    for t in &artifacts.tables {
        let path = dir.join(&t.file);
        fs::write(&path, t.render(config))?;
        written.push(path);
    }
    Ok(written)
}
