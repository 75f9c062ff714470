//! Run reports and the files they are written to.
//!
//! Every file opens with a metadata block: `#` lines for CSV, an XML comment
//! for SVG, and a `config` member for JSON. Under `--reproducible` nothing
//! run-local (timestamps, wall clock, workers, paths) is written, so outputs
//! are byte-identical across re-runs.

use std::fs;
use std::path::{Path, PathBuf};
use std::time::{SystemTime, UNIX_EPOCH};

use serde::Serialize;

use crate::config::ExperimentConfig;
use crate::CliError;

/// Bumped whenever the JSON layout changes.
pub const REPORT_SCHEMA_VERSION: u32 = 1;
pub const TOOL_VERSION: &str = env!("CARGO_PKG_VERSION");

/// One reported quantity. `passed` is `None` for diagnostics without a
/// threshold.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct Check {
    pub name: String,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub value: Option<f64>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub expected: Option<f64>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub standard_error: Option<f64>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub p_value: Option<f64>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub threshold: Option<String>,
    pub passed: Option<bool>,
}

impl Check {
    pub fn diagnostic(name: impl Into<String>, value: f64) -> Self {
        Self {
            name: name.into(),
            value: Some(value),
            expected: None,
            standard_error: None,
            p_value: None,
            threshold: None,
            passed: None,
        }
    }

    /// `value < bound`.
    pub fn below(name: impl Into<String>, value: f64, bound: f64) -> Self {
        Self { threshold: Some(format!("< {bound:e}")), passed: Some(value < bound), ..Self::diagnostic(name, value) }
    }

    /// `value > bound`, for p-values.
    pub fn above(name: impl Into<String>, value: f64, bound: f64) -> Self {
        Self { threshold: Some(format!("> {bound:e}")), passed: Some(value > bound), ..Self::diagnostic(name, value) }
    }

    /// `|value - expected| <= tolerance`.
    pub fn near(name: impl Into<String>, value: f64, expected: f64, tolerance: f64) -> Self {
        Self {
            expected: Some(expected),
            threshold: Some(format!("|value - expected| <= {tolerance:e}")),
            passed: Some((value - expected).abs() <= tolerance),
            ..Self::diagnostic(name, value)
        }
    }

    /// `|value - expected| <= m * se`.
    pub fn within_se(name: impl Into<String>, value: f64, expected: f64, se: f64, m: f64) -> Self {
        Self {
            standard_error: Some(se),
            threshold: Some(format!("|value - expected| <= {m} se")),
            ..Self::near(name, value, expected, m * se)
        }
    }

    /// `lo <= value <= hi`.
    pub fn between(name: impl Into<String>, value: f64, lo: f64, hi: f64) -> Self {
        Self {
            threshold: Some(format!("[{lo:e}, {hi:e}]")),
            passed: Some(lo <= value && value <= hi),
            ..Self::diagnostic(name, value)
        }
    }

    /// A count of failures that must be zero.
    pub fn zero_failures(name: impl Into<String>, failures: usize) -> Self {
        Self { threshold: Some("= 0".into()), passed: Some(failures == 0), ..Self::diagnostic(name, failures as f64) }
    }

    pub fn with_expected(mut self, e: f64) -> Self {
        self.expected = Some(e);
        self
    }

    pub fn with_p(mut self, p: f64) -> Self {
        self.p_value = Some(p);
        self
    }
}

#[derive(Debug, Clone, Serialize)]
pub struct RunReport {
    pub schema_version: u32,
    pub tool_version: &'static str,
    pub command: String,
    pub config: serde_json::Value,
    pub checks: Vec<Check>,
    pub passed: bool,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub wall_clock_seconds: Option<f64>,
    pub files: Vec<String>,
}

impl RunReport {
    pub fn new(command: &str, cfg: &ExperimentConfig, checks: Vec<Check>) -> Self {
        let passed = checks.iter().all(|c| c.passed != Some(false));
        Self {
            schema_version: REPORT_SCHEMA_VERSION,
            tool_version: TOOL_VERSION,
            command: command.to_string(),
            config: cfg.echo(),
            checks,
            passed,
            wall_clock_seconds: None,
            files: Vec::new(),
        }
    }

    pub fn failed_checks(&self) -> impl Iterator<Item = &Check> {
        self.checks.iter().filter(|c| c.passed == Some(false))
    }
}

/// Writes run outputs into one directory, prefixing each with metadata.
pub struct OutputSink {
    dir: PathBuf,
    command: String,
    config: serde_json::Value,
    reproducible: bool,
    written: Vec<String>,
}

impl OutputSink {
    pub fn new(command: &str, cfg: &ExperimentConfig) -> Result<Self, CliError> {
        let dir = cfg.out_dir();
        fs::create_dir_all(&dir).map_err(|e| io_error(&dir, e))?;
        Ok(Self {
            dir,
            command: command.to_string(),
            config: cfg.echo(),
            reproducible: cfg.reproducible,
            written: Vec::new(),
        })
    }

    fn metadata_lines(&self) -> Vec<String> {
        let mut lines = vec![
            format!("rmtgaps {TOOL_VERSION}"),
            format!("command: {}", self.command),
            format!("config: {}", self.config),
        ];
        if !self.reproducible {
            lines.push(format!("generated_unix: {}", unix_now()));
        }
        lines
    }

    /// CSV body must start with its header row.
    pub fn write_csv(&mut self, name: &str, body: &str) -> Result<(), CliError> {
        let mut text = String::new();
        for line in self.metadata_lines() {
            text.push_str("# ");
            text.push_str(&line);
            text.push('\n');
        }
        text.push_str(body);
        self.write(name, &text)
    }

    pub fn write_svg(&mut self, name: &str, svg: &str) -> Result<(), CliError> {
        // "--" is not allowed inside XML comments
        let meta = self.metadata_lines().join("\n").replace("--", "- -");
        let text = svg.replacen("<svg", &format!("<!--\n{meta}\n-->\n<svg"), 1);
        self.write(name, &text)
    }

    pub fn write_report(mut self, mut report: RunReport, started: SystemTime) -> Result<RunReport, CliError> {
        if !self.reproducible {
            report.wall_clock_seconds = Some(started.elapsed().map(|d| d.as_secs_f64()).unwrap_or(0.0));
        }
        let name = format!("{}_report.json", self.command.replace(' ', "_"));
        self.written.push(name.clone());
        report.files = self.written.clone();
        let text = serde_json::to_string_pretty(&report).expect("report serializes") + "\n";
        let path = self.dir.join(&name);
        fs::write(&path, text).map_err(|e| io_error(&path, e))?;
        Ok(report)
    }

    fn write(&mut self, name: &str, text: &str) -> Result<(), CliError> {
        let path = self.dir.join(name);
        fs::write(&path, text).map_err(|e| io_error(&path, e))?;
        self.written.push(name.to_string());
        Ok(())
    }
}

fn io_error(path: &Path, e: std::io::Error) -> CliError {
    CliError::Internal(format!("{}: {e}", path.display()))
}

fn unix_now() -> u64 {
    SystemTime::now().duration_since(UNIX_EPOCH).map(|d| d.as_secs()).unwrap_or(0)
}

/// Plain CSV from a header and rows of already formatted cells.
pub fn csv_table(header: &[&str], rows: impl IntoIterator<Item = Vec<String>>) -> String {
    let mut s = header.join(",");
    s.push('\n');
    for row in rows {
        s.push_str(&row.join(","));
        s.push('\n');
    }
    s
}
