//! Command-line driver: verification suites, Monte Carlo experiments and raw
//! spectrum sampling, with CSV, JSON and SVG outputs.
//!
//! Exit codes: 0 success, 1 a check failed, 2 usage error, 3 internal error.

pub mod args;
pub mod config;
pub mod experiment;
pub mod report;
pub mod runner;
pub mod svg;
pub mod verify;

use std::time::SystemTime;

use clap::Parser;

use crate::args::{Cli, Command};
use crate::config::{ConfigOverrides, Defaults, ExperimentConfig};
use crate::report::{OutputSink, RunReport};

#[derive(Debug, Clone, thiserror::Error)]
pub enum CliError {
    #[error("usage: {0}")]
    Usage(String),
    #[error("internal error: {0}")]
    Internal(String),
}

impl CliError {
    pub fn exit_code(&self) -> i32 {
        match self {
            CliError::Usage(_) => 2,
            CliError::Internal(_) => 3,
        }
    }
}

/// Parses `args` (program name first), runs the command and returns the
/// process exit code.
pub fn run<I, T>(args: I) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<std::ffi::OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(c) => c,
        Err(e) => {
            let _ = e.print();
            return if e.use_stderr() { 2 } else { 0 };
        }
    };
    match execute(&cli.command) {
        Ok(report) => {
            print_report(&report);
            if report.passed {
                0
            } else {
                1
            }
        }
        Err(e) => {
            eprintln!("rmtgaps: {e}");
            e.exit_code()
        }
    }
}

/// Resolves the configuration for `command`: defaults, then the config
/// file, then flags.
pub fn resolve_config(command: &Command) -> Result<ExperimentConfig, CliError> {
    let common = command.common();
    let file = match &common.config {
        Some(path) => ConfigOverrides::from_file(path)?,
        None => ConfigOverrides::default(),
    };
    let defaults = match command {
        Command::Experiment { kind, .. } => kind.defaults(),
        Command::Sample { .. } => Defaults { n: 100, trials: 10, ..Defaults::default() },
        Command::Verify { .. } => Defaults::default(),
    };
    ExperimentConfig::resolve(file.overlay(common.overrides()), defaults)
}

pub fn execute(command: &Command) -> Result<RunReport, CliError> {
    let cfg = resolve_config(command)?;
    match command {
        Command::Verify { suite, .. } => {
            let started = SystemTime::now();
            let name = format!("verify {}", suite.name());
            let out = verify::run_suite(*suite, &cfg)?;
            let mut sink = OutputSink::new(&name, &cfg)?;
            sink.write_csv("checks.csv", &verify::checks_csv(&out.checks))?;
            for (file, body) in &out.tables {
                sink.write_csv(file, body)?;
            }
            sink.write_report(RunReport::new(&name, &cfg, out.checks), started)
        }
        Command::Experiment { kind, .. } => experiment::run_experiment(*kind, &cfg),
        Command::Sample { .. } => experiment::run_sample(&cfg),
    }
}

fn print_report(report: &RunReport) {
    println!("{}", report.command);
    for c in &report.checks {
        let status = match c.passed {
            Some(true) => "PASS",
            Some(false) => "FAIL",
            None => "INFO",
        };
        let value = c.value.map(|v| format!("{v:.6e}")).unwrap_or_default();
        let threshold = c.threshold.as_deref().unwrap_or("");
        println!("  {status} {:<48} {value:>14} {threshold}", c.name);
    }
    println!("{}", if report.passed { "ok" } else { "FAILED" });
}
