//! Command-line grammar.

use std::path::PathBuf;

use clap::{Args, Parser, Subcommand};
use rmtgaps_core::gapstats::Interval;

use crate::config::ConfigOverrides;
use crate::experiment::Kind;
use crate::verify::Suite;

#[derive(Debug, Parser)]
#[command(name = "rmtgaps", version, about = "Smallest eigenvalue gaps of the GOE: verification and experiments")]
pub struct Cli {
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Run a deterministic verification suite.
    Verify {
        #[arg(value_enum)]
        suite: Suite,
        #[command(flatten)]
        common: CommonArgs,
    },
    /// Run a Monte Carlo experiment.
    Experiment {
        #[arg(value_enum)]
        kind: Kind,
        #[command(flatten)]
        common: CommonArgs,
    },
    /// Write raw sampled spectra.
    Sample {
        #[command(flatten)]
        common: CommonArgs,
    },
}

impl Command {
    pub fn common(&self) -> &CommonArgs {
        match self {
            Command::Verify { common, .. } | Command::Experiment { common, .. } | Command::Sample { common } => common,
        }
    }
}

#[derive(Debug, Clone, Default, Args)]
pub struct CommonArgs {
    /// JSON config file; flags override its values.
    #[arg(long)]
    pub config: Option<PathBuf>,
    #[arg(long)]
    pub n: Option<usize>,
    #[arg(long)]
    pub beta: Option<f64>,
    /// dense | tridiagonal
    #[arg(long)]
    pub sampler: Option<String>,
    /// standard | n-beta
    #[arg(long)]
    pub scaling: Option<String>,
    #[arg(long)]
    pub trials: Option<u64>,
    #[arg(long)]
    pub seed: Option<u64>,
    /// Open interval `lo,hi` on the `n·gap` scale.
    #[arg(long, allow_hyphen_values = true)]
    pub interval: Option<Interval>,
    #[arg(long)]
    pub k_max: Option<usize>,
    #[arg(long)]
    pub j_max: Option<usize>,
    #[arg(long)]
    pub workers: Option<usize>,
    #[arg(long)]
    pub out: Option<PathBuf>,
    /// Omit timestamps, wall clock, worker count and paths from outputs.
    #[arg(long)]
    pub reproducible: bool,
    /// Largest `n` for `verify lemma9`.
    #[arg(long)]
    pub n_max: Option<usize>,
    /// Trials for the `n = 2` gap law in `sampler-crosscheck`.
    #[arg(long)]
    pub two_by_two_trials: Option<u64>,
}

impl CommonArgs {
    pub fn overrides(&self) -> ConfigOverrides {
        ConfigOverrides {
            n: self.n,
            beta: self.beta,
            sampler: self.sampler.clone(),
            scaling: self.scaling.clone(),
            trials: self.trials,
            seed: self.seed,
            interval: self.interval.map(|a| (a.lo, a.hi)),
            k_max: self.k_max,
            j_max: self.j_max,
            workers: self.workers,
            out: self.out.clone(),
            reproducible: self.reproducible.then_some(true),
            n_max: self.n_max,
            two_by_two_trials: self.two_by_two_trials,
            thresholds: None,
        }
    }
}
