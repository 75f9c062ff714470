//! Run configuration: a JSON file overlaid with command-line flags, resolved
//! against per-command defaults.

use std::path::{Path, PathBuf};

use rmtgaps_core::ensemble::{EnsembleSpec, Sampler, Scaling};
use rmtgaps_core::gapstats::Interval;
use serde::{Deserialize, Serialize};

use crate::CliError;

/// Pass/fail thresholds. Defaults follow the acceptance criteria.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(default, deny_unknown_fields)]
pub struct Thresholds {
    /// KS distance bound for `τ_1` against `1 - e^{-x²}`.
    pub ks_max_distance: f64,
    /// KS distance bound for `τ_k`, `k >= 2`.
    pub ks_max_distance_higher_k: f64,
    /// Allowed `|mean τ_1 - √π/2|`.
    pub mean_tau_tolerance: f64,
    /// Multiplier on standard errors for mean-type checks.
    pub se_multiplier: f64,
    pub poisson_gof_min_p: f64,
    pub two_sample_min_p: f64,
    /// KS distance bound for the two-by-two gap law.
    pub two_by_two_ks_max: f64,
    pub lemma9_max_error: f64,
    pub pfaffian_det_rel: f64,
    pub pfaffian_congruence_rel: f64,
    pub pfaffian_scaling_rel: f64,
    pub pfaffian_exact_rel: f64,
    pub orthonormality_max: f64,
    pub polynomial_identity_rel: f64,
    pub laplace_rel: f64,
    pub ba_product_abs: f64,
    pub alpha_quadrature_abs: f64,
    pub partition_rel: f64,
    pub quadrature_rel: f64,
    pub dn_recurrence_rel: f64,
    /// Relative slack allowed on the derivative-energy inequality.
    pub fdt_slack: f64,
    /// Relative slack allowed on the two-particle band sandwiches.
    pub band_slack: f64,
}

impl Default for Thresholds {
    fn default() -> Self {
        Self {
            ks_max_distance: 0.05,
            ks_max_distance_higher_k: 0.07,
            mean_tau_tolerance: 0.05,
            se_multiplier: 3.0,
            poisson_gof_min_p: 0.01,
            two_sample_min_p: 0.01,
            two_by_two_ks_max: 0.01,
            lemma9_max_error: 1e-8,
            pfaffian_det_rel: 1e-9,
            pfaffian_congruence_rel: 1e-8,
            pfaffian_scaling_rel: 1e-10,
            pfaffian_exact_rel: 1e-10,
            orthonormality_max: 1e-10,
            polynomial_identity_rel: 1e-8,
            laplace_rel: 1e-9,
            ba_product_abs: 1e-10,
            alpha_quadrature_abs: 1e-6,
            partition_rel: 1e-8,
            quadrature_rel: 1e-3,
            dn_recurrence_rel: 1e-12,
            fdt_slack: 1e-12,
            band_slack: 1e-7,
        }
    }
}

/// Everything a config file or the flags may set. Unset fields fall back to
/// the command's defaults.
#[derive(Debug, Clone, Default, PartialEq, Serialize, Deserialize)]
#[serde(default, deny_unknown_fields)]
pub struct ConfigOverrides {
    pub n: Option<usize>,
    pub beta: Option<f64>,
    pub sampler: Option<String>,
    pub scaling: Option<String>,
    pub trials: Option<u64>,
    pub seed: Option<u64>,
    pub interval: Option<(f64, f64)>,
    pub k_max: Option<usize>,
    pub j_max: Option<usize>,
    pub workers: Option<usize>,
    pub out: Option<PathBuf>,
    pub reproducible: Option<bool>,
    pub n_max: Option<usize>,
    pub two_by_two_trials: Option<u64>,
    pub thresholds: Option<Thresholds>,
}

impl ConfigOverrides {
    pub fn from_file(path: &Path) -> Result<Self, CliError> {
        let text = std::fs::read_to_string(path)
            .map_err(|e| CliError::Usage(format!("cannot read config {}: {e}", path.display())))?;
        serde_json::from_str(&text).map_err(|e| CliError::Usage(format!("invalid config {}: {e}", path.display())))
    }

    /// Fields set in `other` win.
    pub fn overlay(self, other: ConfigOverrides) -> Self {
        Self {
            n: other.n.or(self.n),
            beta: other.beta.or(self.beta),
            sampler: other.sampler.or(self.sampler),
            scaling: other.scaling.or(self.scaling),
            trials: other.trials.or(self.trials),
            seed: other.seed.or(self.seed),
            interval: other.interval.or(self.interval),
            k_max: other.k_max.or(self.k_max),
            j_max: other.j_max.or(self.j_max),
            workers: other.workers.or(self.workers),
            out: other.out.or(self.out),
            reproducible: other.reproducible.or(self.reproducible),
            n_max: other.n_max.or(self.n_max),
            two_by_two_trials: other.two_by_two_trials.or(self.two_by_two_trials),
            thresholds: other.thresholds.or(self.thresholds),
        }
    }
}

/// A fully resolved configuration, echoed into every output.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct ExperimentConfig {
    pub n: usize,
    pub beta: f64,
    pub sampler: String,
    pub scaling: String,
    pub trials: u64,
    pub seed: u64,
    pub interval: (f64, f64),
    pub k_max: usize,
    pub j_max: usize,
    /// Not echoed under `--reproducible`: outputs must not depend on it.
    #[serde(skip_serializing_if = "Option::is_none")]
    pub workers: Option<usize>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub out: Option<PathBuf>,
    pub reproducible: bool,
    pub n_max: usize,
    pub two_by_two_trials: u64,
    pub thresholds: Thresholds,
}

/// Baseline values a command starts from before overrides apply.
#[derive(Debug, Clone, Copy)]
pub struct Defaults {
    pub n: usize,
    pub trials: u64,
    pub interval: (f64, f64),
    pub sampler: Sampler,
    pub scaling: Scaling,
    pub beta: f64,
}

impl Default for Defaults {
    fn default() -> Self {
        Self {
            n: 1000,
            trials: 4000,
            interval: (0.0, 2.0),
            sampler: Sampler::Tridiagonal,
            scaling: Scaling::Standard,
            beta: 1.0,
        }
    }
}

pub const DEFAULT_SEED: u64 = 20_240_607;

impl ExperimentConfig {
    pub fn resolve(o: ConfigOverrides, d: Defaults) -> Result<Self, CliError> {
        let reproducible = o.reproducible.unwrap_or(false);
        let workers = o.workers.unwrap_or_else(default_workers);
        let cfg = Self {
            n: o.n.unwrap_or(d.n),
            beta: o.beta.unwrap_or(d.beta),
            sampler: o.sampler.unwrap_or_else(|| d.sampler.to_string()),
            scaling: o.scaling.unwrap_or_else(|| d.scaling.to_string()),
            trials: o.trials.unwrap_or(d.trials),
            seed: o.seed.unwrap_or(DEFAULT_SEED),
            interval: o.interval.unwrap_or(d.interval),
            k_max: o.k_max.unwrap_or(3),
            j_max: o.j_max.unwrap_or(3),
            workers: Some(workers),
            out: Some(o.out.unwrap_or_else(|| PathBuf::from("rmtgaps-out"))),
            reproducible,
            n_max: o.n_max.unwrap_or(14),
            two_by_two_trials: o.two_by_two_trials.unwrap_or(100_000),
            thresholds: o.thresholds.unwrap_or_default(),
        };
        cfg.validate()?;
        Ok(cfg)
    }

    fn validate(&self) -> Result<(), CliError> {
        let usage = |m: String| Err(CliError::Usage(m));
        if self.trials == 0 {
            return usage("trials must be at least 1".into());
        }
        if self.workers == Some(0) {
            return usage("workers must be at least 1".into());
        }
        let (lo, hi) = self.interval;
        if !(lo >= 0.0 && lo < hi) {
            return usage(format!("interval needs 0 <= lo < hi, got ({lo}, {hi})"));
        }
        if self.k_max == 0 || self.j_max == 0 {
            return usage("k-max and j-max must be at least 1".into());
        }
        if self.k_max >= self.n {
            return usage(format!("k-max must be below n = {}", self.n));
        }
        if self.two_by_two_trials < 10 {
            return usage("two-by-two trials must be at least 10".into());
        }
        self.ensemble_spec().map(|_| ())
    }

    pub fn ensemble_spec(&self) -> Result<EnsembleSpec, CliError> {
        let sampler: Sampler = self.sampler.parse().map_err(|e| CliError::Usage(format!("{e}")))?;
        let scaling: Scaling = self.scaling.parse().map_err(|e| CliError::Usage(format!("{e}")))?;
        let spec = EnsembleSpec { n: self.n, beta: self.beta, scaling, sampler };
        spec.validate().map_err(|e| CliError::Usage(e.to_string()))?;
        Ok(spec)
    }

    pub fn interval(&self) -> Interval {
        Interval { lo: self.interval.0, hi: self.interval.1 }
    }

    pub fn worker_count(&self) -> usize {
        self.workers.unwrap_or_else(default_workers)
    }

    pub fn out_dir(&self) -> PathBuf {
        self.out.clone().unwrap_or_else(|| PathBuf::from("rmtgaps-out"))
    }

    /// The config as it appears in output metadata. Under `--reproducible`
    /// the worker count and output directory are left out.
    pub fn echo(&self) -> serde_json::Value {
        let mut c = self.clone();
        if self.reproducible {
            c.workers = None;
            c.out = None;
        }
        serde_json::to_value(c).expect("config serializes")
    }
}

fn default_workers() -> usize {
    std::thread::available_parallelism().map(|n| n.get()).unwrap_or(1)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn flags_override_file_values() {
        let file = ConfigOverrides { n: Some(10), seed: Some(1), ..Default::default() };
        let flags = ConfigOverrides { n: Some(20), ..Default::default() };
        let merged = file.overlay(flags);
        assert_eq!(merged.n, Some(20));
        assert_eq!(merged.seed, Some(1));
    }

    #[test]
    fn rejects_bad_values() {
        let d = Defaults::default();
        let bad = |o: ConfigOverrides| ExperimentConfig::resolve(o, d).is_err();
        assert!(bad(ConfigOverrides { trials: Some(0), ..Default::default() }));
        assert!(bad(ConfigOverrides { interval: Some((2.0, 1.0)), ..Default::default() }));
        assert!(bad(ConfigOverrides { workers: Some(0), ..Default::default() }));
        assert!(bad(ConfigOverrides { sampler: Some("gpu".into()), ..Default::default() }));
        assert!(bad(ConfigOverrides { beta: Some(2.0), ..Default::default() }));
    }

    #[test]
    fn reproducible_echo_drops_run_local_fields() {
        let o = ConfigOverrides { reproducible: Some(true), workers: Some(4), ..Default::default() };
        let cfg = ExperimentConfig::resolve(o, Defaults::default()).unwrap();
        let echo = cfg.echo();
        assert!(echo.get("workers").is_none());
        assert!(echo.get("out").is_none());
        assert_eq!(echo["seed"], DEFAULT_SEED);
    }

    #[test]
    fn config_file_round_trip() {
        let text = r#"{"n": 50, "interval": [0.0, 1.5], "thresholds": {"ks_max_distance": 0.1}}"#;
        let o: ConfigOverrides = serde_json::from_str(text).unwrap();
        assert_eq!(o.n, Some(50));
        let t = o.thresholds.unwrap();
        assert_eq!(t.ks_max_distance, 0.1);
        assert_eq!(t.se_multiplier, 3.0);
        assert!(serde_json::from_str::<ConfigOverrides>(r#"{"bogus": 1}"#).is_err());
    }
}
