//! Monte Carlo experiments. The analysis functions take already collected
//! samples so the acceptance suite can share one pool between criteria.

use std::time::SystemTime;

use clap::ValueEnum;
use rmtgaps_core::ensemble::{sample, EnsembleSpec, Sampler, Scaling, SeedStream, Spectrum};
use rmtgaps_core::gapstats::*;
use statrs::function::gamma::{gamma_lr, ln_gamma};

use crate::config::{Defaults, ExperimentConfig, Thresholds};
use crate::report::{csv_table, Check, OutputSink, RunReport};
use crate::runner::{run_trials, Partial};
use crate::svg::histogram_with_density;
use crate::CliError;

/// Seed offset for the second sampler in the cross-check.
pub const CROSSCHECK_SALT: u64 = 0x5EED_CAFE_0000_0001;
/// Seed offset for the `n = 2` runs.
pub const TWO_BY_TWO_SALT: u64 = 0x5EED_CAFE_0000_0002;
const HISTOGRAM_BINS: usize = 40;

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum Kind {
    SmallestGapLaw,
    PoissonCounts,
    FactorialMoments,
    SuccessiveGaps,
    SamplerCrosscheck,
    ConjectureBeta,
}

impl Kind {
    pub fn name(self) -> &'static str {
        match self {
            Kind::SmallestGapLaw => "smallest-gap-law",
            Kind::PoissonCounts => "poisson-counts",
            Kind::FactorialMoments => "factorial-moments",
            Kind::SuccessiveGaps => "successive-gaps",
            Kind::SamplerCrosscheck => "sampler-crosscheck",
            Kind::ConjectureBeta => "conjecture-beta",
        }
    }

    pub fn defaults(self) -> Defaults {
        let base = Defaults::default();
        match self {
            Kind::SuccessiveGaps => Defaults { n: 500, trials: 20_000, interval: (0.0, 1.0), ..base },
            Kind::SamplerCrosscheck => Defaults { n: 200, trials: 2000, ..base },
            Kind::ConjectureBeta => Defaults { n: 500, trials: 2000, scaling: Scaling::NBeta, beta: 4.0, ..base },
            _ => base,
        }
    }
}

pub fn summary_config(cfg: &ExperimentConfig) -> SummaryConfig {
    SummaryConfig {
        intervals: vec![cfg.interval()],
        k_max: cfg.k_max,
        j_max: cfg.j_max.max(2),
        rho_k_max: 2,
        c1: cfg.interval.1,
    }
}

fn core_err(e: rmtgaps_core::Error) -> CliError {
    CliError::Internal(e.to_string())
}

fn trial_err<T>(p: &Partial<T>) -> CliError {
    CliError::Internal(format!("trial {}: {}", p.failed_trial, p.error))
}

/// Per-trial gap summaries in trial order. Normalized gaps are dropped to
/// keep memory flat.
pub fn collect_summaries(
    cfg: &ExperimentConfig,
    spec: &EnsembleSpec,
    seed: u64,
) -> Result<Result<Vec<GapSummary>, Partial<GapSummary>>, CliError> {
    let stream = SeedStream::new(seed);
    let scfg = summary_config(cfg);
    run_trials(cfg.worker_count(), cfg.trials, |trial| {
        let s = sample(spec, &stream, trial)?;
        let mut g = GapSummary::new(&s.values, trial, &scfg)?;
        g.normalized_gaps = Vec::new();
        Ok(g)
    })
}

/// Like [`collect_summaries`] but fails without writing partial output.
pub fn summaries_or_error(cfg: &ExperimentConfig, spec: &EnsembleSpec, seed: u64) -> Result<Vec<GapSummary>, CliError> {
    collect_summaries(cfg, spec, seed)?.map_err(|p| trial_err(&p))
}

/// The `k_max` smallest raw gaps of each spectrum.
pub fn collect_smallest_gaps(
    spec: &EnsembleSpec,
    seed: u64,
    trials: u64,
    k_max: usize,
    workers: usize,
) -> Result<Result<Vec<Vec<f64>>, Partial<Vec<f64>>>, CliError> {
    let stream = SeedStream::new(seed);
    run_trials(workers, trials, |trial| {
        let s = sample(spec, &stream, trial)?;
        let mut g = sorted_gaps(&s.values);
        g.truncate(k_max);
        Ok(g)
    })
}

fn mean_and_se(xs: &[f64]) -> (f64, f64) {
    let n = xs.len() as f64;
    let mean = xs.iter().sum::<f64>() / n;
    let var = xs.iter().map(|x| (x - mean).powi(2)).sum::<f64>() / (n - 1.0).max(1.0);
    (mean, (var / n).sqrt())
}

fn ln_gamma_ratio_mean(k: usize) -> f64 {
    (ln_gamma(k as f64 + 0.5) - ln_gamma(k as f64)).exp()
}

fn tau_column(summaries: &[GapSummary], k: usize) -> Vec<f64> {
    summaries.iter().map(|s| s.tau[k - 1]).collect()
}

/// KS distance and mean of every `τ_k` against the limiting law.
pub fn smallest_gap_checks(summaries: &[GapSummary], k_max: usize, t: &Thresholds) -> Result<Vec<Check>, CliError> {
    let mut checks = Vec::new();
    for k in 1..=k_max {
        let taus = tau_column(summaries, k);
        let (mean, se) = mean_and_se(&taus);
        let ed = EmpiricalDistribution::new(taus).map_err(core_err)?;
        let ks = ks_test(&ed, |x| limiting_tau_cdf(k, x)).map_err(core_err)?;
        let expected = ln_gamma_ratio_mean(k);
        if k == 1 {
            checks.push(Check::below("ks_distance_tau_1", ks.statistic, t.ks_max_distance).with_p(ks.p_value));
            let mut c = Check::near("mean_tau_1", mean, expected, t.mean_tau_tolerance);
            c.standard_error = Some(se);
            checks.push(c);
        } else {
            checks.push(
                Check::below(format!("ks_distance_tau_{k}"), ks.statistic, t.ks_max_distance_higher_k)
                    .with_p(ks.p_value),
            );
            let mut c = Check::diagnostic(format!("mean_tau_{k}"), mean).with_expected(expected);
            c.standard_error = Some(se);
            checks.push(c);
        }
    }
    Ok(checks)
}

fn chi_column(summaries: &[GapSummary]) -> Vec<u64> {
    summaries.iter().map(|s| s.counts[0].chi).collect()
}

fn chi_tilde_column(summaries: &[GapSummary]) -> Vec<u64> {
    summaries.iter().map(|s| s.counts[0].chi_tilde.total).collect()
}

fn factorial_column(counts: &[u64], k: usize) -> Vec<f64> {
    counts.iter().map(|&c| falling_factorial(c, k)).collect()
}

/// Mean count, Poisson goodness of fit and second factorial moment on the
/// first configured interval.
pub fn poisson_count_checks(summaries: &[GapSummary], a: Interval, t: &Thresholds) -> Result<Vec<Check>, CliError> {
    let mu = poisson_intensity(a);
    let chi = chi_column(summaries);
    let (mean, se) = mean_and_se(&chi.iter().map(|&c| c as f64).collect::<Vec<_>>());
    let gof = poisson_gof(&chi, mu).map_err(core_err)?;
    let tilde = chi_tilde_column(summaries);
    let (m2, se2) = mean_and_se(&factorial_column(&tilde, 2));
    let rho2: Vec<f64> = summaries.iter().map(|s| s.counts[0].rho.get(1).copied().unwrap_or(0) as f64).collect();
    let (rho_mean, rho_se) = mean_and_se(&rho2);
    let mut rho_check = Check::diagnostic("mean_rho_2", rho_mean).with_expected(mu * mu);
    rho_check.standard_error = Some(rho_se);
    Ok(vec![
        Check::within_se("mean_chi", mean, mu, se, t.se_multiplier),
        Check::above("poisson_gof_p", gof.p_value, t.poisson_gof_min_p),
        Check::diagnostic("poisson_gof_statistic", gof.statistic),
        Check::diagnostic("poisson_gof_degrees_of_freedom", gof.degrees_of_freedom as f64),
        Check::within_se("second_factorial_moment_chi_tilde", m2, mu * mu, se2, t.se_multiplier),
        rho_check,
    ])
}

/// Factorial moments `E[(χ̃)_k]` against `μ^k`; the same for `χ` as
/// diagnostics.
pub fn factorial_moment_checks(summaries: &[GapSummary], a: Interval, k_max: usize, t: &Thresholds) -> Vec<Check> {
    let mu = poisson_intensity(a);
    let tilde = chi_tilde_column(summaries);
    let chi = chi_column(summaries);
    let mut checks = Vec::new();
    for k in 1..=k_max {
        let target = mu.powi(k as i32);
        let (m, se) = mean_and_se(&factorial_column(&tilde, k));
        checks.push(Check::within_se(format!("factorial_moment_{k}_chi_tilde"), m, target, se, t.se_multiplier));
        let (m, se) = mean_and_se(&factorial_column(&chi, k));
        let mut c = Check::diagnostic(format!("factorial_moment_{k}_chi"), m).with_expected(target);
        c.standard_error = Some(se);
        checks.push(c);
    }
    checks
}

/// Probability of two small gaps in a row, bounded by `c0⁴/(8n)` plus
/// `m` binomial standard errors evaluated at the bound.
pub fn successive_gap_checks(summaries: &[GapSummary], n: usize, c0: f64, t: &Thresholds) -> Vec<Check> {
    let trials = summaries.len() as f64;
    let hits =
        summaries.iter().filter(|s| s.counts[0].chi_tilde.per_lag.get(1).copied().unwrap_or(0) > 0).count() as f64;
    let p_hat = hits / trials;
    let p0 = c0.powi(4) / (8.0 * n as f64);
    let se = (p0 * (1.0 - p0) / trials).sqrt();
    let mut c = Check::between("p_two_successive_small_gaps", p_hat, 0.0, p0 + t.se_multiplier * se).with_expected(p0);
    c.standard_error = Some(se);
    let excess: Vec<f64> = summaries.iter().map(|s| (s.counts[0].chi_tilde.total - s.counts[0].chi) as f64).collect();
    let (mean_excess, _) = mean_and_se(&excess);
    vec![c, Check::diagnostic(format!("mean_chi_tilde_minus_chi_n{n}"), mean_excess)]
}

/// Two-sample KS between the dense and tridiagonal `τ_1` samples.
pub fn crosscheck_checks(
    dense: &[GapSummary],
    tridiagonal: &[GapSummary],
    t: &Thresholds,
) -> Result<Vec<Check>, CliError> {
    let a = EmpiricalDistribution::new(tau_column(dense, 1)).map_err(core_err)?;
    let b = EmpiricalDistribution::new(tau_column(tridiagonal, 1)).map_err(core_err)?;
    let ks = ks_two_sample(&a, &b).map_err(core_err)?;
    Ok(vec![
        Check::above("two_sample_ks_p_tau_1", ks.p_value, t.two_sample_min_p),
        Check::diagnostic("two_sample_ks_distance_tau_1", ks.statistic),
    ])
}

/// `n = 2` gaps `s` against `P(s <= x) = 1 - e^{-x²/4}`.
pub fn two_by_two_check(label: &str, gaps: Vec<f64>, t: &Thresholds) -> Result<Check, CliError> {
    let ed = EmpiricalDistribution::new(gaps).map_err(core_err)?;
    let ks = ks_test(&ed, |x| if x <= 0.0 { 0.0 } else { 1.0 - (-x * x / 4.0).exp() }).map_err(core_err)?;
    Ok(Check::below(format!("n2_gap_law_ks_{label}"), ks.statistic, t.two_by_two_ks_max).with_p(ks.p_value))
}

pub fn two_by_two_gaps(sampler: Sampler, seed: u64, trials: u64, workers: usize) -> Result<Vec<f64>, CliError> {
    let spec = EnsembleSpec::goe(2, sampler);
    collect_smallest_gaps(&spec, seed, trials, 1, workers)?
        .map(|g| g.into_iter().map(|v| v[0]).collect())
        .map_err(|p| trial_err(&p))
}

/// Median-matched scale `c_β` and shape diagnostics for
/// `c_β n^{(β+2)/(β+1)} t_k` against `γ(k, x^{β+1})/Γ(k)`.
pub fn conjecture_beta_checks(
    gaps: &[Vec<f64>],
    n: usize,
    beta: f64,
    k_max: usize,
) -> Result<(Vec<Check>, f64), CliError> {
    let exponent = (beta + 2.0) / (beta + 1.0);
    let scale = (n as f64).powf(exponent);
    let first = EmpiricalDistribution::new(gaps.iter().map(|g| g[0] * scale).collect()).map_err(core_err)?;
    let limit_median = std::f64::consts::LN_2.powf(1.0 / (beta + 1.0));
    let c_beta = limit_median / first.quantile(0.5);
    let mut c = Check::diagnostic("c_beta_median_matched", c_beta);
    if beta == 1.0 {
        c.expected = Some(2f64.powf(-1.5));
    }
    let mut checks = vec![c, Check::diagnostic("tau_exponent", exponent)];
    for k in 1..=k_max {
        let ed =
            EmpiricalDistribution::new(gaps.iter().map(|g| c_beta * scale * g[k - 1]).collect()).map_err(core_err)?;
        let ks =
            ks_test(&ed, |x| if x <= 0.0 { 0.0 } else { gamma_lr(k as f64, x.powf(beta + 1.0)) }).map_err(core_err)?;
        checks.push(Check::diagnostic(format!("shape_ks_distance_k{k}"), ks.statistic).with_p(ks.p_value));
    }
    Ok((checks, c_beta))
}

fn conjecture_pdf(k: usize, beta: f64, x: f64) -> f64 {
    if x <= 0.0 {
        return 0.0;
    }
    let b1 = beta + 1.0;
    (b1.ln() + (b1 * k as f64 - 1.0) * x.ln() - x.powf(b1) - ln_gamma(k as f64)).exp()
}

fn svg_range(values: &[f64]) -> f64 {
    let mut v = values.to_vec();
    v.sort_by(f64::total_cmp);
    let q = v[((v.len() as f64 * 0.999) as usize).min(v.len() - 1)];
    (q * 1.05).max(1e-9)
}

fn require_goe(cfg: &ExperimentConfig, kind: Kind) -> Result<EnsembleSpec, CliError> {
    let spec = cfg.ensemble_spec()?;
    if spec.beta != 1.0 || spec.scaling != Scaling::Standard {
        return Err(CliError::Usage(format!("{} needs beta = 1 with standard scaling", kind.name())));
    }
    Ok(spec)
}

fn summaries_csv(summaries: &[GapSummary], cfg: &ExperimentConfig) -> String {
    let mut s = GapSummary::csv_header(&summary_config(cfg));
    s.push('\n');
    for g in summaries {
        s.push_str(&g.csv_row());
        s.push('\n');
    }
    s
}

/// Collects summaries, flushing completed trials before surfacing a failure.
fn summaries_with_flush(
    cfg: &ExperimentConfig,
    spec: &EnsembleSpec,
    seed: u64,
    sink: &mut OutputSink,
    name: &str,
) -> Result<Vec<GapSummary>, CliError> {
    match collect_summaries(cfg, spec, seed)? {
        Ok(v) => {
            sink.write_csv(name, &summaries_csv(&v, cfg))?;
            Ok(v)
        }
        Err(p) => {
            sink.write_csv(&format!("partial_{name}"), &summaries_csv(&p.completed, cfg))?;
            Err(trial_err(&p))
        }
    }
}

fn tau_histograms(summaries: &[GapSummary], k_max: usize, sink: &mut OutputSink, prefix: &str) -> Result<(), CliError> {
    for k in 1..=k_max {
        let taus = tau_column(summaries, k);
        let svg = histogram_with_density(
            &format!("{prefix} tau_{k}, n = {}", summaries[0].n),
            &taus,
            HISTOGRAM_BINS,
            svg_range(&taus),
            |x| limiting_tau_pdf(k, x),
        );
        sink.write_svg(&format!("{prefix}tau_{k}.svg"), &svg)?;
    }
    Ok(())
}

pub fn run_experiment(kind: Kind, cfg: &ExperimentConfig) -> Result<RunReport, CliError> {
    let started = SystemTime::now();
    let command = format!("experiment {}", kind.name());
    let t = &cfg.thresholds;
    let mut sink = OutputSink::new(&command, cfg)?;
    let checks = match kind {
        Kind::SmallestGapLaw => {
            let spec = require_goe(cfg, kind)?;
            let s = summaries_with_flush(cfg, &spec, cfg.seed, &mut sink, "trials.csv")?;
            tau_histograms(&s, cfg.k_max, &mut sink, "")?;
            smallest_gap_checks(&s, cfg.k_max, t)?
        }
        Kind::PoissonCounts => {
            let spec = require_goe(cfg, kind)?;
            let s = summaries_with_flush(cfg, &spec, cfg.seed, &mut sink, "trials.csv")?;
            let mu = poisson_intensity(cfg.interval());
            let gof = poisson_gof(&chi_column(&s), mu).map_err(core_err)?;
            sink.write_csv(
                "poisson_cells.csv",
                &csv_table(
                    &["first_count", "observed", "expected"],
                    gof.cells.iter().map(|(c, o, e)| vec![c.to_string(), o.to_string(), format!("{e:.6}")]),
                ),
            )?;
            poisson_count_checks(&s, cfg.interval(), t)?
        }
        Kind::FactorialMoments => {
            let spec = require_goe(cfg, kind)?;
            let s = summaries_with_flush(cfg, &spec, cfg.seed, &mut sink, "trials.csv")?;
            factorial_moment_checks(&s, cfg.interval(), cfg.k_max, t)
        }
        Kind::SuccessiveGaps => {
            let spec = require_goe(cfg, kind)?;
            let s = summaries_with_flush(cfg, &spec, cfg.seed, &mut sink, "trials.csv")?;
            let mut checks = successive_gap_checks(&s, cfg.n, cfg.interval.1, t);
            // smaller systems for the trend of χ̃ - χ
            for div in [4, 2] {
                let n = cfg.n / div;
                if n <= cfg.k_max.max(2) {
                    continue;
                }
                let smaller = ExperimentConfig { n, ..cfg.clone() };
                let spec = EnsembleSpec { n, ..spec };
                let s = summaries_or_error(&smaller, &spec, cfg.seed)?;
                checks.push(successive_gap_checks(&s, n, cfg.interval.1, t).remove(1));
            }
            checks
        }
        Kind::SamplerCrosscheck => {
            let spec = require_goe(cfg, kind)?;
            let dense = EnsembleSpec { sampler: Sampler::Dense, ..spec };
            let tri = EnsembleSpec { sampler: Sampler::Tridiagonal, ..spec };
            let d = summaries_with_flush(cfg, &dense, cfg.seed, &mut sink, "trials_dense.csv")?;
            let r = summaries_with_flush(cfg, &tri, cfg.seed ^ CROSSCHECK_SALT, &mut sink, "trials_tridiagonal.csv")?;
            tau_histograms(&d, 1, &mut sink, "dense_")?;
            tau_histograms(&r, 1, &mut sink, "tridiagonal_")?;
            let mut checks = crosscheck_checks(&d, &r, t)?;
            let w = cfg.worker_count();
            let seed = cfg.seed ^ TWO_BY_TWO_SALT;
            for sampler in [Sampler::Dense, Sampler::Tridiagonal] {
                let gaps = two_by_two_gaps(sampler, seed, cfg.two_by_two_trials, w)?;
                checks.push(two_by_two_check(&sampler.to_string(), gaps, t)?);
            }
            checks
        }
        Kind::ConjectureBeta => {
            let spec = cfg.ensemble_spec()?;
            if spec.sampler != Sampler::Tridiagonal || spec.scaling != Scaling::NBeta {
                return Err(CliError::Usage(
                    "conjecture-beta needs the tridiagonal sampler with n-beta scaling".into(),
                ));
            }
            let gaps = match collect_smallest_gaps(&spec, cfg.seed, cfg.trials, cfg.k_max, cfg.worker_count())? {
                Ok(g) => g,
                Err(p) => {
                    sink.write_csv("partial_gaps.csv", &gaps_csv(&p.completed))?;
                    return Err(trial_err(&p));
                }
            };
            sink.write_csv("gaps.csv", &gaps_csv(&gaps))?;
            let (checks, c_beta) = conjecture_beta_checks(&gaps, cfg.n, cfg.beta, cfg.k_max)?;
            let scale = c_beta * (cfg.n as f64).powf((cfg.beta + 2.0) / (cfg.beta + 1.0));
            for k in 1..=cfg.k_max {
                let xs: Vec<f64> = gaps.iter().map(|g| scale * g[k - 1]).collect();
                let svg = histogram_with_density(
                    &format!("scaled t_{k}, beta = {}, n = {}", cfg.beta, cfg.n),
                    &xs,
                    HISTOGRAM_BINS,
                    svg_range(&xs),
                    |x| conjecture_pdf(k, cfg.beta, x),
                );
                sink.write_svg(&format!("scaled_gap_{k}.svg"), &svg)?;
            }
            checks
        }
    };
    let report = RunReport::new(&command, cfg, checks);
    sink.write_report(report, started)
}

fn gaps_csv(gaps: &[Vec<f64>]) -> String {
    let k = gaps.first().map_or(0, Vec::len);
    let header: Vec<String> = std::iter::once("trial".to_string()).chain((1..=k).map(|j| format!("t_{j}"))).collect();
    let header: Vec<&str> = header.iter().map(String::as_str).collect();
    csv_table(
        &header,
        gaps.iter()
            .enumerate()
            .map(|(i, g)| std::iter::once(i.to_string()).chain(g.iter().map(|v| format!("{v:.17e}"))).collect()),
    )
}

/// Raw spectra, one row per trial.
pub fn run_sample(cfg: &ExperimentConfig) -> Result<RunReport, CliError> {
    let started = SystemTime::now();
    let spec = cfg.ensemble_spec()?;
    let mut sink = OutputSink::new("sample", cfg)?;
    let stream = SeedStream::new(cfg.seed);
    let result = run_trials(cfg.worker_count(), cfg.trials, |trial| sample(&spec, &stream, trial))?;
    let header: Vec<String> = ["trial_index", "n", "beta"]
        .iter()
        .map(|s| s.to_string())
        .chain((1..=cfg.n).map(|i| format!("lambda_{i}")))
        .collect();
    let header: Vec<&str> = header.iter().map(String::as_str).collect();
    let rows = |spectra: &[Spectrum]| {
        csv_table(
            &header,
            spectra.iter().map(|s| {
                [s.trial_index.to_string(), cfg.n.to_string(), cfg.beta.to_string()]
                    .into_iter()
                    .chain(s.values.iter().map(|x| format!("{x:.17e}")))
                    .collect()
            }),
        )
    };
    let spectra = match result {
        Ok(spectra) => spectra,
        Err(p) => {
            sink.write_csv("partial_spectra.csv", &rows(&p.completed))?;
            return Err(trial_err(&p));
        }
    };
    sink.write_csv("spectra.csv", &rows(&spectra))?;
    let resamples: u32 = spectra.iter().map(|s| s.resamples).sum();
    let checks = vec![Check::diagnostic("tie_resamples", resamples as f64)];
    sink.write_report(RunReport::new("sample", cfg, checks), started)
}
