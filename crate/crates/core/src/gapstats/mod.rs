//! Observables built from the gaps of a sorted spectrum, their limiting laws
//! and the goodness-of-fit tests used to compare the two.
//!
//! All functions take the spectrum as an increasing slice; `n` is its length
//! and gaps are normalized by `n`.

use std::fmt;
use std::str::FromStr;

use statrs::distribution::{ChiSquared, ContinuousCDF, Discrete, Poisson};
use statrs::function::gamma::{gamma_lr, ln_gamma};

use crate::error::{Error, Result};

/// Largest qualifying-pair set `rho_count` accepts.
pub const MAX_QUALIFYING_PAIRS: usize = 10_000;
pub const MAX_RHO_K: usize = 4;

/// An open interval `(lo, hi)` of normalized gap sizes.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Interval {
    pub lo: f64,
    pub hi: f64,
}

impl Interval {
    pub fn new(lo: f64, hi: f64) -> Result<Self> {
        if !(lo >= 0.0 && hi >= lo) || lo.is_nan() || hi.is_nan() {
            return Err(Error::Precondition(format!("need 0 <= lo <= hi, got ({lo}, {hi})")));
        }
        Ok(Self { lo, hi })
    }

    pub fn contains(&self, x: f64) -> bool {
        self.lo < x && x < self.hi
    }
}

impl fmt::Display for Interval {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "({},{})", self.lo, self.hi)
    }
}

impl FromStr for Interval {
    type Err = Error;

    /// Parses `lo,hi`, optionally wrapped in parentheses.
    fn from_str(s: &str) -> Result<Self> {
        let t = s.trim().trim_start_matches('(').trim_end_matches(')');
        let (lo, hi) =
            t.split_once(',').ok_or_else(|| Error::Precondition(format!("interval must be `lo,hi`, got `{s}`")))?;
        let parse =
            |v: &str| v.trim().parse::<f64>().map_err(|_| Error::Precondition(format!("bad interval endpoint `{v}`")));
        Self::new(parse(lo)?, parse(hi)?)
    }
}

/// `χ^{(n)}(A)`: nearest-neighbour gaps with `n·gap ∈ A`.
pub fn chi_count(spectrum: &[f64], a: Interval) -> u64 {
    let n = spectrum.len() as f64;
    spectrum.windows(2).filter(|w| a.contains(n * (w[1] - w[0]))).count() as u64
}

/// Lag-resolved counts of `χ̃^{(n,j)}(A)`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ChiTilde {
    /// `per_lag[j - 1]` is the count at lag `j`, for `j <= j_max`.
    pub per_lag: Vec<u64>,
    /// `χ̃^{(n)}(A)`, summed over every lag.
    pub total: u64,
}

/// `χ̃^{(n,j)}(A)` for `j <= j_max`, plus the total over all lags. Lags are
/// scanned until every `λ_{(i+j)} - λ_{(i)}` has left `A`.
pub fn chi_tilde_counts(spectrum: &[f64], a: Interval, j_max: usize) -> ChiTilde {
    let len = spectrum.len();
    let n = len as f64;
    let mut per_lag = vec![0; j_max.min(len.saturating_sub(1))];
    let mut total = 0;
    for j in 1..len {
        let mut count = 0;
        let mut min_gap = f64::INFINITY;
        for i in 0..len - j {
            let g = n * (spectrum[i + j] - spectrum[i]);
            min_gap = min_gap.min(g);
            if a.contains(g) {
                count += 1;
            }
        }
        if j <= per_lag.len() {
            per_lag[j - 1] = count;
        }
        total += count;
        if min_gap >= a.hi && j >= per_lag.len() {
            break;
        }
    }
    ChiTilde { per_lag, total }
}

/// Index pairs `(i, j)`, `i < j`, with `n(λ_j - λ_i) ∈ A`.
pub fn qualifying_pairs(spectrum: &[f64], a: Interval) -> Result<Vec<(usize, usize)>> {
    let n = spectrum.len() as f64;
    let mut out = Vec::new();
    for i in 0..spectrum.len() {
        for j in (i + 1)..spectrum.len() {
            let g = n * (spectrum[j] - spectrum[i]);
            if g >= a.hi {
                break;
            }
            if a.contains(g) {
                out.push((i, j));
                if out.len() > MAX_QUALIFYING_PAIRS {
                    return Err(Error::Size(format!(
                        "more than {MAX_QUALIFYING_PAIRS} qualifying pairs; interval {a} is too wide"
                    )));
                }
            }
        }
    }
    Ok(out)
}

/// `ρ^{(k,n)}(A^k)`: ordered `k`-tuples of qualifying pairs with all `2k`
/// indices distinct.
pub fn rho_count(spectrum: &[f64], a: Interval, k: usize) -> Result<u64> {
    if k == 0 || k > MAX_RHO_K {
        return Err(Error::Precondition(format!("rho_count needs 1 <= k <= {MAX_RHO_K}, got {k}")));
    }
    let pairs = qualifying_pairs(spectrum, a)?;
    Ok(count_disjoint_tuples(&pairs, k, spectrum.len()))
}

fn count_disjoint_tuples(pairs: &[(usize, usize)], k: usize, len: usize) -> u64 {
    let p = pairs.len() as u64;
    match k {
        1 => p,
        2 => {
            // |P|² minus ordered pairs sharing an index; (p, p) is counted in
            // both endpoint degrees, hence the + |P|.
            let mut degree = vec![0u64; len];
            for &(i, j) in pairs {
                degree[i] += 1;
                degree[j] += 1;
            }
            p * p + p - degree.iter().map(|d| d * d).sum::<u64>()
        }
        _ => {
            let mut used = vec![false; len];
            let sets = disjoint_subsets(pairs, 0, k, &mut used);
            sets * (1..=k as u64).product::<u64>()
        }
    }
}

fn disjoint_subsets(pairs: &[(usize, usize)], start: usize, left: usize, used: &mut [bool]) -> u64 {
    if left == 0 {
        return 1;
    }
    let mut total = 0;
    for idx in start..pairs.len() {
        let (i, j) = pairs[idx];
        if used[i] || used[j] {
            continue;
        }
        used[i] = true;
        used[j] = true;
        total += disjoint_subsets(pairs, idx + 1, left - 1, used);
        used[i] = false;
        used[j] = false;
    }
    total
}

/// `a = max{i - j : λ_{(i)} - λ_{(j)} < 2c1/n}`.
pub fn cluster_span(spectrum: &[f64], c1: f64) -> Result<usize> {
    if !(c1 > 0.0) {
        return Err(Error::Precondition(format!("c1 must be positive, got {c1}")));
    }
    let width = 2.0 * c1 / spectrum.len() as f64;
    let mut best = 0;
    let mut lo = 0;
    for hi in 0..spectrum.len() {
        while spectrum[hi] - spectrum[lo] >= width {
            lo += 1;
        }
        best = best.max(hi - lo);
    }
    Ok(best)
}

/// Nearest-neighbour gaps in increasing order (not normalized).
pub fn sorted_gaps(spectrum: &[f64]) -> Vec<f64> {
    let mut g: Vec<f64> = spectrum.windows(2).map(|w| w[1] - w[0]).collect();
    g.sort_by(f64::total_cmp);
    g
}

/// `τ_k = 2^{-3/2} n t_k` with `t_k` the `k`-th smallest gap.
pub fn kth_gap_tau(spectrum: &[f64], k: usize) -> Result<f64> {
    let n = spectrum.len();
    if k == 0 || k >= n {
        return Err(Error::OutOfRange(format!("need 1 <= k <= n - 1 = {}, got {k}", n.saturating_sub(1))));
    }
    Ok(tau_scale(n) * sorted_gaps(spectrum)[k - 1])
}

fn tau_scale(n: usize) -> f64 {
    n as f64 / 2f64.powf(1.5)
}

/// `P(τ_k <= x) = γ(k, x²) / Γ(k)`.
pub fn limiting_tau_cdf(k: usize, x: f64) -> f64 {
    assert!(k >= 1, "k starts at 1");
    if x <= 0.0 {
        return 0.0;
    }
    gamma_lr(k as f64, x * x)
}

/// Density `2x^{2k-1} e^{-x²} / (k-1)!`.
pub fn limiting_tau_pdf(k: usize, x: f64) -> f64 {
    assert!(k >= 1, "k starts at 1");
    if x <= 0.0 {
        return 0.0;
    }
    (std::f64::consts::LN_2 + (2 * k - 1) as f64 * x.ln() - x * x - ln_gamma(k as f64)).exp()
}

/// Poisson intensity `(1/4)∫_A u du = (b² - a²)/8`.
pub fn poisson_intensity(a: Interval) -> f64 {
    (a.hi * a.hi - a.lo * a.lo) / 8.0
}

/// Per-spectrum record of every configured observable.
#[derive(Debug, Clone, PartialEq)]
pub struct GapSummary {
    pub n: usize,
    pub trial_index: u64,
    /// `n (λ_{(i+1)} - λ_{(i)})`, increasing.
    pub normalized_gaps: Vec<f64>,
    /// `τ_1, …, τ_{k_max}`.
    pub tau: Vec<f64>,
    pub counts: Vec<IntervalCounts>,
    pub cluster_span_a: usize,
}

#[derive(Debug, Clone, PartialEq)]
pub struct IntervalCounts {
    pub interval: Interval,
    pub chi: u64,
    pub chi_tilde: ChiTilde,
    /// `ρ^{(k,n)}(A^k)` for `k = 1..=rho_k_max`.
    pub rho: Vec<u64>,
}

#[derive(Debug, Clone, PartialEq)]
pub struct SummaryConfig {
    pub intervals: Vec<Interval>,
    pub k_max: usize,
    pub j_max: usize,
    pub rho_k_max: usize,
    pub c1: f64,
}

impl Default for SummaryConfig {
    fn default() -> Self {
        Self { intervals: vec![Interval { lo: 0.0, hi: 1.0 }], k_max: 3, j_max: 3, rho_k_max: 2, c1: 1.0 }
    }
}

impl GapSummary {
    pub fn new(spectrum: &[f64], trial_index: u64, cfg: &SummaryConfig) -> Result<Self> {
        let n = spectrum.len();
        if n < 2 {
            return Err(Error::Precondition("a gap summary needs at least two eigenvalues".into()));
        }
        if cfg.k_max >= n {
            return Err(Error::OutOfRange(format!("k_max = {} must be below n = {n}", cfg.k_max)));
        }
        let gaps = sorted_gaps(spectrum);
        let normalized_gaps: Vec<f64> = gaps.iter().map(|g| n as f64 * g).collect();
        let tau = gaps[..cfg.k_max].iter().map(|g| tau_scale(n) * g).collect();
        let counts = cfg
            .intervals
            .iter()
            .map(|&interval| {
                Ok(IntervalCounts {
                    interval,
                    chi: chi_count(spectrum, interval),
                    chi_tilde: chi_tilde_counts(spectrum, interval, cfg.j_max.max(1)),
                    rho: (1..=cfg.rho_k_max).map(|k| rho_count(spectrum, interval, k)).collect::<Result<_>>()?,
                })
            })
            .collect::<Result<_>>()?;
        Ok(Self { n, trial_index, normalized_gaps, tau, counts, cluster_span_a: cluster_span(spectrum, cfg.c1)? })
    }

    pub fn csv_header(cfg: &SummaryConfig) -> String {
        let mut cols = vec!["trial".to_string(), "n".to_string()];
        cols.extend((1..=cfg.k_max).map(|k| format!("tau_{k}")));
        for (idx, _) in cfg.intervals.iter().enumerate() {
            cols.push(format!("chi_A{idx}"));
            cols.extend((1..=cfg.j_max.max(1)).map(|j| format!("chi_tilde_{j}_A{idx}")));
            cols.push(format!("chi_tilde_total_A{idx}"));
            cols.extend((1..=cfg.rho_k_max).map(|k| format!("rho_{k}_A{idx}")));
        }
        cols.push("cluster_span_a".into());
        cols.join(",")
    }

    /// One CSV row matching [`GapSummary::csv_header`].
    pub fn csv_row(&self) -> String {
        let mut cols = vec![self.trial_index.to_string(), self.n.to_string()];
        cols.extend(self.tau.iter().map(|t| format!("{t:.10e}")));
        for c in &self.counts {
            cols.push(c.chi.to_string());
            cols.extend(c.chi_tilde.per_lag.iter().map(u64::to_string));
            cols.push(c.chi_tilde.total.to_string());
            cols.extend(c.rho.iter().map(u64::to_string));
        }
        cols.push(self.cluster_span_a.to_string());
        cols.join(",")
    }
}

/// Sorted sample of a real observable.
#[derive(Debug, Clone, PartialEq)]
pub struct EmpiricalDistribution {
    values: Vec<f64>,
}

impl EmpiricalDistribution {
    pub fn new(mut values: Vec<f64>) -> Result<Self> {
        if values.is_empty() {
            return Err(Error::Precondition("empirical distribution needs a sample".into()));
        }
        if values.iter().any(|v| v.is_nan()) {
            return Err(Error::Precondition("sample contains NaN".into()));
        }
        values.sort_by(f64::total_cmp);
        Ok(Self { values })
    }

    pub fn values(&self) -> &[f64] {
        &self.values
    }

    pub fn len(&self) -> usize {
        self.values.len()
    }

    pub fn is_empty(&self) -> bool {
        self.values.is_empty()
    }

    /// Fraction of the sample `<= x`.
    pub fn cdf(&self, x: f64) -> f64 {
        self.values.partition_point(|&v| v <= x) as f64 / self.len() as f64
    }

    /// Nearest-rank quantile.
    pub fn quantile(&self, q: f64) -> f64 {
        let idx = ((q.clamp(0.0, 1.0) * self.len() as f64).ceil() as usize).clamp(1, self.len());
        self.values[idx - 1]
    }

    pub fn to_csv(&self, column: &str) -> String {
        let mut s = format!("{column}\n");
        for v in &self.values {
            s.push_str(&format!("{v:.17e}\n"));
        }
        s
    }
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct KsResult {
    pub statistic: f64,
    pub p_value: f64,
}

/// Kolmogorov survival function `Q(λ) = 2 Σ (-1)^{j-1} e^{-2j²λ²}`, switching
/// to the theta-transformed series for small `λ`.
pub fn kolmogorov_q(lambda: f64) -> f64 {
    if lambda <= 0.0 {
        return 1.0;
    }
    if lambda < 1.18 {
        let pi2 = std::f64::consts::PI * std::f64::consts::PI;
        let mut s = 0.0;
        for j in 1..=100 {
            let t = (-((2 * j - 1) as f64).powi(2) * pi2 / (8.0 * lambda * lambda)).exp();
            s += t;
            if t < 1e-12 * s {
                break;
            }
        }
        (1.0 - (2.0 * std::f64::consts::PI).sqrt() / lambda * s).clamp(0.0, 1.0)
    } else {
        let mut s = 0.0;
        for j in 1..=100 {
            let t = (-2.0 * (j * j) as f64 * lambda * lambda).exp();
            s += if j % 2 == 1 { t } else { -t };
            if t < 1e-12 {
                break;
            }
        }
        (2.0 * s).clamp(0.0, 1.0)
    }
}

fn ks_p_value(d: f64, effective_n: f64) -> f64 {
    let en = effective_n.sqrt();
    kolmogorov_q((en + 0.12 + 0.11 / en) * d)
}

/// One-sample Kolmogorov–Smirnov test against a continuous CDF.
pub fn ks_test<F: Fn(f64) -> f64>(sample: &EmpiricalDistribution, cdf: F) -> Result<KsResult> {
    let m = sample.len();
    if m < 10 {
        return Err(Error::Precondition(format!("KS test needs at least 10 samples, got {m}")));
    }
    let mf = m as f64;
    let mut d = 0.0f64;
    for (i, &x) in sample.values.iter().enumerate() {
        let f = cdf(x);
        d = d.max(f - i as f64 / mf).max((i + 1) as f64 / mf - f);
    }
    Ok(KsResult { statistic: d, p_value: ks_p_value(d, mf) })
}

/// Two-sample Kolmogorov–Smirnov test.
pub fn ks_two_sample(a: &EmpiricalDistribution, b: &EmpiricalDistribution) -> Result<KsResult> {
    let (n, m) = (a.len(), b.len());
    if n < 10 || m < 10 {
        return Err(Error::Precondition(format!("KS test needs at least 10 samples each, got {n} and {m}")));
    }
    let (mut i, mut j) = (0, 0);
    let mut d = 0.0f64;
    while i < n && j < m {
        let x = a.values[i].min(b.values[j]);
        while i < n && a.values[i] <= x {
            i += 1;
        }
        while j < m && b.values[j] <= x {
            j += 1;
        }
        d = d.max((i as f64 / n as f64 - j as f64 / m as f64).abs());
    }
    let effective = (n * m) as f64 / (n + m) as f64;
    Ok(KsResult { statistic: d, p_value: ks_p_value(d, effective) })
}

/// Mean of the falling factorial `c (c-1) ⋯ (c-k+1)` over trials.
pub fn factorial_moment(counts: &[u64], k: usize) -> f64 {
    if counts.is_empty() {
        return 0.0;
    }
    let total: f64 = counts.iter().map(|&c| falling_factorial(c, k)).sum();
    total / counts.len() as f64
}

pub fn falling_factorial(c: u64, k: usize) -> f64 {
    (0..k as u64).map(|i| c.saturating_sub(i) as f64).product()
}

#[derive(Debug, Clone, PartialEq)]
pub struct GofResult {
    pub statistic: f64,
    pub degrees_of_freedom: usize,
    pub p_value: f64,
    /// Pooled cells as `(first count, observed, expected)`; the last cell is
    /// an upper tail.
    pub cells: Vec<(u64, u64, f64)>,
}

/// Chi-square test of count data against `Poisson(mu)`, pooling adjacent
/// cells until each expected frequency reaches 5.
pub fn poisson_gof(counts: &[u64], mu: f64) -> Result<GofResult> {
    if !(mu > 0.0) || !mu.is_finite() {
        return Err(Error::Precondition(format!("Poisson mean must be positive, got {mu}")));
    }
    if counts.len() < 200 {
        return Err(Error::Precondition(format!(
            "Poisson goodness of fit needs at least 200 samples, got {}",
            counts.len()
        )));
    }
    let total = counts.len() as f64;
    let dist = Poisson::new(mu).map_err(|e| Error::Precondition(e.to_string()))?;
    let max_count = counts.iter().copied().max().unwrap_or(0);

    // Left-to-right pooling; the last cell absorbs the whole upper tail.
    let mut cells: Vec<(u64, f64)> = Vec::new();
    let mut start = 0u64;
    let mut acc = 0.0;
    let mut remaining = 1.0;
    for c in 0..=max_count.max(mu.ceil() as u64 + 1) {
        let p = dist.pmf(c);
        acc += p;
        remaining -= p;
        if total * acc >= 5.0 && total * remaining >= 5.0 {
            cells.push((start, total * acc));
            start = c + 1;
            acc = 0.0;
        }
    }
    let tail = total * (acc + remaining.max(0.0));
    match cells.last_mut() {
        Some(last) if tail < 5.0 => last.1 += tail,
        _ => cells.push((start, tail)),
    }

    let starts: Vec<u64> = cells.iter().map(|c| c.0).collect();
    let mut observed = vec![0u64; cells.len()];
    for &c in counts {
        let idx = starts.partition_point(|&s| s <= c) - 1;
        observed[idx] += 1;
    }
    let statistic: f64 = cells.iter().zip(&observed).map(|(&(_, e), &o)| (o as f64 - e).powi(2) / e).sum();
    let dof = cells.len().saturating_sub(1);
    let p_value = if dof == 0 {
        1.0
    } else {
        let chi2 = ChiSquared::new(dof as f64).map_err(|e| Error::Precondition(e.to_string()))?;
        chi2.sf(statistic)
    };
    let cells = cells.iter().zip(&observed).map(|(&(s, e), &o)| (s, o, e)).collect();
    Ok(GofResult { statistic, degrees_of_freedom: dof, p_value, cells })
}

#[cfg(test)]
mod tests;
