//! Seeded spectra of the GOE and of Gaussian β-ensembles.
//!
//! The GOE here has joint eigenvalue density proportional to
//! `exp(-Σλ²/2) Π|λ_i - λ_j|`, i.e. diagonal entries of variance 1 and
//! off-diagonal entries of variance 1/2. Two samplers realize it: a dense
//! symmetrized Gaussian matrix and the Dumitriu–Edelman tridiagonal model,
//! which also covers general β.

pub mod eigen;
pub mod rng;

use std::fmt;

use crate::error::{Error, Result};
pub use eigen::{eigen_symmetric, eigen_tridiagonal, householder_tridiagonal};
pub use rng::{CounterRng, SeedStream};

pub const MAX_DENSE_N: usize = 4000;
pub const MAX_TRIDIAGONAL_N: usize = 20000;

/// Offset added to the trial index when a spectrum has to be redrawn because
/// of an exact eigenvalue tie.
pub const TIE_RESAMPLE_OFFSET: u64 = 1 << 40;
const MAX_TIE_RESAMPLES: u32 = 4;

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Scaling {
    /// Density `exp(-Σλ²/2) Π|Δλ|` (β = 1 only).
    Standard,
    /// Density `exp(-nβΣλ²/2) Π|Δλ|^β`.
    NBeta,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Sampler {
    Dense,
    Tridiagonal,
}

impl fmt::Display for Scaling {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Scaling::Standard => "standard",
            Scaling::NBeta => "n-beta",
        })
    }
}

impl fmt::Display for Sampler {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Sampler::Dense => "dense",
            Sampler::Tridiagonal => "tridiagonal",
        })
    }
}

impl std::str::FromStr for Scaling {
    type Err = Error;
    fn from_str(s: &str) -> Result<Self> {
        match s {
            "standard" => Ok(Scaling::Standard),
            "n-beta" => Ok(Scaling::NBeta),
            other => Err(Error::Precondition(format!("unknown scaling {other:?}"))),
        }
    }
}

impl std::str::FromStr for Sampler {
    type Err = Error;
    fn from_str(s: &str) -> Result<Self> {
        match s {
            "dense" => Ok(Sampler::Dense),
            "tridiagonal" => Ok(Sampler::Tridiagonal),
            other => Err(Error::Precondition(format!("unknown sampler {other:?}"))),
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct EnsembleSpec {
    pub n: usize,
    pub beta: f64,
    pub scaling: Scaling,
    pub sampler: Sampler,
}

impl EnsembleSpec {
    pub fn goe(n: usize, sampler: Sampler) -> Self {
        Self { n, beta: 1.0, scaling: Scaling::Standard, sampler }
    }

    pub fn validate(&self) -> Result<()> {
        if !(self.beta > 0.0 && self.beta.is_finite()) {
            return Err(Error::Precondition(format!("beta must be positive, got {}", self.beta)));
        }
        if self.beta != 1.0 && self.sampler == Sampler::Dense {
            return Err(Error::Precondition("dense sampler only supports beta = 1".into()));
        }
        if self.beta != 1.0 && self.scaling == Scaling::Standard {
            return Err(Error::Precondition("standard scaling only valid for beta = 1".into()));
        }
        let max = match self.sampler {
            Sampler::Dense => MAX_DENSE_N,
            Sampler::Tridiagonal => MAX_TRIDIAGONAL_N,
        };
        if self.n < 2 || self.n > max {
            return Err(Error::OutOfRange(format!("{} sampler needs 2 <= n <= {max}, got {}", self.sampler, self.n)));
        }
        Ok(())
    }
}

/// Sorted eigenvalues of one sampled matrix.
#[derive(Debug, Clone, PartialEq)]
pub struct Spectrum {
    pub values: Vec<f64>,
    pub spec: EnsembleSpec,
    pub seed: u64,
    pub trial_index: u64,
    /// Redraws caused by exact eigenvalue ties.
    pub resamples: u32,
}

impl Spectrum {
    pub fn n(&self) -> usize {
        self.values.len()
    }
}

fn has_tie(values: &[f64]) -> bool {
    values.windows(2).any(|w| w[1] <= w[0])
}

fn draw_with_tie_policy<F>(spec: EnsembleSpec, stream: &SeedStream, trial_index: u64, draw: F) -> Result<Spectrum>
where
    F: Fn(&mut CounterRng) -> Result<Vec<f64>>,
{
    spec.validate()?;
    let mut resamples = 0;
    loop {
        let effective = trial_index.wrapping_add(TIE_RESAMPLE_OFFSET.wrapping_mul(resamples as u64));
        let mut rng = stream.stream(effective);
        let values = draw(&mut rng).map_err(|e| match e {
            Error::NonConvergence { .. } => Error::NonConvergence { trial: Some(trial_index) },
            other => other,
        })?;
        if !has_tie(&values) {
            return Ok(Spectrum { values, spec, seed: stream.base_seed, trial_index, resamples });
        }
        resamples += 1;
        if resamples > MAX_TIE_RESAMPLES {
            return Err(Error::Precondition(format!(
                "trial {trial_index}: eigenvalue ties persisted after {MAX_TIE_RESAMPLES} redraws"
            )));
        }
    }
}

/// Dense GOE: eigenvalues of `(A + Aᵀ)/2` with iid standard normal `A`.
pub fn sample_goe_dense(n: usize, stream: &SeedStream, trial_index: u64) -> Result<Spectrum> {
    let spec = EnsembleSpec::goe(n, Sampler::Dense);
    draw_with_tie_policy(spec, stream, trial_index, |rng| {
        let raw: Vec<f64> = (0..n * n).map(|_| rng.standard_normal()).collect();
        let mut m = vec![0.0; n * n];
        for i in 0..n {
            for j in 0..=i {
                let v = 0.5 * (raw[i * n + j] + raw[j * n + i]);
                m[i * n + j] = v;
                m[j * n + i] = v;
            }
        }
        eigen_symmetric(m, n)
    })
}

/// Tridiagonal Gβ-ensemble: diagonal `N(0,2)/√2`, sub-diagonal
/// `χ_{(n-i)β}/√2` for `i = 1..n-1`. With [`Scaling::NBeta`] the
/// spectrum is divided by `√(nβ)`.
pub fn sample_gbeta_tridiag(
    n: usize,
    beta: f64,
    scaling: Scaling,
    stream: &SeedStream,
    trial_index: u64,
) -> Result<Spectrum> {
    let spec = EnsembleSpec { n, beta, scaling, sampler: Sampler::Tridiagonal };
    draw_with_tie_policy(spec, stream, trial_index, |rng| {
        let s = std::f64::consts::FRAC_1_SQRT_2;
        let diag: Vec<f64> = (0..n).map(|_| rng.normal(0.0, 2f64.sqrt()) * s).collect();
        let off: Vec<f64> = (1..n).map(|i| rng.chi((n - i) as f64 * beta) * s).collect();
        let mut values = eigen_tridiagonal(&diag, &off)?;
        if scaling == Scaling::NBeta {
            let f = 1.0 / (n as f64 * beta).sqrt();
            values.iter_mut().for_each(|v| *v *= f);
        }
        Ok(values)
    })
}

/// Dispatches on `spec.sampler`.
pub fn sample(spec: &EnsembleSpec, stream: &SeedStream, trial_index: u64) -> Result<Spectrum> {
    spec.validate()?;
    match spec.sampler {
        Sampler::Dense => sample_goe_dense(spec.n, stream, trial_index),
        Sampler::Tridiagonal => sample_gbeta_tridiag(spec.n, spec.beta, spec.scaling, stream, trial_index),
    }
}
