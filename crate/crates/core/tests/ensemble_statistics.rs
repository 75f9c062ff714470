use rmtgaps_core::ensemble::{sample, EnsembleSpec, Sampler, Scaling, SeedStream};
use rmtgaps_core::gapstats::{ks_test, EmpiricalDistribution};

fn spectra(spec: EnsembleSpec, seed: u64, trials: u64) -> Vec<Vec<f64>> {
    let stream = SeedStream::new(seed);
    (0..trials).map(|t| sample(&spec, &stream, t).unwrap().values).collect()
}

fn two_by_two_gap_law(sampler: Sampler) -> f64 {
    let gaps: Vec<f64> = spectra(EnsembleSpec::goe(2, sampler), 17, 100_000).iter().map(|v| v[1] - v[0]).collect();
    let e = EmpiricalDistribution::new(gaps).unwrap();
    ks_test(&e, |s| 1.0 - (-s * s / 4.0).exp()).unwrap().statistic
}

#[test]
fn dense_two_by_two_gap_law() {
    let d = two_by_two_gap_law(Sampler::Dense);
    assert!(d < 0.01, "{d}");
}

#[test]
fn tridiagonal_two_by_two_gap_law() {
    let d = two_by_two_gap_law(Sampler::Tridiagonal);
    assert!(d < 0.01, "{d}");
}

#[test]
fn two_by_two_trace_is_centred() {
    let trials = 20_000;
    let mean = spectra(EnsembleSpec::goe(2, Sampler::Dense), 5, trials).iter().map(|v| v[0] + v[1]).sum::<f64>()
        / trials as f64;
    // Var(M11 + M22) = 2
    assert!(mean.abs() < 3.0 * (2.0 / trials as f64).sqrt(), "{mean}");
}

#[test]
fn second_moment_of_trace() {
    let n = 50;
    let trials = 2000;
    let m2: Vec<f64> = spectra(EnsembleSpec::goe(n, Sampler::Dense), 8, trials)
        .iter()
        .map(|v| v.iter().map(|x| x * x).sum())
        .collect();
    let mean = m2.iter().sum::<f64>() / trials as f64;
    // Tr M² has mean n(n+1)/2 and variance n(n+1)
    let nf = n as f64;
    let se = (nf * (nf + 1.0) / trials as f64).sqrt();
    assert!((mean - nf * (nf + 1.0) / 2.0).abs() < 3.0 * se, "{mean}");
}

#[test]
fn semicircle_window_mass() {
    let n = 500;
    let v = &spectra(EnsembleSpec::goe(n, Sampler::Dense), 3, 1)[0];
    let half = (2.0 * n as f64).sqrt() * 0.5;
    let frac = v.iter().filter(|x| x.abs() <= half).count() as f64 / n as f64;
    let p = 2.0 / std::f64::consts::PI * (0.5 * 0.75f64.sqrt() + 0.5f64.asin());
    let sigma = (p * (1.0 - p) / n as f64).sqrt();
    assert!((frac - p).abs() < 3.0 * sigma, "{frac} vs {p}");
}

#[test]
fn consecutive_trials_are_uncorrelated() {
    let trials = 10_000;
    let top: Vec<f64> =
        spectra(EnsembleSpec::goe(20, Sampler::Tridiagonal), 21, trials).iter().map(|v| *v.last().unwrap()).collect();
    let mean = top.iter().sum::<f64>() / trials as f64;
    let var = top.iter().map(|x| (x - mean).powi(2)).sum::<f64>();
    let cov = top.windows(2).map(|w| (w[0] - mean) * (w[1] - mean)).sum::<f64>();
    let r = cov / var;
    assert!(r.abs() < 3.0 / (trials as f64).sqrt(), "{r}");
}

#[test]
fn spectra_are_reproducible_and_strictly_increasing() {
    for sampler in [Sampler::Dense, Sampler::Tridiagonal] {
        let a = spectra(EnsembleSpec::goe(40, sampler), 99, 20);
        let b = spectra(EnsembleSpec::goe(40, sampler), 99, 20);
        assert_eq!(a, b);
        assert!(a.iter().all(|v| v.windows(2).all(|w| w[0] < w[1])));
    }
}

#[test]
fn beta_scaling_normalizes_the_edge() {
    // under exp(-nβΣλ²/2) the spectrum fills [-√2, √2]
    for beta in [1.0, 2.0, 4.0] {
        let spec = EnsembleSpec { n: 400, beta, scaling: Scaling::NBeta, sampler: Sampler::Tridiagonal };
        let v = &spectra(spec, 4, 1)[0];
        let edge = v.last().unwrap();
        assert!((edge - 2f64.sqrt()).abs() < 0.05, "beta {beta}: {edge}");
    }
}
