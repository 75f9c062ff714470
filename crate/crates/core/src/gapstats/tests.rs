use super::*;
use approx::assert_relative_eq;
use proptest::prelude::*;

fn iv(lo: f64, hi: f64) -> Interval {
    Interval::new(lo, hi).unwrap()
}

fn equispaced(n: usize, step: f64) -> Vec<f64> {
    (0..n).map(|i| i as f64 * step).collect()
}

/// Ordered k-tuples of index pairs by direct enumeration of all `2k` indices.
fn rho_brute(spectrum: &[f64], a: Interval, k: usize) -> u64 {
    let n = spectrum.len();
    let all: Vec<(usize, usize)> = (0..n).flat_map(|i| ((i + 1)..n).map(move |j| (i, j))).collect();
    let ok = |&(i, j): &(usize, usize)| a.contains(n as f64 * (spectrum[j] - spectrum[i]));
    fn rec(all: &[(usize, usize)], ok: &dyn Fn(&(usize, usize)) -> bool, chosen: &mut Vec<usize>, left: usize) -> u64 {
        if left == 0 {
            return 1;
        }
        let mut total = 0;
        for p in all {
            if ok(p) && !chosen.contains(&p.0) && !chosen.contains(&p.1) {
                chosen.push(p.0);
                chosen.push(p.1);
                total += rec(all, ok, chosen, left - 1);
                chosen.truncate(chosen.len() - 2);
            }
        }
        total
    }
    rec(&all, &ok, &mut Vec::new(), k)
}

#[test]
fn chi_examples() {
    let n = 3.0;
    assert_eq!(chi_count(&[0.0, 1.0 / n, 5.0 / n], iv(0.0, 2.0)), 1);
    assert_eq!(chi_count(&[0.0, 1.0 / n, 5.0 / n], iv(0.0, 1e12)), 2);
    assert_eq!(chi_count(&equispaced(10, 0.3), iv(0.0, 2.0)), 0);
}

#[test]
fn chi_tilde_examples() {
    let s = [0.0, 0.4 / 3.0, 0.9 / 3.0];
    let c = chi_tilde_counts(&s, iv(0.0, 1.0), 2);
    assert_eq!(c.per_lag, vec![2, 1]);
    assert_eq!(c.total, 3);
    assert_eq!(c.per_lag[0], chi_count(&s, iv(0.0, 1.0)));

    let n = 12;
    let c = chi_tilde_counts(&equispaced(n, 0.6 / n as f64), iv(0.0, 1.0), 3);
    assert_eq!(c.per_lag, vec![n as u64 - 1, 0, 0]);
    assert_eq!(c.total, n as u64 - 1);
}

#[test]
fn rho_examples() {
    // two disjoint close pairs, far apart
    let s = [0.0, 0.01, 5.0, 5.01];
    let a = iv(0.0, 0.1);
    assert_eq!(rho_count(&s, a, 1).unwrap(), 2);
    assert_eq!(rho_count(&s, a, 2).unwrap(), 2);
    // two overlapping pairs sharing the middle index
    let s = [0.0, 0.01, 0.025, 9.0];
    assert_eq!(rho_count(&s, iv(0.0, 0.07), 1).unwrap(), 2);
    assert_eq!(rho_count(&s, iv(0.0, 0.07), 2).unwrap(), 0);
    assert!(rho_count(&s, a, 0).is_err());
    assert!(rho_count(&s, a, 5).is_err());
}

#[test]
fn rho_rejects_huge_pair_sets() {
    let s = equispaced(200, 1e-6);
    assert!(matches!(rho_count(&s, iv(0.0, 10.0), 1), Err(Error::Size(_))));
}

#[test]
fn cluster_span_examples() {
    let n = 5.0;
    let c1 = 1.0;
    assert_eq!(cluster_span(&equispaced(5, 3.0 / n), c1).unwrap(), 0);
    assert_eq!(cluster_span(&[0.0, 0.1 / n, 3.0 / n, 6.0 / n, 9.0 / n], c1).unwrap(), 1);
    assert_eq!(cluster_span(&[0.0, 0.5 / n, 1.0 / n, 6.0 / n, 9.0 / n], c1).unwrap(), 2);
    assert!(cluster_span(&[0.0, 1.0], 0.0).is_err());
}

#[test]
fn tau_examples() {
    assert_relative_eq!(kth_gap_tau(&[0.0, 1.0], 1).unwrap(), 2f64.sqrt() / 2.0, epsilon = 1e-15);
    let s = equispaced(8, 0.25);
    assert_relative_eq!(kth_gap_tau(&s, 1).unwrap(), 8.0 * 0.25 / 2f64.powf(1.5), epsilon = 1e-14);
    assert!(kth_gap_tau(&s, 8).is_err());
    assert!(kth_gap_tau(&s, 0).is_err());
}

#[test]
fn limiting_cdf_examples() {
    assert_relative_eq!(limiting_tau_cdf(1, 0.5), 1.0 - (-0.25f64).exp(), epsilon = 1e-14);
    assert_relative_eq!(limiting_tau_cdf(1, 0.5), 0.2211992, epsilon = 1e-7);
    for k in 1..5 {
        assert_eq!(limiting_tau_cdf(k, 0.0), 0.0);
    }
    assert!((limiting_tau_cdf(2, 10.0) - 1.0).abs() < 1e-12);
}

#[test]
fn limiting_density_matches_cdf_derivative() {
    for k in 1..=4 {
        for i in 1..=50 {
            let x = i as f64 * 0.06;
            let h = 1e-5;
            let fd = (limiting_tau_cdf(k, x + h) - limiting_tau_cdf(k, x - h)) / (2.0 * h);
            assert!((fd - limiting_tau_pdf(k, x)).abs() < 1e-6, "k={k} x={x}");
        }
    }
}

#[test]
fn poisson_intensity_examples() {
    assert_relative_eq!(poisson_intensity(iv(0.0, 1.0)), 0.125);
    assert_relative_eq!(poisson_intensity(iv(0.0, 2.0)), 0.5);
    assert_eq!(poisson_intensity(iv(1.0, 1.0)), 0.0);
}

#[test]
fn interval_parsing() {
    assert_eq!("0,2".parse::<Interval>().unwrap(), iv(0.0, 2.0));
    assert_eq!("(0.5, 1)".parse::<Interval>().unwrap(), iv(0.5, 1.0));
    assert!("2,1".parse::<Interval>().is_err());
    assert!("x".parse::<Interval>().is_err());
    assert!(!iv(0.0, 1.0).contains(0.0));
    assert!(!iv(0.0, 1.0).contains(1.0));
}

#[test]
fn ks_degenerate_and_shifted() {
    let cdf = |x: f64| 1.0 - (-x * x).exp();
    let same = EmpiricalDistribution::new(vec![0.5; 20]).unwrap();
    let r = ks_test(&same, cdf).unwrap();
    assert_relative_eq!(r.statistic, cdf(0.5).max(1.0 - cdf(0.5)), epsilon = 1e-15);

    let shifted = EmpiricalDistribution::new((0..1000).map(|i| 10.0 + i as f64 * 1e-3).collect()).unwrap();
    let r = ks_test(&shifted, cdf).unwrap();
    assert!(r.statistic > 0.99 && r.p_value < 1e-12);
    assert!(ks_test(&EmpiricalDistribution::new(vec![1.0; 5]).unwrap(), cdf).is_err());
}

#[test]
fn ks_self_consistency() {
    use crate::ensemble::CounterRng;
    let mut rejections = 0;
    for rep in 0..100u64 {
        let mut rng = CounterRng::new(0xC0FFEE + rep);
        // inverse transform of 1 - e^{-x²}
        let xs: Vec<f64> = (0..10_000).map(|_| (-(1.0 - rng.uniform()).ln()).sqrt()).collect();
        let r = ks_test(&EmpiricalDistribution::new(xs).unwrap(), |x| limiting_tau_cdf(1, x)).unwrap();
        if r.p_value <= 0.001 {
            rejections += 1;
        }
    }
    assert!(rejections <= 1, "{rejections}");
}

#[test]
fn kolmogorov_series_branches_agree() {
    // both branches are valid near the switch point
    let l = 1.18;
    let pi2 = std::f64::consts::PI.powi(2);
    let theta: f64 = 1.0
        - (2.0 * std::f64::consts::PI).sqrt() / l
            * (1..50).map(|j| (-((2 * j - 1) as f64).powi(2) * pi2 / (8.0 * l * l)).exp()).sum::<f64>();
    assert_relative_eq!(kolmogorov_q(l), theta, epsilon = 1e-12);
    assert_relative_eq!(kolmogorov_q(1.0), 0.26999967, epsilon = 1e-7);
    assert_eq!(kolmogorov_q(0.0), 1.0);
}

#[test]
fn two_sample_ks() {
    let a = EmpiricalDistribution::new((0..500).map(|i| i as f64 / 500.0).collect()).unwrap();
    let b = EmpiricalDistribution::new((0..400).map(|i| (i as f64 + 0.5) / 400.0).collect()).unwrap();
    let r = ks_two_sample(&a, &b).unwrap();
    assert!(r.statistic < 0.01 && r.p_value > 0.99);
    let c = EmpiricalDistribution::new((0..400).map(|i| 2.0 + i as f64).collect()).unwrap();
    let r = ks_two_sample(&a, &c).unwrap();
    assert_eq!(r.statistic, 1.0);
    assert!(r.p_value < 1e-12);
}

#[test]
fn factorial_moment_examples() {
    assert_eq!(factorial_moment(&[0, 0, 0], 2), 0.0);
    assert_eq!(factorial_moment(&[2, 2], 2), 2.0);
    assert_eq!(factorial_moment(&[3], 3), 6.0);
    assert_eq!(factorial_moment(&[1, 5], 1), 3.0);
}

fn poisson_draws(mu: f64, count: usize, seed: u64) -> Vec<u64> {
    use crate::ensemble::CounterRng;
    let mut rng = CounterRng::new(seed);
    let limit = (-mu).exp();
    (0..count)
        .map(|_| {
            let (mut k, mut prod) = (0, rng.uniform());
            while prod > limit {
                k += 1;
                prod *= rng.uniform();
            }
            k
        })
        .collect()
}

#[test]
fn factorial_moment_of_poisson() {
    let mu = 1.3;
    let m = 20_000;
    let draws = poisson_draws(mu, m, 99);
    let f2 = factorial_moment(&draws, 2);
    // Var[c(c-1)] = 4μ³ + 2μ² for Poisson
    let sd = ((4.0 * mu.powi(3) + 2.0 * mu * mu) / m as f64).sqrt();
    assert!((f2 - mu * mu).abs() < 3.0 * sd, "{f2}");
}

#[test]
fn poisson_gof_self_consistency() {
    let mut passes = 0;
    for rep in 0..100 {
        let r = poisson_gof(&poisson_draws(0.5, 1000, 1000 + rep), 0.5).unwrap();
        if r.p_value > 0.01 {
            passes += 1;
        }
    }
    assert!(passes >= 95, "{passes}");
}

#[test]
fn poisson_gof_rejects_and_degenerates() {
    let r = poisson_gof(&vec![3; 300], 0.5).unwrap();
    assert!(r.p_value < 1e-6);
    let r = poisson_gof(&vec![0; 300], 1e-4).unwrap();
    assert_eq!(r.degrees_of_freedom, 0);
    assert_eq!(r.p_value, 1.0);
    assert!(poisson_gof(&vec![0; 300], 0.0).is_err());
    assert!(poisson_gof(&[0; 10], 1.0).is_err());
    let cells = poisson_gof(&poisson_draws(2.0, 500, 7), 2.0).unwrap().cells;
    assert!(cells.iter().all(|c| c.2 >= 5.0));
    assert_eq!(cells.iter().map(|c| c.1).sum::<u64>(), 500);
}

#[test]
fn summary_row_matches_header() {
    let cfg = SummaryConfig { intervals: vec![iv(0.0, 1.0), iv(0.5, 2.0)], k_max: 3, j_max: 2, rho_k_max: 2, c1: 1.0 };
    let s: Vec<f64> = (0..10).map(|i| (i as f64).powf(1.3) / 10.0).collect();
    let g = GapSummary::new(&s, 7, &cfg).unwrap();
    assert_eq!(GapSummary::csv_header(&cfg).split(',').count(), g.csv_row().split(',').count());
    assert!(g.tau.windows(2).all(|w| w[0] <= w[1]));
    assert!(GapSummary::new(&s, 0, &SummaryConfig { k_max: 10, ..cfg }).is_err());
}

#[test]
fn empirical_distribution_basics() {
    let e = EmpiricalDistribution::new(vec![3.0, 1.0, 2.0]).unwrap();
    assert_eq!(e.values(), &[1.0, 2.0, 3.0]);
    assert_eq!(e.cdf(2.0), 2.0 / 3.0);
    assert_eq!(e.quantile(0.5), 2.0);
    assert!(EmpiricalDistribution::new(vec![]).is_err());
    assert!(EmpiricalDistribution::new(vec![f64::NAN]).is_err());
    assert!(e.to_csv("x").starts_with("x\n"));
}

fn spectrum_strategy() -> impl Strategy<Value = Vec<f64>> {
    (3usize..11)
        .prop_flat_map(|n| {
            prop::collection::vec(0.0f64..1.0, n).prop_map(|mut v| {
                v.sort_by(f64::total_cmp);
                v.dedup();
                v
            })
        })
        .prop_filter("need at least three distinct points", |v| v.len() >= 3)
}

proptest! {
    #[test]
    fn rho_matches_brute_force(s in spectrum_strategy(), hi in 0.1f64..4.0, k in 1usize..4) {
        let a = iv(0.0, hi);
        prop_assume!(qualifying_pairs(&s, a).unwrap().len() <= 12);
        prop_assert_eq!(rho_count(&s, a, k).unwrap(), rho_brute(&s, a, k));
    }

    #[test]
    fn count_orderings(s in spectrum_strategy(), lo in 0.0f64..1.0, w in 0.0f64..3.0) {
        let a = iv(lo, lo + w);
        let ct = chi_tilde_counts(&s, a, 1);
        prop_assert!(chi_count(&s, a) <= ct.total);
        prop_assert_eq!(rho_count(&s, a, 1).unwrap(), ct.total);
        let taus: Vec<f64> = (1..s.len()).map(|k| kth_gap_tau(&s, k).unwrap()).collect();
        prop_assert!(taus.windows(2).all(|w| w[0] <= w[1]));
    }

    #[test]
    fn lemma14_sandwich(s in spectrum_strategy(), c1 in 0.2f64..3.0, frac in 0.1f64..1.0, k in 1usize..4) {
        let a_span = cluster_span(&s, c1).unwrap();
        let inner = iv(0.0, frac * c1);
        let chi_t = chi_tilde_counts(&s, inner, 1).total;
        let gap = falling_factorial(chi_t, k) - rho_count(&s, inner, k).unwrap() as f64;
        let bound = (k * (k - 1)) as f64
            * a_span.saturating_sub(1) as f64
            * (chi_t as f64).powi(k as i32 - 1);
        prop_assert!(gap >= 0.0 && gap <= bound, "gap {} bound {}", gap, bound);

        if a_span + 1 >= 2 * k {
            let rho1 = rho_count(&s, iv(0.0, 2.0 * c1), k).unwrap() as f64;
            let m = a_span + 1;
            let lower = ((m - 2 * k + 1)..=m).map(|v| v as f64).product::<f64>() / 2f64.powi(k as i32);
            prop_assert!(rho1 >= lower, "rho {} lower {}", rho1, lower);
        }
    }

    #[test]
    fn limiting_cdf_is_monotone(k in 1usize..6, x in 0.0f64..5.0, dx in 0.0f64..1.0) {
        let (a, b) = (limiting_tau_cdf(k, x), limiting_tau_cdf(k, x + dx));
        prop_assert!((0.0..=1.0).contains(&a) && a <= b + 1e-15);
    }
}
