//! Deterministic verification suites for the exact side of the library.

use clap::ValueEnum;
use num_bigint::BigInt;
use rmtgaps_core::ensemble::rng::{CounterRng, SeedStream, GOLDEN_GAMMA};
use rmtgaps_core::hermite::{hermite_closed_form, hermite_poly, lemma10_slack, orthonormality_defect, BandIntegrals};
use rmtgaps_core::loggas::*;
use rmtgaps_core::skewlin::{pfaffian_exact, pfaffian_numeric, SkewMatrix};

use crate::config::{ExperimentConfig, Thresholds};
use crate::report::{csv_table, Check};
use crate::CliError;

pub const CASES: u64 = 100;
pub const ROOT_SETS: u64 = 1000;
pub const BAND_CASES: u64 = 60;

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum Suite {
    Pfaffian,
    Hermite,
    Lemma9,
    Lemma10,
    Lemma12,
    Dpoly,
    Coefficients,
}

impl Suite {
    pub fn name(self) -> &'static str {
        match self {
            Suite::Pfaffian => "pfaffian",
            Suite::Hermite => "hermite",
            Suite::Lemma9 => "lemma9",
            Suite::Lemma10 => "lemma10",
            Suite::Lemma12 => "lemma12",
            Suite::Dpoly => "dpoly",
            Suite::Coefficients => "coefficients",
        }
    }
}

/// Checks plus any extra CSV tables the suite produces.
pub struct SuiteOutput {
    pub checks: Vec<Check>,
    pub tables: Vec<(String, String)>,
}

pub fn run_suite(suite: Suite, cfg: &ExperimentConfig) -> Result<SuiteOutput, CliError> {
    let t = &cfg.thresholds;
    let mut tables = Vec::new();
    let checks = match suite {
        Suite::Pfaffian => pfaffian_checks(cfg.seed, t)?,
        Suite::Hermite => hermite_checks(t)?,
        Suite::Lemma9 => {
            let report = lemma9(cfg.n_max)?;
            tables.push(("lemma9_table.csv".to_string(), report.to_csv()));
            vec![Check::below("lemma9_max_abs_error", report.max_error, t.lemma9_max_error)]
        }
        Suite::Lemma10 => lemma10_checks(cfg.seed, t)?,
        Suite::Lemma12 => lemma12_checks(t)?,
        Suite::Dpoly => dpoly_checks(t)?,
        Suite::Coefficients => coefficient_checks(cfg.seed, t)?,
    };
    Ok(SuiteOutput { checks, tables })
}

pub fn lemma9(n_max: usize) -> Result<Lemma9Report, CliError> {
    if !(2..=MAX_PFAFFIAN_N).contains(&n_max) {
        return Err(CliError::Usage(format!("--n-max must lie in 2..={MAX_PFAFFIAN_N}, got {n_max}")));
    }
    verify_lemma9(n_max).map_err(internal)
}

/// CSV of all checks, one row each.
pub fn checks_csv(checks: &[Check]) -> String {
    let fmt = |v: Option<f64>| v.map(|x| format!("{x:.10e}")).unwrap_or_default();
    csv_table(
        &["name", "value", "expected", "threshold", "passed"],
        checks.iter().map(|c| {
            vec![
                c.name.clone(),
                fmt(c.value),
                fmt(c.expected),
                c.threshold.clone().unwrap_or_default().replace(',', ";"),
                c.passed.map(|p| p.to_string()).unwrap_or_default(),
            ]
        }),
    )
}

fn internal(e: rmtgaps_core::Error) -> CliError {
    CliError::Internal(e.to_string())
}

fn case_rng(seed: u64, salt: u64, case: u64) -> CounterRng {
    SeedStream::new(seed ^ salt.wrapping_mul(GOLDEN_GAMMA)).stream(case)
}

fn uniform(rng: &mut CounterRng, lo: f64, hi: f64) -> f64 {
    lo + (hi - lo) * rng.uniform()
}

fn random_skew(rng: &mut CounterRng, dim: usize) -> SkewMatrix<f64> {
    SkewMatrix::from_upper(dim, |_, _| uniform(rng, -2.0, 2.0))
}

fn rel(a: f64, b: f64, floor: f64) -> f64 {
    (a - b).abs() / b.abs().max(floor)
}

fn dense_det(rows: &[Vec<f64>]) -> f64 {
    let n = rows.len();
    determinant(rows.iter().flatten().copied().collect(), n)
}

pub fn pfaffian_checks(seed: u64, t: &Thresholds) -> Result<Vec<Check>, CliError> {
    let (mut det_err, mut cong_err, mut scale_err, mut exact_err) = (0.0f64, 0.0f64, 0.0f64, 0.0f64);
    for case in 0..CASES {
        let mut rng = case_rng(seed, 1, case);
        let dim = 2 * (1 + (case as usize % 5));
        let x = random_skew(&mut rng, dim);
        let pf = pfaffian_numeric(&x).map_err(internal)?;
        let det = dense_det(&x.rows());
        det_err = det_err.max(rel(pf * pf, det, 1e-12));

        let b: Vec<Vec<f64>> = (0..dim).map(|_| (0..dim).map(|_| uniform(&mut rng, -1.5, 1.5)).collect()).collect();
        let lhs = pfaffian_numeric(&x.congruence(&b)).map_err(internal)?;
        cong_err = cong_err.max(rel(lhs, dense_det(&b) * pf, 1e-10));

        let s = uniform(&mut rng, 0.2, 3.0);
        let scaled = pfaffian_numeric(&x.scaled(&s)).map_err(internal)?;
        scale_err = scale_err.max(rel(scaled, s.powi(dim as i32 / 2) * pf, 1e-12));

        let dim = 2 * (1 + (case as usize % 6));
        let y = random_skew(&mut rng, dim);
        let exact = pfaffian_exact(&y).map_err(internal)?;
        let numeric = pfaffian_numeric(&y).map_err(internal)?;
        exact_err = exact_err.max(rel(numeric, exact, 1.0));
    }
    Ok(vec![
        Check::below("pf_squared_vs_det_rel", det_err, t.pfaffian_det_rel),
        Check::below("congruence_rel", cong_err, t.pfaffian_congruence_rel),
        Check::below("scaling_rel", scale_err, t.pfaffian_scaling_rel),
        Check::below("exact_vs_numeric_rel", exact_err, t.pfaffian_exact_rel),
    ])
}

pub fn hermite_checks(t: &Thresholds) -> Result<Vec<Check>, CliError> {
    let ortho = orthonormality_defect(30, 64).map_err(internal)?;
    let mut mismatches = 0;
    for j in 0..=40 {
        if hermite_poly::<BigInt>(j).map_err(internal)? != hermite_closed_form(j).map_err(internal)? {
            mismatches += 1;
        }
    }
    let mut checks = vec![
        Check::below("orthonormality_defect_j30_m64", ortho, t.orthonormality_max),
        Check::zero_failures("hermite_recurrence_vs_closed_form_mismatches", mismatches),
    ];
    checks.extend(dn_identity_checks(t)?);
    checks.push(dn_recurrence_check(t)?);
    Ok(checks)
}

fn dn_identity_checks(t: &Thresholds) -> Result<Vec<Check>, CliError> {
    let tables = CoefficientTables::new(12);
    let (mut plain, mut primed) = (0.0f64, 0.0f64);
    for n in (2..=12).step_by(2) {
        plain = plain.max(dn_pfaffian_defect(n, &tables).map_err(internal)?);
        primed = primed.max(dn_prime_pfaffian_defect(n, &tables).map_err(internal)?);
    }
    Ok(vec![
        Check::below("pf_b_plus_lambda_sq_a_times_pf_b_vs_dn", plain, t.polynomial_identity_rel),
        Check::below("pf_b_prime_plus_lambda_sq_a_times_pf_b_vs_2lambda_dn_minus_1", primed, t.polynomial_identity_rel),
    ])
}

fn dn_recurrence_check(t: &Thresholds) -> Result<Check, CliError> {
    let mut worst = 0.0f64;
    for n in 0..=40 {
        let closed = poly_to_f64(&dn_poly(n).map_err(internal)?);
        worst = worst.max(coefficientwise_defect(&poly_to_f64(&dn_recurrence(n)), &closed));
    }
    Ok(Check::below("dn_recurrence_vs_closed_form_rel", worst, t.dn_recurrence_rel))
}

pub fn dpoly_checks(t: &Thresholds) -> Result<Vec<Check>, CliError> {
    let tables = CoefficientTables::new(20);
    let mut laplace = 0.0f64;
    for n in (2..=12).step_by(2) {
        laplace = laplace.max(laplace_defect(n, &tables).map_err(internal)?);
    }
    let ba = (2..=20).step_by(2).map(|n| ba_product_defect(n, &tables)).fold(0.0, f64::max);
    let mut checks = vec![
        Check::below("laplace_expansion_rel", laplace, t.laplace_rel),
        Check::below("ba_plus_four_identity_abs", ba, t.ba_product_abs),
    ];
    checks.extend(dn_identity_checks(t)?);
    checks.push(dn_recurrence_check(t)?);
    Ok(checks)
}

pub fn lemma10_checks(seed: u64, t: &Thresholds) -> Result<Vec<Check>, CliError> {
    let mut violations = 0;
    let mut worst_ratio = 0.0f64;
    for case in 0..ROOT_SETS {
        let mut rng = case_rng(seed, 2, case);
        let m = (rng.next_u64() % 11) as usize;
        let roots: Vec<f64> = (0..m).map(|_| uniform(&mut rng, -6.0, 6.0)).collect();
        let (lhs, rhs) = lemma10_slack(&roots, m + 1).map_err(internal)?;
        worst_ratio = worst_ratio.max(lhs / rhs);
        if lhs > rhs * (1.0 + t.fdt_slack) {
            violations += 1;
        }
    }
    let mut band_violations = 0;
    for case in 0..BAND_CASES {
        let mut rng = case_rng(seed, 3, case);
        let m = (rng.next_u64() % 7) as usize;
        let roots: Vec<f64> = (0..m).map(|_| uniform(&mut rng, -3.0, 3.0)).collect();
        let n = (m + 1) as f64;
        let c = uniform(&mut rng, 0.05, 0.99) * (1.0 / (2.0 * n)).sqrt();
        let (p, q) = (rng.uniform(), rng.uniform());
        let a = p.min(q) * c;
        let b = (p.max(q) * c).max(a + 1e-3 * c);
        let band = BandIntegrals::new(&roots).map_err(internal)?;
        let norm = band.norm_sq();
        let (up, down) = (1.0 + t.band_slack, 1.0 - t.band_slack);
        let shrink = 1.0 - n * c * c;
        let full = band.symmetric_band(0.0, c);
        let phi = (b * b - a * a) / 2.0;
        let part = band.symmetric_band(a, b);
        let ok = full <= c * c * norm * up
            && full >= shrink * c * c * norm * down
            && part <= 2.0 * phi * norm * up
            && part >= shrink * 2.0 * phi * norm * down
            && band.root_squares(c) <= n * c.powi(4) * norm * up;
        if !ok {
            band_violations += 1;
        }
    }
    Ok(vec![
        Check::zero_failures("derivative_energy_violations", violations),
        Check::diagnostic("derivative_energy_worst_ratio", worst_ratio),
        Check::zero_failures("band_sandwich_violations", band_violations),
    ])
}

pub fn lemma12_checks(t: &Thresholds) -> Result<Vec<Check>, CliError> {
    let tol = t.quadrature_rel;
    let quad = |n: usize, c: GapConstraint, l: usize| integrate_constrained(n, &c, l).map_err(internal);
    let mut checks = Vec::new();
    for n in [2usize, 3] {
        for c in [0.05, 0.1] {
            let g = GapConstraint::below(1, c).map_err(internal)?;
            let r = quad(n, g, 0)? / quad(n, g, 1)?;
            let lo = (1.0 - n as f64 * c * c) * c * c * (1.0 - tol);
            checks.push(Check::between(format!("sandwich_n{n}_k1_l0_c{c}"), r, lo, c * c * (1.0 + tol)));
        }
        let (a, b) = (0.05, 0.1);
        let g = GapConstraint::interval(1, a, b).map_err(internal)?;
        let r = quad(n, g, 0)? / quad(n, g, 1)?;
        let mass = b * b - a * a;
        let lo = (1.0 - n as f64 * b * b) * mass * (1.0 - tol);
        checks.push(Check::between(format!("interval_sandwich_n{n}_a{a}_b{b}"), r, lo, mass * (1.0 + tol)));
    }
    let e311 = quad(3, GapConstraint::below(1, 0.5).map_err(internal)?, 1)?;
    let g11 = partition_general(1, 1).map_err(internal)?;
    let g3 = gn_closed(3).map_err(internal)?;
    checks.push(Check::below("e311_vs_g11_rel", rel(e311, g11, 0.0), tol).with_expected(g11));
    checks.push(Check::below("e311_vs_quarter_g3_rel", rel(e311, g3 / 4.0, 0.0), tol).with_expected(g3 / 4.0));
    checks.push(Check::below(
        "e311_vs_closed_value_rel",
        rel(e311, 1.5 * 2f64.sqrt() * std::f64::consts::PI, 0.0),
        tol,
    ));
    Ok(checks)
}

pub fn coefficient_checks(seed: u64, t: &Thresholds) -> Result<Vec<Check>, CliError> {
    let mut alpha = 0.0f64;
    for j in 1..=12 {
        for k in 1..=12 {
            alpha = alpha.max((alpha_quadrature(j, k).map_err(internal)? - alpha_coeff(j, k)).abs());
        }
    }
    let nu_even = (1..=20).filter(|k| k % 2 == 0).map(|k| nu_coeff(k).abs()).fold(0.0, f64::max);
    let nu1 = 2f64.sqrt() * std::f64::consts::PI.powf(0.25);

    let mut jn = 0.0f64;
    for case in 0..CASES {
        let mut rng = case_rng(seed, 4, case);
        let n = 1 + case as usize % 8;
        let xs: Vec<f64> = (0..n).map(|_| uniform(&mut rng, -2.5, 2.5)).collect();
        let direct = jn_eval(&xs);
        let det = jn_determinant_form(&xs).map_err(internal)?;
        jn = jn.max(rel(det, direct, 1e-300));
    }

    let pi = std::f64::consts::PI;
    let spots = [(1, (2.0 * pi).sqrt()), (2, 4.0 * pi.sqrt()), (3, 3.0 * 2f64.powf(1.5) * pi)];
    let spot = spots
        .iter()
        .map(|&(n, v)| gn_closed(n).map(|g| rel(g, v, 0.0)))
        .collect::<rmtgaps_core::Result<Vec<f64>>>()
        .map_err(internal)?
        .into_iter()
        .fold(0.0, f64::max);
    let mut general = 0.0f64;
    for n in 1..=14 {
        let g = gn_closed(n).map_err(internal)?;
        general = general.max(rel(partition_general(n, 0).map_err(internal)?, g, 0.0));
    }
    Ok(vec![
        Check::below("alpha_closed_form_vs_quadrature_abs", alpha, t.alpha_quadrature_abs),
        Check::zero_failures("nu_even_nonzero", usize::from(nu_even != 0.0)),
        Check::below("nu_1_rel", rel(nu_coeff(1), nu1, 0.0), t.partition_rel),
        Check::below("jn_vs_cn_determinant_rel", jn, t.partition_rel),
        Check::below("g_spot_values_rel", spot, t.partition_rel),
        Check::below("partition_general_vs_closed_form_rel", general, t.partition_rel),
    ])
}
