//! Partition functions of one- and two-component log-gases.
//!
//! `G_n` is the normalization of the GOE density; `G_{n1,n2}` is the
//! two-component generalization with `n1` unit charges and `n2` charges of
//! size two. Both are reduced to coefficients of Pfaffian polynomials built
//! from the tables `α_{j,k}`, `β_{j,k}`, `ν_k` (all indexed from 1).

mod constrained;

use num_bigint::BigInt;
use num_traits::{One, ToPrimitive};
use rayon::prelude::*;
use statrs::function::gamma::ln_gamma;

use crate::error::{Error, Result};
use crate::hermite::{binomial, double_factorial_odd, phi_eval};
use crate::skewlin::{pfaffian_bordered, pfaffian_numeric, pfaffian_poly, PolyCoeffs, SkewMatrix};

pub use constrained::{integrate_constrained, Bound, GapConstraint};

/// Largest total size `n1 + 2 n2` handled by the Pfaffian route.
pub const MAX_PFAFFIAN_N: usize = 40;
pub const MAX_GN: usize = 170;

/// `n1` particles of charge one and `n2` of charge two.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct ChargeSystem {
    pub n1: usize,
    pub n2: usize,
}

impl ChargeSystem {
    pub fn new(n1: usize, n2: usize) -> Result<Self> {
        if n1 + n2 == 0 {
            return Err(Error::Precondition("a charge system needs at least one particle".into()));
        }
        Ok(Self { n1, n2 })
    }

    /// Size of the one-component system it descends from, `n1 + 2 n2`.
    pub fn total(&self) -> usize {
        self.n1 + 2 * self.n2
    }
}

fn ln_factorial(n: usize) -> f64 {
    ln_gamma(n as f64 + 1.0)
}

/// `ln G_n` with `G_n = (2π)^{n/2} Π_{j<n} Γ(1 + (j+1)/2) / Γ(3/2)`.
pub fn gn_closed_log(n: usize) -> f64 {
    let g32 = ln_gamma(1.5);
    0.5 * n as f64 * (2.0 * std::f64::consts::PI).ln()
        + (0..n).map(|j| ln_gamma(1.0 + (j as f64 + 1.0) / 2.0) - g32).sum::<f64>()
}

/// `G_n`, the GOE normalization. Errors past `n = 170` or on overflow; use
/// [`gn_closed_log`] there.
pub fn gn_closed(n: usize) -> Result<f64> {
    if n == 0 || n > MAX_GN {
        return Err(Error::OutOfRange(format!("G_n needs 1 <= n <= {MAX_GN}, got {n}")));
    }
    let v = gn_closed_log(n).exp();
    if v.is_finite() {
        Ok(v)
    } else {
        Err(Error::OutOfRange(format!("G_{n} overflows; use gn_closed_log")))
    }
}

/// `J_n(x) = exp(-Σx²/2) Π_{j<i} (x_i - x_j)`, accumulated as log-magnitude
/// plus sign.
pub fn jn_eval(xs: &[f64]) -> f64 {
    let mut log_mag = -xs.iter().map(|x| x * x).sum::<f64>() / 2.0;
    let mut negative = false;
    for i in 0..xs.len() {
        for j in 0..i {
            let d = xs[i] - xs[j];
            if d == 0.0 {
                return 0.0;
            }
            negative ^= d < 0.0;
            log_mag += d.abs().ln();
        }
    }
    let v = log_mag.exp();
    if negative {
        -v
    } else {
        v
    }
}

/// `ln c_n` where `J_n = c_n det[φ_{i-1}(x_j)]`, `c_n = Π_{j<n} (j! √π / 2^j)^{1/2}`.
pub fn c_n_log(n: usize) -> f64 {
    let half_ln_pi = 0.5 * std::f64::consts::PI.ln();
    0.5 * (0..n).map(|j| ln_factorial(j) + half_ln_pi - j as f64 * std::f64::consts::LN_2).sum::<f64>()
}

pub fn c_n_constant(n: usize) -> Result<f64> {
    if n == 0 || n > 100 {
        return Err(Error::OutOfRange(format!("c_n needs 1 <= n <= 100, got {n}")));
    }
    Ok(c_n_log(n).exp())
}

/// `c_n det[φ_{i-1}(x_j)]`, the determinantal side of the `J_n` identity.
pub fn jn_determinant_form(xs: &[f64]) -> Result<f64> {
    let n = xs.len();
    let mut m = vec![0.0; n * n];
    for (j, &x) in xs.iter().enumerate() {
        let phis = crate::hermite::phi_all(n.saturating_sub(1), x);
        for i in 0..n {
            m[i * n + j] = phis[i];
        }
    }
    Ok(c_n_constant(n)? * determinant(m, n))
}

/// Dense determinant by LU with partial pivoting.
pub fn determinant(mut a: Vec<f64>, n: usize) -> f64 {
    let mut det = 1.0;
    for c in 0..n {
        let p = (c..n).max_by(|&r, &s| a[r * n + c].abs().partial_cmp(&a[s * n + c].abs()).unwrap()).unwrap();
        if a[p * n + c] == 0.0 {
            return 0.0;
        }
        if p != c {
            for k in 0..n {
                a.swap(p * n + k, c * n + k);
            }
            det = -det;
        }
        let piv = a[c * n + c];
        det *= piv;
        for r in (c + 1)..n {
            let f = a[r * n + c] / piv;
            for k in c..n {
                a[r * n + k] -= f * a[c * n + k];
            }
        }
    }
    det
}

/// `β_{j,k}`: `√(2j)` on the superdiagonal, antisymmetric, zero elsewhere.
pub fn beta_coeff(j: usize, k: usize) -> f64 {
    assert!(j >= 1 && k >= 1, "table indices start at 1");
    if k == j + 1 {
        (2.0 * j as f64).sqrt()
    } else if j == k + 1 {
        -(2.0 * k as f64).sqrt()
    } else {
        0.0
    }
}

/// `ν_k = ∫ φ_{k-1}`, from `ν_1 = √2 π^{1/4}` and
/// `ν_{j+1} = √((j-1)/j) ν_{j-1}`; zero for even `k`.
pub fn nu_coeff(k: usize) -> f64 {
    assert!(k >= 1, "table indices start at 1");
    if k % 2 == 0 {
        return 0.0;
    }
    let mut nu = 2f64.sqrt() * std::f64::consts::PI.powf(0.25);
    let mut j = 2;
    while j < k {
        nu *= ((j - 1) as f64 / j as f64).sqrt();
        j += 2;
    }
    nu
}

/// `α_{j,k} = ∫∫ φ_{k-1}(x) φ_{j-1}(y) sgn(x - y)`, in closed form.
pub fn alpha_coeff(j: usize, k: usize) -> f64 {
    assert!(j >= 1 && k >= 1, "table indices start at 1");
    if j > k {
        return -alpha_coeff(k, j);
    }
    if k % 2 == 1 {
        return 0.0;
    }
    // α_{k-1,k} = 2√2/√(k-1), propagated down the column by ν_j/ν_{k-1}
    2.0 * 2f64.sqrt() * nu_coeff(j) / (((k - 1) as f64).sqrt() * nu_coeff(k - 1))
}

/// Trapezoid-rule oracle for `α_{j,k}` on `[-20, 20]`: integrates
/// `φ_{k-1}(x) (2C(x) - ν)` with `C` the running integral of `φ_{j-1}`.
pub fn alpha_quadrature(j: usize, k: usize) -> Result<f64> {
    if !(1..=40).contains(&j) || !(1..=40).contains(&k) {
        return Err(Error::OutOfRange(format!("alpha_quadrature needs 1 <= j,k <= 40, got ({j},{k})")));
    }
    const POINTS: usize = 40_001;
    let (lo, hi) = (-20.0, 20.0);
    let h = (hi - lo) / (POINTS - 1) as f64;
    let xs: Vec<f64> = (0..POINTS).map(|i| lo + h * i as f64).collect();
    let inner: Vec<f64> = xs.iter().map(|&x| phi_eval(j - 1, x)).collect::<Result<_>>()?;
    let outer: Vec<f64> = xs.iter().map(|&x| phi_eval(k - 1, x)).collect::<Result<_>>()?;
    let mut running = Vec::with_capacity(POINTS);
    let mut acc = 0.0;
    running.push(0.0);
    for i in 1..POINTS {
        acc += 0.5 * h * (inner[i - 1] + inner[i]);
        running.push(acc);
    }
    let total = acc;
    let integrand: Vec<f64> = outer.iter().zip(&running).map(|(&f, &c)| f * (c - (total - c))).collect();
    let sum: f64 = integrand.iter().sum::<f64>() - 0.5 * (integrand[0] + integrand[POINTS - 1]);
    Ok(h * sum)
}

/// Precomputed `α`, `β`, `ν` tables of a fixed size. Indices are 1-based at
/// the interface.
#[derive(Debug, Clone, PartialEq)]
pub struct CoefficientTables {
    size: usize,
    alpha: Vec<f64>,
    beta: Vec<f64>,
    nu: Vec<f64>,
}

impl CoefficientTables {
    pub fn new(size: usize) -> Self {
        let mut alpha = vec![0.0; size * size];
        let mut beta = vec![0.0; size * size];
        for j in 1..=size {
            for k in 1..=size {
                alpha[(j - 1) * size + k - 1] = alpha_coeff(j, k);
                beta[(j - 1) * size + k - 1] = beta_coeff(j, k);
            }
        }
        let nu = (1..=size).map(nu_coeff).collect();
        Self { size, alpha, beta, nu }
    }

    pub fn size(&self) -> usize {
        self.size
    }

    pub fn alpha(&self, j: usize, k: usize) -> f64 {
        self.alpha[(j - 1) * self.size + k - 1]
    }

    pub fn beta(&self, j: usize, k: usize) -> f64 {
        self.beta[(j - 1) * self.size + k - 1]
    }

    pub fn nu(&self, k: usize) -> f64 {
        self.nu[k - 1]
    }

    /// `A_n = [α_{j,k}]`.
    pub fn a_matrix(&self, n: usize) -> SkewMatrix<f64> {
        assert!(n <= self.size);
        SkewMatrix::from_upper(n, |i, j| self.alpha(i + 1, j + 1))
    }

    /// `B_n = [β_{j,k}]`.
    pub fn b_matrix(&self, n: usize) -> SkewMatrix<f64> {
        assert!(n <= self.size);
        SkewMatrix::from_upper(n, |i, j| self.beta(i + 1, j + 1))
    }

    /// `B'_n = diag(B_{n-1}, 0)`.
    pub fn b_prime_matrix(&self, n: usize) -> SkewMatrix<f64> {
        assert!(n >= 1 && n <= self.size);
        SkewMatrix::from_upper(n, |i, j| if j + 1 == n { 0.0 } else { self.beta(i + 1, j + 1) })
    }

    pub fn nu_vector(&self, n: usize) -> Vec<f64> {
        self.nu[..n].to_vec()
    }
}

/// `D_n(λ) = det(B_n + 2λI)` in closed form:
/// `Σ_m 2^{n-m} C(n,2m) (2m)!/(2^m m!) λ^{n-2m}`.
pub fn dn_poly(n: usize) -> Result<PolyCoeffs<BigInt>> {
    if n > 60 {
        return Err(Error::OutOfRange(format!("D_n limited to n <= 60, got {n}")));
    }
    let mut c = vec![BigInt::from(0); n + 1];
    for m in 0..=n / 2 {
        c[n - 2 * m] = (BigInt::one() << (n - m)) * binomial(n, 2 * m) * double_factorial_odd(m);
    }
    Ok(PolyCoeffs::new(c))
}

/// `D_n` from `D_{k+1} = 2λ D_k + β_{k,k+1}² D_{k-1}` with `β_{k,k+1}² = 2k`.
pub fn dn_recurrence(n: usize) -> PolyCoeffs<BigInt> {
    let two_lambda = PolyCoeffs::monomial(BigInt::from(2), 1);
    let mut prev = PolyCoeffs::new(vec![BigInt::one()]);
    if n == 0 {
        return prev;
    }
    let mut cur = two_lambda.clone();
    for k in 1..n {
        let next = two_lambda.mul(&cur).add(&prev.scale(&BigInt::from(2 * k)));
        prev = cur;
        cur = next;
    }
    cur
}

pub fn poly_to_f64(p: &PolyCoeffs<BigInt>) -> PolyCoeffs<f64> {
    p.map(|c| c.to_f64().unwrap_or(f64::INFINITY))
}

/// The Pfaffian polynomial whose coefficients encode every `G_{n1,n2}` with
/// `n1 + 2 n2 = n`: `Pf(B_n + ζA_n)` for even `n`, and the `ν`-bordered
/// version for odd `n`.
pub fn partition_polynomial(n: usize, tables: &CoefficientTables) -> Result<PolyCoeffs<f64>> {
    if n == 0 || n > tables.size() {
        return Err(Error::OutOfRange(format!("partition polynomial needs 1 <= n <= {}, got {n}", tables.size())));
    }
    let (b, a) = (tables.b_matrix(n), tables.a_matrix(n));
    if n % 2 == 0 {
        pfaffian_poly(&b, &a, n / 2)
    } else {
        pfaffian_bordered(&b, &a, &tables.nu_vector(n), (n - 1) / 2)
    }
}

fn coefficient_at(p: &PolyCoeffs<f64>, index: usize) -> Result<f64> {
    match p.degree() {
        Some(d) if index <= d => Ok(p.coeff(index)),
        d => Err(Error::CoefficientIndex { index, degree: d.unwrap_or(0) }),
    }
}

/// `G_{n-2k,k} / G_n` from Pfaffian coefficients alone (the `c_n` cancels).
pub fn partition_ratio(n: usize, k: usize) -> Result<f64> {
    let tables = CoefficientTables::new(n.max(1));
    let poly = partition_polynomial(n, &tables)?;
    partition_ratio_from(&poly, n, k)
}

fn partition_ratio_from(poly: &PolyCoeffs<f64>, n: usize, k: usize) -> Result<f64> {
    if k == 0 || 2 * k > n || n > MAX_PFAFFIAN_N {
        return Err(Error::Precondition(format!(
            "partition_ratio needs n >= 2k >= 2 and n <= {MAX_PFAFFIAN_N}, got n = {n}, k = {k}"
        )));
    }
    let n1 = n - 2 * k;
    let num = coefficient_at(poly, n1 / 2)?;
    let den = coefficient_at(poly, n / 2)?;
    let ln_fact = ln_factorial(n1) + ln_factorial(k) - ln_factorial(n);
    Ok(ln_fact.exp() * num / den)
}

/// Absolute `G_{n1,n2} = n1! n2! c_n [ζ^{⌊n1/2⌋}] P_n(ζ)`.
pub fn partition_general(n1: usize, n2: usize) -> Result<f64> {
    let sys = ChargeSystem::new(n1, n2)?;
    let n = sys.total();
    if n > MAX_PFAFFIAN_N {
        return Err(Error::Precondition(format!("partition_general needs n1 + 2 n2 <= {MAX_PFAFFIAN_N}, got {n}")));
    }
    let tables = CoefficientTables::new(n);
    let poly = partition_polynomial(n, &tables)?;
    let coef = coefficient_at(&poly, n1 / 2)?;
    if !(coef > 0.0) {
        return Err(Error::Precondition(format!("Pfaffian coefficient for ({n1},{n2}) is not positive: {coef}")));
    }
    Ok((ln_factorial(n1) + ln_factorial(n2) + c_n_log(n) + coef.ln()).exp())
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Lemma9Row {
    pub n: usize,
    pub k: usize,
    /// `G_{n-2k,k} / G_n`.
    pub ratio: f64,
    /// `|4^k ratio - 1|`.
    pub abs_error: f64,
}

#[derive(Debug, Clone, PartialEq)]
pub struct Lemma9Report {
    pub rows: Vec<Lemma9Row>,
    pub max_error: f64,
}

impl Lemma9Report {
    pub fn to_csv(&self) -> String {
        let mut s = String::from("n,k,ratio,abs_error\n");
        for r in &self.rows {
            s.push_str(&format!("{},{},{:.17e},{:.6e}\n", r.n, r.k, r.ratio, r.abs_error));
        }
        s
    }
}

/// Checks `4^k G_{n-2k,k} = G_n` on every cell `2 <= n <= n_max`,
/// `1 <= k <= n/2`. Cells are evaluated in parallel; rows come back sorted.
pub fn verify_lemma9(n_max: usize) -> Result<Lemma9Report> {
    if !(2..=MAX_PFAFFIAN_N).contains(&n_max) {
        return Err(Error::OutOfRange(format!("n_max must lie in 2..={MAX_PFAFFIAN_N}, got {n_max}")));
    }
    let tables = CoefficientTables::new(n_max);
    let per_n: Vec<Vec<Lemma9Row>> = (2..=n_max)
        .into_par_iter()
        .map(|n| -> Result<Vec<Lemma9Row>> {
            let poly = partition_polynomial(n, &tables)?;
            (1..=n / 2)
                .map(|k| {
                    let ratio = partition_ratio_from(&poly, n, k)?;
                    let abs_error = (4f64.powi(k as i32) * ratio - 1.0).abs();
                    Ok(Lemma9Row { n, k, ratio, abs_error })
                })
                .collect()
        })
        .collect::<Result<_>>()?;
    let rows: Vec<Lemma9Row> = per_n.into_iter().flatten().collect();
    let max_error = rows.iter().map(|r| r.abs_error).fold(0.0, f64::max);
    Ok(Lemma9Report { rows, max_error })
}

/// Largest coefficientwise defect of the Pfaffian Laplace expansion
/// `Pf(B_n + λA_n) = Pf(B'_n + λA_n) + β_{n-1,n} Pf(B_{n-2} + λA_{n-2})`,
/// relative to the largest coefficient.
pub fn laplace_defect(n: usize, tables: &CoefficientTables) -> Result<f64> {
    if n < 2 || n % 2 != 0 {
        return Err(Error::Dimension(format!("Laplace expansion needs even n >= 2, got {n}")));
    }
    let a = tables.a_matrix(n);
    let lhs = pfaffian_poly(&tables.b_matrix(n), &a, n / 2)?;
    let first = pfaffian_poly(&tables.b_prime_matrix(n), &a, n / 2)?;
    let second = if n == 2 {
        PolyCoeffs::new(vec![1.0])
    } else {
        pfaffian_poly(&tables.b_matrix(n - 2), &tables.a_matrix(n - 2), n / 2 - 1)?
    };
    let rhs = first.add(&second.scale(&tables.beta(n - 1, n)));
    Ok(relative_poly_defect(&lhs, &rhs))
}

/// `max_i |p_i - q_i| / max(max_i |q_i|, tiny)`.
pub fn relative_poly_defect(p: &PolyCoeffs<f64>, q: &PolyCoeffs<f64>) -> f64 {
    let len = p.coefficients().len().max(q.coefficients().len());
    let scale = q.coefficients().iter().fold(f64::MIN_POSITIVE, |m, c| m.max(c.abs()));
    (0..len).map(|i| (p.coeff(i) - q.coeff(i)).abs()).fold(0.0, f64::max) / scale
}

/// Worst per-coefficient relative defect between `p` and the exact `q`.
pub fn coefficientwise_defect(p: &PolyCoeffs<f64>, q: &PolyCoeffs<f64>) -> f64 {
    let len = p.coefficients().len().max(q.coefficients().len());
    let scale = q.coefficients().iter().fold(f64::MIN_POSITIVE, |m, c| m.max(c.abs()));
    (0..len)
        .map(|i| {
            let (a, b) = (p.coeff(i), q.coeff(i));
            let denom = if b != 0.0 { b.abs() } else { scale };
            (a - b).abs() / denom
        })
        .fold(0.0, f64::max)
}

/// `ζ ↦ p(ζ²)` as a polynomial in `λ`.
fn substitute_square(p: &PolyCoeffs<f64>) -> PolyCoeffs<f64> {
    let mut v = vec![0.0; 2 * p.coefficients().len()];
    for (i, &c) in p.coefficients().iter().enumerate() {
        v[2 * i] = c;
    }
    PolyCoeffs::new(v)
}

/// Defect of `Pf(B_n + λ²A_n) Pf(B_n) = D_n(λ)`, worst per coefficient.
pub fn dn_pfaffian_defect(n: usize, tables: &CoefficientTables) -> Result<f64> {
    if n < 2 || n % 2 != 0 {
        return Err(Error::Dimension(format!("need even n >= 2, got {n}")));
    }
    let b = tables.b_matrix(n);
    let p = pfaffian_poly(&b, &tables.a_matrix(n), n / 2)?;
    let pf_b = pfaffian_numeric(&b)?;
    let lhs = substitute_square(&p).scale(&pf_b);
    Ok(coefficientwise_defect(&lhs, &poly_to_f64(&dn_poly(n)?)))
}

/// Defect of `Pf(B'_n + λ²A_n) Pf(B_n) = 2λ D_{n-1}(λ)`, worst per coefficient.
pub fn dn_prime_pfaffian_defect(n: usize, tables: &CoefficientTables) -> Result<f64> {
    if n < 2 || n % 2 != 0 {
        return Err(Error::Dimension(format!("need even n >= 2, got {n}")));
    }
    let p = pfaffian_poly(&tables.b_prime_matrix(n), &tables.a_matrix(n), n / 2)?;
    let pf_b = pfaffian_numeric(&tables.b_matrix(n))?;
    let lhs = substitute_square(&p).scale(&pf_b);
    let rhs = PolyCoeffs::monomial(2.0, 1).mul(&poly_to_f64(&dn_poly(n - 1)?));
    Ok(coefficientwise_defect(&lhs, &rhs))
}

/// `max |(B_n A_n)_{jk} + 4 δ_{jk}|`.
pub fn ba_product_defect(n: usize, tables: &CoefficientTables) -> f64 {
    let mut worst = 0.0f64;
    for j in 1..=n {
        for k in 1..=n {
            let s: f64 = (1..=n).map(|l| tables.beta(j, l) * tables.alpha(l, k)).sum();
            let target = if j == k { -4.0 } else { 0.0 };
            worst = worst.max((s - target).abs());
        }
    }
    worst
}
