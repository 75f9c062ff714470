//! Hermite polynomials, oscillator wave functions and expansions in the
//! oscillator basis.
//!
//! Conventions: `H_j` are physicists' Hermite polynomials (leading coefficient
//! `2^j`), and `φ_j(x) = (2^j j! √π)^{-1/2} e^{-x²/2} H_j(x)` is orthonormal on
//! the real line.

use num_bigint::BigInt;
use num_traits::{Float, FromPrimitive, Num, One, Zero};

use crate::ensemble::eigen::eigen_tridiagonal_first_components;
use crate::error::{Error, Result};
use crate::scalar::Real;
use crate::skewlin::PolyCoeffs;

pub const MAX_HERMITE_DEGREE: usize = 200;
pub const MAX_QUADRATURE_POINTS: usize = 256;
pub const MAX_ROOTS: usize = 60;

/// A Hermite polynomial in the monomial basis.
#[derive(Debug, Clone, PartialEq)]
pub struct HermitePoly<T> {
    pub degree: usize,
    pub coefficients: PolyCoeffs<T>,
}

/// `H_j` from the three-term recurrence `H_{j+1} = 2x H_j - 2j H_{j-1}`.
/// With `T = BigInt` the coefficients are exact.
pub fn hermite_poly<T: Num + Clone + FromPrimitive>(j: usize) -> Result<HermitePoly<T>> {
    if j > MAX_HERMITE_DEGREE {
        return Err(Error::OutOfRange(format!("Hermite degree {j} exceeds {MAX_HERMITE_DEGREE}")));
    }
    let two = T::from_u32(2).unwrap();
    let two_x = PolyCoeffs::monomial(two.clone(), 1);
    let mut prev = PolyCoeffs::new(vec![T::one()]);
    if j == 0 {
        return Ok(HermitePoly { degree: 0, coefficients: prev });
    }
    let mut cur = two_x.clone();
    for k in 1..j {
        let k2 = T::from_usize(2 * k).unwrap();
        let next = two_x.mul(&cur).add(&prev.scale(&(T::zero() - k2)));
        prev = cur;
        cur = next;
    }
    Ok(HermitePoly { degree: j, coefficients: cur })
}

/// `H_j` from the explicit sum
/// `Σ_m (-1)^m 2^{j-m} C(j,2m) (2m)!/(2^m m!) x^{j-2m}`, in exact integers.
pub fn hermite_closed_form(j: usize) -> Result<HermitePoly<BigInt>> {
    if j > MAX_HERMITE_DEGREE {
        return Err(Error::OutOfRange(format!("Hermite degree {j} exceeds {MAX_HERMITE_DEGREE}")));
    }
    let mut coeffs = vec![BigInt::zero(); j + 1];
    for m in 0..=j / 2 {
        let mut term = BigInt::one() << (j - m);
        term *= binomial(j, 2 * m) * double_factorial_odd(m);
        if m % 2 == 1 {
            term = -term;
        }
        coeffs[j - 2 * m] = term;
    }
    Ok(HermitePoly { degree: j, coefficients: PolyCoeffs::new(coeffs) })
}

pub(crate) fn binomial(n: usize, k: usize) -> BigInt {
    let mut acc = BigInt::one();
    for i in 0..k {
        acc = acc * BigInt::from(n - i) / BigInt::from(i + 1);
    }
    acc
}

/// `(2m)! / (2^m m!) = (2m-1)!!`.
pub(crate) fn double_factorial_odd(m: usize) -> BigInt {
    (1..=m).fold(BigInt::one(), |acc, i| acc * BigInt::from(2 * i - 1))
}

/// `φ_0(x), …, φ_jmax(x)` via the normalized recurrence
/// `φ_{j+1} = x √(2/(j+1)) φ_j - √(j/(j+1)) φ_{j-1}`.
pub fn phi_all<T: Real>(jmax: usize, x: T) -> Vec<T> {
    let mut out = normalized_poly_all(jmax, x);
    let g = Float::exp(-x * x / T::lit(2.0));
    for v in out.iter_mut() {
        *v = *v * g;
    }
    out
}

/// Values of `ψ_j = φ_j e^{x²/2}` (the orthonormal polynomials for weight
/// `e^{-x²}`), `j = 0..=jmax`.
fn normalized_poly_all<T: Real>(jmax: usize, x: T) -> Vec<T> {
    let mut out = Vec::with_capacity(jmax + 1);
    let two = T::lit(2.0);
    let p0 = Float::powf(T::PI(), T::lit(-0.25));
    out.push(p0);
    if jmax == 0 {
        return out;
    }
    out.push(x * Float::sqrt(two) * p0);
    for j in 1..jmax {
        let jf = T::lit(j as f64);
        let next = x * Float::sqrt(two / (jf + T::one())) * out[j] - Float::sqrt(jf / (jf + T::one())) * out[j - 1];
        out.push(next);
    }
    out
}

/// `φ_j(x)`. Underflows to zero for large `|x|`.
pub fn phi_eval<T: Real>(j: usize, x: T) -> Result<T> {
    if j > MAX_HERMITE_DEGREE {
        return Err(Error::OutOfRange(format!("φ index {j} exceeds {MAX_HERMITE_DEGREE}")));
    }
    // The recurrence on ψ_j can overflow far in the tail before the Gaussian
    // factor brings it back; carry the Gaussian along in that regime.
    if Float::abs(x) < T::lit(20.0) {
        return Ok(phi_all(j, x)[j]);
    }
    let two = T::lit(2.0);
    let mut prev = Float::powf(T::PI(), T::lit(-0.25)) * Float::exp(-x * x / two);
    if j == 0 {
        return Ok(prev);
    }
    let mut cur = x * Float::sqrt(two) * prev;
    for k in 1..j {
        let kf = T::lit(k as f64);
        let next = x * Float::sqrt(two / (kf + T::one())) * cur - Float::sqrt(kf / (kf + T::one())) * prev;
        prev = cur;
        cur = next;
    }
    Ok(cur)
}

/// Nodes and weights of a quadrature rule.
#[derive(Debug, Clone, PartialEq)]
pub struct QuadratureRule<T> {
    pub nodes: Vec<T>,
    pub weights: Vec<T>,
}

impl<T: Real> QuadratureRule<T> {
    pub fn len(&self) -> usize {
        self.nodes.len()
    }

    pub fn is_empty(&self) -> bool {
        self.nodes.is_empty()
    }

    /// `Σ w_i f(x_i)`.
    pub fn apply<F: FnMut(T) -> T>(&self, mut f: F) -> T {
        self.nodes.iter().zip(&self.weights).map(|(&x, &w)| w * f(x)).sum()
    }

    /// Affine map of a rule on `[-1, 1]` onto `[a, b]`.
    pub fn mapped(&self, a: T, b: T) -> Self {
        let half = (b - a) / T::lit(2.0);
        let mid = (a + b) / T::lit(2.0);
        Self {
            nodes: self.nodes.iter().map(|&x| mid + half * x).collect(),
            weights: self.weights.iter().map(|&w| w * half).collect(),
        }
    }
}

fn golub_welsch<T: Real>(offdiag: &[T], mass: T) -> Result<QuadratureRule<T>> {
    let diag = vec![T::zero(); offdiag.len() + 1];
    let (nodes, first) = eigen_tridiagonal_first_components(&diag, offdiag)?;
    let weights = first.iter().map(|&z| mass * z * z).collect();
    Ok(QuadratureRule { nodes, weights })
}

/// `m`-point Gauss–Hermite rule for `∫ e^{-x²} f(x) dx`, exact for polynomial
/// `f` of degree `≤ 2m - 1`.
pub fn gauss_hermite<T: Real>(m: usize) -> Result<QuadratureRule<T>> {
    if m == 0 || m > MAX_QUADRATURE_POINTS {
        return Err(Error::OutOfRange(format!("Gauss–Hermite size {m} outside 1..={MAX_QUADRATURE_POINTS}")));
    }
    let off: Vec<T> = (1..m).map(|k| Float::sqrt(T::lit(k as f64) / T::lit(2.0))).collect();
    golub_welsch(&off, Float::sqrt(T::PI()))
}

/// `m`-point Gauss–Legendre rule on `[-1, 1]`.
pub fn gauss_legendre<T: Real>(m: usize) -> Result<QuadratureRule<T>> {
    if m == 0 || m > MAX_QUADRATURE_POINTS {
        return Err(Error::OutOfRange(format!("Gauss–Legendre size {m} outside 1..={MAX_QUADRATURE_POINTS}")));
    }
    let off: Vec<T> = (1..m)
        .map(|k| {
            let k = T::lit(k as f64);
            k / Float::sqrt(T::lit(4.0) * k * k - T::one())
        })
        .collect();
    golub_welsch(&off, T::lit(2.0))
}

/// Default Gauss–Hermite size for bilinear forms up to basis index `jmax`.
pub fn default_rule_size(jmax: usize) -> usize {
    (2 * jmax + 8).min(MAX_QUADRATURE_POINTS)
}

/// `max_{j,k ≤ jmax} |⟨φ_j, φ_k⟩ - δ_jk|` with the inner product taken by an
/// `m`-point Gauss–Hermite rule.
pub fn orthonormality_defect(jmax: usize, m: usize) -> Result<f64> {
    let rule = gauss_hermite::<f64>(m)?;
    let table: Vec<Vec<f64>> = rule.nodes.iter().map(|&x| normalized_poly_all(jmax, x)).collect();
    let mut worst = 0.0f64;
    for j in 0..=jmax {
        for k in 0..=j {
            let ip: f64 = table.iter().zip(&rule.weights).map(|(psi, &w)| w * psi[j] * psi[k]).sum();
            let target = if j == k { 1.0 } else { 0.0 };
            worst = worst.max((ip - target).abs());
        }
    }
    Ok(worst)
}

/// A function `Σ a_j φ_j` in the oscillator basis.
#[derive(Debug, Clone, PartialEq)]
pub struct WaveExpansion<T> {
    pub coefficients: Vec<T>,
}

impl<T: Real> WaveExpansion<T> {
    pub fn new(coefficients: Vec<T>) -> Self {
        Self { coefficients }
    }

    /// `∫ F²`, by orthonormality.
    pub fn norm_sq(&self) -> T {
        self.coefficients.iter().map(|&a| a * a).sum()
    }

    pub fn eval(&self, x: T) -> T {
        if self.coefficients.is_empty() {
            return T::zero();
        }
        phi_all(self.coefficients.len() - 1, x).iter().zip(&self.coefficients).map(|(&p, &a)| p * a).sum()
    }

    /// `∫ F²` by Gauss–Hermite quadrature (independent of orthonormality).
    pub fn quadrature_norm_sq(&self, rule: &QuadratureRule<T>) -> T {
        let jmax = self.coefficients.len().saturating_sub(1);
        rule.apply(|x| {
            let psi = normalized_poly_all(jmax, x);
            let v: T = psi.iter().zip(&self.coefficients).map(|(&p, &a)| p * a).sum();
            v * v
        })
    }

    /// Multiplication by `(x - root)`, using
    /// `x φ_j = √((j+1)/2) φ_{j+1} + √(j/2) φ_{j-1}`.
    pub fn times_linear(&self, root: T) -> Self {
        let a = &self.coefficients;
        let len = a.len() + 1;
        let get = |i: isize| -> T {
            if i < 0 {
                T::zero()
            } else {
                a.get(i as usize).copied().unwrap_or_else(T::zero)
            }
        };
        let two = T::lit(2.0);
        let coefficients = (0..len)
            .map(|i| {
                let fi = T::lit(i as f64);
                let ii = i as isize;
                get(ii - 1) * Float::sqrt(fi / two) + get(ii + 1) * Float::sqrt((fi + T::one()) / two) - root * get(ii)
            })
            .collect();
        Self { coefficients }
    }
}

/// Expansion of `F(x) = e^{-x²/2} Π (x - λ_j)` in the oscillator basis.
pub fn roots_to_wave<T: Real>(roots: &[T]) -> Result<WaveExpansion<T>> {
    if roots.len() > MAX_ROOTS {
        return Err(Error::OutOfRange(format!("{} roots exceeds the cap of {MAX_ROOTS}", roots.len())));
    }
    // e^{-x²/2} = π^{1/4} φ_0
    let start = WaveExpansion::new(vec![Float::powf(T::PI(), T::lit(0.25))]);
    Ok(roots.iter().fold(start, |w, &r| w.times_linear(r)))
}

/// Coefficients of `F'` from `√2 φ_j' = √j φ_{j-1} - √(j+1) φ_{j+1}`.
pub fn wave_derivative<T: Real>(w: &WaveExpansion<T>) -> WaveExpansion<T> {
    let a = &w.coefficients;
    if a.is_empty() {
        return WaveExpansion::new(Vec::new());
    }
    let get = |i: isize| -> T {
        if i < 0 {
            T::zero()
        } else {
            a.get(i as usize).copied().unwrap_or_else(T::zero)
        }
    };
    let sqrt2 = Float::sqrt(T::lit(2.0));
    let coefficients = (0..a.len() + 1)
        .map(|j| {
            let jf = T::lit(j as f64);
            let ji = j as isize;
            (Float::sqrt(jf + T::one()) * get(ji + 1) - Float::sqrt(jf) * get(ji - 1)) / sqrt2
        })
        .collect();
    WaveExpansion::new(coefficients)
}

/// `(∫|F'|², 2n ∫|F|²)` for `F = e^{-x²/2} Π (x - λ_j)`; requires fewer roots
/// than `n`.
pub fn lemma10_slack<T: Real>(roots: &[T], n: usize) -> Result<(T, T)> {
    if roots.len() >= n {
        return Err(Error::Precondition(format!("need fewer roots than n, got m = {} and n = {n}", roots.len())));
    }
    let w = roots_to_wave(roots)?;
    let lhs = wave_derivative(&w).norm_sq();
    let rhs = T::lit(2.0 * n as f64) * w.norm_sq();
    Ok((lhs, rhs))
}

/// Band integrals of `|x₁ - x₂| |F(x₁)| |F(x₂)|` used to bound two-particle
/// constraints, evaluated by piecewise Gauss–Legendre with breakpoints at the
/// roots of `F`.
#[derive(Debug, Clone)]
pub struct BandIntegrals {
    roots: Vec<f64>,
    lead: f64,
    rule: QuadratureRule<f64>,
    lo: f64,
    hi: f64,
}

impl BandIntegrals {
    pub fn new(roots: &[f64]) -> Result<Self> {
        let reach = roots.iter().fold(0.0f64, |m, r| m.max(r.abs()));
        Ok(Self { roots: roots.to_vec(), lead: 1.0, rule: gauss_legendre(24)?, lo: -reach - 14.0, hi: reach + 14.0 })
    }

    fn f_abs(&self, x: f64) -> f64 {
        self.lead * (-x * x / 2.0).exp() * self.roots.iter().map(|r| (x - r).abs()).product::<f64>()
    }

    fn integrate_pieces<F: Fn(f64) -> f64>(&self, mut breaks: Vec<f64>, lo: f64, hi: f64, f: F) -> f64 {
        breaks.retain(|&b| b > lo && b < hi);
        let panels = 48;
        for i in 0..=panels {
            breaks.push(lo + (hi - lo) * i as f64 / panels as f64);
        }
        breaks.sort_by(|a, b| a.partial_cmp(b).unwrap());
        breaks.dedup();
        breaks.windows(2).map(|w| self.rule.mapped(w[0], w[1]).apply(&f)).sum()
    }

    /// `∫ F²`.
    pub fn norm_sq(&self) -> f64 {
        self.integrate_pieces(self.roots.clone(), self.lo, self.hi, |x| self.f_abs(x).powi(2))
    }

    /// `K(t) = ∫ |F(x)| |F(x + t)| dx`.
    pub fn overlap(&self, t: f64) -> f64 {
        let mut br = self.roots.clone();
        br.extend(self.roots.iter().map(|r| r - t));
        self.integrate_pieces(br, self.lo, self.hi, |x| self.f_abs(x) * self.f_abs(x + t))
    }

    /// `∫_{t ∈ T} |t| K(t) dt` where `T = (-b,-a) ∪ (a,b)`; with `a = 0` this is
    /// `∫ dx₁ ∫_{|x₂-x₁|<b} |x₁-x₂||F(x₁)||F(x₂)|`.
    pub fn symmetric_band(&self, a: f64, b: f64) -> f64 {
        // K has kinks wherever two roots are a shift t apart
        let mut br = vec![a, b];
        for r in &self.roots {
            br.extend(self.roots.iter().map(|q| (r - q).abs()).filter(|&d| d > a && d < b));
        }
        br.sort_by(|p, q| p.partial_cmp(q).unwrap());
        br.dedup();
        br.windows(2)
            .map(|w| {
                let rule = self.rule.mapped(w[0], w[1]);
                rule.apply(|t| t * (self.overlap(t) + self.overlap(-t)))
            })
            .sum()
    }

    /// `∫_B |x₁-x₂||F(x₁)||F(x₂)|` over `B = ∪_i (λ_i, λ_i + c)²`.
    pub fn root_squares(&self, c: f64) -> f64 {
        let mut ivals: Vec<(f64, f64)> = self.roots.iter().map(|&r| (r, r + c)).collect();
        ivals.sort_by(|a, b| a.0.partial_cmp(&b.0).unwrap());
        // outer variable over the union of the intervals, inner over those
        // intervals that contain the outer point
        let mut outer_breaks: Vec<f64> = ivals.iter().flat_map(|&(a, b)| [a, b]).collect();
        outer_breaks.extend(self.roots.iter().copied());
        outer_breaks.sort_by(|a, b| a.partial_cmp(b).unwrap());
        outer_breaks.dedup();
        let rule = &self.rule;
        let mut total = 0.0;
        for w in outer_breaks.windows(2) {
            let (a, b) = (w[0], w[1]);
            let mid = 0.5 * (a + b);
            let active: Vec<(f64, f64)> = ivals.iter().copied().filter(|&(lo, hi)| lo < mid && mid < hi).collect();
            if active.is_empty() {
                continue;
            }
            total += rule.mapped(a, b).apply(|x1| {
                let mut br: Vec<f64> = active.iter().flat_map(|&(lo, hi)| [lo, hi]).collect();
                br.extend(self.roots.iter().copied());
                br.push(x1);
                br.sort_by(|p, q| p.partial_cmp(q).unwrap());
                br.dedup();
                let inner: f64 = br
                    .windows(2)
                    .filter(|s| {
                        let m = 0.5 * (s[0] + s[1]);
                        active.iter().any(|&(lo, hi)| lo < m && m < hi)
                    })
                    .map(|s| rule.mapped(s[0], s[1]).apply(|x2| (x1 - x2).abs() * self.f_abs(x2)))
                    .sum();
                self.f_abs(x1) * inner
            });
        }
        total
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use approx::assert_relative_eq;

    #[test]
    fn low_degree_hermite() {
        let h2 = hermite_poly::<i64>(2).unwrap();
        assert_eq!(h2.coefficients.coefficients(), &[-2, 0, 4]);
        let h3 = hermite_poly::<i64>(3).unwrap();
        assert_eq!(h3.coefficients.coefficients(), &[0, -12, 0, 8]);
    }

    #[test]
    fn h6_quadratic_coefficient() {
        let h6 = hermite_poly::<BigInt>(6).unwrap();
        assert_eq!(h6.coefficients.coeff(2), BigInt::from(720));
        assert_eq!(hermite_closed_form(6).unwrap().coefficients.coeff(2), BigInt::from(720));
    }

    #[test]
    fn hermite_degree_cap() {
        assert!(hermite_poly::<BigInt>(201).is_err());
        assert!(hermite_poly::<BigInt>(200).is_ok());
    }

    #[test]
    fn phi_at_origin() {
        assert_relative_eq!(phi_eval(0, 0.0).unwrap(), 0.7511255444649425, epsilon = 1e-15);
        assert_eq!(phi_eval(1, 0.0).unwrap(), 0.0);
        assert!(phi_eval::<f64>(201, 0.0).is_err());
    }

    #[test]
    fn phi5_matches_direct_formula() {
        let x: f64 = 1.3;
        let h5 = 32.0 * x.powi(5) - 160.0 * x.powi(3) + 120.0 * x;
        let norm = (32.0 * 120.0 * std::f64::consts::PI.sqrt()).powf(-0.5);
        let direct = norm * (-x * x / 2.0).exp() * h5;
        assert_relative_eq!(phi_eval(5, x).unwrap(), direct, epsilon = 1e-12);
    }

    #[test]
    fn tail_evaluation_underflows_quietly() {
        let v = phi_eval(150, 45.0).unwrap();
        assert!(v.is_finite() && v.abs() < 1e-100);
    }

    #[test]
    fn small_gauss_hermite_rules() {
        let r1 = gauss_hermite::<f64>(1).unwrap();
        assert_relative_eq!(r1.nodes[0], 0.0, epsilon = 1e-15);
        assert_relative_eq!(r1.weights[0], std::f64::consts::PI.sqrt(), epsilon = 1e-15);
        let r2 = gauss_hermite::<f64>(2).unwrap();
        let h = std::f64::consts::FRAC_1_SQRT_2;
        assert_relative_eq!(r2.nodes[0], -h, epsilon = 1e-15);
        assert_relative_eq!(r2.nodes[1], h, epsilon = 1e-15);
        for &w in &r2.weights {
            assert_relative_eq!(w, std::f64::consts::PI.sqrt() / 2.0, epsilon = 1e-15);
        }
        assert!(gauss_hermite::<f64>(0).is_err());
        assert!(gauss_hermite::<f64>(257).is_err());
    }

    #[test]
    fn sixth_gaussian_moment() {
        let r = gauss_hermite::<f64>(4).unwrap();
        let got = r.apply(|x| x.powi(6));
        assert_relative_eq!(got, 15.0 * std::f64::consts::PI.sqrt() / 8.0, max_relative = 1e-12);
    }

    #[test]
    fn gauss_legendre_integrates_polynomials() {
        let r = gauss_legendre::<f64>(5).unwrap();
        assert_relative_eq!(r.apply(|x| x.powi(8)), 2.0 / 9.0, max_relative = 1e-13);
        let m = r.mapped(1.0, 3.0);
        assert_relative_eq!(m.apply(|x| x * x), 26.0 / 3.0, max_relative = 1e-13);
    }

    #[test]
    fn orthonormality_requires_enough_nodes() {
        assert!(orthonormality_defect(0, 1).unwrap() < 1e-14);
        assert!(orthonormality_defect(30, 64).unwrap() < 1e-10);
        assert!(orthonormality_defect(30, 16).unwrap() > 1e-6);
    }

    #[test]
    fn empty_root_set_is_scaled_ground_state() {
        let w = roots_to_wave::<f64>(&[]).unwrap();
        assert_eq!(w.coefficients.len(), 1);
        assert_relative_eq!(w.coefficients[0], std::f64::consts::PI.powf(0.25), epsilon = 1e-15);
    }

    #[test]
    fn single_root_at_origin() {
        let w = roots_to_wave(&[0.0f64]).unwrap();
        assert!(w.coefficients[0].abs() < 1e-16);
        assert_relative_eq!(w.coefficients[1], std::f64::consts::PI.powf(0.25) / 2f64.sqrt(), epsilon = 1e-15);
        assert!(roots_to_wave(&[0.0f64; 61]).is_err());
    }

    #[test]
    fn expansion_matches_product_pointwise() {
        let roots = [0.4, -1.2, 2.3, 0.05, -0.6];
        let w = roots_to_wave(&roots).unwrap();
        for i in 0..20 {
            let x = -3.0 + 0.31 * i as f64;
            let direct = (-x * x / 2.0).exp() * roots.iter().map(|r| x - r).product::<f64>();
            assert!((w.eval(x) - direct).abs() <= 1e-10 * direct.abs().max(1e-3));
        }
    }

    #[test]
    fn derivative_of_ground_and_first_states() {
        let d0 = wave_derivative(&WaveExpansion::new(vec![1.0f64]));
        assert_relative_eq!(d0.coefficients[1], -std::f64::consts::FRAC_1_SQRT_2, epsilon = 1e-15);
        let d1 = wave_derivative(&WaveExpansion::new(vec![0.0f64, 1.0]));
        assert_relative_eq!(d1.coefficients[0], std::f64::consts::FRAC_1_SQRT_2, epsilon = 1e-15);
        assert_relative_eq!(d1.coefficients[2], -1.0, epsilon = 1e-15);
        // finite differences of φ_1
        for i in 0..10 {
            let x = -2.0 + 0.45 * i as f64;
            let h = 1e-5;
            let fd = (phi_eval(1, x + h).unwrap() - phi_eval(1, x - h).unwrap()) / (2.0 * h);
            assert!((d1.eval(x) - fd).abs() < 1e-6);
        }
    }

    #[test]
    fn derivative_norm_matches_quadrature() {
        let w = roots_to_wave(&[0.3, -0.7]).unwrap();
        let d = wave_derivative(&w);
        let rule = gauss_hermite::<f64>(default_rule_size(d.coefficients.len())).unwrap();
        assert_relative_eq!(d.norm_sq(), d.quadrature_norm_sq(&rule), max_relative = 1e-8);
    }

    #[test]
    fn lemma10_examples() {
        let sqrt_pi = std::f64::consts::PI.sqrt();
        let (l, r) = lemma10_slack::<f64>(&[], 1).unwrap();
        assert_relative_eq!(l, sqrt_pi / 2.0, epsilon = 1e-14);
        assert_relative_eq!(r, 2.0 * sqrt_pi, epsilon = 1e-14);
        let (l, r) = lemma10_slack(&[0.0f64], 2).unwrap();
        let norm = roots_to_wave(&[0.0f64]).unwrap().norm_sq();
        assert_relative_eq!(l / norm, 1.5, epsilon = 1e-14);
        assert_relative_eq!(r / norm, 4.0, epsilon = 1e-14);
        assert!(lemma10_slack(&[0.0f64, 1.0], 2).is_err());
    }

    #[test]
    fn band_integral_norm_agrees_with_parseval() {
        let roots = [0.3, -0.8, 1.4];
        let b = BandIntegrals::new(&roots).unwrap();
        let w = roots_to_wave(&roots).unwrap();
        assert_relative_eq!(b.norm_sq(), w.norm_sq(), max_relative = 1e-10);
        assert_relative_eq!(b.overlap(0.0), w.norm_sq(), max_relative = 1e-10);
    }
}
