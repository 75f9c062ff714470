//! Pfaffians of real antisymmetric matrices.
//!
//! Three evaluation routes are provided:
//!
//! * [`pfaffian_exact`] sums over perfect matchings straight from the
//!   combinatorial definition. Factorial cost, so it is capped at dimension 12
//!   and mostly serves as an oracle.
//! * [`pfaffian_numeric`] is skew-symmetric Gaussian elimination (Parlett–Reid
//!   style) with partial pivoting. It is generic over [`Scalar`], so
//!   instantiating it with [`BigRational`](num_rational::BigRational) gives an
//!   exact Pfaffian in polynomial time.
//! * [`pfaffian_poly`] / [`pfaffian_bordered`] recover the coefficients of
//!   `ζ ↦ Pf(B + ζA)` (optionally bordered by a constant column) by sampling
//!   the polynomial on circles in the complex plane.

use num_complex::Complex;
use num_traits::{Float, Num, Zero};

use crate::error::{Error, Result};
use crate::scalar::{Real, Scalar};

/// Largest dimension accepted by [`pfaffian_exact`]: 11!! = 10395 matchings.
pub const EXACT_MAX_DIM: usize = 12;

const ANTISYMMETRY_TOL: f64 = 1e-12;

/// A square real antisymmetric matrix stored row-major.
#[derive(Debug, Clone, PartialEq)]
pub struct SkewMatrix<T> {
    dim: usize,
    entries: Vec<T>,
}

impl<T: Scalar> SkewMatrix<T> {
    pub fn zeros(dim: usize) -> Self {
        Self { dim, entries: vec![T::zero(); dim * dim] }
    }

    /// Builds the matrix from its strict upper triangle; `upper(i, j)` is only
    /// called with `i < j`.
    pub fn from_upper<F: FnMut(usize, usize) -> T>(dim: usize, mut upper: F) -> Self {
        let mut m = Self::zeros(dim);
        for i in 0..dim {
            for j in (i + 1)..dim {
                let v = upper(i, j);
                m.entries[j * dim + i] = -v.clone();
                m.entries[i * dim + j] = v;
            }
        }
        m
    }

    /// Ingests a dense square matrix. Rejects inputs whose antisymmetry defect
    /// exceeds `1e-12`, then canonicalizes to `(X - Xᵀ)/2`.
    pub fn from_rows(rows: &[Vec<T>]) -> Result<Self> {
        let dim = rows.len();
        if rows.iter().any(|r| r.len() != dim) {
            return Err(Error::Dimension("matrix rows must all have length dim".into()));
        }
        let tol = T::lit(ANTISYMMETRY_TOL);
        for i in 0..dim {
            for j in i..dim {
                let defect = (rows[i][j].clone() + rows[j][i].clone()).magnitude();
                if defect > tol {
                    return Err(Error::NotAntisymmetric { i, j, defect: defect.to_f64().unwrap_or(f64::NAN) });
                }
            }
        }
        let two = T::one() + T::one();
        Ok(Self::from_upper(dim, |i, j| (rows[i][j].clone() - rows[j][i].clone()) / two.clone()))
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    pub fn get(&self, i: usize, j: usize) -> &T {
        &self.entries[i * self.dim + j]
    }

    pub fn rows(&self) -> Vec<Vec<T>> {
        self.entries.chunks(self.dim.max(1)).map(|r| r.to_vec()).collect()
    }

    pub fn scaled(&self, s: &T) -> Self {
        Self { dim: self.dim, entries: self.entries.iter().map(|x| x.clone() * s.clone()).collect() }
    }

    /// `self + s * other`.
    pub fn add_scaled(&self, other: &Self, s: &T) -> Self {
        assert_eq!(self.dim, other.dim, "dimension mismatch");
        Self {
            dim: self.dim,
            entries: self.entries.iter().zip(&other.entries).map(|(a, b)| a.clone() + b.clone() * s.clone()).collect(),
        }
    }

    /// The `(dim+1)`-square matrix `[[self, v], [-vᵀ, 0]]`.
    pub fn bordered(&self, v: &[T]) -> Self {
        assert_eq!(v.len(), self.dim, "border length must equal dim");
        let n = self.dim;
        Self::from_upper(n + 1, |i, j| if j == n { v[i].clone() } else { self.get(i, j).clone() })
    }

    /// Top-left `k × k` block.
    pub fn leading_block(&self, k: usize) -> Self {
        assert!(k <= self.dim);
        Self::from_upper(k, |i, j| self.get(i, j).clone())
    }

    /// `Bᵀ X B` for a general square `B` (rows of `B` given).
    pub fn congruence(&self, b: &[Vec<T>]) -> Self {
        let n = self.dim;
        assert_eq!(b.len(), n);
        // xb = X B
        let mut xb = vec![T::zero(); n * n];
        for i in 0..n {
            for k in 0..n {
                let x = self.get(i, k);
                if x.is_zero() {
                    continue;
                }
                for j in 0..n {
                    xb[i * n + j] = xb[i * n + j].clone() + x.clone() * b[k][j].clone();
                }
            }
        }
        Self::from_upper(n, |i, j| {
            let mut acc = T::zero();
            for k in 0..n {
                acc = acc + b[k][i].clone() * xb[k * n + j].clone();
            }
            acc
        })
    }
}

/// Polynomial coefficients, index = power of the indeterminate. Trailing zeros
/// are trimmed so the degree is `len - 1` (the zero polynomial is empty).
#[derive(Debug, Clone, PartialEq)]
pub struct PolyCoeffs<T> {
    coefficients: Vec<T>,
}

impl<T: Num + Clone> PolyCoeffs<T> {
    pub fn new(mut coefficients: Vec<T>) -> Self {
        while coefficients.last().is_some_and(|c| c.is_zero()) {
            coefficients.pop();
        }
        Self { coefficients }
    }

    pub fn zero() -> Self {
        Self { coefficients: Vec::new() }
    }

    pub fn monomial(c: T, power: usize) -> Self {
        let mut v = vec![T::zero(); power + 1];
        v[power] = c;
        Self::new(v)
    }

    pub fn coefficients(&self) -> &[T] {
        &self.coefficients
    }

    /// `None` for the zero polynomial.
    pub fn degree(&self) -> Option<usize> {
        self.coefficients.len().checked_sub(1)
    }

    pub fn is_zero(&self) -> bool {
        self.coefficients.is_empty()
    }

    /// `[x^i] p`, zero past the degree.
    pub fn coeff(&self, i: usize) -> T {
        self.coefficients.get(i).cloned().unwrap_or_else(T::zero)
    }

    pub fn eval(&self, x: &T) -> T {
        self.coefficients.iter().rev().fold(T::zero(), |acc, c| acc * x.clone() + c.clone())
    }

    pub fn add(&self, other: &Self) -> Self {
        let len = self.coefficients.len().max(other.coefficients.len());
        Self::new((0..len).map(|i| self.coeff(i) + other.coeff(i)).collect())
    }

    pub fn mul(&self, other: &Self) -> Self {
        if self.is_zero() || other.is_zero() {
            return Self::zero();
        }
        let mut out = vec![T::zero(); self.coefficients.len() + other.coefficients.len() - 1];
        for (i, a) in self.coefficients.iter().enumerate() {
            for (j, b) in other.coefficients.iter().enumerate() {
                out[i + j] = out[i + j].clone() + a.clone() * b.clone();
            }
        }
        Self::new(out)
    }

    pub fn scale(&self, s: &T) -> Self {
        Self::new(self.coefficients.iter().map(|c| c.clone() * s.clone()).collect())
    }

    pub fn map<U: Num + Clone, F: Fn(&T) -> U>(&self, f: F) -> PolyCoeffs<U> {
        PolyCoeffs::new(self.coefficients.iter().map(f).collect())
    }
}

fn require_even<T>(x: &SkewMatrix<T>) -> Result<()> {
    if x.dim % 2 != 0 {
        Err(Error::Dimension(format!("Pfaffian needs even dimension, got {}", x.dim)))
    } else {
        Ok(())
    }
}

/// Pfaffian by explicit enumeration of perfect matchings, each pair written
/// with its smaller index first. Matchings are generated lexicographically by
/// always pairing the smallest free index.
pub fn pfaffian_exact<T: Scalar>(x: &SkewMatrix<T>) -> Result<T> {
    require_even(x)?;
    if x.dim > EXACT_MAX_DIM {
        return Err(Error::Size(format!("exact Pfaffian limited to dim <= {EXACT_MAX_DIM}, got {}", x.dim)));
    }
    let free: Vec<usize> = (0..x.dim).collect();
    Ok(matching_sum(x, &free))
}

fn matching_sum<T: Scalar>(x: &SkewMatrix<T>, free: &[usize]) -> T {
    if free.is_empty() {
        return T::one();
    }
    let first = free[0];
    let mut total = T::zero();
    for p in 1..free.len() {
        let a = x.get(first, free[p]);
        if a.is_zero() {
            continue;
        }
        let rest: Vec<usize> = free[1..].iter().enumerate().filter(|&(q, _)| q + 1 != p).map(|(_, &i)| i).collect();
        let term = a.clone() * matching_sum(x, &rest);
        // moving free[p] next to free[0] takes p - 1 transpositions
        if p % 2 == 1 {
            total = total + term;
        } else {
            total = total - term;
        }
    }
    total
}

/// Pfaffian by skew-symmetric Gaussian elimination with partial pivoting.
///
/// Returns exactly zero when a pivot column is structurally zero.
pub fn pfaffian_numeric<T: Scalar>(x: &SkewMatrix<T>) -> Result<T> {
    require_even(x)?;
    let n = x.dim;
    let mut a = x.entries.clone();
    let at = |i: usize, j: usize| i * n + j;
    let mut pf = T::one();

    let mut k = 0;
    while k + 1 < n {
        let mut kp = k + 1;
        let mut best = a[at(k + 1, k)].magnitude();
        for i in (k + 2)..n {
            let m = a[at(i, k)].magnitude();
            if m > best {
                best = m;
                kp = i;
            }
        }
        if kp != k + 1 {
            for c in 0..n {
                a.swap(at(k + 1, c), at(kp, c));
            }
            for r in 0..n {
                a.swap(at(r, k + 1), at(r, kp));
            }
            pf = -pf;
        }
        let pivot = a[at(k, k + 1)].clone();
        if pivot.is_zero() {
            return Ok(T::zero());
        }
        pf = pf * pivot.clone();
        if k + 2 < n {
            let tau: Vec<T> = ((k + 2)..n).map(|j| a[at(k, j)].clone() / pivot.clone()).collect();
            let col: Vec<T> = ((k + 2)..n).map(|i| a[at(i, k + 1)].clone()).collect();
            for (ii, i) in ((k + 2)..n).enumerate() {
                for (jj, j) in ((k + 2)..n).enumerate() {
                    let upd = tau[ii].clone() * col[jj].clone() - col[ii].clone() * tau[jj].clone();
                    a[at(i, j)] = a[at(i, j)].clone() + upd;
                }
            }
        }
        k += 2;
    }
    Ok(pf)
}

/// Coefficients of `ζ ↦ Pf(B + ζA)` up to `max_degree` (at most `dim/2`).
///
/// The polynomial is sampled at `max_degree + 1` equally spaced points on a
/// circle and the coefficients are read off by a discrete Fourier transform.
/// A first pass uses the radius that balances the constant and leading
/// terms; each interior coefficient is then recomputed on the circle where
/// its own term dominates. If `max_degree` is below the true degree the
/// result is meaningless.
pub fn pfaffian_poly<T: Real>(b: &SkewMatrix<T>, a: &SkewMatrix<T>, max_degree: usize) -> Result<PolyCoeffs<T>> {
    if b.dim != a.dim {
        return Err(Error::Dimension(format!("B is {} but A is {}", b.dim, a.dim)));
    }
    require_even(b)?;
    let full = b.dim / 2;
    if max_degree > full {
        return Err(Error::OutOfRange(format!("max_degree {max_degree} exceeds dim/2 = {full}")));
    }
    let constant = pfaffian_numeric(b)?;
    let lead = if max_degree == full { Some(pfaffian_numeric(a)?) } else { None };
    interpolate(max_degree, constant, lead, |z| pfaffian_complex(complex_pencil(b, a, z, None)))
}

/// Coefficients in `ζ` of `Pf [[B + ζA, v], [-vᵀ, 0]]` for odd-dimensional
/// `B`, `A`.
pub fn pfaffian_bordered<T: Real>(
    b: &SkewMatrix<T>,
    a: &SkewMatrix<T>,
    v: &[T],
    max_degree: usize,
) -> Result<PolyCoeffs<T>> {
    if b.dim != a.dim || v.len() != b.dim {
        return Err(Error::Dimension(format!("B is {}, A is {}, border has length {}", b.dim, a.dim, v.len())));
    }
    if b.dim % 2 != 1 {
        return Err(Error::Dimension(format!("bordered Pfaffian needs odd dim, got {}", b.dim)));
    }
    let full = (b.dim - 1) / 2;
    if max_degree > full {
        return Err(Error::OutOfRange(format!("max_degree {max_degree} exceeds (dim-1)/2 = {full}")));
    }
    let constant = pfaffian_numeric(&b.bordered(v))?;
    let lead = if max_degree == full { Some(pfaffian_numeric(&a.bordered(v))?) } else { None };
    interpolate(max_degree, constant, lead, |z| pfaffian_complex(complex_pencil(b, a, z, Some(v))))
}

/// Dense `B + zA`, optionally bordered, as a complex row-major matrix.
fn complex_pencil<T: Real>(
    b: &SkewMatrix<T>,
    a: &SkewMatrix<T>,
    z: Complex<T>,
    border: Option<&[T]>,
) -> (usize, Vec<Complex<T>>) {
    let n = b.dim;
    let m = if border.is_some() { n + 1 } else { n };
    let mut out = vec![Complex::zero(); m * m];
    for i in 0..n {
        for j in 0..n {
            out[i * m + j] = Complex::from(b.entries[i * n + j]) + z * a.entries[i * n + j];
        }
    }
    if let Some(v) = border {
        for i in 0..n {
            out[i * m + n] = Complex::from(v[i]);
            out[n * m + i] = Complex::from(-v[i]);
        }
    }
    (m, out)
}

/// Same elimination as [`pfaffian_numeric`], over the complex numbers.
fn pfaffian_complex<T: Real>((n, mut a): (usize, Vec<Complex<T>>)) -> Result<Complex<T>> {
    let at = |i: usize, j: usize| i * n + j;
    let mut pf = Complex::from(T::one());
    let mut k = 0;
    while k + 1 < n {
        let kp = ((k + 1)..n).max_by(|&r, &s| a[at(r, k)].norm().partial_cmp(&a[at(s, k)].norm()).unwrap()).unwrap();
        if kp != k + 1 {
            for c in 0..n {
                a.swap(at(k + 1, c), at(kp, c));
            }
            for r in 0..n {
                a.swap(at(r, k + 1), at(r, kp));
            }
            pf = -pf;
        }
        let pivot = a[at(k, k + 1)];
        if pivot.is_zero() {
            return Ok(Complex::zero());
        }
        pf = pf * pivot;
        for i in (k + 2)..n {
            let tau_i = a[at(k, i)] / pivot;
            let col_i = a[at(i, k + 1)];
            for j in (k + 2)..n {
                let upd = tau_i * a[at(j, k + 1)] - col_i * (a[at(k, j)] / pivot);
                a[at(i, j)] = a[at(i, j)] + upd;
            }
        }
        k += 2;
    }
    if pf.re.is_finite() && pf.im.is_finite() {
        Ok(pf)
    } else {
        Err(Error::SingularInterpolation)
    }
}

/// `[c_0 r^0, …, c_d r^d]` from samples on the circle of radius `r`.
fn circle_coefficients<T: Real, F>(degree: usize, radius: T, rotate: bool, f: &F) -> Result<Vec<T>>
where
    F: Fn(Complex<T>) -> Result<Complex<T>>,
{
    let count = degree + 1;
    let step = T::lit(2.0) * T::PI() / T::lit(count as f64);
    let shift = if rotate { step / T::lit(2.0) } else { T::zero() };
    let values = (0..count)
        .map(|i| f(Complex::from_polar(radius, shift + step * T::lit(i as f64))))
        .collect::<Result<Vec<_>>>()?;
    Ok((0..count)
        .map(|m| {
            let sum = values.iter().enumerate().fold(Complex::<T>::zero(), |acc, (i, &v)| {
                let angle = -(shift + step * T::lit(i as f64)) * T::lit(m as f64);
                acc + v * Complex::from_polar(T::one(), angle)
            });
            sum.re / T::lit(count as f64)
        })
        .collect())
}

fn interpolate<T: Real, F>(degree: usize, constant: T, lead: Option<T>, f: F) -> Result<PolyCoeffs<T>>
where
    F: Fn(Complex<T>) -> Result<Complex<T>>,
{
    if degree == 0 {
        return Ok(PolyCoeffs::new(vec![constant]));
    }
    let balanced = match lead {
        Some(l) if !l.is_zero() && !constant.is_zero() => {
            Float::powf(Float::abs(constant / l), T::one() / T::lit(degree as f64))
        }
        _ => T::one(),
    };
    let radius = if balanced.is_finite() && balanced > T::zero() { balanced } else { T::one() };

    let mut scaled = match circle_coefficients(degree, radius, false, &f) {
        Ok(c) => c,
        Err(_) => circle_coefficients(degree, radius, true, &f)?,
    };
    let max = scaled.iter().fold(T::zero(), |m, c| Float::max(m, Float::abs(*c)));
    let floor = max * T::epsilon() * T::lit(64.0);
    let mut coeffs: Vec<T> = scaled
        .iter_mut()
        .enumerate()
        .map(|(m, c)| if Float::abs(*c) <= floor { T::zero() } else { *c / Float::powi(radius, m as i32) })
        .collect();
    coeffs[0] = constant;
    if let Some(l) = lead {
        coeffs[degree] = l;
    }

    // Refine interior coefficients on the circle where their term peaks.
    let first = coeffs.clone();
    for m in 1..degree {
        if first[m].is_zero() {
            continue;
        }
        let (lo, hi) = (first[m - 1], first[m + 1]);
        let r = if !lo.is_zero() && !hi.is_zero() {
            Float::sqrt(Float::abs(lo / hi))
        } else {
            continue;
        };
        if !(r.is_finite() && r > T::zero()) {
            continue;
        }
        let refined = circle_coefficients(degree, r, false, &f)?;
        coeffs[m] = refined[m] / Float::powi(r, m as i32);
    }
    if coeffs.iter().any(|c| !c.is_finite()) {
        return Err(Error::SingularInterpolation);
    }
    Ok(PolyCoeffs::new(coeffs))
}

#[cfg(test)]
mod tests {
    use super::*;
    use approx::assert_relative_eq;
    use num_bigint::BigInt;
    use num_rational::BigRational;

    fn canonical_blocks(k: usize) -> SkewMatrix<f64> {
        SkewMatrix::from_upper(2 * k, |i, j| if i % 2 == 0 && j == i + 1 { 1.0 } else { 0.0 })
    }

    #[test]
    fn two_by_two() {
        let x = SkewMatrix::from_rows(&[vec![0.0, 3.5], vec![-3.5, 0.0]]).unwrap();
        assert_eq!(pfaffian_exact(&x).unwrap(), 3.5);
        assert_eq!(pfaffian_numeric(&x).unwrap(), 3.5);
    }

    #[test]
    fn four_by_four_matches_three_matchings() {
        let (a12, a13, a14, a23, a24, a34) = (1.5, -0.7, 2.0, 0.3, 1.1, -2.2);
        let up = [[0.0, a12, a13, a14], [0.0, 0.0, a23, a24], [0.0, 0.0, 0.0, a34]];
        let x = SkewMatrix::from_upper(4, |i, j| up[i][j]);
        let expected = a12 * a34 - a13 * a24 + a14 * a23;
        assert_relative_eq!(pfaffian_exact(&x).unwrap(), expected, epsilon = 1e-15);
        assert_relative_eq!(pfaffian_numeric(&x).unwrap(), expected, epsilon = 1e-14);
    }

    #[test]
    fn canonical_form_has_unit_pfaffian() {
        for k in 1..8 {
            assert_eq!(pfaffian_numeric(&canonical_blocks(k)).unwrap(), 1.0);
        }
    }

    #[test]
    fn odd_and_oversized_inputs_are_rejected() {
        let odd = SkewMatrix::<f64>::zeros(3);
        assert!(matches!(pfaffian_exact(&odd), Err(Error::Dimension(_))));
        assert!(matches!(pfaffian_numeric(&odd), Err(Error::Dimension(_))));
        let big = canonical_blocks(7);
        assert!(matches!(pfaffian_exact(&big), Err(Error::Size(_))));
    }

    #[test]
    fn non_antisymmetric_input_is_rejected() {
        let r = SkewMatrix::from_rows(&[vec![0.0, 1.0], vec![-0.9, 0.0]]);
        assert!(matches!(r, Err(Error::NotAntisymmetric { .. })));
        let r = SkewMatrix::from_rows(&[vec![1e-3, 1.0], vec![-1.0, 0.0]]);
        assert!(r.is_err());
    }

    #[test]
    fn ingest_canonicalizes_small_defects() {
        let x = SkewMatrix::from_rows(&[vec![1e-14, 1.0 + 1e-13], vec![-1.0, 0.0]]).unwrap();
        assert_eq!(*x.get(0, 0), 0.0);
        assert_eq!(*x.get(0, 1), -*x.get(1, 0));
    }

    #[test]
    fn singular_matrix_gives_exact_zero() {
        // zero first row/column
        let x = SkewMatrix::from_upper(4, |i, j| if i == 0 { 0.0 } else { (i + j) as f64 });
        assert_eq!(pfaffian_numeric(&x).unwrap(), 0.0);
    }

    #[test]
    fn rational_elimination_is_exact() {
        let q = |n: i64, d: i64| BigRational::new(BigInt::from(n), BigInt::from(d));
        let vals = [q(1, 2), q(-3, 7), q(5, 3), q(2, 9), q(-1, 4), q(7, 5)];
        let mut it = vals.iter().cycle();
        let x = SkewMatrix::from_upper(6, |_, _| it.next().unwrap().clone());
        assert_eq!(pfaffian_numeric(&x).unwrap(), pfaffian_exact(&x).unwrap());
    }

    #[test]
    fn f32_instantiation() {
        let x = SkewMatrix::<f32>::from_upper(4, |i, j| (i as f32 + 1.0) * (j as f32 - 0.5));
        let e = pfaffian_exact(&x).unwrap();
        let n = pfaffian_numeric(&x).unwrap();
        assert!((e - n).abs() <= 1e-5 * e.abs().max(1.0));
    }

    #[test]
    fn poly_with_zero_a_is_constant() {
        let b = SkewMatrix::from_upper(6, |i, j| ((i * 7 + j * 3) % 5) as f64 - 2.0);
        let p = pfaffian_poly(&b, &SkewMatrix::zeros(6), 3).unwrap();
        assert_eq!(p.degree(), Some(0));
        assert_relative_eq!(p.coeff(0), pfaffian_numeric(&b).unwrap(), max_relative = 1e-12);
    }

    #[test]
    fn poly_with_zero_b_is_monomial() {
        let a = SkewMatrix::from_upper(6, |i, j| ((i * 5 + j * 2) % 7) as f64 - 3.0);
        let pfa = pfaffian_numeric(&a).unwrap();
        let p = pfaffian_poly(&SkewMatrix::zeros(6), &a, 3).unwrap();
        assert_relative_eq!(p.coeff(3), pfa, max_relative = 1e-12);
        for j in 0..3 {
            assert!(p.coeff(j).abs() <= 1e-12 * pfa.abs());
        }
    }

    #[test]
    fn poly_rejects_degree_above_half_dim() {
        let z = SkewMatrix::<f64>::zeros(4);
        assert!(pfaffian_poly(&z, &z, 3).is_err());
    }

    #[test]
    fn bordered_one_by_one() {
        let z = SkewMatrix::<f64>::zeros(1);
        let p = pfaffian_bordered(&z, &z, &[2.5], 0).unwrap();
        assert_eq!(p.coefficients(), &[2.5]);
    }

    #[test]
    fn bordered_with_zero_border_vanishes() {
        let b = SkewMatrix::from_upper(5, |i, j| (i + 2 * j) as f64 * 0.1);
        let a = SkewMatrix::from_upper(5, |i, j| (3 * i + j) as f64 * 0.2 - 1.0);
        let p = pfaffian_bordered(&b, &a, &[0.0; 5], 2).unwrap();
        assert!(p.is_zero());
    }

    #[test]
    fn poly_arithmetic() {
        let p = PolyCoeffs::new(vec![1.0, 2.0]);
        let q = PolyCoeffs::new(vec![-1.0, 0.0, 3.0, 0.0]);
        assert_eq!(q.degree(), Some(2));
        assert_eq!(p.mul(&q).coefficients(), &[-1.0, -2.0, 3.0, 6.0]);
        assert_eq!(p.add(&q).coefficients(), &[0.0, 2.0, 3.0]);
        assert_eq!(p.eval(&2.0), 5.0);
        assert!(PolyCoeffs::<f64>::new(vec![0.0, 0.0]).is_zero());
    }
}
