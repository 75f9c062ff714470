//! Symmetric tridiagonal eigenvalues by implicit-shift QL, and Householder
//! reduction of dense symmetric matrices to tridiagonal form.

use num_traits::Float;

use crate::error::{Error, Result};
use crate::scalar::Real;

/// QL sweeps allowed per eigenvalue before giving up.
pub const MAX_SWEEPS: usize = 50;

/// All eigenvalues of the symmetric tridiagonal matrix with the given diagonal
/// and sub-diagonal, sorted ascending.
pub fn eigen_tridiagonal<T: Real>(diag: &[T], offdiag: &[T]) -> Result<Vec<T>> {
    let mut d = diag.to_vec();
    let mut e = padded_offdiag(diag, offdiag)?;
    ql_implicit(&mut d, &mut e, None)?;
    d.sort_by(|a, b| a.partial_cmp(b).expect("NaN eigenvalue"));
    Ok(d)
}

/// Eigenvalues together with the first component of each normalized
/// eigenvector, sorted by eigenvalue. This is all Golub–Welsch needs.
pub fn eigen_tridiagonal_first_components<T: Real>(diag: &[T], offdiag: &[T]) -> Result<(Vec<T>, Vec<T>)> {
    let mut d = diag.to_vec();
    let mut e = padded_offdiag(diag, offdiag)?;
    let mut z = vec![T::zero(); d.len()];
    if let Some(z0) = z.first_mut() {
        *z0 = T::one();
    }
    ql_implicit(&mut d, &mut e, Some(&mut z))?;
    let mut pairs: Vec<(T, T)> = d.into_iter().zip(z).collect();
    pairs.sort_by(|a, b| a.0.partial_cmp(&b.0).expect("NaN eigenvalue"));
    Ok(pairs.into_iter().unzip())
}

fn padded_offdiag<T: Real>(diag: &[T], offdiag: &[T]) -> Result<Vec<T>> {
    if diag.is_empty() {
        return Err(Error::Dimension("empty tridiagonal matrix".into()));
    }
    if offdiag.len() + 1 != diag.len() {
        return Err(Error::Dimension(format!(
            "diag has length {} so offdiag needs {}, got {}",
            diag.len(),
            diag.len() - 1,
            offdiag.len()
        )));
    }
    let mut e = offdiag.to_vec();
    e.push(T::zero());
    Ok(e)
}

/// In-place implicit QL with Wilkinson-type shifts. `e[i]` couples `d[i]` and
/// `d[i+1]`; `e[n-1]` must be zero. If `z` is given it holds the first row of
/// the accumulated rotation matrix.
fn ql_implicit<T: Real>(d: &mut [T], e: &mut [T], mut z: Option<&mut [T]>) -> Result<()> {
    let n = d.len();
    let two = T::lit(2.0);
    for l in 0..n {
        let mut sweeps = 0;
        loop {
            let mut m = l;
            while m + 1 < n {
                let dd = Float::abs(d[m]) + Float::abs(d[m + 1]);
                if Float::abs(e[m]) <= T::epsilon() * dd {
                    break;
                }
                m += 1;
            }
            if m == l {
                break;
            }
            if sweeps == MAX_SWEEPS {
                return Err(Error::NonConvergence { trial: None });
            }
            sweeps += 1;

            let mut g = (d[l + 1] - d[l]) / (two * e[l]);
            let mut r = Float::hypot(g, T::one());
            let signed_r = if g >= T::zero() { Float::abs(r) } else { -Float::abs(r) };
            g = d[m] - d[l] + e[l] / (g + signed_r);
            let (mut s, mut c, mut p) = (T::one(), T::one(), T::zero());
            let mut underflow = false;
            let mut i = m;
            while i > l {
                i -= 1;
                let f = s * e[i];
                let b = c * e[i];
                r = pythag(f, g);
                e[i + 1] = r;
                if r == T::zero() {
                    d[i + 1] = d[i + 1] - p;
                    e[m] = T::zero();
                    underflow = true;
                    break;
                }
                s = f / r;
                c = g / r;
                g = d[i + 1] - p;
                r = (d[i] - g) * s + two * c * b;
                p = s * r;
                d[i + 1] = g + p;
                g = c * r - b;
                if let Some(z) = z.as_deref_mut() {
                    let f = z[i + 1];
                    z[i + 1] = s * z[i] + c * f;
                    z[i] = c * z[i] - s * f;
                }
            }
            if underflow {
                continue;
            }
            d[l] = d[l] - p;
            e[l] = g;
            e[m] = T::zero();
        }
    }
    Ok(())
}

/// `√(a² + b²)`, falling back to `hypot` only when the squares under- or
/// overflow.
#[inline]
fn pythag<T: Real>(a: T, b: T) -> T {
    let s = a * a + b * b;
    if s > T::min_positive_value() && s.is_finite() {
        s.sqrt()
    } else {
        Float::hypot(a, b)
    }
}

/// Householder reduction of a dense symmetric matrix (row-major, `n × n`) to
/// tridiagonal form. Only the lower triangle is read. Returns `(diag, offdiag)`.
pub fn householder_tridiagonal<T: Real>(mut a: Vec<T>, n: usize) -> (Vec<T>, Vec<T>) {
    assert_eq!(a.len(), n * n, "matrix must be n x n");
    for i in 0..n {
        for j in (i + 1)..n {
            a[i * n + j] = a[j * n + i];
        }
    }
    let mut offdiag = Vec::with_capacity(n.saturating_sub(1));
    let mut v = vec![T::zero(); n];
    let mut w = vec![T::zero(); n];
    for k in 0..n.saturating_sub(1) {
        let lo = k + 1;
        let norm = Float::sqrt((lo..n).map(|i| a[i * n + k] * a[i * n + k]).sum::<T>());
        if norm == T::zero() {
            offdiag.push(T::zero());
            continue;
        }
        let x0 = a[lo * n + k];
        let alpha = if x0 > T::zero() { -norm } else { norm };
        for i in lo..n {
            v[i] = a[i * n + k];
        }
        v[lo] = v[lo] - alpha;
        let vnorm = Float::sqrt((lo..n).map(|i| v[i] * v[i]).sum::<T>());
        offdiag.push(alpha);
        if vnorm == T::zero() {
            continue;
        }
        for x in v[lo..n].iter_mut() {
            *x = *x / vnorm;
        }
        // w = A v on the trailing block, then u = 2w - 2(vᵀw)v
        for i in lo..n {
            let row = &a[i * n + lo..i * n + n];
            w[i] = row.iter().zip(&v[lo..n]).map(|(&x, &y)| x * y).sum();
        }
        let kappa: T = (lo..n).map(|i| v[i] * w[i]).sum();
        let two = T::lit(2.0);
        for i in lo..n {
            w[i] = two * w[i] - two * kappa * v[i];
        }
        for i in lo..n {
            for j in lo..n {
                a[i * n + j] = a[i * n + j] - v[i] * w[j] - w[i] * v[j];
            }
        }
        for i in lo..n {
            a[i * n + k] = T::zero();
            a[k * n + i] = T::zero();
        }
    }
    let diag = (0..n).map(|i| a[i * n + i]).collect();
    (diag, offdiag)
}

/// Eigenvalues of a dense symmetric matrix (lower triangle read), ascending.
pub fn eigen_symmetric<T: Real>(a: Vec<T>, n: usize) -> Result<Vec<T>> {
    let (d, e) = householder_tridiagonal(a, n);
    eigen_tridiagonal(&d, &e)
}

#[cfg(test)]
mod tests {
    use super::*;
    use nalgebra::DMatrix;

    fn lcg(state: &mut u64) -> f64 {
        *state = state.wrapping_mul(6364136223846793005).wrapping_add(1442695040888963407);
        ((*state >> 11) as f64 / (1u64 << 53) as f64) * 2.0 - 1.0
    }

    #[test]
    fn one_by_one() {
        assert_eq!(eigen_tridiagonal(&[3.25], &[]).unwrap(), vec![3.25]);
    }

    #[test]
    fn two_by_two_unit_coupling() {
        let ev = eigen_tridiagonal(&[0.0, 0.0], &[1.0]).unwrap();
        assert!((ev[0] + 1.0).abs() < 1e-15 && (ev[1] - 1.0).abs() < 1e-15);
    }

    #[test]
    fn length_mismatch_is_an_error() {
        assert!(eigen_tridiagonal(&[1.0, 2.0], &[]).is_err());
        assert!(eigen_tridiagonal::<f64>(&[], &[]).is_err());
    }

    #[test]
    fn random_tridiagonal_matches_dense_solver() {
        let mut s = 7u64;
        let n = 50;
        let d: Vec<f64> = (0..n).map(|_| lcg(&mut s) * 3.0).collect();
        let e: Vec<f64> = (0..n - 1).map(|_| lcg(&mut s)).collect();
        let ours = eigen_tridiagonal(&d, &e).unwrap();
        let m = DMatrix::from_fn(n, n, |i, j| {
            if i == j {
                d[i]
            } else if i == j + 1 {
                e[j]
            } else if j == i + 1 {
                e[i]
            } else {
                0.0
            }
        });
        let mut reference: Vec<f64> = m.symmetric_eigenvalues().iter().copied().collect();
        reference.sort_by(|a, b| a.partial_cmp(b).unwrap());
        for (a, b) in ours.iter().zip(&reference) {
            assert!((a - b).abs() < 1e-10, "{a} vs {b}");
        }
    }

    #[test]
    fn dense_path_matches_nalgebra() {
        let mut s = 99u64;
        let n = 40;
        let mut a = vec![0.0; n * n];
        for i in 0..n {
            for j in 0..=i {
                let x = lcg(&mut s);
                a[i * n + j] = x;
                a[j * n + i] = x;
            }
        }
        let ours = eigen_symmetric(a.clone(), n).unwrap();
        let mut reference: Vec<f64> =
            DMatrix::from_row_slice(n, n, &a).symmetric_eigenvalues().iter().copied().collect();
        reference.sort_by(|a, b| a.partial_cmp(b).unwrap());
        for (x, y) in ours.iter().zip(&reference) {
            assert!((x - y).abs() < 1e-10, "{x} vs {y}");
        }
    }

    #[test]
    fn first_components_are_unit_norm() {
        let d = [1.0, -0.5, 2.0, 0.3];
        let e = [0.7, 0.2, -1.1];
        let (vals, z) = eigen_tridiagonal_first_components(&d, &e).unwrap();
        assert!(vals.windows(2).all(|w| w[0] <= w[1]));
        let norm: f64 = z.iter().map(|x| x * x).sum();
        assert!((norm - 1.0).abs() < 1e-14);
    }
}
