//! Cyclic Jacobi eigensolver for Hermitian matrices.

use num_complex::Complex64;

use super::matrix::{ComplexMatrix, ZERO};
use crate::error::Result;

const MAX_SWEEPS: usize = 80;

/// Eigen-decomposition of a Hermitian matrix.
#[derive(Debug, Clone)]
pub struct HermitianEigen {
    /// Ascending eigenvalues.
    pub values: Vec<f64>,
    /// Eigenvectors, `vectors[k]` belongs to `values[k]`.
    pub vectors: Vec<Vec<Complex64>>,
}

/// Decomposes the Hermitian part of `m`.
pub fn eigh(m: &ComplexMatrix) -> Result<HermitianEigen> {
    m.check_finite()?;
    let n = m.dim();
    let mut a = m.hermitian_part();
    let mut v = ComplexMatrix::identity(n);
    for _ in 0..MAX_SWEEPS {
        let off: f64 = (0..n)
            .flat_map(|r| (0..n).filter(move |&c| c != r).map(move |c| (r, c)))
            .map(|(r, c)| a[(r, c)].norm_sqr())
            .sum();
        let diag: f64 = (0..n).map(|i| a[(i, i)].norm_sqr()).sum();
        if off == 0.0 || off <= f64::EPSILON * f64::EPSILON * diag * 1e-2 {
            break;
        }
        for p in 0..n {
            for q in p + 1..n {
                let apq = a[(p, q)];
                let g = apq.norm();
                if g == 0.0 {
                    continue;
                }
                let app = a[(p, p)].re;
                let aqq = a[(q, q)].re;
                let u = apq / g;
                let theta = (aqq - app) / (2.0 * g);
                let t = if theta.is_finite() {
                    let sgn = if theta >= 0.0 { 1.0 } else { -1.0 };
                    sgn / (theta.abs() + (theta * theta + 1.0).sqrt())
                } else {
                    0.0
                };
                let c = 1.0 / (t * t + 1.0).sqrt();
                let s = t * c;
                let ub = u.conj();
                // G = [[c, s], [-ub s, ub c]]
                let (gpp, gpq, gqp, gqq) = (
                    Complex64::new(c, 0.0),
                    Complex64::new(s, 0.0),
                    -ub * s,
                    ub * c,
                );
                for k in 0..n {
                    let x = a[(k, p)];
                    let y = a[(k, q)];
                    a[(k, p)] = x * gpp + y * gqp;
                    a[(k, q)] = x * gpq + y * gqq;
                }
                for k in 0..n {
                    let x = a[(p, k)];
                    let y = a[(q, k)];
                    a[(p, k)] = gpp.conj() * x + gqp.conj() * y;
                    a[(q, k)] = gpq.conj() * x + gqq.conj() * y;
                }
                a[(p, q)] = ZERO;
                a[(q, p)] = ZERO;
                a[(p, p)] = Complex64::new(a[(p, p)].re, 0.0);
                a[(q, q)] = Complex64::new(a[(q, q)].re, 0.0);
                for k in 0..n {
                    let x = v[(k, p)];
                    let y = v[(k, q)];
                    v[(k, p)] = x * gpp + y * gqp;
                    v[(k, q)] = x * gpq + y * gqq;
                }
            }
        }
    }
    let mut order: Vec<usize> = (0..n).collect();
    order.sort_by(|&i, &j| a[(i, i)].re.total_cmp(&a[(j, j)].re));
    Ok(HermitianEigen {
        values: order.iter().map(|&i| a[(i, i)].re).collect(),
        vectors: order.iter().map(|&i| (0..n).map(|r| v[(r, i)]).collect()).collect(),
    })
}

/// Smallest eigenvalue of the Hermitian part of `m`.
pub fn min_eigh(m: &ComplexMatrix) -> f64 {
    if m.dim() == 2 {
        let a = m[(0, 0)].re;
        let d = m[(1, 1)].re;
        let b = (m[(0, 1)] + m[(1, 0)].conj()) * 0.5;
        let mid = 0.5 * (a + d);
        let rad = (0.25 * (a - d) * (a - d) + b.norm_sqr()).sqrt();
        return mid - rad;
    }
    eigh(m).map(|e| e.values[0]).unwrap_or(f64::NAN)
}

/// Principal square root of a positive semidefinite matrix, and its inverse
/// (eigenvalues below `floor` are treated as zero in the inverse).
pub fn psd_sqrt_and_inv(m: &ComplexMatrix, floor: f64) -> Result<(ComplexMatrix, ComplexMatrix)> {
    let e = eigh(m)?;
    let n = m.dim();
    let mut sqrt = ComplexMatrix::zeros(n);
    let mut inv = ComplexMatrix::zeros(n);
    for (lam, vec) in e.values.iter().zip(&e.vectors) {
        let l = lam.max(0.0);
        let s = l.sqrt();
        let is = if l > floor { 1.0 / s } else { 0.0 };
        for r in 0..n {
            for c in 0..n {
                let outer = vec[r] * vec[c].conj();
                sqrt[(r, c)] += outer * s;
                inv[(r, c)] += outer * is;
            }
        }
    }
    Ok((sqrt, inv))
}
