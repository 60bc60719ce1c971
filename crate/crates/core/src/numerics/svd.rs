//! Singular values by one-sided (Hestenes) Jacobi, and the norms built on them.

use num_complex::Complex64;
use serde::Serialize;

use super::matrix::ComplexMatrix;
use crate::error::Result;

const MAX_SWEEPS: usize = 80;

/// Singular values of `m`, sorted in decreasing order.
pub fn singular_values(m: &ComplexMatrix) -> Result<Vec<f64>> {
    m.check_finite()?;
    let n = m.dim();
    // column-major copy
    let mut cols: Vec<Vec<Complex64>> = (0..n).map(|c| (0..n).map(|r| m[(r, c)]).collect()).collect();
    let tol = f64::EPSILON;
    for _ in 0..MAX_SWEEPS {
        let mut rotated = false;
        for p in 0..n {
            for q in p + 1..n {
                let (alpha, beta, gamma) = {
                    let (cp, cq) = (&cols[p], &cols[q]);
                    let mut a = 0.0;
                    let mut b = 0.0;
                    let mut g = Complex64::new(0.0, 0.0);
                    for (x, y) in cp.iter().zip(cq) {
                        a += x.norm_sqr();
                        b += y.norm_sqr();
                        g += x.conj() * y;
                    }
                    (a, b, g)
                };
                let gn = gamma.norm();
                if gn == 0.0 || gn <= tol * (alpha * beta).sqrt() {
                    continue;
                }
                rotated = true;
                let u = gamma / gn;
                let zeta = (beta - alpha) / (2.0 * gn);
                let t = zeta.signum() / (zeta.abs() + (1.0 + zeta * zeta).sqrt());
                let c = 1.0 / (1.0 + t * t).sqrt();
                let s = c * t;
                let ubar = u.conj();
                let (left, right) = cols.split_at_mut(q);
                let (cp, cq) = (&mut left[p], &mut right[0]);
                for (x, y) in cp.iter_mut().zip(cq.iter_mut()) {
                    let xp = *x;
                    let yq = *y;
                    *x = xp * c - ubar * yq * s;
                    *y = xp * s + ubar * yq * c;
                }
            }
        }
        if !rotated {
            break;
        }
    }
    let mut sv: Vec<f64> = cols
        .iter()
        .map(|c| c.iter().map(|z| z.norm_sqr()).sum::<f64>().sqrt())
        .collect();
    sv.sort_by(|a, b| b.total_cmp(a));
    Ok(sv)
}

/// Trace, operator and Frobenius norms of a matrix.
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct Norms {
    pub trace_norm: f64,
    pub op_norm: f64,
    pub fro_norm: f64,
}

pub fn svd_norms(m: &ComplexMatrix) -> Result<Norms> {
    let sv = singular_values(m)?;
    Ok(Norms {
        trace_norm: sv.iter().sum(),
        op_norm: sv.first().copied().unwrap_or(0.0),
        fro_norm: sv.iter().map(|s| s * s).sum::<f64>().sqrt(),
    })
}

pub fn trace_norm(m: &ComplexMatrix) -> f64 {
    svd_norms(m).map(|n| n.trace_norm).unwrap_or(f64::NAN)
}

pub fn op_norm(m: &ComplexMatrix) -> f64 {
    svd_norms(m).map(|n| n.op_norm).unwrap_or(f64::NAN)
}

/// Number of singular values exceeding `tau * sigma_max`.
pub fn rank_tol(m: &ComplexMatrix, tau: f64) -> usize {
    let Ok(sv) = singular_values(m) else {
        return 0;
    };
    let smax = sv.first().copied().unwrap_or(0.0);
    if smax == 0.0 {
        return 0;
    }
    sv.iter().filter(|&&s| s > tau * smax).count()
}
