//! Eigenvalues of general complex matrices.
//!
//! Eigenvalues isolated by zero rows or columns are split off exactly. The
//! rest go through Householder reduction to upper Hessenberg form and
//! single-shift complex QR iteration (Wilkinson shifts, exceptional shifts
//! every ten stagnant steps) with deflation on negligible subdiagonal entries. Each
//! eigenvalue is then checked with a few steps of inverse iteration on the
//! original matrix to produce a backward residual.

use num_complex::Complex64;

use super::lu::Lu;
use super::matrix::{ComplexMatrix, ZERO};
use super::spectrum::Spectrum;
use crate::config::CLUSTER_TOL;
use crate::error::{Error, Result};

/// Maximum accepted relative eigenpair residual.
pub const RESIDUAL_TOL: f64 = 1e-9;

/// All eigenvalues of `m`, with multiplicity, together with their residuals.
pub fn eig(m: &ComplexMatrix) -> Result<Spectrum> {
    m.check_finite()?;
    let eigenvalues = eigenvalues(m)?;
    let residuals = residuals(m, &eigenvalues);
    if let Some(worst) = residuals.iter().copied().fold(None, |acc: Option<f64>, r| {
        Some(acc.map_or(r, |a| a.max(r)))
    }) {
        if !(worst <= RESIDUAL_TOL) {
            return Err(Error::NonConvergence {
                iterations: 100 * m.dim(),
            });
        }
    }
    Ok(Spectrum {
        eigenvalues,
        residuals,
        cluster_tolerance: CLUSTER_TOL,
    })
}

/// Eigenvalues only, without residual verification.
pub fn eigenvalues(m: &ComplexMatrix) -> Result<Vec<Complex64>> {
    m.check_finite()?;
    let (mut values, active) = isolate(m);
    if !active.is_empty() {
        let mut h = ComplexMatrix::from_fn(active.len(), |r, c| m[(active[r], active[c])]);
        hessenberg(&mut h);
        values.extend(qr_iterate(&mut h)?);
    }
    Ok(values)
}

/// Splits off eigenvalues exposed by rows or columns that vanish off the
/// diagonal (the permutation step of balancing). Returns those eigenvalues and
/// the indices of the remaining principal submatrix, whose spectrum supplies
/// the rest. Isolated eigenvalues are exact diagonal entries.
pub(crate) fn isolate(m: &ComplexMatrix) -> (Vec<Complex64>, Vec<usize>) {
    let mut active: Vec<usize> = (0..m.dim()).collect();
    let mut values = Vec::new();
    loop {
        let found = active.iter().position(|&j| {
            let row_clear = active.iter().all(|&k| k == j || m[(j, k)] == ZERO);
            row_clear || active.iter().all(|&k| k == j || m[(k, j)] == ZERO)
        });
        match found {
            Some(p) => {
                let j = active.remove(p);
                values.push(m[(j, j)]);
            }
            None => return (values, active),
        }
    }
}

/// Householder reduction to upper Hessenberg form, in place.
pub(crate) fn hessenberg(h: &mut ComplexMatrix) {
    let n = h.dim();
    if n < 3 {
        return;
    }
    let mut v = vec![ZERO; n];
    for k in 0..n - 2 {
        let norm: f64 = (k + 1..n).map(|r| h[(r, k)].norm_sqr()).sum::<f64>().sqrt();
        if norm == 0.0 {
            continue;
        }
        let x0 = h[(k + 1, k)];
        let phase = if x0.norm() == 0.0 {
            Complex64::new(1.0, 0.0)
        } else {
            x0 / x0.norm()
        };
        let alpha = -phase * norm;
        for r in 0..n {
            v[r] = if r > k { h[(r, k)] } else { ZERO };
        }
        v[k + 1] -= alpha;
        let vnorm: f64 = v[k + 1..].iter().map(|z| z.norm_sqr()).sum::<f64>().sqrt();
        if vnorm == 0.0 {
            continue;
        }
        for z in &mut v[k + 1..] {
            *z /= vnorm;
        }
        // H <- (I - 2vv^H) H
        for c in 0..n {
            let mut s = ZERO;
            for r in k + 1..n {
                s += v[r].conj() * h[(r, c)];
            }
            s *= 2.0;
            for r in k + 1..n {
                let d = v[r] * s;
                h[(r, c)] -= d;
            }
        }
        // H <- H (I - 2vv^H)
        for r in 0..n {
            let mut s = ZERO;
            for c in k + 1..n {
                s += h[(r, c)] * v[c];
            }
            s *= 2.0;
            for c in k + 1..n {
                let d = s * v[c].conj();
                h[(r, c)] -= d;
            }
        }
        for r in k + 2..n {
            h[(r, k)] = ZERO;
        }
    }
}

fn wilkinson_shift(a: Complex64, b: Complex64, c: Complex64, d: Complex64) -> Complex64 {
    let half = (a - d) * 0.5;
    let disc = (half * half + b * c).sqrt();
    let mu1 = (a + d) * 0.5 + disc;
    let mu2 = (a + d) * 0.5 - disc;
    if (mu1 - d).norm() <= (mu2 - d).norm() {
        mu1
    } else {
        mu2
    }
}

fn qr_iterate(h: &mut ComplexMatrix) -> Result<Vec<Complex64>> {
    let n = h.dim();
    let eps = f64::EPSILON;
    let scale = h.fro_norm();
    let max_iter = 100 * n;
    let mut total = 0usize;
    let mut stagnant = 0usize;
    let mut out = vec![ZERO; n];
    let mut hi = n as isize - 1;
    let mut rot: Vec<(f64, Complex64)> = Vec::with_capacity(n);

    while hi >= 0 {
        let hiu = hi as usize;
        // find the start of the active unreduced block
        let mut lo = hiu;
        while lo > 0 {
            let sub = h[(lo, lo - 1)].norm();
            let mut diag = h[(lo - 1, lo - 1)].norm() + h[(lo, lo)].norm();
            if diag == 0.0 {
                diag = scale;
            }
            if sub <= eps * diag || sub <= f64::MIN_POSITIVE {
                h[(lo, lo - 1)] = ZERO;
                break;
            }
            lo -= 1;
        }
        if lo == hiu {
            out[hiu] = h[(hiu, hiu)];
            hi -= 1;
            stagnant = 0;
            continue;
        }
        if total >= max_iter {
            return Err(Error::NonConvergence { iterations: total });
        }
        total += 1;
        stagnant += 1;

        let shift = if stagnant % 10 == 0 {
            h[(hiu, hiu)] + h[(hiu, hiu - 1)].norm() * 0.75
        } else {
            wilkinson_shift(
                h[(hiu - 1, hiu - 1)],
                h[(hiu - 1, hiu)],
                h[(hiu, hiu - 1)],
                h[(hiu, hiu)],
            )
        };

        for i in lo..=hiu {
            h[(i, i)] -= shift;
        }
        rot.clear();
        for k in lo..hiu {
            let a = h[(k, k)];
            let b = h[(k + 1, k)];
            let r = (a.norm_sqr() + b.norm_sqr()).sqrt();
            let (c, s) = if r == 0.0 {
                (1.0, ZERO)
            } else if a.norm() == 0.0 {
                (0.0, b.conj() / b.norm())
            } else {
                let an = a.norm();
                (an / r, (a / an) * b.conj() / r)
            };
            rot.push((c, s));
            for j in k..=hiu {
                let x = h[(k, j)];
                let y = h[(k + 1, j)];
                h[(k, j)] = x * c + s * y;
                h[(k + 1, j)] = -s.conj() * x + y * c;
            }
        }
        for (idx, &(c, s)) in rot.iter().enumerate() {
            let k = lo + idx;
            let top = (k + 2).min(hiu + 1);
            for i in lo..top {
                let x = h[(i, k)];
                let y = h[(i, k + 1)];
                h[(i, k)] = x * c + s.conj() * y;
                h[(i, k + 1)] = -s * x + y * c;
            }
        }
        for i in lo..=hiu {
            h[(i, i)] += shift;
        }
    }
    Ok(out)
}

/// Relative residual `min_v ||Mv - λv|| / ||M||_F` estimated by inverse iteration.
fn residuals(m: &ComplexMatrix, eigenvalues: &[Complex64]) -> Vec<f64> {
    let n = m.dim();
    let norm = m.fro_norm();
    if norm == 0.0 {
        return vec![0.0; eigenvalues.len()];
    }
    eigenvalues
        .iter()
        .map(|&lambda| {
            let shifted = m.shift(lambda);
            let lu = Lu::new(&shifted, f64::EPSILON * norm);
            let mut v: Vec<Complex64> = (0..n)
                .map(|i| Complex64::new(1.0 + (i as f64 * 0.618_033_988_7).fract(), 0.1 * i as f64))
                .collect();
            let mut best = f64::INFINITY;
            for _ in 0..3 {
                v = lu.solve_vec(&v);
                let vn: f64 = v.iter().map(|z| z.norm_sqr()).sum::<f64>().sqrt();
                if !(vn.is_finite() && vn > 0.0) {
                    break;
                }
                for z in &mut v {
                    *z /= vn;
                }
                let mv = shifted.mul_vec(&v);
                let r = mv.iter().map(|z| z.norm_sqr()).sum::<f64>().sqrt() / norm;
                best = best.min(r);
            }
            best
        })
        .collect()
}
