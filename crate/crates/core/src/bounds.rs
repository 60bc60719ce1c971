//! Certified norm bounds and executable checks of the auxiliary lemmas.
//!
//! The diamond norm is never computed exactly. For any map `Δ` on `n x n`
//! matrices the Choi trace norm sandwiches it:
//! `‖J(Δ)‖₁ / n ≤ ‖Δ‖_◇ ≤ ‖J(Δ)‖₁`. Every diamond statement in this crate is
//! made through that sandwich.

use num_complex::Complex64;
use serde::Serialize;

use crate::channels::{Residuals, Superoperator};
use crate::config::Tolerances;
use crate::error::{Error, Result};
use crate::numerics::{expm, svd_norms, trace_norm, ComplexMatrix};
use crate::sampling::{haar_state, projector, rng};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum BoundMethod {
    ChoiTraceSandwich,
    PureStateSampling,
    ExactSvd,
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct NormBound {
    pub lower: f64,
    pub upper: f64,
    pub method: BoundMethod,
}

/// `(‖J(Δ)‖₁ / n, ‖J(Δ)‖₁)`.
pub fn diamond_bounds(delta: &Superoperator) -> NormBound {
    let tn = trace_norm(delta.to_choi().matrix());
    NormBound {
        lower: tn / delta.n() as f64,
        upper: tn,
        method: BoundMethod::ChoiTraceSandwich,
    }
}

/// Certified upper bound on `‖Δ‖_◇`.
pub fn diamond_upper(delta: &Superoperator) -> f64 {
    diamond_bounds(delta).upper
}

pub const ASCENT_STEPS: usize = 50;

/// Lower bound on `‖Δ‖_{1→1}` from pure input states.
///
/// Each of the `samples` Haar-random states is followed by [`ASCENT_STEPS`]
/// steps of random local ascent on `‖Δ(ψψ*)‖₁`, and the best value seen is
/// returned. Every sample consumes the same number of draws, so the result for
/// `k` samples is a prefix maximum of the result for `k + 1` samples and the
/// bound is nondecreasing in `samples` for a fixed seed.
pub fn one_to_one_lower(delta: &Superoperator, samples: usize, seed: u64) -> f64 {
    let n = delta.n();
    let mut r = rng(seed);
    let value = |psi: &[Complex64]| trace_norm(&delta.apply(&projector(psi)).expect("dimension matches"));
    let mut best: f64 = 0.0;
    for _ in 0..samples.max(1) {
        let mut psi = haar_state(n, &mut r);
        let mut current = value(&psi);
        let mut step = 0.5;
        for _ in 0..ASCENT_STEPS {
            let dir = haar_state(n, &mut r);
            let mut cand: Vec<Complex64> = psi.iter().zip(&dir).map(|(a, d)| a + d * step).collect();
            let norm = cand.iter().map(|z| z.norm_sqr()).sum::<f64>().sqrt();
            for z in &mut cand {
                *z /= norm;
            }
            let v = value(&cand);
            if v > current {
                current = v;
                psi = cand;
            } else {
                step *= 0.8;
            }
        }
        best = best.max(current);
    }
    best
}

/// Outcome of the `‖1 − X‖_∞ ≤ 1 ⇒ X ⪰ 0` criterion.
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct PsdCertificate {
    pub certified: bool,
    /// `‖1 − X‖_∞`
    pub op_norm_residual: f64,
}

/// Sufficient test for positive semidefiniteness of a Hermitian matrix.
pub fn psd_cert_lemma8(x: &ComplexMatrix) -> Result<PsdCertificate> {
    let residual = x.hermiticity_residual();
    if residual > 1e-12 {
        return Err(Error::NotHermitian { residual });
    }
    let d = &ComplexMatrix::identity(x.dim()) - x;
    let op = svd_norms(&d)?.op_norm;
    Ok(PsdCertificate {
        certified: op <= 1.0 + 1e-12,
        op_norm_residual: op,
    })
}

/// Gauss–Legendre nodes and weights on `[0, 1]`.
pub fn gauss_legendre(order: usize) -> (Vec<f64>, Vec<f64>) {
    assert!(order >= 1);
    let n = order;
    let mut nodes = vec![0.0; n];
    let mut weights = vec![0.0; n];
    for i in 0..n.div_ceil(2) {
        let mut x = (std::f64::consts::PI * (i as f64 + 0.75) / (n as f64 + 0.5)).cos();
        let mut dp = 0.0;
        for _ in 0..100 {
            // Legendre recurrence
            let (mut p0, mut p1) = (1.0, x);
            for k in 2..=n {
                let p2 = ((2 * k - 1) as f64 * x * p1 - (k - 1) as f64 * p0) / k as f64;
                p0 = p1;
                p1 = p2;
            }
            let pn = if n == 1 { x } else { p1 };
            let pnm1 = if n == 1 { 1.0 } else { p0 };
            dp = n as f64 * (x * pn - pnm1) / (x * x - 1.0);
            let dx = pn / dp;
            x -= dx;
            if dx.abs() < 1e-16 {
                break;
            }
        }
        let w = 2.0 / ((1.0 - x * x) * dp * dp);
        nodes[i] = -x;
        nodes[n - 1 - i] = x;
        weights[i] = w;
        weights[n - 1 - i] = w;
    }
    (
        nodes.iter().map(|t| 0.5 * (t + 1.0)).collect(),
        weights.iter().map(|w| 0.5 * w).collect(),
    )
}

pub const DEFAULT_QUAD_ORDER: usize = 32;

/// `‖e^A − e^B − ∫₀¹ e^{(1−s)B} (A − B) e^{sA} ds‖_F` with the integral
/// evaluated by Gauss–Legendre quadrature.
pub fn duhamel_residual(a: &ComplexMatrix, b: &ComplexMatrix, quad_order: usize) -> Result<f64> {
    if a.dim() != b.dim() {
        return Err(Error::DimensionMismatch {
            expected: a.dim(),
            found: b.dim(),
        });
    }
    if quad_order < 2 {
        return Err(Error::InvalidArgument("quadrature order must be at least 2".into()));
    }
    let diff = a - b;
    let (nodes, weights) = gauss_legendre(quad_order);
    let mut integral = ComplexMatrix::zeros(a.dim());
    for (s, w) in nodes.iter().zip(&weights) {
        let left = expm(&b.scale_real(1.0 - s))?;
        let right = expm(&a.scale_real(*s))?;
        let term = &(&left * &diff) * &right;
        integral = &integral + &term.scale_real(*w);
    }
    let lhs = &expm(a)? - &expm(b)?;
    Ok((&lhs - &integral).fro_norm())
}

/// Computable consequence of `‖e^{L1} − e^{L2}‖_◇ ≤ ‖L1 − L2‖_◇`.
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct ContractionCheck {
    pub holds: bool,
    /// Diamond lower bound of `e^{L1} − e^{L2}`.
    pub lhs_lower: f64,
    /// Diamond upper bound of `L1 − L2`.
    pub rhs_upper: f64,
}

pub fn contraction_check(l1: &Superoperator, l2: &Superoperator) -> Result<ContractionCheck> {
    l1.check_same(l2)?;
    let tol = Tolerances::default();
    for (name, l) in [("L1", l1), ("L2", l2)] {
        if !Residuals::of(l).is_gksl(&tol) {
            return Err(Error::NotGKSL(format!("{name} fails the GKSL certificate")));
        }
    }
    let lhs_lower = diamond_bounds(&l1.exp_scaled(1.0)?.sub(&l2.exp_scaled(1.0)?)?).lower;
    let rhs_upper = diamond_bounds(&l1.sub(l2)?).upper;
    Ok(ContractionCheck {
        holds: lhs_lower <= rhs_upper + 1e-10,
        lhs_lower,
        rhs_upper,
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn gauss_legendre_integrates_polynomials_exactly() {
        let (x, w) = gauss_legendre(5);
        // degree 9 is exact for 5 nodes
        let integral: f64 = x.iter().zip(&w).map(|(x, w)| w * x.powi(9)).sum();
        assert!((integral - 0.1).abs() < 1e-15);
        assert!((w.iter().sum::<f64>() - 1.0).abs() < 1e-15);
        let (x2, _) = gauss_legendre(2);
        assert!((x2[0] - (0.5 - 0.5 / 3f64.sqrt())).abs() < 1e-15);
    }

    #[test]
    fn zero_map_bounds() {
        let b = diamond_bounds(&Superoperator::zero(2));
        assert_eq!((b.lower, b.upper), (0.0, 0.0));
        assert_eq!(one_to_one_lower(&Superoperator::zero(2), 10, 0), 0.0);
    }

    #[test]
    fn identity_bounds() {
        let b = diamond_bounds(&Superoperator::identity(2));
        assert!((b.lower - 1.0).abs() < 1e-14);
        assert!((b.upper - 2.0).abs() < 1e-14);
        let l = one_to_one_lower(&Superoperator::identity(2), 5, 1);
        assert!((l - 1.0).abs() < 1e-12);
    }

    #[test]
    fn lemma8_examples() {
        let id = psd_cert_lemma8(&ComplexMatrix::identity(3)).unwrap();
        assert!(id.certified);
        assert_eq!(id.op_norm_residual, 0.0);
        let two = psd_cert_lemma8(&ComplexMatrix::identity(3).scale_real(2.0)).unwrap();
        assert!(two.certified);
        assert!((two.op_norm_residual - 1.0).abs() < 1e-15);
        let ind = psd_cert_lemma8(&ComplexMatrix::from_real(2, &[1.0, 0.0, 0.0, -0.5]).unwrap()).unwrap();
        assert!(!ind.certified);
        assert!((ind.op_norm_residual - 1.5).abs() < 1e-15);
        let nh = ComplexMatrix::from_real(2, &[1.0, 1.0, 0.0, 1.0]).unwrap();
        assert!(matches!(psd_cert_lemma8(&nh), Err(Error::NotHermitian { .. })));
    }

    #[test]
    fn duhamel_trivial_cases() {
        let a = ComplexMatrix::from_real(2, &[0.3, 0.1, -0.2, 0.5]).unwrap();
        assert!(duhamel_residual(&a, &a, 32).unwrap() < 1e-14);
        let d = ComplexMatrix::from_real(2, &[1.0, 0.0, 0.0, 2.0]).unwrap();
        assert!(duhamel_residual(&d, &ComplexMatrix::zeros(2), 32).unwrap() <= 1e-10);
        assert!(duhamel_residual(&d, &ComplexMatrix::zeros(3), 32).is_err());
    }
}
