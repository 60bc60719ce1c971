//! Numerical class-membership certificates.

use num_complex::Complex64;
use rand::Rng;
use serde::{Deserialize, Serialize};

use crate::config::Tolerances;
use crate::numerics::{min_eigh, ComplexMatrix};
use crate::sampling::{haar_state, projector};

use super::Superoperator;

/// Number of random `(ψ, φ)` pairs drawn by the positivity heuristic.
pub const POSITIVITY_SAMPLES: usize = 2000;
/// Local refinement steps applied to the best sampled pair.
pub const POSITIVITY_REFINEMENT_STEPS: usize = 50;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum MapKind {
    Channel,
    Generator,
}

/// Class memberships derived from a certificate's residuals.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub struct ClassFlags {
    pub trace_preserving: bool,
    pub unital: bool,
    pub completely_positive: bool,
    pub gksl: bool,
    /// Sampled positivity was not refuted. Never a proof of positivity.
    pub positivity_not_refuted: bool,
}

impl ClassFlags {
    pub fn cptp(&self) -> bool {
        self.trace_preserving && self.completely_positive
    }

    pub fn unital_cptp(&self) -> bool {
        self.cptp() && self.unital
    }

    /// Trace preserving and not refuted as positive.
    pub fn ptp(&self) -> bool {
        self.trace_preserving && self.positivity_not_refuted
    }

    /// The channel-class flags, for comparing inputs and outputs.
    pub fn channel_classes(&self) -> (bool, bool, bool, bool) {
        (
            self.trace_preserving,
            self.unital,
            self.completely_positive,
            self.positivity_not_refuted,
        )
    }
}

/// Residuals and derived flags for one map.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct ClassCertificate {
    pub kind: MapKind,
    /// `‖Tr₂ J − 1‖_F`
    pub tp_residual: f64,
    /// `‖Φ(1) − 1‖_F`
    pub unital_residual: f64,
    /// `‖J − J^†‖_F`
    pub hermiticity_residual: f64,
    /// Smallest eigenvalue of (the Hermitian part of) `J`.
    pub cp_min_eig: f64,
    /// `‖Tr₂ J‖_F`
    pub gksl_trace_residual: f64,
    /// Smallest eigenvalue of `(1 − ω) J (1 − ω)`, `ω = |Ω><Ω| / n`.
    pub gksl_ccp_min_eig: f64,
    /// Minimum of `<φ|Φ(ψψ*)|φ>` over sampled pure states.
    pub positivity_min_sample: f64,
    pub flags: ClassFlags,
}

/// Residual part of a certificate that needs no sampling.
#[derive(Debug, Clone, Copy, PartialEq)]
pub(crate) struct Residuals {
    pub tp: f64,
    pub unital: f64,
    pub hermiticity: f64,
    pub cp_min_eig: f64,
    pub gksl_trace: f64,
    pub gksl_ccp_min_eig: f64,
}

impl Residuals {
    pub(crate) fn of(s: &Superoperator) -> Self {
        let n = s.n();
        let choi = s.to_choi();
        let j = choi.matrix();
        let tr2 = choi.partial_trace_output();
        let tp = (&tr2 - &ComplexMatrix::identity(n)).fro_norm();
        let gksl_trace = tr2.fro_norm();
        let unital = s
            .apply(&ComplexMatrix::identity(n))
            .map(|out| (&out - &ComplexMatrix::identity(n)).fro_norm())
            .unwrap_or(f64::NAN);
        let hermiticity = j.hermiticity_residual();
        let herm = j.hermitian_part();
        let cp_min_eig = min_eigh(&herm);

        // P = 1 - |Ω><Ω| / n with |Ω> = Σ_j |j>|j> at indices j * n + j
        let nn = n * n;
        let mut proj = ComplexMatrix::identity(nn);
        let inv_n = 1.0 / n as f64;
        for a in 0..n {
            for b in 0..n {
                proj[(a * n + a, b * n + b)] -= Complex64::new(inv_n, 0.0);
            }
        }
        let ccp = &(&proj * &herm) * &proj;
        let gksl_ccp_min_eig = min_eigh(&ccp);

        Self {
            tp,
            unital,
            hermiticity,
            cp_min_eig,
            gksl_trace,
            gksl_ccp_min_eig,
        }
    }

    pub(crate) fn is_gksl(&self, tol: &Tolerances) -> bool {
        self.hermiticity < tol.hermitian && self.gksl_trace < tol.gksl && self.gksl_ccp_min_eig >= -tol.gksl
    }

    pub(crate) fn is_tp(&self, tol: &Tolerances) -> bool {
        self.tp < tol.tp
    }
}

/// Minimum of `<φ|Φ(ψψ*)|φ>` over random pure-state pairs, refined locally.
///
/// The refinement starts from the best pair: `φ` is replaced by the optimal
/// choice (lowest eigenvector of `Φ(ψψ*)`) and `ψ` takes random steps of
/// shrinking size that are kept only when they lower the value. The result can
/// refute positivity; it can never prove it.
pub fn positivity_min_sample<R: Rng + ?Sized>(s: &Superoperator, samples: usize, steps: usize, rng: &mut R) -> f64 {
    let n = s.n();
    let image = |psi: &[Complex64]| -> ComplexMatrix {
        s.apply(&projector(psi)).expect("dimension matches")
    };
    let expectation = |m: &ComplexMatrix, phi: &[Complex64]| -> f64 {
        let mv = m.mul_vec(phi);
        phi.iter().zip(&mv).map(|(a, b)| a.conj() * b).sum::<Complex64>().re
    };

    let mut best = f64::INFINITY;
    let mut best_psi: Vec<Complex64> = Vec::new();
    for _ in 0..samples.max(1) {
        let psi = haar_state(n, rng);
        let phi = haar_state(n, rng);
        let v = expectation(&image(&psi), &phi);
        if v < best {
            best = v;
            best_psi = psi;
        }
    }

    let mut current = min_eigh(&image(&best_psi));
    best = best.min(current);
    let mut step = 0.5;
    for _ in 0..steps {
        let dir = haar_state(n, rng);
        let mut cand: Vec<Complex64> = best_psi.iter().zip(&dir).map(|(a, d)| a + d * step).collect();
        let norm = cand.iter().map(|z| z.norm_sqr()).sum::<f64>().sqrt();
        for z in &mut cand {
            *z /= norm;
        }
        let v = min_eigh(&image(&cand));
        if v < current {
            current = v;
            best_psi = cand;
        } else {
            step *= 0.8;
        }
    }
    best.min(current)
}

/// Certificate for `s` interpreted as a map of the given kind.
///
/// Every field is always filled; for generators the channel-style flags are
/// reported as computed but carry no meaning for the generator's class.
pub fn certify<R: Rng + ?Sized>(s: &Superoperator, kind: MapKind, tol: &Tolerances, rng: &mut R) -> ClassCertificate {
    let r = Residuals::of(s);
    let positivity = positivity_min_sample(s, POSITIVITY_SAMPLES, POSITIVITY_REFINEMENT_STEPS, rng);
    let herm_ok = r.hermiticity < tol.hermitian;
    let flags = ClassFlags {
        trace_preserving: r.tp < tol.tp,
        unital: r.unital < tol.unital,
        completely_positive: herm_ok && r.cp_min_eig >= -tol.cp,
        gksl: r.is_gksl(tol),
        positivity_not_refuted: positivity >= -tol.cp,
    };
    ClassCertificate {
        kind,
        tp_residual: r.tp,
        unital_residual: r.unital,
        hermiticity_residual: r.hermiticity,
        cp_min_eig: r.cp_min_eig,
        gksl_trace_residual: r.gksl_trace,
        gksl_ccp_min_eig: r.gksl_ccp_min_eig,
        positivity_min_sample: positivity,
        flags,
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::sampling::rng;

    #[test]
    fn identity_channel_certificate() {
        let c = certify(&Superoperator::identity(2), MapKind::Channel, &Tolerances::default(), &mut rng(0));
        assert_eq!(c.tp_residual, 0.0);
        assert_eq!(c.unital_residual, 0.0);
        assert!(c.cp_min_eig.abs() < 1e-14);
        assert!(c.flags.unital_cptp());
        assert!(c.positivity_min_sample >= -1e-14);
    }

    #[test]
    fn transpose_is_positive_but_not_cp() {
        let t = Superoperator::from_action(2, |j, k| ComplexMatrix::unit(2, k, j));
        let c = certify(&t, MapKind::Channel, &Tolerances::default(), &mut rng(1));
        assert!(c.flags.trace_preserving);
        assert!(!c.flags.completely_positive);
        assert!(c.flags.positivity_not_refuted);
    }

    #[test]
    fn negative_map_is_refuted() {
        // Φ(X) = tr(X) 1 - 2X sends |0><0| to diag(-1, 1)
        let s = Superoperator::from_action(2, |j, k| {
            let mut out = ComplexMatrix::unit(2, j, k).scale_real(-2.0);
            if j == k {
                out = &out + &ComplexMatrix::identity(2);
            }
            out
        });
        let c = certify(&s, MapKind::Channel, &Tolerances::default(), &mut rng(2));
        assert!(!c.flags.positivity_not_refuted);
        assert!((c.positivity_min_sample + 1.0).abs() < 1e-6);
    }

    #[test]
    fn zero_generator_is_gksl() {
        let c = certify(&Superoperator::zero(3), MapKind::Generator, &Tolerances::default(), &mut rng(0));
        assert!(c.flags.gksl);
        assert_eq!(c.gksl_trace_residual, 0.0);
    }
}
