//! Procedures that replace a channel, generator or Markovian channel by a
//! nearby member of the same class whose eigenvalues are all simple, and a
//! scanner that locates exceptional points along straight-line paths.
//!
//! All procedures perturb towards the unital channel `Ψ` of
//! [`build_psi`](crate::constructions::build_psi), which has `n²` distinct
//! eigenvalues. Along the segment from any map to `Ψ` only finitely many
//! parameters give a repeated eigenvalue, so a short deterministic schedule of
//! trial weights suffices in practice.

mod channel;
mod generator;
mod markovian;
mod scan;

use serde::{Deserialize, Serialize};

pub use channel::{regularize_channel, ChannelClass};
pub use generator::{markovian_approximation, regularize_generator};
pub use markovian::{regularize_markovian, regularize_markovian_product, MARKOVIAN_GRID};
pub use scan::{scan_path, track_eigenvalues, PathScanReport, BISECTION_WIDTH};

use crate::channels::{certify, ClassCertificate, MapKind, Superoperator};
use crate::config::Tolerances;
use crate::error::Result;
use crate::numerics::min_gap;
use crate::sampling::rng;
use crate::serde_util::finite_or_null;

/// Number of trial weights in the mixing schedule.
pub const SCHEDULE_LEN: usize = 16;

/// Upper limit on the initial mixing weight.
pub const MAX_LAMBDA: f64 = 0.5;

/// Norm in which the caller's distance budget is measured.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize, Default)]
#[serde(rename_all = "snake_case")]
pub enum BudgetNorm {
    /// Exact Frobenius distance of representation matrices.
    #[default]
    Fro,
    /// Certified diamond-norm upper bound (Choi trace norm).
    DiamondUpper,
}

/// Tolerances plus the seed used for certificate sampling.
#[derive(Debug, Clone, Copy, PartialEq, Default)]
pub struct Settings {
    pub tol: Tolerances,
    pub seed: u64,
}

impl Settings {
    pub fn with_seed(seed: u64) -> Self {
        Self {
            seed,
            ..Self::default()
        }
    }

    /// Certificate of `s` drawn with this seed.
    pub fn certify(&self, s: &Superoperator, kind: MapKind) -> ClassCertificate {
        certify(s, kind, &self.tol, &mut rng(self.seed))
    }
}

/// What a regularization procedure chose and achieved.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct RegularizationReport {
    pub eps: f64,
    pub budget: BudgetNorm,
    /// Convex mixing weight towards the perturber.
    pub lambda: Option<f64>,
    /// Time rescalings of the Markovian procedures.
    pub time_factors: Vec<f64>,
    /// Interval each time factor was searched in, `[lo, hi]`.
    pub time_windows: Vec<[f64; 2]>,
    #[serde(serialize_with = "finite_or_null")]
    pub achieved_gap: f64,
    /// Exact `‖Φ − Φ_ε‖_F` of the representation matrices.
    pub fro_distance: f64,
    /// Choi trace norm of `Φ − Φ_ε`, an upper bound on the diamond distance.
    pub diamond_upper: f64,
    /// Upper bound assembled from the per-stage estimates of the Markovian
    /// procedures (generator distance plus time-rescaling terms).
    pub telescoped_bound: Option<f64>,
    pub input_cert: ClassCertificate,
    pub output_cert: ClassCertificate,
    /// Number of spectra tested before a simple one was found.
    pub attempts: usize,
}

/// Whether every eigenvalue is simple, i.e. the minimal pairwise gap exceeds
/// `tau_gap`. Returns the gap as well.
pub fn is_simple(s: &Superoperator, tau_gap: f64) -> Result<(bool, f64)> {
    let gap = min_gap(&s.spectrum()?.eigenvalues);
    Ok((gap > tau_gap, gap))
}

/// The mixing schedule `λ_j = λ₀ (1 − j / 16)`, `j = 0..16`.
pub fn lambda_schedule(lambda0: f64) -> impl Iterator<Item = f64> {
    (0..SCHEDULE_LEN).map(move |j| lambda0 * (1.0 - j as f64 / SCHEDULE_LEN as f64))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::constructions::{build_psi, phi_eq1};

    #[test]
    fn simplicity_examples() {
        let (simple, gap) = is_simple(&build_psi(2).superop, 1e-8).unwrap();
        assert!(simple);
        assert!((gap - 1.0 / 18.0).abs() < 1e-12);
        let (simple, gap) = is_simple(&phi_eq1(), 1e-8).unwrap();
        assert!(!simple);
        assert!(gap < 1e-12);
        let (simple, gap) = is_simple(&Superoperator::identity(2), 1e-8).unwrap();
        assert!(!simple);
        assert_eq!(gap, 0.0);
    }

    #[test]
    fn schedule_is_linear() {
        let s: Vec<f64> = lambda_schedule(0.32).collect();
        assert_eq!(s.len(), 16);
        assert_eq!(s[0], 0.32);
        assert!((s[8] - 0.16).abs() < 1e-16);
        assert!((s[15] - 0.02).abs() < 1e-16);
    }
}
