//! Global tolerance set.

use serde::{Deserialize, Serialize};

/// Absolute gap below which two eigenvalues count as colliding.
pub const TAU_GAP: f64 = 1e-8;

/// Clustering tolerance used when reporting algebraic multiplicities.
pub const CLUSTER_TOL: f64 = 1e-7;

/// Relative singular-value cutoff for numerical rank.
pub const RANK_TAU: f64 = 1e-8;

/// Thresholds turning certificate residuals into class flags.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct Tolerances {
    pub tp: f64,
    pub unital: f64,
    pub cp: f64,
    pub gksl: f64,
    /// Hermiticity of the Choi matrix, required for CP and GKSL.
    pub hermitian: f64,
    pub gap: f64,
}

impl Default for Tolerances {
    fn default() -> Self {
        Self {
            tp: 1e-10,
            unital: 1e-10,
            cp: 1e-10,
            gksl: 1e-10,
            hermitian: 1e-10,
            gap: TAU_GAP,
        }
    }
}
