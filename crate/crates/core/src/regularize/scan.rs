use num_complex::Complex64;
use rayon::prelude::*;
use serde::{Serialize, Serializer};

use crate::channels::Superoperator;
use crate::error::{Error, Result};
use crate::numerics::{eigenvalues, greedy_match, min_gap};

/// Width to which each exceptional interval edge is bisected.
pub const BISECTION_WIDTH: f64 = 1e-6;

/// Gaps along `γ(t) = (1 − t) X + t Z` on a uniform grid.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct PathScanReport {
    pub grid: Vec<f64>,
    /// Minimal eigenvalue gap at each grid point.
    #[serde(serialize_with = "gaps_or_null")]
    pub gaps: Vec<f64>,
    /// Maximal runs of sub-threshold gaps, widened to the nearest parameters
    /// known to lie outside the run.
    pub exceptional_intervals: Vec<(f64, f64)>,
    pub tau_gap: f64,
    /// Eigenvalues at each grid point in solver order.
    #[serde(skip)]
    pub spectra: Vec<Vec<Complex64>>,
}

fn gaps_or_null<S: Serializer>(gaps: &[f64], s: S) -> std::result::Result<S::Ok, S::Error> {
    s.collect_seq(gaps.iter().map(|g| g.is_finite().then_some(*g)))
}

fn spectrum_at(x: &Superoperator, z: &Superoperator, t: f64) -> Result<Vec<Complex64>> {
    eigenvalues(x.lerp(z, t)?.matrix())
}

fn gap_at(x: &Superoperator, z: &Superoperator, t: f64) -> Result<f64> {
    Ok(min_gap(&spectrum_at(x, z, t)?))
}

/// Bisects between a point `good` (gap above threshold) and `bad` until they
/// are at most [`BISECTION_WIDTH`] apart; returns the final `good`.
fn refine_edge(x: &Superoperator, z: &Superoperator, tau: f64, mut good: f64, mut bad: f64) -> Result<f64> {
    while (good - bad).abs() > BISECTION_WIDTH {
        let mid = 0.5 * (good + bad);
        if gap_at(x, z, mid)? < tau {
            bad = mid;
        } else {
            good = mid;
        }
    }
    Ok(good)
}

/// Evaluates the minimal eigenvalue gap along the straight path from `x` to
/// `z` at `grid_size` equally spaced parameters and locates the exceptional
/// parameters where the gap drops below `tau_gap`.
///
/// Grid points are evaluated in parallel. Each maximal run of sub-threshold
/// points is reported as an interval whose interior ends are bisected against
/// their neighbours; runs touching `0` or `1` keep that endpoint.
pub fn scan_path(x: &Superoperator, z: &Superoperator, grid_size: usize, tau_gap: f64) -> Result<PathScanReport> {
    x.check_same(z)?;
    if grid_size < 2 {
        return Err(Error::InvalidArgument(format!("grid size must be at least 2, got {grid_size}")));
    }
    let last = (grid_size - 1) as f64;
    let grid: Vec<f64> = (0..grid_size).map(|i| i as f64 / last).collect();
    let spectra = grid
        .par_iter()
        .map(|&t| spectrum_at(x, z, t))
        .collect::<Result<Vec<_>>>()?;
    let gaps: Vec<f64> = spectra.iter().map(|s| min_gap(s)).collect();

    let mut intervals = Vec::new();
    let mut i = 0;
    while i < grid_size {
        if gaps[i] >= tau_gap {
            i += 1;
            continue;
        }
        let start = i;
        while i + 1 < grid_size && gaps[i + 1] < tau_gap {
            i += 1;
        }
        let end = i;
        let lo = if start == 0 {
            0.0
        } else {
            refine_edge(x, z, tau_gap, grid[start - 1], grid[start])?
        };
        let hi = if end == grid_size - 1 {
            1.0
        } else {
            refine_edge(x, z, tau_gap, grid[end + 1], grid[end])?
        };
        intervals.push((lo, hi));
        i += 1;
    }

    Ok(PathScanReport {
        grid,
        gaps,
        exceptional_intervals: intervals,
        tau_gap,
        spectra,
    })
}

/// Reorders each spectrum so that entry `k` continues the trajectory of entry
/// `k` at the previous point, pairing eigenvalues greedily by distance.
/// Labels may swap where trajectories cross.
pub fn track_eigenvalues(spectra: &[Vec<Complex64>]) -> Vec<Vec<Complex64>> {
    let mut out: Vec<Vec<Complex64>> = Vec::with_capacity(spectra.len());
    for s in spectra {
        let Some(prev) = out.last() else {
            out.push(s.clone());
            continue;
        };
        let mut next = vec![Complex64::new(f64::NAN, f64::NAN); prev.len()];
        for (a, b) in greedy_match(prev, s) {
            next[a] = s[b];
        }
        out.push(next);
    }
    out
}
