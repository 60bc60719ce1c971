//! Spectra, gaps, clustering and multiplicity diagnosis.

use std::cmp::Ordering;

use num_complex::Complex64;
use serde::Serialize;

use super::eig::eig;
use super::matrix::ComplexMatrix;
use super::svd::rank_tol;
use crate::error::Result;
use crate::serde_util::{complex_vec, finite_or_null};

/// Eigenvalues of a matrix together with their relative residuals.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct Spectrum {
    #[serde(with = "complex_vec")]
    pub eigenvalues: Vec<Complex64>,
    pub residuals: Vec<f64>,
    pub cluster_tolerance: f64,
}

impl Spectrum {
    pub fn min_gap(&self) -> f64 {
        min_gap(&self.eigenvalues)
    }

    pub fn clusters(&self) -> Vec<Cluster> {
        cluster(&self.eigenvalues, self.cluster_tolerance)
    }

    pub fn with_cluster_tolerance(mut self, tol: f64) -> Self {
        self.cluster_tolerance = tol;
        self
    }
}

/// Smallest pairwise distance; `+inf` for fewer than two values.
pub fn min_gap(values: &[Complex64]) -> f64 {
    let mut gap = f64::INFINITY;
    for i in 0..values.len() {
        for j in i + 1..values.len() {
            gap = gap.min((values[i] - values[j]).norm());
        }
    }
    gap
}

fn lex(a: &Complex64, b: &Complex64) -> Ordering {
    a.re.total_cmp(&b.re).then(a.im.total_cmp(&b.im))
}

/// A group of numerically coincident eigenvalues.
#[derive(Debug, Clone, PartialEq)]
pub struct Cluster {
    pub center: Complex64,
    pub members: Vec<Complex64>,
}

impl Cluster {
    pub fn algebraic(&self) -> usize {
        self.members.len()
    }
}

/// Single-linkage clustering: values closer than `tol` (transitively) share a
/// cluster. Clusters come out in lexicographic order of their centers.
pub fn cluster(values: &[Complex64], tol: f64) -> Vec<Cluster> {
    let n = values.len();
    let mut parent: Vec<usize> = (0..n).collect();
    fn find(p: &mut [usize], mut i: usize) -> usize {
        while p[i] != i {
            p[i] = p[p[i]];
            i = p[i];
        }
        i
    }
    for i in 0..n {
        for j in i + 1..n {
            if (values[i] - values[j]).norm() <= tol {
                let (a, b) = (find(&mut parent, i), find(&mut parent, j));
                if a != b {
                    parent[a.max(b)] = a.min(b);
                }
            }
        }
    }
    let mut groups: Vec<Vec<Complex64>> = Vec::new();
    let mut root_index: Vec<Option<usize>> = vec![None; n];
    for i in 0..n {
        let r = find(&mut parent, i);
        match root_index[r] {
            Some(g) => groups[g].push(values[i]),
            None => {
                root_index[r] = Some(groups.len());
                groups.push(vec![values[i]]);
            }
        }
    }
    let mut clusters: Vec<Cluster> = groups
        .into_iter()
        .map(|mut members| {
            members.sort_by(lex);
            let center = members.iter().sum::<Complex64>() / members.len() as f64;
            Cluster { center, members }
        })
        .collect();
    clusters.sort_by(|a, b| lex(&a.center, &b.center));
    clusters
}

/// Greedy minimal-distance matching between two multisets of equal size.
///
/// Repeatedly pairs the globally closest remaining elements; ties are broken by
/// the lexicographic `(re, im)` order of the left element, then the right one.
/// Returns the pairs as index tuples `(i, j)` into `a` and `b`.
pub fn greedy_match(a: &[Complex64], b: &[Complex64]) -> Vec<(usize, usize)> {
    assert_eq!(a.len(), b.len(), "multisets must have equal size");
    let mut candidates: Vec<(f64, usize, usize)> = Vec::with_capacity(a.len() * b.len());
    for (i, x) in a.iter().enumerate() {
        for (j, y) in b.iter().enumerate() {
            candidates.push(((x - y).norm(), i, j));
        }
    }
    candidates.sort_by(|p, q| {
        p.0.total_cmp(&q.0)
            .then_with(|| lex(&a[p.1], &a[q.1]))
            .then_with(|| lex(&b[p.2], &b[q.2]))
            .then(p.1.cmp(&q.1))
            .then(p.2.cmp(&q.2))
    });
    let mut used_a = vec![false; a.len()];
    let mut used_b = vec![false; b.len()];
    let mut pairs = Vec::with_capacity(a.len());
    for (_, i, j) in candidates {
        if !used_a[i] && !used_b[j] {
            used_a[i] = true;
            used_b[j] = true;
            pairs.push((i, j));
        }
    }
    pairs.sort();
    pairs
}

/// Largest pair distance under [`greedy_match`]; `+inf` on size mismatch.
pub fn multiset_distance(a: &[Complex64], b: &[Complex64]) -> f64 {
    if a.len() != b.len() {
        return f64::INFINITY;
    }
    greedy_match(a, b)
        .into_iter()
        .map(|(i, j)| (a[i] - b[j]).norm())
        .fold(0.0, f64::max)
}

pub fn multisets_match(a: &[Complex64], b: &[Complex64], tol: f64) -> bool {
    multiset_distance(a, b) <= tol
}

/// Multiplicities of one eigenvalue cluster.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct ClusterReport {
    #[serde(with = "crate::serde_util::complex")]
    pub value: Complex64,
    pub algebraic: usize,
    pub geometric: usize,
    pub defective: bool,
}

/// Eigenvalues, clustered multiplicities and defectiveness flags of a matrix.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct SpectrumReport {
    #[serde(with = "complex_vec")]
    pub eigenvalues: Vec<Complex64>,
    pub max_residual: f64,
    pub cluster_tolerance: f64,
    pub rank_tolerance: f64,
    pub clusters: Vec<ClusterReport>,
    #[serde(serialize_with = "finite_or_null")]
    pub min_gap: f64,
    pub defective: bool,
    pub simple: bool,
}

/// Full spectral diagnosis: algebraic multiplicities from clustering at
/// `cluster_tol`, geometric ones as `dim - rank_tol(M - λ1, rank_tau)`.
pub fn spectrum_report(m: &ComplexMatrix, cluster_tol: f64, rank_tau: f64, gap_tol: f64) -> Result<SpectrumReport> {
    let spectrum = eig(m)?;
    let n = m.dim();
    let clusters = cluster(&spectrum.eigenvalues, cluster_tol)
        .into_iter()
        .map(|c| {
            let algebraic = c.algebraic();
            let geometric = if algebraic == 1 {
                1
            } else {
                (n - rank_tol(&m.shift(c.center), rank_tau)).clamp(1, algebraic)
            };
            ClusterReport {
                value: c.center,
                algebraic,
                geometric,
                defective: geometric < algebraic,
            }
        })
        .collect::<Vec<_>>();
    let defective = clusters.iter().any(|c| c.defective);
    let min_gap = spectrum.min_gap();
    let mut eigenvalues = spectrum.eigenvalues.clone();
    eigenvalues.sort_by(lex);
    Ok(SpectrumReport {
        eigenvalues,
        max_residual: spectrum.residuals.iter().copied().fold(0.0, f64::max),
        cluster_tolerance: cluster_tol,
        rank_tolerance: rank_tau,
        clusters,
        min_gap,
        defective,
        simple: min_gap > gap_tol,
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    fn c(re: f64, im: f64) -> Complex64 {
        Complex64::new(re, im)
    }

    #[test]
    fn gap_of_worked_example_spectrum() {
        let s = [c(1.0, 0.0), c(0.0, 0.0), c(0.0, 1.0 / 18.0), c(0.0, -1.0 / 18.0)];
        assert!((min_gap(&s) - 1.0 / 18.0).abs() < 1e-16);
        let l = 0.1;
        let s = [c(1.0, 0.0), c(0.0, 0.0), c(0.0, l / 18.0), c(0.0, -l / 18.0)];
        assert!((min_gap(&s) - 1.0 / 180.0).abs() < 1e-16);
    }

    #[test]
    fn gap_of_repeated_and_single() {
        assert_eq!(min_gap(&[c(1.0, 0.0), c(1.0, 0.0), c(0.0, 0.0)]), 0.0);
        assert_eq!(min_gap(&[c(3.0, 0.0)]), f64::INFINITY);
    }

    #[test]
    fn clustering_is_transitive() {
        let v = [c(0.0, 0.0), c(0.6e-7, 0.0), c(1.2e-7, 0.0), c(1.0, 0.0)];
        let cl = cluster(&v, 1e-7);
        assert_eq!(cl.len(), 2);
        assert_eq!(cl[0].algebraic(), 3);
    }

    #[test]
    fn greedy_match_pairs_nearest() {
        let a = [c(0.0, 0.0), c(1.0, 0.0)];
        let b = [c(1.1, 0.0), c(0.05, 0.0)];
        assert_eq!(greedy_match(&a, &b), vec![(0, 1), (1, 0)]);
        assert!((multiset_distance(&a, &b) - 0.1).abs() < 1e-12);
    }
}
