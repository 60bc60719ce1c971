use crate::error::{Error, Result};
use crate::numerics::{eigh, ComplexMatrix};

use super::Superoperator;

/// Unnormalized Choi matrix `J(Φ) = Σ_{j,k} |j><k| ⊗ Φ(|j><k|)`.
///
/// The input factor comes first, so `J[(j, a), (k, b)] = Φ(|j><k|)[a][b]`
/// with composite index `j * n + a`. A trace-preserving map has `tr J = n`.
#[derive(Debug, Clone, PartialEq)]
pub struct ChoiMatrix {
    n: usize,
    mat: ComplexMatrix,
}

/// Index permutation shared by the superoperator and Choi layouts: entry
/// `(row, col)` of one is entry `reshuffle(row, col)` of the other.
#[inline]
fn reshuffle(n: usize, row: usize, col: usize) -> (usize, usize) {
    let (a, b) = (row / n, row % n);
    let (j, k) = (col / n, col % n);
    (j * n + a, k * n + b)
}

impl ChoiMatrix {
    pub fn new(n: usize, mat: ComplexMatrix) -> Result<Self> {
        if n == 0 {
            return Err(Error::InvalidArgument("system dimension must be positive".into()));
        }
        if mat.dim() != n * n {
            return Err(Error::DimensionMismatch {
                expected: n * n,
                found: mat.dim(),
            });
        }
        Ok(Self { n, mat })
    }

    #[inline]
    pub fn n(&self) -> usize {
        self.n
    }

    #[inline]
    pub fn matrix(&self) -> &ComplexMatrix {
        &self.mat
    }

    pub fn from_superop(s: &Superoperator) -> Self {
        let n = s.n();
        let m = s.matrix();
        let mut j = ComplexMatrix::zeros(n * n);
        for row in 0..n * n {
            for col in 0..n * n {
                let (r, c) = reshuffle(n, row, col);
                j[(r, c)] = m[(row, col)];
            }
        }
        Self { n, mat: j }
    }

    pub fn to_superop(&self) -> Superoperator {
        let n = self.n;
        let mut m = ComplexMatrix::zeros(n * n);
        for row in 0..n * n {
            for col in 0..n * n {
                let (r, c) = reshuffle(n, row, col);
                m[(row, col)] = self.mat[(r, c)];
            }
        }
        Superoperator::new(n, m).expect("dimension preserved by reshuffle")
    }

    /// Partial trace over the output factor: `(Tr₂ J)[j][k] = tr Φ(|j><k|)`.
    pub fn partial_trace_output(&self) -> ComplexMatrix {
        let n = self.n;
        ComplexMatrix::from_fn(n, |j, k| (0..n).map(|a| self.mat[(j * n + a, k * n + a)]).sum())
    }

    /// Kraus operators from the scaled eigenvectors of `J`.
    ///
    /// Eigenvalues in `[-tol, 0]` are clipped; anything more negative is
    /// rejected. Eigenvalues at or below `1e-14 * λ_max` carry no operator.
    pub fn to_kraus(&self, tol: f64) -> Result<KrausSet> {
        let n = self.n;
        let e = eigh(&self.mat)?;
        let min_eig = e.values.first().copied().unwrap_or(0.0);
        if min_eig < -tol {
            return Err(Error::NotCP { min_eig, tol });
        }
        let max_eig = e.values.last().copied().unwrap_or(0.0).max(0.0);
        let cutoff = 1e-14 * max_eig;
        let mut operators = Vec::new();
        for (lam, v) in e.values.iter().zip(&e.vectors).rev() {
            if *lam <= cutoff || *lam <= 0.0 {
                continue;
            }
            let s = lam.sqrt();
            // v[(j, a)] = sqrt(λ) K[a][j]
            operators.push(ComplexMatrix::from_fn(n, |a, j| v[j * n + a] * s));
        }
        if operators.is_empty() {
            operators.push(ComplexMatrix::zeros(n));
        }
        KrausSet::new(n, operators)
    }
}

/// Operator-sum representation `Φ(X) = Σ K X K^†`.
#[derive(Debug, Clone, PartialEq)]
pub struct KrausSet {
    n: usize,
    operators: Vec<ComplexMatrix>,
}

impl KrausSet {
    pub fn new(n: usize, operators: Vec<ComplexMatrix>) -> Result<Self> {
        if operators.is_empty() {
            return Err(Error::InvalidArgument("Kraus set must be nonempty".into()));
        }
        if let Some(bad) = operators.iter().find(|k| k.dim() != n) {
            return Err(Error::DimensionMismatch {
                expected: n,
                found: bad.dim(),
            });
        }
        Ok(Self { n, operators })
    }

    #[inline]
    pub fn n(&self) -> usize {
        self.n
    }

    pub fn operators(&self) -> &[ComplexMatrix] {
        &self.operators
    }

    pub fn to_superop(&self) -> Superoperator {
        let n = self.n;
        let mut m = ComplexMatrix::zeros(n * n);
        for k in &self.operators {
            let term = k.kron(&k.conj());
            for (o, t) in m.as_mut_slice().iter_mut().zip(term.as_slice()) {
                *o += t;
            }
        }
        Superoperator::new(n, m).expect("kron dimension")
    }

    /// `Σ K^† K`, equal to the identity for trace-preserving sets.
    pub fn completeness(&self) -> ComplexMatrix {
        let mut acc = ComplexMatrix::zeros(self.n);
        for k in &self.operators {
            acc = &acc + &(&k.adjoint() * k);
        }
        acc
    }

    pub fn apply(&self, rho: &ComplexMatrix) -> Result<ComplexMatrix> {
        if rho.dim() != self.n {
            return Err(Error::DimensionMismatch {
                expected: self.n,
                found: rho.dim(),
            });
        }
        let mut out = ComplexMatrix::zeros(self.n);
        for k in &self.operators {
            out = &out + &(&(k * rho) * &k.adjoint());
        }
        Ok(out)
    }
}

impl Superoperator {
    pub fn to_choi(&self) -> ChoiMatrix {
        ChoiMatrix::from_superop(self)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::numerics::{ONE, ZERO};

    #[test]
    fn identity_choi_is_maximally_entangled_projector() {
        let j = Superoperator::identity(2).to_choi();
        let omega = [ONE, ZERO, ZERO, ONE];
        for r in 0..4 {
            for c in 0..4 {
                assert_eq!(j.matrix()[(r, c)], omega[r] * omega[c]);
            }
        }
        let k = j.to_kraus(1e-10).unwrap();
        assert_eq!(k.operators().len(), 1);
        let op = &k.operators()[0];
        // single operator equal to the identity up to a global phase
        let phase = op[(0, 0)];
        assert!((phase.norm() - 1.0).abs() < 1e-12);
        assert!((op[(1, 1)] - phase).norm() < 1e-12);
        assert!(op[(0, 1)].norm() < 1e-12);
    }

    #[test]
    fn identity_kraus_gives_identity_superop() {
        let k = KrausSet::new(3, vec![ComplexMatrix::identity(3)]).unwrap();
        assert_eq!(k.to_superop(), Superoperator::identity(3));
    }

    #[test]
    fn negative_choi_rejected() {
        // transpose map: Choi is the swap, eigenvalue -1
        let t = Superoperator::from_action(2, |j, k| ComplexMatrix::unit(2, k, j));
        match t.to_choi().to_kraus(1e-10) {
            Err(Error::NotCP { min_eig, .. }) => assert!((min_eig + 1.0).abs() < 1e-12),
            other => panic!("expected NotCP, got {other:?}"),
        }
    }

    #[test]
    fn empty_kraus_rejected() {
        assert!(KrausSet::new(2, vec![]).is_err());
    }
}
