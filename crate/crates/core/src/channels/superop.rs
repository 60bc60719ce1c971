use num_complex::Complex64;

use crate::error::{Error, Result};
use crate::numerics::{ComplexMatrix, Spectrum};

/// A linear map on `n x n` matrices, stored as its `n² x n²` representation
/// matrix `M` with `vec(Φ(X)) = M vec(X)`.
///
/// Vectorization stacks rows: `vec(|j><k|) = e_j ⊗ e_k`, i.e. entry
/// `X[j][k]` sits at index `j * n + k`. Under this convention a Kraus operator
/// `K` contributes `K ⊗ conj(K)`.
#[derive(Debug, Clone, PartialEq)]
pub struct Superoperator {
    n: usize,
    mat: ComplexMatrix,
}

impl Superoperator {
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

    pub fn identity(n: usize) -> Self {
        Self {
            n,
            mat: ComplexMatrix::identity(n * n),
        }
    }

    pub fn zero(n: usize) -> Self {
        Self {
            n,
            mat: ComplexMatrix::zeros(n * n),
        }
    }

    /// Builds the map from its action on the matrix units `|j><k|`.
    pub fn from_action(n: usize, mut f: impl FnMut(usize, usize) -> ComplexMatrix) -> Self {
        let mut mat = ComplexMatrix::zeros(n * n);
        for j in 0..n {
            for k in 0..n {
                let out = f(j, k);
                assert_eq!(out.dim(), n);
                for a in 0..n {
                    for b in 0..n {
                        mat[(a * n + b, j * n + k)] = out[(a, b)];
                    }
                }
            }
        }
        Self { n, mat }
    }

    #[inline]
    pub fn n(&self) -> usize {
        self.n
    }

    #[inline]
    pub fn matrix(&self) -> &ComplexMatrix {
        &self.mat
    }

    pub fn into_matrix(self) -> ComplexMatrix {
        self.mat
    }

    /// `un-vec(M vec(rho))`.
    pub fn apply(&self, rho: &ComplexMatrix) -> Result<ComplexMatrix> {
        if rho.dim() != self.n {
            return Err(Error::DimensionMismatch {
                expected: self.n,
                found: rho.dim(),
            });
        }
        let out = self.mat.mul_vec(rho.as_slice());
        ComplexMatrix::new(self.n, out)
    }

    /// `self ∘ other`, i.e. `other` acts first.
    pub fn compose(&self, other: &Self) -> Result<Self> {
        self.check_same(other)?;
        Ok(Self {
            n: self.n,
            mat: &self.mat * &other.mat,
        })
    }

    pub fn add(&self, other: &Self) -> Result<Self> {
        self.check_same(other)?;
        Ok(Self {
            n: self.n,
            mat: &self.mat + &other.mat,
        })
    }

    pub fn sub(&self, other: &Self) -> Result<Self> {
        self.check_same(other)?;
        Ok(Self {
            n: self.n,
            mat: &self.mat - &other.mat,
        })
    }

    pub fn scale(&self, s: f64) -> Self {
        Self {
            n: self.n,
            mat: self.mat.scale_real(s),
        }
    }

    /// Convex combination `(1 - t) self + t other`.
    pub fn lerp(&self, other: &Self, t: f64) -> Result<Self> {
        self.check_same(other)?;
        Ok(Self {
            n: self.n,
            mat: self.mat.lerp(&other.mat, t),
        })
    }

    pub fn fro_distance(&self, other: &Self) -> Result<f64> {
        Ok(self.sub(other)?.mat.fro_norm())
    }

    pub fn is_zero(&self) -> bool {
        self.mat.is_zero()
    }

    pub fn spectrum(&self) -> Result<Spectrum> {
        crate::numerics::eig(&self.mat)
    }

    pub fn eigenvalues(&self) -> Result<Vec<Complex64>> {
        Ok(self.spectrum()?.eigenvalues)
    }

    /// The semigroup element `e^{t L}` generated by `self`.
    pub fn exp_scaled(&self, t: f64) -> Result<Self> {
        Ok(Self {
            n: self.n,
            mat: crate::numerics::expm(&self.mat.scale_real(t))?,
        })
    }

    pub(crate) fn check_same(&self, other: &Self) -> Result<()> {
        if self.n != other.n {
            return Err(Error::DimensionMismatch {
                expected: self.n,
                found: other.n,
            });
        }
        Ok(())
    }
}
