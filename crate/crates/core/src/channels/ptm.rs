use num_complex::Complex64;

use crate::error::{Error, Result};
use crate::numerics::{ComplexMatrix, I, ONE, ZERO};

use super::Superoperator;

/// The Pauli basis `σ0 = 1, σ1 = X, σ2 = Y, σ3 = Z`.
pub fn pauli(k: usize) -> ComplexMatrix {
    let d = match k {
        0 => [ONE, ZERO, ZERO, ONE],
        1 => [ZERO, ONE, ONE, ZERO],
        2 => [ZERO, -I, I, ZERO],
        3 => [ONE, ZERO, ZERO, -ONE],
        _ => panic!("Pauli index {k} out of range"),
    };
    ComplexMatrix::new(2, d.to_vec()).expect("2x2")
}

/// Pauli transfer matrix `P[j][k] = ½ tr(σ_j Φ(σ_k))` of a qubit map.
///
/// Entries are stored as complex numbers so that maps which do not preserve
/// Hermiticity still convert losslessly; Hermiticity-preserving maps have
/// real entries.
#[derive(Debug, Clone, PartialEq)]
pub struct PauliTransferMatrix {
    mat: ComplexMatrix,
}

impl PauliTransferMatrix {
    pub fn new(mat: ComplexMatrix) -> Result<Self> {
        if mat.dim() != 4 {
            return Err(Error::DimensionMismatch {
                expected: 4,
                found: mat.dim(),
            });
        }
        Ok(Self { mat })
    }

    /// Row-major real entries.
    pub fn from_real(rows: [[f64; 4]; 4]) -> Self {
        let flat: Vec<f64> = rows.iter().flatten().copied().collect();
        Self {
            mat: ComplexMatrix::from_real(4, &flat).expect("finite literal"),
        }
    }

    pub fn matrix(&self) -> &ComplexMatrix {
        &self.mat
    }

    pub fn get(&self, j: usize, k: usize) -> f64 {
        self.mat[(j, k)].re
    }

    /// Largest imaginary part among the entries.
    pub fn max_imag(&self) -> f64 {
        self.mat.as_slice().iter().map(|z| z.im.abs()).fold(0.0, f64::max)
    }

    pub fn real_rows(&self) -> [[f64; 4]; 4] {
        let mut out = [[0.0; 4]; 4];
        for (j, row) in out.iter_mut().enumerate() {
            for (k, x) in row.iter_mut().enumerate() {
                *x = self.mat[(j, k)].re;
            }
        }
        out
    }

    pub fn from_superop(s: &Superoperator) -> Result<Self> {
        if s.n() != 2 {
            return Err(Error::NotQubit { n: s.n() });
        }
        let paulis: Vec<ComplexMatrix> = (0..4).map(pauli).collect();
        let images: Vec<ComplexMatrix> = paulis.iter().map(|p| s.apply(p)).collect::<Result<_>>()?;
        let mat = ComplexMatrix::from_fn(4, |j, k| (&paulis[j] * &images[k]).trace() * 0.5);
        Ok(Self { mat })
    }

    pub fn to_superop(&self) -> Superoperator {
        let paulis: Vec<ComplexMatrix> = (0..4).map(pauli).collect();
        // Φ(σ_k) = Σ_j P[j][k] σ_j
        let images: Vec<ComplexMatrix> = (0..4)
            .map(|k| {
                let mut acc = ComplexMatrix::zeros(2);
                for (j, p) in paulis.iter().enumerate() {
                    acc = &acc + &p.scale(self.mat[(j, k)]);
                }
                acc
            })
            .collect();
        Superoperator::from_action(2, |a, b| {
            // |a><b| = Σ_k ½ σ_k[b][a] σ_k
            let mut acc = ComplexMatrix::zeros(2);
            for (k, p) in paulis.iter().enumerate() {
                let coeff: Complex64 = p[(b, a)] * 0.5;
                if coeff != ZERO {
                    acc = &acc + &images[k].scale(coeff);
                }
            }
            acc
        })
    }
}

impl Superoperator {
    pub fn to_ptm(&self) -> Result<PauliTransferMatrix> {
        PauliTransferMatrix::from_superop(self)
    }
}
