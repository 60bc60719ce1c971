//! Concrete maps: the simple-spectrum unital channel `Ψ`, the
//! non-diagonalizable qubit families, and the Fujiwara–Algoet test for unital
//! qubit channels.

use std::f64::consts::PI;

use num_complex::Complex64;
use serde::Serialize;

use crate::channels::{PauliTransferMatrix, Superoperator};
use crate::error::{Error, Result};
use crate::numerics::{det, singular_values, ComplexMatrix, ONE};

/// `C = Σ_j |j><j+1|` (indices mod n), so `C|k+1> = |k>`.
pub fn cyclic_shift(n: usize) -> ComplexMatrix {
    let mut c = ComplexMatrix::zeros(n);
    for j in 0..n {
        c[(j, (j + 1) % n)] = ONE;
    }
    c
}

/// `δ_jk = 1 / (2^j 3^k)` with the 1-based indices of the construction.
pub fn delta(j: usize, k: usize) -> f64 {
    1.0 / (2f64.powi(j as i32) * 3f64.powi(k as i32))
}

/// The doubly stochastic matrix `A = (1 + C) / 2`.
pub fn averaging_matrix(n: usize) -> ComplexMatrix {
    let c = cyclic_shift(n);
    (&ComplexMatrix::identity(n) + &c).scale_real(0.5)
}

/// The unital channel with `n²` distinct eigenvalues.
#[derive(Debug, Clone)]
pub struct PsiChannel {
    pub n: usize,
    pub superop: Superoperator,
    pub expected_spectrum: Vec<Complex64>,
    /// Set for `n = 1`, where the construction degenerates to the identity.
    pub degenerate: bool,
}

/// `{½ + ½ e^{2πik/n}} ∪ {±i δ_jk : 1 ≤ j < k ≤ n}`.
pub fn psi_expected_spectrum(n: usize) -> Vec<Complex64> {
    let mut out: Vec<Complex64> = (0..n)
        .map(|k| Complex64::new(0.5, 0.0) + Complex64::from_polar(0.5, 2.0 * PI * k as f64 / n as f64))
        .collect();
    for j in 1..=n {
        for k in j + 1..=n {
            let d = delta(j, k);
            out.push(Complex64::new(0.0, d));
            out.push(Complex64::new(0.0, -d));
        }
    }
    out
}

/// Builds `Ψ` from its action on matrix units:
///
/// - `|j><j| ↦ Σ_l A_lj |l><l|`
/// - `|j><k| ↦ i δ_jk |j><k|` for `j < k`
/// - `|j><k| ↦ -i δ_kj |j><k|` for `j > k`
pub fn build_psi(n: usize) -> PsiChannel {
    assert!(n >= 1, "dimension must be positive");
    if n == 1 {
        return PsiChannel {
            n,
            superop: Superoperator::identity(1),
            expected_spectrum: vec![ONE],
            degenerate: true,
        };
    }
    let a = averaging_matrix(n);
    let superop = Superoperator::from_action(n, |j, k| {
        let mut out = ComplexMatrix::zeros(n);
        if j == k {
            for l in 0..n {
                out[(l, l)] = a[(l, j)];
            }
        } else if j < k {
            out[(j, k)] = Complex64::new(0.0, delta(j + 1, k + 1));
        } else {
            out[(j, k)] = Complex64::new(0.0, -delta(k + 1, j + 1));
        }
        out
    });
    PsiChannel {
        n,
        superop,
        expected_spectrum: psi_expected_spectrum(n),
        degenerate: false,
    }
}

/// Qubit channel with Pauli transfer matrix
/// `[[1,0,0,0],[0,0,0,-μ],[0,0,0,0],[0,0,0,0]]`: the convex combination of
/// the unital reset channel (μ = 0) and the Jordan-block example (μ = 1).
pub fn build_phi_mu(mu: f64) -> Result<Superoperator> {
    if !(0.0..=1.0).contains(&mu) {
        return Err(Error::OutOfRange {
            name: "mu",
            value: mu,
            range: "[0, 1]",
        });
    }
    Ok(phi_mu_ptm(mu).to_superop())
}

pub fn phi_mu_ptm(mu: f64) -> PauliTransferMatrix {
    PauliTransferMatrix::from_real([
        [1.0, 0.0, 0.0, 0.0],
        [0.0, 0.0, 0.0, -mu],
        [0.0, 0.0, 0.0, 0.0],
        [0.0, 0.0, 0.0, 0.0],
    ])
}

/// `ρ ↦ ½ [[ρ11+ρ22, -ρ11+ρ22], [-ρ11+ρ22, ρ11+ρ22]]`, non-diagonalizable.
pub fn phi_eq1() -> Superoperator {
    phi_mu_ptm(1.0).to_superop()
}

/// `ρ ↦ tr(ρ) 1/n`.
pub fn reset_channel(n: usize) -> Superoperator {
    let inv = 1.0 / n as f64;
    Superoperator::from_action(n, |j, k| {
        if j == k {
            ComplexMatrix::identity(n).scale_real(inv)
        } else {
            ComplexMatrix::zeros(n)
        }
    })
}

/// Result of the Fujiwara–Algoet test.
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct FujiwaraAlgoet {
    pub feasible: bool,
    /// Signed singular values `s1 ≥ s2 ≥ |s3|` of the 3x3 block; `s3` carries
    /// the sign of its determinant.
    pub singular_values: [f64; 3],
}

const FA_TOL: f64 = 1e-12;

/// Decides complete positivity of a unital qubit channel from its Pauli
/// transfer matrix: feasible iff `|s1 + s2| ≤ 1 + s3` and `|s1 - s2| ≤ 1 - s3`.
pub fn fujiwara_algoet(ptm: &PauliTransferMatrix) -> Result<FujiwaraAlgoet> {
    let m = ptm.matrix();
    if ptm.max_imag() > FA_TOL {
        return Err(Error::NotUnitalForm);
    }
    if (m[(0, 0)].re - 1.0).abs() > FA_TOL {
        return Err(Error::NotUnitalForm);
    }
    for i in 1..4 {
        if m[(0, i)].re.abs() > FA_TOL || m[(i, 0)].re.abs() > FA_TOL {
            return Err(Error::NotUnitalForm);
        }
    }
    let block = ComplexMatrix::from_fn(3, |r, c| Complex64::new(m[(r + 1, c + 1)].re, 0.0));
    let sv = singular_values(&block)?;
    let sign = if det(&block).re < 0.0 { -1.0 } else { 1.0 };
    let s = [sv[0], sv[1], sign * sv[2]];
    let feasible = (s[0] + s[1]).abs() <= 1.0 + s[2] + FA_TOL && (s[0] - s[1]).abs() <= 1.0 - s[2] + FA_TOL;
    Ok(FujiwaraAlgoet {
        feasible,
        singular_values: s,
    })
}

/// Unital qubit channel with transfer matrix `[[1, 0], [0, ε Λ]]`, admitted
/// only when the Fujiwara–Algoet conditions hold.
pub fn build_scaled_block(lambda: [[f64; 3]; 3], eps: f64) -> Result<Superoperator> {
    let mut rows = [[0.0; 4]; 4];
    rows[0][0] = 1.0;
    for r in 0..3 {
        for c in 0..3 {
            rows[r + 1][c + 1] = eps * lambda[r][c];
        }
    }
    let ptm = PauliTransferMatrix::from_real(rows);
    let fa = fujiwara_algoet(&ptm)?;
    if !fa.feasible {
        return Err(Error::InfeasiblePTM(format!(
            "signed singular values {:?} violate |s1±s2| ≤ 1±s3",
            fa.singular_values
        )));
    }
    Ok(ptm.to_superop())
}

/// The two-parameter family `[[1,0,0,0],[0,0,a,0],[0,0,0,b],[0,0,0,0]]`,
/// non-diagonalizable whenever `(a, b) ≠ (0, 0)`.
pub fn build_remark_family(a: f64, b: f64) -> Result<Superoperator> {
    if !(a.is_finite() && b.is_finite()) {
        return Err(Error::NonFinite);
    }
    if (a - b).abs() > 1.0 || (a + b).abs() > 1.0 {
        return Err(Error::InfeasiblePTM(format!(
            "|a-b| = {}, |a+b| = {} must both be at most 1",
            (a - b).abs(),
            (a + b).abs()
        )));
    }
    build_scaled_block([[0.0, a, 0.0], [0.0, 0.0, b], [0.0, 0.0, 0.0]], 1.0)
}
