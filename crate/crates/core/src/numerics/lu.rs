//! LU factorization with partial pivoting.

use num_complex::Complex64;

use super::matrix::{ComplexMatrix, ZERO};

pub(crate) struct Lu {
    lu: ComplexMatrix,
    perm: Vec<usize>,
}

impl Lu {
    /// Factors `m`. Exactly-zero pivots are replaced by `pivot_floor` so the
    /// factorization can be used for inverse iteration on singular shifts.
    pub(crate) fn new(m: &ComplexMatrix, pivot_floor: f64) -> Self {
        let n = m.dim();
        let mut lu = m.clone();
        let mut perm: Vec<usize> = (0..n).collect();
        for k in 0..n {
            let mut p = k;
            let mut best = lu[(k, k)].norm();
            for r in k + 1..n {
                let v = lu[(r, k)].norm();
                if v > best {
                    best = v;
                    p = r;
                }
            }
            if p != k {
                for c in 0..n {
                    let tmp = lu[(k, c)];
                    lu[(k, c)] = lu[(p, c)];
                    lu[(p, c)] = tmp;
                }
                perm.swap(k, p);
            }
            if lu[(k, k)].norm() <= pivot_floor {
                lu[(k, k)] = Complex64::new(pivot_floor.max(f64::MIN_POSITIVE), 0.0);
            }
            let pivot = lu[(k, k)];
            for r in k + 1..n {
                let f = lu[(r, k)] / pivot;
                lu[(r, k)] = f;
                if f != ZERO {
                    for c in k + 1..n {
                        let u = lu[(k, c)];
                        lu[(r, c)] -= f * u;
                    }
                }
            }
        }
        Self { lu, perm }
    }

    pub(crate) fn solve_vec(&self, b: &[Complex64]) -> Vec<Complex64> {
        let n = self.lu.dim();
        let mut x: Vec<Complex64> = self.perm.iter().map(|&p| b[p]).collect();
        for r in 0..n {
            let mut s = x[r];
            for c in 0..r {
                s -= self.lu[(r, c)] * x[c];
            }
            x[r] = s;
        }
        for r in (0..n).rev() {
            let mut s = x[r];
            for c in r + 1..n {
                s -= self.lu[(r, c)] * x[c];
            }
            x[r] = s / self.lu[(r, r)];
        }
        x
    }

    pub(crate) fn solve_mat(&self, b: &ComplexMatrix) -> ComplexMatrix {
        let n = b.dim();
        let mut out = ComplexMatrix::zeros(n);
        let mut col = vec![ZERO; n];
        for c in 0..n {
            for r in 0..n {
                col[r] = b[(r, c)];
            }
            let x = self.solve_vec(&col);
            for r in 0..n {
                out[(r, c)] = x[r];
            }
        }
        out
    }
}

/// Determinant via LU (test helper and diagnostics).
pub fn det(m: &ComplexMatrix) -> Complex64 {
    let n = m.dim();
    let f = Lu::new(m, 0.0);
    let mut d = Complex64::new(1.0, 0.0);
    for i in 0..n {
        d *= f.lu[(i, i)];
    }
    // sign of the permutation
    let mut seen = vec![false; n];
    let mut sign = 1.0;
    for i in 0..n {
        if seen[i] {
            continue;
        }
        let mut j = i;
        let mut len = 0;
        while !seen[j] {
            seen[j] = true;
            j = f.perm[j];
            len += 1;
        }
        if len % 2 == 0 {
            sign = -sign;
        }
    }
    d * sign
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn solves_small_system() {
        let a = ComplexMatrix::from_real(3, &[0.0, 2.0, 1.0, 1.0, 1.0, 0.0, 3.0, 0.0, 1.0]).unwrap();
        let b = vec![Complex64::new(3.0, 0.0), Complex64::new(2.0, 0.0), Complex64::new(4.0, 0.0)];
        let x = Lu::new(&a, 0.0).solve_vec(&b);
        for xi in x {
            assert!((xi - Complex64::new(1.0, 0.0)).norm() < 1e-14);
        }
        assert!((det(&a) - Complex64::new(-5.0, 0.0)).norm() < 1e-13);
    }
}
