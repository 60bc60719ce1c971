//! Seeded random states, unitaries, channels and generators.
//!
//! Every sampler takes the RNG explicitly. [`rng`] builds the portable
//! ChaCha generator used throughout, so a seed reproduces the same draws on
//! every platform.

use num_complex::Complex64;
use rand::Rng;
use rand_chacha::rand_core::SeedableRng;
use rand_chacha::ChaCha8Rng;
use rand_distr::StandardNormal;

use crate::channels::{KrausSet, Superoperator};
use crate::numerics::{psd_sqrt_and_inv, ComplexMatrix};

pub type SeededRng = ChaCha8Rng;

pub fn rng(seed: u64) -> SeededRng {
    ChaCha8Rng::seed_from_u64(seed)
}

pub fn gaussian<R: Rng + ?Sized>(rng: &mut R) -> Complex64 {
    let re: f64 = rng.sample(StandardNormal);
    let im: f64 = rng.sample(StandardNormal);
    Complex64::new(re, im)
}

/// Haar-random unit vector in `C^n`.
pub fn haar_state<R: Rng + ?Sized>(n: usize, rng: &mut R) -> Vec<Complex64> {
    loop {
        let mut v: Vec<Complex64> = (0..n).map(|_| gaussian(rng)).collect();
        let norm = v.iter().map(|z| z.norm_sqr()).sum::<f64>().sqrt();
        if norm > 1e-300 {
            for z in &mut v {
                *z /= norm;
            }
            return v;
        }
    }
}

/// `|ψ><ψ|`.
pub fn projector(psi: &[Complex64]) -> ComplexMatrix {
    ComplexMatrix::from_fn(psi.len(), |r, c| psi[r] * psi[c].conj())
}

/// Matrix with i.i.d. standard complex Gaussian entries.
pub fn ginibre<R: Rng + ?Sized>(n: usize, rng: &mut R) -> ComplexMatrix {
    ComplexMatrix::from_fn(n, |_, _| gaussian(rng))
}

/// Haar-random unitary (QR of a Ginibre matrix with phase correction).
pub fn haar_unitary<R: Rng + ?Sized>(n: usize, rng: &mut R) -> ComplexMatrix {
    let g = ginibre(n, rng);
    // modified Gram-Schmidt on columns
    let mut cols: Vec<Vec<Complex64>> = (0..n).map(|c| (0..n).map(|r| g[(r, c)]).collect()).collect();
    for c in 0..n {
        for p in 0..c {
            let proj: Complex64 = cols[p].iter().zip(&cols[c]).map(|(a, b)| a.conj() * b).sum();
            let prev = cols[p].clone();
            for (x, y) in cols[c].iter_mut().zip(prev) {
                *x -= proj * y;
            }
        }
        let norm = cols[c].iter().map(|z| z.norm_sqr()).sum::<f64>().sqrt();
        for x in &mut cols[c] {
            *x /= norm;
        }
    }
    ComplexMatrix::from_fn(n, |r, c| cols[c][r])
}

/// Random full-Kraus-rank channel: `K_i = G_i S^{-1/2}` with `S = Σ G_i^† G_i`
/// over `n²` Ginibre matrices `G_i`.
pub fn random_kraus<R: Rng + ?Sized>(n: usize, rng: &mut R) -> KrausSet {
    let gs: Vec<ComplexMatrix> = (0..n * n).map(|_| ginibre(n, rng)).collect();
    let mut s = ComplexMatrix::zeros(n);
    for g in &gs {
        s = &s + &(&g.adjoint() * g);
    }
    let (_, inv_sqrt) = psd_sqrt_and_inv(&s, 1e-300).expect("finite Gaussian draws");
    KrausSet::new(n, gs.iter().map(|g| g * &inv_sqrt).collect()).expect("nonempty")
}

pub fn random_channel<R: Rng + ?Sized>(n: usize, rng: &mut R) -> Superoperator {
    random_kraus(n, rng).to_superop()
}

/// Random unital channel: a random convex mixture of `n²` Haar unitaries.
pub fn random_unital_channel<R: Rng + ?Sized>(n: usize, rng: &mut R) -> Superoperator {
    let k = n * n;
    let weights: Vec<f64> = (0..k).map(|_| rng.random::<f64>() + 1e-3).collect();
    let total: f64 = weights.iter().sum();
    let ops = weights
        .iter()
        .map(|w| haar_unitary(n, rng).scale_real((w / total).sqrt()))
        .collect();
    KrausSet::new(n, ops).expect("nonempty").to_superop()
}

/// Random GKSL generator `Φ - id` for a random channel `Φ`.
pub fn random_gksl<R: Rng + ?Sized>(n: usize, rng: &mut R) -> Superoperator {
    random_channel(n, rng)
        .sub(&Superoperator::identity(n))
        .expect("same dimension")
}
