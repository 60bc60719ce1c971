use num_complex::Complex64;
use proptest::prelude::*;
use rand::Rng;
use scf_core::bounds::{
    contraction_check, diamond_bounds, duhamel_residual, gauss_legendre, one_to_one_lower, psd_cert_lemma8,
};
use scf_core::constructions::{build_psi, phi_eq1, reset_channel};
use scf_core::numerics::{min_eigh, ComplexMatrix};
use scf_core::sampling::{ginibre, haar_unitary, random_channel, random_gksl, rng};
use scf_core::Superoperator;

fn random_with_norm(n: usize, seed: u64, norm: f64) -> ComplexMatrix {
    let g = ginibre(n, &mut rng(seed));
    g.scale_real(norm / g.fro_norm())
}

#[test]
fn gauss_legendre_weights_and_symmetry() {
    for order in [2, 3, 8, 32, 64] {
        let (x, w) = gauss_legendre(order);
        assert!((w.iter().sum::<f64>() - 1.0).abs() < 1e-14);
        assert!(x.windows(2).all(|p| p[0] < p[1]));
        for i in 0..order {
            assert!((x[i] + x[order - 1 - i] - 1.0).abs() < 1e-14);
        }
        // exact for degree 2 * order - 1
        let deg = 2 * order - 1;
        let integral: f64 = x.iter().zip(&w).map(|(x, w)| w * x.powi(deg as i32)).sum();
        assert!((integral - 1.0 / (deg as f64 + 1.0)).abs() < 1e-13);
    }
}

#[test]
fn contraction_examples() {
    let l = phi_eq1().sub(&Superoperator::identity(2)).unwrap();
    let same = contraction_check(&l, &l).unwrap();
    assert!(same.holds);
    assert_eq!(same.lhs_lower, 0.0);
    assert!(contraction_check(&l, &Superoperator::zero(2)).unwrap().holds);
    assert!(contraction_check(&Superoperator::identity(2), &l).is_err());
}

#[test]
fn one_to_one_regression() {
    let delta = phi_eq1().sub(&reset_channel(2)).unwrap();
    let a = one_to_one_lower(&delta, 20, 0);
    let b = one_to_one_lower(&delta, 20, 0);
    assert_eq!(a, b);
    assert!(a > 0.0);
    // ‖Δ‖_{1→1} ≤ ‖Δ‖_◇ ≤ upper
    assert!(a <= diamond_bounds(&delta).upper + 1e-12);
}

#[test]
fn psd_certificate_soundness() {
    let mut r = rng(8);
    for n in 1..=6 {
        for _ in 0..1000 / 6 + 1 {
            let u = haar_unitary(n, &mut r);
            let d: Vec<Complex64> = (0..n).map(|_| Complex64::new(r.random_range(0.0..=2.0), 0.0)).collect();
            let x = &(&u * &ComplexMatrix::diag(&d)) * &u.adjoint();
            let x = x.hermitian_part();
            let cert = psd_cert_lemma8(&x).unwrap();
            if cert.certified {
                assert!(min_eigh(&x) >= -1e-12);
            }
        }
    }
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(48))]

    #[test]
    fn channel_sandwich_contains_one(seed in any::<u64>(), n in 2usize..4) {
        let b = diamond_bounds(&random_channel(n, &mut rng(seed)));
        prop_assert!(b.lower <= 1.0 + 1e-10);
        prop_assert!(b.upper >= 1.0 - 1e-10);
        prop_assert!(b.lower <= b.upper + 1e-12);
    }

    #[test]
    fn distance_sandwich_is_ordered(seed in any::<u64>()) {
        let a = random_channel(2, &mut rng(seed));
        let delta = a.sub(&build_psi(2).superop).unwrap();
        let b = diamond_bounds(&delta);
        prop_assert!(b.lower <= b.upper + 1e-12);
        prop_assert!(one_to_one_lower(&delta, 4, seed) <= b.upper + 1e-10);
    }

    #[test]
    fn one_to_one_is_monotone_in_samples(seed in any::<u64>(), k in 1usize..8) {
        let delta = random_channel(2, &mut rng(seed)).sub(&reset_channel(2)).unwrap();
        prop_assert!(one_to_one_lower(&delta, k, seed) <= one_to_one_lower(&delta, k + 1, seed));
    }

    #[test]
    fn channels_have_unit_one_to_one_norm(seed in any::<u64>()) {
        let lower = one_to_one_lower(&random_channel(2, &mut rng(seed)), 8, seed);
        prop_assert!((1.0 - 1e-9..=1.0 + 1e-9).contains(&lower));
    }

    #[test]
    fn duhamel_residual_small_and_monotone(seed in any::<u64>(), n in 1usize..5, na in 0.0f64..=2.0, nb in 0.0f64..=2.0) {
        let a = random_with_norm(n, seed, na);
        let b = random_with_norm(n, seed ^ 0xabc, nb);
        let mut prev = f64::INFINITY;
        for q in [4, 8, 16, 32, 64] {
            let r = duhamel_residual(&a, &b, q).unwrap();
            prop_assert!(r <= prev + 1e-12, "order {q}: {r} > {prev}");
            prev = r;
        }
        prop_assert!(duhamel_residual(&a, &b, 32).unwrap() <= 1e-8);
    }

    #[test]
    fn contraction_holds_for_random_generators(seed in any::<u64>(), n in 2usize..4) {
        let mut r = rng(seed);
        let l1 = random_gksl(n, &mut r);
        let l2 = random_gksl(n, &mut r);
        prop_assert!(contraction_check(&l1, &l2).unwrap().holds);
    }
}
