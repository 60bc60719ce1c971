use num_complex::Complex64;
use proptest::prelude::*;
use rand::Rng;
use scf_core::bounds::diamond_upper;
use scf_core::constructions::{build_phi_mu, build_psi, build_remark_family, phi_eq1};
use scf_core::numerics::min_gap;
use scf_core::regularize::{
    is_simple, regularize_channel, regularize_generator, regularize_markovian, regularize_markovian_product,
    scan_path, track_eigenvalues, BudgetNorm, ChannelClass, Settings,
};
use scf_core::sampling::{random_channel, random_gksl, random_unital_channel, rng};
use scf_core::{Error, Superoperator};

fn feasible_remark_pair<R: Rng>(r: &mut R) -> (f64, f64) {
    loop {
        let a: f64 = r.random_range(-1.0..=1.0);
        let b: f64 = r.random_range(-1.0..=1.0);
        if (a - b).abs() <= 1.0 && (a + b).abs() <= 1.0 && (a != 0.0 || b != 0.0) {
            return (a, b);
        }
    }
}

#[test]
fn remark_family_regularizes_in_two_attempts() {
    let mut r = rng(21);
    let s = Settings::default();
    let mut quick = 0;
    for _ in 0..100 {
        let (a, b) = feasible_remark_pair(&mut r);
        let phi = build_remark_family(a, b).unwrap();
        let (out, rep) = regularize_channel(&phi, 1e-3, BudgetNorm::Fro, ChannelClass::Unital, &s).unwrap();
        assert!(rep.output_cert.flags.unital_cptp());
        assert!(rep.achieved_gap > 1e-8);
        assert!(rep.fro_distance <= 1e-3 * (1.0 + 1e-12));
        let d = phi.fro_distance(&build_psi(2).superop).unwrap();
        assert!((rep.fro_distance - rep.lambda.unwrap() * d).abs() < 1e-13);
        assert!(is_simple(&out, 1e-8).unwrap().0);
        quick += usize::from(rep.attempts <= 2);
    }
    assert!(quick >= 99);
}

#[test]
fn halving_budget_never_increases_distance() {
    let s = Settings::default();
    for seed in 0..10 {
        let phi = random_channel(2 + (seed as usize % 2), &mut rng(seed));
        let mut prev = f64::INFINITY;
        for k in 0..6 {
            let eps = 1e-2 / 2f64.powi(k);
            let (_, rep) = regularize_channel(&phi, eps, BudgetNorm::Fro, ChannelClass::Cptp, &s).unwrap();
            assert!(rep.fro_distance <= prev);
            prev = rep.fro_distance;
        }
    }
}

#[test]
fn ptp_mode_keeps_positivity() {
    // a positive, not completely positive, trace-preserving map: the transpose
    let t = Superoperator::from_action(2, |j, k| scf_core::ComplexMatrix::unit(2, k, j));
    let s = Settings::default();
    let (out, rep) = regularize_channel(&t, 1e-2, BudgetNorm::Fro, ChannelClass::Ptp, &s).unwrap();
    assert!(rep.output_cert.flags.ptp());
    assert_eq!(rep.input_cert.flags.channel_classes(), rep.output_cert.flags.channel_classes());
    assert!(is_simple(&out, 1e-8).unwrap().0);
    assert!(matches!(
        regularize_channel(&t, 1e-2, BudgetNorm::Fro, ChannelClass::Cptp, &s),
        Err(Error::ClassMismatch(_))
    ));
}

#[test]
fn commuting_product_stays_in_windows() {
    let base = build_psi(2).superop.sub(&Superoperator::identity(2)).unwrap();
    let ls: Vec<Superoperator> = [0.3, 0.7, 1.1].iter().map(|c| base.scale(*c)).collect();
    let eps = 0.05;
    let (out, rep) = regularize_markovian_product(&ls, eps, &Settings::default()).unwrap();
    let m = ls.len() as f64;
    for (k, l) in ls.iter().enumerate().skip(1) {
        let t = rep.time_factors[k];
        let lo = 1.0 - eps / (2.0 * m * diamond_upper(l));
        assert!(t >= lo && t <= 1.0, "factor {k}: {t} outside [{lo}, 1]");
    }
    assert!(rep.telescoped_bound.unwrap() < eps);
    assert!(is_simple(&out, 1e-8).unwrap().0);
}

#[test]
fn markovian_on_simple_generator() {
    let l = build_psi(3).superop.sub(&Superoperator::identity(3)).unwrap().scale(0.5);
    let (out, rep) = regularize_markovian(&l, 0.1, &Settings::default()).unwrap();
    assert!(rep.output_cert.flags.cptp());
    assert!(rep.diamond_upper < 0.1);
    assert!(is_simple(&out, 1e-8).unwrap().0);
}

#[test]
fn scan_reports_are_deterministic() {
    let a = scan_path(&phi_eq1(), &build_psi(2).superop, 201, 1e-8).unwrap();
    let b = scan_path(&phi_eq1(), &build_psi(2).superop, 201, 1e-8).unwrap();
    assert_eq!(a, b);
    let tracked = track_eigenvalues(&a.spectra);
    assert_eq!(tracked.len(), 201);
    for (row, gap) in tracked.iter().zip(&a.gaps) {
        assert_eq!(min_gap(row), *gap);
    }
}

#[test]
fn scan_within_defective_family() {
    let r = scan_path(&build_phi_mu(0.3).unwrap(), &build_phi_mu(0.9).unwrap(), 101, 1e-8).unwrap();
    assert_eq!(r.exceptional_intervals, vec![(0.0, 1.0)]);
    assert!(r.gaps.iter().all(|g| *g < 1e-8));
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(24))]

    #[test]
    fn channel_regularization_preserves_class(seed in any::<u64>(), n in 2usize..4, unital in any::<bool>()) {
        let mut r = rng(seed);
        let phi = if unital { random_unital_channel(n, &mut r) } else { random_channel(n, &mut r) };
        let s = Settings::with_seed(seed);
        let (out, rep) = regularize_channel(&phi, 1e-3, BudgetNorm::Fro, ChannelClass::Auto, &s).unwrap();
        prop_assert_eq!(rep.input_cert.flags.channel_classes(), rep.output_cert.flags.channel_classes());
        prop_assert!(rep.achieved_gap > 1e-8);
        let d = phi.fro_distance(&build_psi(n).superop).unwrap();
        prop_assert!((rep.fro_distance - rep.lambda.unwrap() * d).abs() < 1e-13);
        prop_assert!((out.fro_distance(&phi).unwrap() - rep.fro_distance).abs() < 1e-15);
    }

    #[test]
    fn generator_regularization_keeps_one_stationary_eigenvalue(seed in any::<u64>(), n in 2usize..4) {
        let l = random_gksl(n, &mut rng(seed));
        let (out, rep) = regularize_generator(&l, 1e-3, BudgetNorm::Fro, &Settings::default()).unwrap();
        prop_assert!(rep.output_cert.gksl_trace_residual < 1e-9);
        prop_assert!(rep.output_cert.gksl_ccp_min_eig >= -1e-9);
        let zeros = out.eigenvalues().unwrap().iter().filter(|z| z.norm() < 1e-8).count();
        prop_assert_eq!(zeros, 1);
        prop_assert!(rep.achieved_gap > 1e-8);
    }

    #[test]
    fn diamond_budget_bounds_the_reported_distance(seed in any::<u64>(), eps in 1e-4f64..0.5) {
        let phi = random_channel(2, &mut rng(seed));
        let (_, rep) = regularize_channel(&phi, eps, BudgetNorm::DiamondUpper, ChannelClass::Cptp, &Settings::default()).unwrap();
        prop_assert!(rep.diamond_upper <= eps * (1.0 + 1e-12));
    }

    #[test]
    fn scan_gap_closed_form(n_grid in 2usize..200) {
        let r = scan_path(&phi_eq1(), &build_psi(2).superop, n_grid, 1e-8).unwrap();
        for (t, g) in r.grid.iter().zip(&r.gaps) {
            let closed = [Complex64::new(1.0, 0.0), Complex64::new(0.0, 0.0), Complex64::new(0.0, t / 18.0), Complex64::new(0.0, -t / 18.0)];
            prop_assert!((g - min_gap(&closed)).abs() < 1e-9);
        }
    }
}
