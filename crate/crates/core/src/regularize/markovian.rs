use std::f64::consts::PI;

use rayon::prelude::*;

use crate::bounds::diamond_upper;
use crate::channels::{MapKind, Superoperator};
use crate::error::{Error, Result};

use super::generator::{check_gksl, regularize_generator};
use super::{is_simple, BudgetNorm, RegularizationReport, Settings, MAX_LAMBDA};

/// Points in each time-factor scan.
pub const MARKOVIAN_GRID: usize = 64;

/// Upper limit on strip-condition halvings of the scan window.
const MAX_SHRINK: usize = 64;

/// First grid point, in order, whose map is simple. Points are evaluated in
/// parallel; the earliest success wins regardless of evaluation order.
fn first_simple<F>(grid: &[f64], tau_gap: f64, map_at: F) -> Result<Option<(usize, Superoperator, f64)>>
where
    F: Fn(f64) -> Result<Superoperator> + Sync,
{
    let found = grid.par_iter().enumerate().find_map_first(|(i, &t)| {
        let eval = || -> Result<Option<(Superoperator, f64)>> {
            let m = map_at(t)?;
            let (simple, gap) = is_simple(&m, tau_gap)?;
            Ok(simple.then_some((m, gap)))
        };
        match eval() {
            Ok(Some((m, gap))) => Some(Ok((i, m, gap))),
            Ok(None) => None,
            Err(e) => Some(Err(e)),
        }
    });
    found.transpose()
}

fn max_abs_imag(s: &Superoperator) -> Result<f64> {
    Ok(s.eigenvalues()?.iter().fold(0.0, |m: f64, z| m.max(z.im.abs())))
}

/// Regularizes the Markovian channel `e^L`.
///
/// The generator is first regularized with half the budget in the diamond
/// upper bound, giving `L_ε`. The channel `e^{t L_ε}` is then tried for `t`
/// stepping down from `1 + Δ` towards `1` (exclusive) over 64 points, where
/// `Δ = min(½, eps / (2 ‖L_ε‖_ub))`, shrunk until every eigenvalue of
/// `(1 + Δ) L_ε` has imaginary part below `π` in modulus.
///
/// `diamond_upper` in the report is the Choi trace norm of `e^L − e^{t L_ε}`;
/// `telescoped_bound` is the stage-wise estimate
/// `‖L − L_ε‖_ub + (t − 1) ‖L_ε‖_ub`.
pub fn regularize_markovian(
    l: &Superoperator,
    eps: f64,
    settings: &Settings,
) -> Result<(Superoperator, RegularizationReport)> {
    if l.is_zero() {
        return Err(Error::ZeroGenerator);
    }
    check_gksl(l, settings)?;
    let (l_eps, gen_report) = regularize_generator(l, eps / 2.0, BudgetNorm::DiamondUpper, settings)?;
    let norm_ub = diamond_upper(&l_eps);

    let mut delta = MAX_LAMBDA.min(eps / (2.0 * norm_ub));
    let max_im = max_abs_imag(&l_eps)?;
    if max_im < PI {
        let mut shrinks = 0;
        while max_im * (1.0 + delta) >= PI && shrinks < MAX_SHRINK {
            delta /= 2.0;
            shrinks += 1;
        }
    }

    let steps = MARKOVIAN_GRID as f64;
    let grid: Vec<f64> = (0..MARKOVIAN_GRID)
        .map(|i| 1.0 + delta * (MARKOVIAN_GRID - i) as f64 / steps)
        .collect();
    let (index, channel, gap) = first_simple(&grid, settings.tol.gap, |t| l_eps.exp_scaled(t))?
        .ok_or(Error::ScanExhausted { points: MARKOVIAN_GRID })?;
    let t = grid[index];

    let exact = l.exp_scaled(1.0)?;
    let diff = exact.sub(&channel)?;
    let input_cert = settings.certify(l, MapKind::Generator);
    let output_cert = settings.certify(&channel, MapKind::Channel);
    let report = RegularizationReport {
        eps,
        budget: BudgetNorm::DiamondUpper,
        lambda: gen_report.lambda,
        time_factors: vec![t],
        time_windows: vec![[1.0 + delta / steps, 1.0 + delta]],
        achieved_gap: gap,
        fro_distance: diff.matrix().fro_norm(),
        diamond_upper: diamond_upper(&diff),
        telescoped_bound: Some(gen_report.diamond_upper + (t - 1.0) * norm_ub),
        input_cert,
        output_cert,
        attempts: gen_report.attempts + index + 1,
    };
    Ok((channel, report))
}

/// Regularizes the product `e^{L_1} e^{L_2} ⋯ e^{L_m}`.
///
/// The first factor is replaced by the output of [`regularize_markovian`] with
/// budget `eps / (2m)`. Each later factor `e^{L_k}` becomes `e^{t_k L_k}` with
/// `t_k` the first of 64 points stepping down from `1` over
/// `[1 − eps / (2m ‖L_k‖_ub), 1]` for which the partial product is simple.
///
/// `time_factors[0]` is the time scaling of the regularized first generator;
/// `time_factors[k]` for `k ≥ 1` is `t_{k+1}`. `telescoped_bound` sums the first
/// stage's certified distance and `(1 − t_k) ‖L_k‖_ub` over the later factors,
/// using that channels have diamond norm one.
pub fn regularize_markovian_product(
    ls: &[Superoperator],
    eps: f64,
    settings: &Settings,
) -> Result<(Superoperator, RegularizationReport)> {
    let Some(first) = ls.first() else {
        return Err(Error::InvalidArgument("at least one generator is required".into()));
    };
    for l in ls {
        first.check_same(l)?;
        if l.is_zero() {
            return Err(Error::ZeroGenerator);
        }
        check_gksl(l, settings)?;
    }
    if ls.len() == 1 {
        return regularize_markovian(first, eps, settings);
    }

    let m = ls.len() as f64;
    let (mut product, first_report) = regularize_markovian(first, eps / (2.0 * m), settings)?;
    let mut time_factors = first_report.time_factors.clone();
    let mut time_windows = first_report.time_windows.clone();
    let mut bound = first_report.diamond_upper.min(first_report.telescoped_bound.unwrap_or(f64::INFINITY));
    let mut attempts = first_report.attempts;
    let mut gap = first_report.achieved_gap;

    let steps = (MARKOVIAN_GRID - 1) as f64;
    for l in &ls[1..] {
        let norm_ub = diamond_upper(l);
        let width = (eps / (2.0 * m * norm_ub)).min(1.0);
        let grid: Vec<f64> = (0..MARKOVIAN_GRID).map(|i| 1.0 - width * i as f64 / steps).collect();
        let prefix = &product;
        let (index, next, g) =
            first_simple(&grid, settings.tol.gap, |t| prefix.compose(&l.exp_scaled(t)?))?
                .ok_or(Error::ScanExhausted { points: MARKOVIAN_GRID })?;
        let t = grid[index];
        product = next;
        gap = g;
        attempts += index + 1;
        bound += (1.0 - t) * norm_ub;
        time_factors.push(t);
        time_windows.push([1.0 - width, 1.0]);
    }

    let mut exact = ls[0].exp_scaled(1.0)?;
    for l in &ls[1..] {
        exact = exact.compose(&l.exp_scaled(1.0)?)?;
    }
    let diff = exact.sub(&product)?;
    let input_cert = settings.certify(&exact, MapKind::Channel);
    let output_cert = settings.certify(&product, MapKind::Channel);
    let report = RegularizationReport {
        eps,
        budget: BudgetNorm::DiamondUpper,
        lambda: first_report.lambda,
        time_factors,
        time_windows,
        achieved_gap: gap,
        fro_distance: diff.matrix().fro_norm(),
        diamond_upper: diamond_upper(&diff),
        telescoped_bound: Some(bound),
        input_cert,
        output_cert,
        attempts,
    };
    Ok((product, report))
}
