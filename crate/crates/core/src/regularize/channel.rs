use serde::{Deserialize, Serialize};

use crate::bounds::diamond_upper;
use crate::channels::{ClassCertificate, ClassFlags, MapKind, Residuals, Superoperator};
use crate::constructions::build_psi;
use crate::error::{Error, Result};

use super::{is_simple, lambda_schedule, BudgetNorm, RegularizationReport, Settings, MAX_LAMBDA, SCHEDULE_LEN};

/// Convex class a channel regularization must stay in.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize, Default)]
#[serde(rename_all = "lowercase")]
pub enum ChannelClass {
    /// Whatever the input certifies as.
    #[default]
    Auto,
    Cptp,
    Unital,
    Ptp,
}

impl ChannelClass {
    fn admits(self, flags: &ClassFlags) -> bool {
        match self {
            Self::Auto => flags.trace_preserving,
            Self::Cptp => flags.cptp(),
            Self::Unital => flags.unital_cptp(),
            Self::Ptp => flags.ptp(),
        }
    }
}

/// Distance in the chosen budget norm.
pub(crate) fn budget_distance(a: &Superoperator, b: &Superoperator, budget: BudgetNorm) -> Result<f64> {
    Ok(match budget {
        BudgetNorm::Fro => a.fro_distance(b)?,
        BudgetNorm::DiamondUpper => diamond_upper(&a.sub(b)?),
    })
}

/// Outcome of walking the λ-schedule from `x` towards `target`.
pub(crate) struct ScheduleHit {
    pub output: Superoperator,
    pub lambda: f64,
    pub gap: f64,
    pub attempts: usize,
}

/// First `λ_j` in the schedule for which `(1 − λ_j) x + λ_j target` is simple.
pub(crate) fn walk_schedule(
    x: &Superoperator,
    target: &Superoperator,
    eps: f64,
    budget: BudgetNorm,
    settings: &Settings,
) -> Result<ScheduleHit> {
    if !(eps > 0.0 && eps.is_finite()) {
        return Err(Error::InvalidArgument(format!("eps must be positive and finite, got {eps}")));
    }
    let d = budget_distance(x, target, budget)?;
    let lambda0 = if d == 0.0 {
        MAX_LAMBDA
    } else {
        if eps < 1e-14 * d {
            return Err(Error::BudgetTooTight { eps, distance: d });
        }
        (eps / d).min(MAX_LAMBDA)
    };
    for (j, lambda) in lambda_schedule(lambda0).enumerate() {
        let candidate = x.lerp(target, lambda)?;
        let (simple, gap) = is_simple(&candidate, settings.tol.gap)?;
        if simple {
            return Ok(ScheduleHit {
                output: candidate,
                lambda,
                gap,
                attempts: j + 1,
            });
        }
    }
    Err(Error::ScheduleExhausted { trials: SCHEDULE_LEN })
}

/// Report for an `n = 1` input, which is returned unchanged.
pub(crate) fn scalar_report(s: &Superoperator, eps: f64, budget: BudgetNorm, cert: ClassCertificate) -> RegularizationReport {
    debug_assert_eq!(s.n(), 1);
    RegularizationReport {
        eps,
        budget,
        lambda: None,
        time_factors: Vec::new(),
        time_windows: Vec::new(),
        achieved_gap: f64::INFINITY,
        fro_distance: 0.0,
        diamond_upper: 0.0,
        telescoped_bound: None,
        input_cert: cert.clone(),
        output_cert: cert,
        attempts: 0,
    }
}

/// Moves a channel towards `Ψ` until its spectrum is simple.
///
/// The output is `(1 − λ) Φ + λ Ψ` for the first `λ` of the schedule
/// `λ₀ (1 − j/16)` with a simple spectrum, where `λ₀ = min(eps / D, ½)` and `D`
/// is the distance from `Φ` to `Ψ` in the budget norm. Since `Ψ` is unital CPTP
/// the output stays in every convex class that contains `Φ`.
pub fn regularize_channel(
    phi: &Superoperator,
    eps: f64,
    budget: BudgetNorm,
    class: ChannelClass,
    settings: &Settings,
) -> Result<(Superoperator, RegularizationReport)> {
    let residuals = Residuals::of(phi);
    if !residuals.is_tp(&settings.tol) {
        return Err(Error::ClassMismatch(format!(
            "input is not trace preserving (residual {:e})",
            residuals.tp
        )));
    }
    let input_cert = settings.certify(phi, MapKind::Channel);
    if !class.admits(&input_cert.flags) {
        return Err(Error::ClassMismatch(format!("input does not certify as {class:?}")));
    }
    if phi.n() == 1 {
        return Ok((phi.clone(), scalar_report(phi, eps, budget, input_cert)));
    }

    let psi = build_psi(phi.n()).superop;
    let hit = walk_schedule(phi, &psi, eps, budget, settings)?;
    let output_cert = settings.certify(&hit.output, MapKind::Channel);
    if !class.admits(&output_cert.flags) {
        return Err(Error::ClassMismatch(format!("output left class {class:?}")));
    }
    let diff = phi.sub(&hit.output)?;
    let report = RegularizationReport {
        eps,
        budget,
        lambda: Some(hit.lambda),
        time_factors: Vec::new(),
        time_windows: Vec::new(),
        achieved_gap: hit.gap,
        fro_distance: diff.matrix().fro_norm(),
        diamond_upper: diamond_upper(&diff),
        telescoped_bound: None,
        input_cert,
        output_cert,
        attempts: hit.attempts,
    };
    Ok((hit.output, report))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::constructions::phi_eq1;
    use crate::numerics::multisets_match;
    use num_complex::Complex64;

    #[test]
    fn eq1_gets_the_worked_example_spectrum() {
        let phi = phi_eq1();
        let psi = build_psi(2).superop;
        let d = phi.fro_distance(&psi).unwrap();
        // choose eps so that λ₀ = 0.1
        let (out, rep) =
            regularize_channel(&phi, 0.1 * d, BudgetNorm::Fro, ChannelClass::Unital, &Settings::default()).unwrap();
        let lambda = rep.lambda.unwrap();
        assert!((lambda - 0.1).abs() < 1e-15);
        assert_eq!(rep.attempts, 1);
        let expected = [
            Complex64::new(1.0, 0.0),
            Complex64::new(0.0, 0.0),
            Complex64::new(0.0, lambda / 18.0),
            Complex64::new(0.0, -lambda / 18.0),
        ];
        assert!(multisets_match(&out.eigenvalues().unwrap(), &expected, 1e-10));
        assert!((rep.fro_distance - lambda * d).abs() < 1e-13);
        assert!(rep.output_cert.flags.unital_cptp());
    }

    #[test]
    fn psi_is_accepted_immediately() {
        let psi = build_psi(3).superop;
        let (out, rep) =
            regularize_channel(&psi, 1e-3, BudgetNorm::Fro, ChannelClass::Auto, &Settings::default()).unwrap();
        assert_eq!(rep.lambda, Some(0.5));
        assert_eq!(rep.attempts, 1);
        assert_eq!(rep.fro_distance, 0.0);
        assert!(is_simple(&out, 1e-8).unwrap().0);
    }

    #[test]
    fn scalar_input_is_unchanged() {
        let id = Superoperator::identity(1);
        let (out, rep) = regularize_channel(&id, 0.1, BudgetNorm::Fro, ChannelClass::Auto, &Settings::default()).unwrap();
        assert_eq!(out, id);
        assert_eq!(rep.achieved_gap, f64::INFINITY);
    }

    #[test]
    fn rejects_bad_inputs() {
        let s = Settings::default();
        let zero = Superoperator::zero(2);
        assert!(matches!(
            regularize_channel(&zero, 0.1, BudgetNorm::Fro, ChannelClass::Auto, &s),
            Err(Error::ClassMismatch(_))
        ));
        let phi = phi_eq1();
        assert!(matches!(
            regularize_channel(&phi, 1e-20, BudgetNorm::Fro, ChannelClass::Auto, &s),
            Err(Error::BudgetTooTight { .. })
        ));
        assert!(matches!(
            regularize_channel(&phi, -1.0, BudgetNorm::Fro, ChannelClass::Auto, &s),
            Err(Error::InvalidArgument(_))
        ));
    }

    #[test]
    fn diamond_budget_is_respected() {
        let phi = phi_eq1();
        let (_, rep) =
            regularize_channel(&phi, 0.05, BudgetNorm::DiamondUpper, ChannelClass::Cptp, &Settings::default()).unwrap();
        assert!(rep.diamond_upper <= 0.05 * (1.0 + 1e-12));
    }
}
