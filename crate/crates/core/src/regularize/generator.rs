use crate::bounds::diamond_upper;
use crate::channels::{MapKind, Residuals, Superoperator};
use crate::constructions::build_psi;
use crate::error::{Error, Result};

use super::channel::{scalar_report, walk_schedule};
use super::{BudgetNorm, RegularizationReport, Settings};

/// The generator `Φ − id` of a channel.
pub fn markovian_approximation(phi: &Superoperator, settings: &Settings) -> Result<Superoperator> {
    let r = Residuals::of(phi);
    let tol = &settings.tol;
    if !(r.is_tp(tol) && r.hermiticity < tol.hermitian && r.cp_min_eig >= -tol.cp) {
        return Err(Error::ClassMismatch("input does not certify as a channel".into()));
    }
    phi.sub(&Superoperator::identity(phi.n()))
}

pub(crate) fn check_gksl(l: &Superoperator, settings: &Settings) -> Result<()> {
    let r = Residuals::of(l);
    if r.is_gksl(&settings.tol) {
        Ok(())
    } else {
        Err(Error::NotGKSL(format!(
            "trace residual {:e}, conditional CP min eigenvalue {:e}, hermiticity residual {:e}",
            r.gksl_trace, r.gksl_ccp_min_eig, r.hermiticity
        )))
    }
}

/// Moves a GKSL generator towards `Ψ − id` until its spectrum is simple.
///
/// Same schedule as [`regularize_channel`](super::regularize_channel); the
/// output `(1 − λ) L + λ (Ψ − id)` is again GKSL because the set of GKSL
/// generators is a convex cone.
pub fn regularize_generator(
    l: &Superoperator,
    eps: f64,
    budget: BudgetNorm,
    settings: &Settings,
) -> Result<(Superoperator, RegularizationReport)> {
    check_gksl(l, settings)?;
    let input_cert = settings.certify(l, MapKind::Generator);
    if l.n() == 1 {
        return Ok((l.clone(), scalar_report(l, eps, budget, input_cert)));
    }
    let n = l.n();
    let target = build_psi(n).superop.sub(&Superoperator::identity(n))?;
    let hit = walk_schedule(l, &target, eps, budget, settings)?;
    let output_cert = settings.certify(&hit.output, MapKind::Generator);
    if !output_cert.flags.gksl {
        return Err(Error::NotGKSL("regularized generator failed its certificate".into()));
    }
    let diff = l.sub(&hit.output)?;
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
