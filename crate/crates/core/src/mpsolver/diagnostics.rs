//! Palais–Smale style boundedness diagnostics along a sequence of states.

use crate::action::{action_gradient, action_value, ActionContext};
use crate::error::SolveError;
use crate::gfun::GFunctionSpec;
use crate::orlicz::{coercivity_ratio, luxemburg_norm, modular, GridFunction};
use crate::problem::{estimate_constants, HypothesisSampler};

/// Both sides of
/// `θ_V J(u) - J'(u)u >= Λ(θ_V - θ_F) R_G(u') - |I| M - 2|I|(θ_V - 1)‖f‖_{G*}‖u'‖_G`.
#[derive(Clone, Debug, PartialEq)]
pub struct PsEntry {
    pub lhs: f64,
    pub rhs: f64,
    /// `lhs - rhs`
    pub margin: f64,
    /// `R_G(u')/‖u'‖_G`, `None` for `u' ≡ 0`.
    pub coercivity: Option<f64>,
}

#[derive(Clone, Debug)]
pub struct PsDiagnostic {
    pub entries: Vec<PsEntry>,
    pub m_ps: f64,
    pub f_dual_norm: f64,
    pub min_margin: f64,
}

impl PsDiagnostic {
    /// Every margin is at least `-tol (1 + |lhs|)`.
    pub fn holds(&self, tol: f64) -> bool {
        self.entries.iter().all(|e| e.margin >= -tol * (1.0 + e.lhs.abs()))
    }
}

/// Evaluates the lower-bound display on each state. `M` and `‖f‖_{G*}` are
/// taken from `sampler`'s cloud and quadrature.
pub fn ps_diagnostic(
    ctx: &ActionContext,
    iterates: &[GridFunction],
    sampler: &HypothesisSampler,
) -> Result<PsDiagnostic, SolveError> {
    if iterates.is_empty() {
        return Err(SolveError::Config("no iterates to diagnose".into()));
    }
    let p = ctx.problem();
    let w = p.witnesses();
    let len = p.interval_length();
    let m_ps = estimate_constants(p, sampler).m_ps;
    let f_norm = p.forcing_dual_norm(sampler.quadrature_n, &sampler.search)?;
    let g = p.gfun();
    let mut entries = Vec::with_capacity(iterates.len());
    for u in iterates {
        let j = action_value(ctx, u)?;
        let du = action_gradient(ctx, u)?.dot(u)?;
        let lhs = w.theta_v * j - du;
        let r = modular(g, u, true);
        let nd = luxemburg_norm(g, u, true);
        let rhs = w.lambda * (w.theta_v - w.theta_f) * r - len * m_ps - 2.0 * len * (w.theta_v - 1.0) * f_norm * nd;
        entries.push(PsEntry {
            lhs,
            rhs,
            margin: lhs - rhs,
            coercivity: coercivity_ratio(g, u),
        });
    }
    let min_margin = entries.iter().map(|e| e.margin).fold(f64::INFINITY, f64::min);
    Ok(PsDiagnostic {
        entries,
        m_ps,
        f_dual_norm: f_norm,
        min_margin,
    })
}

/// `R_G(k u₀')/‖k u₀'‖_G` for `k = 1..=k_max`.
pub fn coercivity_profile(g: &GFunctionSpec, u0: &GridFunction, k_max: usize) -> Vec<f64> {
    (1..=k_max)
        .filter_map(|k| coercivity_ratio(g, &u0.scaled(k as f64)))
        .collect()
}

/// True when no entry drops below its predecessor by more than
/// `tol` relative.
pub fn is_nondecreasing(values: &[f64], tol: f64) -> bool {
    values.windows(2).all(|w| w[1] >= w[0] - tol * w[0].abs())
}
