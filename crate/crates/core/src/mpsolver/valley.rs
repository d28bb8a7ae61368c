use std::f64::consts::PI;

use rand::RngExt;

use crate::action::{action_parts, action_value, ActionContext, ActionParts};
use crate::error::SolveError;
use crate::gfun::{embedding_constant, norm, SamplerConfig};
use crate::orlicz::{luxemburg_norm, GridFunction};
use crate::parallel::{block_rng, map_blocks};

use super::MountainPassConfig;

/// Point `e = λ₀ u₀` with `J(e) < 0` outside the ball of radius `ρ`.
#[derive(Clone, Debug)]
pub struct Valley {
    pub e: GridFunction,
    pub lambda_0: f64,
    pub value: ActionParts,
    /// `‖e‖_{W₀}`
    pub norm: f64,
    pub rho: f64,
}

/// `c sin(π (t - a)/(b - a))` in every component, with `c` chosen so the
/// sup norm is `2 r₀`.
pub fn default_seed(ctx: &ActionContext) -> GridFunction {
    let (a, b, _) = ctx.grid();
    let dim = ctx.dim();
    let c = 2.0 * ctx.problem().witnesses().r0 / (dim as f64).sqrt();
    ctx.grid_function(|t| vec![c * (PI * (t - a) / (b - a)).sin(); dim])
}

/// `ρ = ρ₀ / C_{∞,G}` for the problem of `ctx`.
pub fn rim_radius(ctx: &ActionContext) -> Result<f64, SolveError> {
    let p = ctx.problem();
    let emb = embedding_constant(p.gfun(), p.interval_length(), &SamplerConfig::default())?;
    Ok(p.witnesses().rho0 / emb.c_inf_g)
}

/// Doubles `λ` from 2 until `J(λ u₀) < 0` and `‖λ u₀‖_{W₀} > ρ`.
pub fn find_valley_point(
    ctx: &ActionContext,
    u0: &GridFunction,
    cfg: &MountainPassConfig,
) -> Result<Valley, SolveError> {
    let rho = rim_radius(ctx)?;
    valley_with_radius(ctx, u0, cfg, rho)
}

pub(crate) fn valley_with_radius(
    ctx: &ActionContext,
    u0: &GridFunction,
    cfg: &MountainPassConfig,
    rho: f64,
) -> Result<Valley, SolveError> {
    let r0 = ctx.problem().witnesses().r0;
    action_value(ctx, u0)?;
    if !(0..=u0.n()).any(|k| norm(u0.node(k)) >= r0) {
        return Err(SolveError::SeedBelowThreshold { r0 });
    }
    let base = luxemburg_norm(ctx.problem().gfun(), u0, true);
    let mut lambda = 2.0;
    let mut last = None;
    while lambda <= cfg.lambda_max {
        let e = u0.scaled(lambda);
        let parts = action_parts(ctx, &e)?;
        let n = lambda * base;
        if parts.total < 0.0 && n > rho {
            return Ok(Valley {
                e,
                lambda_0: lambda,
                value: parts,
                norm: n,
                rho,
            });
        }
        last = Some(parts);
        lambda *= 2.0;
    }
    let parts = last.unwrap_or(ActionParts {
        total: f64::NAN,
        kinetic: f64::NAN,
        potential: f64::NAN,
        forcing: f64::NAN,
    });
    Err(SolveError::NoValley {
        lambda: lambda / 2.0,
        total: parts.total,
        kinetic: parts.kinetic,
        potential: parts.potential,
        forcing: parts.forcing,
        dominant: parts.dominant().to_string(),
    })
}

#[derive(Clone, Debug)]
pub struct RimEstimate {
    /// Smallest sampled `J` on the sphere `‖u‖_{W₀} = ρ`.
    pub alpha_est: f64,
    pub argmin: GridFunction,
    pub rho: f64,
    pub samples: usize,
}

const RIM_BLOCK: usize = 64;
const RIM_MODES: usize = 8;
const RIM_STREAM: u64 = 0x41;

/// Random sine-series direction with decaying coefficients.
fn random_direction(ctx: &ActionContext, rng: &mut impl rand::Rng) -> GridFunction {
    let dim = ctx.dim();
    let (a, b, _) = ctx.grid();
    let coef: Vec<f64> = (0..RIM_MODES * dim)
        .map(|k| rng.random_range(-1.0..1.0) / (1 + k / dim) as f64)
        .collect();
    ctx.grid_function(|t| {
        let s = (t - a) / (b - a);
        (0..dim)
            .map(|i| {
                (0..RIM_MODES)
                    .map(|m| coef[m * dim + i] * ((m + 1) as f64 * PI * s).sin())
                    .sum()
            })
            .collect()
    })
}

/// Sampled surrogate for `inf_{‖u‖_{W₀} = ρ} J(u)`.
pub fn estimate_rim(ctx: &ActionContext, rho: f64, samples: usize, seed: u64) -> Result<RimEstimate, SolveError> {
    if !(rho > 0.0 && rho.is_finite()) {
        return Err(SolveError::Config(format!("rim radius must be positive, got {rho}")));
    }
    if samples == 0 {
        return Err(SolveError::Config("rim estimate needs at least one sample".into()));
    }
    let g = ctx.problem().gfun();
    let blocks = samples.div_ceil(RIM_BLOCK);
    let found = map_blocks(blocks, |blk| -> Result<Option<(f64, GridFunction)>, SolveError> {
        let mut rng = block_rng(seed, RIM_STREAM, blk as u64);
        let mut best: Option<(f64, GridFunction)> = None;
        for _ in 0..RIM_BLOCK.min(samples - blk * RIM_BLOCK) {
            let d = random_direction(ctx, &mut rng);
            let n = luxemburg_norm(g, &d, true);
            if !(n > 0.0) {
                continue;
            }
            let u = d.scaled(rho / n);
            let j = action_value(ctx, &u)?;
            if best.as_ref().is_none_or(|(b, _)| j < *b) {
                best = Some((j, u));
            }
        }
        Ok(best)
    });
    let mut best: Option<(f64, GridFunction)> = None;
    for f in found {
        if let Some((j, u)) = f? {
            if best.as_ref().is_none_or(|(b, _)| j < *b) {
                best = Some((j, u));
            }
        }
    }
    let (alpha_est, argmin) = best.ok_or_else(|| SolveError::Config("every rim direction vanished".into()))?;
    Ok(RimEstimate {
        alpha_est,
        argmin,
        rho,
        samples,
    })
}
