//! Numerical mountain pass: a valley point `e`, a sampled rim level, a path
//! from `0` to `e` deformed until its highest point sits on a saddle, and
//! Newton refinement of that point.

mod diagnostics;
mod path;
mod refine;
mod valley;

pub use diagnostics::{coercivity_profile, is_nondecreasing, ps_diagnostic, PsDiagnostic, PsEntry};
pub use path::StopReason;
pub use refine::{refine_critical_point, Refinement};
pub use valley::{default_seed, estimate_rim, find_valley_point, rim_radius, RimEstimate, Valley};

use crate::action::{action_value, euler_lagrange_residual, ActionContext, Residual};
use crate::error::SolveError;
use crate::gfun::{embedding_constant, simonenko_indices, EmbeddingData, SamplerConfig, SimonenkoIndices};
use crate::orlicz::{luxemburg_norm, GridFunction};
use crate::problem::{
    check_hypotheses, check_theorem_conditions, GateOptions, GateResult, HypothesisReport, HypothesisSampler,
};
use crate::DEFAULT_SEED;

#[derive(Clone, Debug)]
pub struct MountainPassConfig {
    /// Nodes on the discrete path, endpoints included.
    pub path_points: usize,
    /// Initial step along the Sobolev gradient.
    pub deform_step: f64,
    /// Converged when the Euclidean norm of the discrete gradient is below this.
    pub grad_tol: f64,
    pub max_outer_iters: usize,
    /// Defaults to [`default_seed`].
    pub valley_seed: Option<GridFunction>,
    pub lambda_max: f64,
    pub rim_samples: usize,
    pub seed: u64,
    /// Deformation hands over to Newton once the Sobolev gradient norm at the
    /// path maximum is below this.
    pub handoff_tol: f64,
    /// Iterations without a decrease of the path maximum before handing over.
    pub stall_iters: usize,
    pub refine_iters: usize,
    /// Samples per hypothesis in the embedded hypothesis report.
    pub hypothesis_samples: usize,
}

impl Default for MountainPassConfig {
    fn default() -> Self {
        Self {
            path_points: 21,
            deform_step: 0.5,
            grad_tol: 1e-6,
            max_outer_iters: 2000,
            valley_seed: None,
            lambda_max: 1048576.0,
            rim_samples: 1000,
            seed: DEFAULT_SEED,
            handoff_tol: 1e-2,
            stall_iters: 50,
            refine_iters: 100,
            hypothesis_samples: 10_000,
        }
    }
}

impl MountainPassConfig {
    pub fn validate(&self) -> Result<(), SolveError> {
        let bad = |m: String| Err(SolveError::Config(m));
        if self.path_points < 3 {
            return bad(format!("path_points must be >= 3, got {}", self.path_points));
        }
        for (name, v) in [
            ("deform_step", self.deform_step),
            ("grad_tol", self.grad_tol),
            ("handoff_tol", self.handoff_tol),
        ] {
            if !(v > 0.0 && v.is_finite()) {
                return bad(format!("{name} must be positive, got {v}"));
            }
        }
        if !(self.lambda_max >= 2.0) {
            return bad(format!("lambda_max must be >= 2, got {}", self.lambda_max));
        }
        if self.rim_samples == 0 || self.stall_iters == 0 {
            return bad("rim_samples and stall_iters must be positive".into());
        }
        Ok(())
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum SolveStatus {
    Converged,
    NotConverged,
    /// No mountain-pass geometry was found; the returned point is the
    /// critical point reached by Newton from the origin.
    MinimizerReturned,
}

impl SolveStatus {
    pub fn as_str(self) -> &'static str {
        match self {
            SolveStatus::Converged => "converged",
            SolveStatus::NotConverged => "not_converged",
            SolveStatus::MinimizerReturned => "minimizer_returned",
        }
    }
}

#[derive(Clone, Debug)]
pub struct SolveReport {
    pub status: SolveStatus,
    pub message: String,
    pub converged: bool,
    pub e: Option<GridFunction>,
    pub lambda_0: Option<f64>,
    pub j_e: Option<f64>,
    pub rho: f64,
    pub alpha_est: Option<f64>,
    /// Final path maximum (the value at `u_star` for the minimizer fallback).
    pub c_est: f64,
    pub u_star: GridFunction,
    pub j_star: f64,
    /// `‖u*'‖_G`
    pub u_star_norm: f64,
    pub grad_norm: f64,
    pub residual: Residual,
    pub deform_iterations: usize,
    pub refine_iterations: usize,
    pub stop: Option<StopReason>,
    /// Path maximum after every accepted deformation step.
    pub path_max_history: Vec<f64>,
    /// Highest path node at each deformation step, then the Newton iterates.
    pub iterates: Vec<GridFunction>,
    pub gate: GateResult,
    pub hypothesis: HypothesisReport,
    pub indices: SimonenkoIndices,
    pub embedding: EmbeddingData,
}

impl SolveReport {
    pub fn iterations(&self) -> usize {
        self.deform_iterations + self.refine_iterations
    }

    /// `‖u*‖_{W₀} > ρ/2`.
    pub fn nontrivial(&self) -> bool {
        self.u_star_norm > 0.5 * self.rho
    }
}

pub fn mountain_pass_solve(ctx: &ActionContext, cfg: &MountainPassConfig) -> Result<SolveReport, SolveError> {
    cfg.validate()?;
    let p = ctx.problem();
    let sampler = SamplerConfig::default();
    let indices = simonenko_indices(p.gfun(), &sampler)?;
    let embedding = embedding_constant(p.gfun(), p.interval_length(), &sampler)?;
    let gate = check_theorem_conditions(p, &embedding, &indices, &GateOptions::default());
    let hypothesis = check_hypotheses(
        p,
        &HypothesisSampler {
            samples: cfg.hypothesis_samples,
            seed: cfg.seed,
            ..HypothesisSampler::default()
        },
    );
    let rho = p.witnesses().rho0 / embedding.c_inf_g;
    let seed = match &cfg.valley_seed {
        Some(u) => u.clone(),
        None => default_seed(ctx),
    };

    let finish = |status: SolveStatus,
                  message: String,
                  valley: Option<&Valley>,
                  alpha_est: Option<f64>,
                  c_est: Option<f64>,
                  deform: Option<(usize, StopReason, Vec<f64>, Vec<GridFunction>)>,
                  refined: Refinement|
     -> Result<SolveReport, SolveError> {
        let j_star = action_value(ctx, &refined.u)?;
        let residual = euler_lagrange_residual(ctx, &refined.u)?;
        let (deform_iterations, stop, path_max_history, mut iterates) = match deform {
            Some((n, s, h, i)) => (n, Some(s), h, i),
            None => (0, None, Vec::new(), Vec::new()),
        };
        iterates.extend(refined.history.iter().cloned());
        Ok(SolveReport {
            status,
            message,
            converged: refined.converged,
            e: valley.map(|v| v.e.clone()),
            lambda_0: valley.map(|v| v.lambda_0),
            j_e: valley.map(|v| v.value.total),
            rho,
            alpha_est,
            c_est: c_est.unwrap_or(j_star),
            u_star_norm: luxemburg_norm(p.gfun(), &refined.u, true),
            j_star,
            grad_norm: refined.grad_norm,
            residual,
            deform_iterations,
            refine_iterations: refined.iterations,
            stop,
            path_max_history,
            iterates,
            gate: gate.clone(),
            hypothesis: hypothesis.clone(),
            indices: indices.clone(),
            embedding: embedding.clone(),
            u_star: refined.u,
        })
    };

    let valley = match valley::valley_with_radius(ctx, &seed, cfg, rho) {
        Ok(v) => v,
        Err(err @ SolveError::NoValley { .. }) => {
            let refined = refine_critical_point(ctx, &ctx.zero(), cfg)?;
            return finish(
                SolveStatus::MinimizerReturned,
                format!("geometry gates failed, minimizer returned ({err})"),
                None,
                None,
                None,
                None,
                refined,
            );
        }
        Err(e) => return Err(e),
    };
    let rim = estimate_rim(ctx, rho, cfg.rim_samples, cfg.seed)?;
    let def = path::deform(ctx, &valley.e, cfg)?;
    let top = def.path.argmax();
    let start = if def.stop == StopReason::Converged {
        def.path.nodes[top].clone()
    } else {
        def.path.peak_near(ctx, top)?.0
    };
    let c_est = def.path.max();
    let refined = refine_critical_point(ctx, &start, cfg)?;
    let (status, message) = if refined.converged {
        (SolveStatus::Converged, "critical point found".to_string())
    } else {
        (
            SolveStatus::NotConverged,
            format!(
                "gradient norm {:e} above tolerance {:e}",
                refined.grad_norm, cfg.grad_tol
            ),
        )
    };
    finish(
        status,
        message,
        Some(&valley),
        Some(rim.alpha_est),
        Some(c_est),
        Some((def.iterations, def.stop, def.max_history, def.iterates)),
        refined,
    )
}
