//! Newton refinement on `½‖∇J‖²` with a finite-difference Hessian.

use nalgebra::{DMatrix, DVector};

use crate::action::{action_gradient, ActionContext};
use crate::error::SolveError;
use crate::gfun::norm;
use crate::orlicz::GridFunction;

use super::MountainPassConfig;

#[derive(Clone, Debug)]
pub struct Refinement {
    pub u: GridFunction,
    pub grad_norm: f64,
    pub converged: bool,
    pub iterations: usize,
    pub history: Vec<GridFunction>,
}

/// Interior degrees of freedom as a vector.
fn interior(u: &GridFunction) -> DVector<f64> {
    let d = u.dim();
    DVector::from_column_slice(&u.values()[d..u.n() * d])
}

fn with_interior(u: &GridFunction, x: &DVector<f64>) -> Result<GridFunction, SolveError> {
    let d = u.dim();
    let mut v = u.values().to_vec();
    v[d..u.n() * d].copy_from_slice(x.as_slice());
    Ok(u.with_values(v)?)
}

fn grad_vec(ctx: &ActionContext, u: &GridFunction) -> Result<DVector<f64>, SolveError> {
    Ok(interior(&action_gradient(ctx, u)?))
}

/// Central-difference Hessian of the gradient. The gradient at node `j`
/// only sees nodes `j-1..=j+1`, so nodes three apart are perturbed together.
pub(crate) fn hessian(ctx: &ActionContext, u: &GridFunction) -> Result<DMatrix<f64>, SolveError> {
    let d = u.dim();
    let n = u.n();
    let m = (n - 1) * d;
    let eps = 1e-5 * (1.0 + u.sup_norm());
    let x0 = interior(u);
    let mut h = DMatrix::zeros(m, m);
    for color in 0..3 {
        for comp in 0..d {
            let nodes: Vec<usize> = (1..n).filter(|j| j % 3 == color).collect();
            if nodes.is_empty() {
                continue;
            }
            let mut xp = x0.clone();
            let mut xm = x0.clone();
            for &j in &nodes {
                xp[(j - 1) * d + comp] += eps;
                xm[(j - 1) * d + comp] -= eps;
            }
            let gp = grad_vec(ctx, &with_interior(u, &xp)?)?;
            let gm = grad_vec(ctx, &with_interior(u, &xm)?)?;
            for &j in &nodes {
                let col = (j - 1) * d + comp;
                for r in j.saturating_sub(1).max(1)..=(j + 1).min(n - 1) {
                    for rc in 0..d {
                        let row = (r - 1) * d + rc;
                        h[(row, col)] = (gp[row] - gm[row]) / (2.0 * eps);
                    }
                }
            }
        }
    }
    Ok((&h + h.transpose()) * 0.5)
}

/// Backtracks along `dir` from `t0` until the gradient norm drops below
/// `gn`. Returns the new point, its gradient norm and gradient.
fn search(
    ctx: &ActionContext,
    u: &GridFunction,
    x: &DVector<f64>,
    dir: &DVector<f64>,
    t0: f64,
    gn: f64,
) -> Result<Option<(GridFunction, f64)>, SolveError> {
    let mut t = t0;
    for _ in 0..40 {
        let cand = with_interior(u, &(x + dir * t))?;
        let g = grad_vec(ctx, &cand)?;
        let n = g.norm();
        if n < gn {
            return Ok(Some((cand, n)));
        }
        t *= 0.5;
    }
    Ok(None)
}

/// Drives `‖∇J(u)‖` to zero from `u`. Stops early once no direction reduces
/// the gradient norm; `converged` reports whether `grad_tol` was reached.
pub fn refine_critical_point(
    ctx: &ActionContext,
    u: &GridFunction,
    cfg: &MountainPassConfig,
) -> Result<Refinement, SolveError> {
    let mut u = u.clone();
    let mut g = grad_vec(ctx, &u)?;
    let mut gn = g.norm();
    let target = cfg.grad_tol * 1e-3;
    let mut history = vec![u.clone()];
    let mut iterations = 0;
    while gn > target && iterations < cfg.refine_iters {
        iterations += 1;
        let x = interior(&u);
        let h = hessian(ctx, &u)?;
        let newton = h.clone().lu().solve(&(-&g)).filter(|d| d.iter().all(|v| v.is_finite()));
        let mut step = match newton {
            Some(d) => search(ctx, &u, &x, &d, 1.0, gn)?,
            None => None,
        };
        if step.is_none() {
            // steepest descent on ½‖∇J‖², whose gradient is H ∇J
            let hg = &h * &g;
            let hhg = &h * &hg;
            let denom = hhg.norm_squared();
            if denom > 0.0 {
                let t0 = hg.dot(&hg) / denom;
                step = search(ctx, &u, &x, &(-hg), t0, gn)?;
            }
        }
        let Some((next, n)) = step else { break };
        u = next;
        gn = n;
        g = grad_vec(ctx, &u)?;
        history.push(u.clone());
    }
    Ok(Refinement {
        grad_norm: norm(g.as_slice()),
        converged: gn <= cfg.grad_tol,
        u,
        iterations,
        history,
    })
}
