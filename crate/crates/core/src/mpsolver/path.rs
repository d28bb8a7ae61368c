//! Deformation of a discrete path from `0` to `e` by lowering its highest
//! node along the Sobolev gradient.

use crate::action::{action_gradient, action_value, ActionContext};
use crate::error::SolveError;
use crate::orlicz::{luxemburg_norm, GridFunction};

use super::MountainPassConfig;

/// Solves `(1/h) tridiag(-1, 2, -1) d = g` on the interior nodes, component
/// by component. `d` is the `H¹₀` representative of the gradient.
pub(crate) fn sobolev_direction(g: &GridFunction) -> GridFunction {
    let n = g.n();
    let d = g.dim();
    let h = g.h();
    let m = n - 1;
    let mut out = vec![0.0; (n + 1) * d];
    let mut c = vec![0.0; m];
    let mut r = vec![0.0; m];
    for comp in 0..d {
        // Thomas algorithm, diagonal 2, off-diagonals -1
        let rhs = |j: usize| h * g.node(j + 1)[comp];
        c[0] = -0.5;
        r[0] = rhs(0) / 2.0;
        for j in 1..m {
            let denom = 2.0 + c[j - 1];
            c[j] = -1.0 / denom;
            r[j] = (rhs(j) + r[j - 1]) / denom;
        }
        let mut x = r[m - 1];
        out[m * d + comp] = x;
        for j in (0..m - 1).rev() {
            x = r[j] - c[j] * x;
            out[(j + 1) * d + comp] = x;
        }
    }
    g.with_values(out).expect("same shape")
}

pub(crate) struct Path {
    pub nodes: Vec<GridFunction>,
    pub values: Vec<f64>,
}

/// Why the deformation loop handed over to refinement.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum StopReason {
    /// The gradient at the path maximum fell below `grad_tol`.
    Converged,
    /// The Sobolev gradient at the path maximum fell below `handoff_tol`.
    Handoff,
    /// No accepted decrease for `stall_iters` iterations.
    Stalled,
    /// Backtracking found no decrease.
    NoDescent,
    Budget,
}

impl StopReason {
    pub fn as_str(self) -> &'static str {
        match self {
            StopReason::Converged => "converged",
            StopReason::Handoff => "handoff",
            StopReason::Stalled => "stalled",
            StopReason::NoDescent => "no_descent",
            StopReason::Budget => "budget",
        }
    }
}

pub(crate) struct Deformation {
    pub path: Path,
    /// Path maximum after every accepted iteration.
    pub max_history: Vec<f64>,
    /// Highest node at the start of every iteration.
    pub iterates: Vec<GridFunction>,
    pub iterations: usize,
    pub stop: StopReason,
}

impl Path {
    pub fn straight(ctx: &ActionContext, e: &GridFunction, points: usize) -> Result<Self, SolveError> {
        let m = points - 1;
        let mut nodes = Vec::with_capacity(points);
        let mut values = Vec::with_capacity(points);
        for i in 0..=m {
            let u = if i == m {
                e.clone()
            } else {
                e.scaled(i as f64 / m as f64)
            };
            values.push(action_value(ctx, &u)?);
            nodes.push(u);
        }
        Ok(Self { nodes, values })
    }

    /// Highest interior node, lowest index on ties.
    pub fn argmax(&self) -> usize {
        let m = self.nodes.len() - 1;
        let mut best = 1;
        for i in 2..m {
            if self.values[i] > self.values[best] {
                best = i;
            }
        }
        best
    }

    pub fn max(&self) -> f64 {
        self.values.iter().copied().fold(f64::NEG_INFINITY, f64::max)
    }

    /// Point at polyline parameter `s ∈ [0, m]`.
    pub fn at(&self, s: f64) -> GridFunction {
        let m = self.nodes.len() - 1;
        let k = (s.floor() as usize).min(m - 1);
        let w = s - k as f64;
        self.nodes[k]
            .scaled(1.0 - w)
            .axpy(w, &self.nodes[k + 1])
            .expect("path nodes share a grid")
    }

    /// Re-spaces the interior nodes at equal `W₀` arc length. Returns `None`
    /// when the new nodes would raise the path maximum.
    fn equidistributed(&self, ctx: &ActionContext) -> Result<Option<Self>, SolveError> {
        let g = ctx.problem().gfun();
        let m = self.nodes.len() - 1;
        let mut cum = vec![0.0; m + 1];
        for i in 0..m {
            let diff = self.nodes[i + 1].axpy(-1.0, &self.nodes[i])?;
            cum[i + 1] = cum[i] + luxemburg_norm(g, &diff, true);
        }
        let total = cum[m];
        if !(total > 0.0) {
            return Ok(None);
        }
        let mut nodes = vec![self.nodes[0].clone()];
        let mut values = vec![self.values[0]];
        let mut seg = 0;
        for k in 1..m {
            let target = total * k as f64 / m as f64;
            while seg < m - 1 && cum[seg + 1] < target {
                seg += 1;
            }
            let len = cum[seg + 1] - cum[seg];
            let w = if len > 0.0 {
                ((target - cum[seg]) / len).clamp(0.0, 1.0)
            } else {
                0.0
            };
            let u = self.at(seg as f64 + w);
            values.push(action_value(ctx, &u)?);
            nodes.push(u);
        }
        nodes.push(self.nodes[m].clone());
        values.push(self.values[m]);
        let candidate = Self { nodes, values };
        Ok((candidate.max() <= self.max()).then_some(candidate))
    }

    fn midpoint_value(&self, ctx: &ActionContext, node: &GridFunction, k: usize) -> Result<f64, SolveError> {
        Ok(action_value(ctx, &node.scaled(0.5).axpy(0.5, &self.nodes[k])?)?)
    }

    /// True when, with `cand` in place of node `i`, the midpoint of each
    /// adjacent segment stays below `level` or below its previous value.
    fn segments_below(
        &self,
        ctx: &ActionContext,
        i: usize,
        cand: &GridFunction,
        level: f64,
    ) -> Result<bool, SolveError> {
        for k in [i - 1, i + 1] {
            let before = self.midpoint_value(ctx, &self.nodes[i], k)?;
            if !(self.midpoint_value(ctx, cand, k)? < level.max(before)) {
                return Ok(false);
            }
        }
        Ok(true)
    }

    /// Highest point of the polyline on the two segments around node `i`,
    /// by golden-section search in the path parameter.
    pub fn peak_near(&self, ctx: &ActionContext, i: usize) -> Result<(GridFunction, f64), SolveError> {
        let phi = 0.5 * (5f64.sqrt() - 1.0);
        let (mut lo, mut hi) = ((i - 1) as f64, (i + 1) as f64);
        let mut best = (self.nodes[i].clone(), self.values[i]);
        let mut x1 = hi - phi * (hi - lo);
        let mut x2 = lo + phi * (hi - lo);
        let eval = |s: f64| -> Result<(GridFunction, f64), SolveError> {
            let u = self.at(s);
            let j = action_value(ctx, &u)?;
            Ok((u, j))
        };
        let (mut p1, mut p2) = (eval(x1)?, eval(x2)?);
        for _ in 0..80 {
            if p1.1 >= p2.1 {
                hi = x2;
                x2 = x1;
                p2 = p1;
                x1 = hi - phi * (hi - lo);
                p1 = eval(x1)?;
            } else {
                lo = x1;
                x1 = x2;
                p1 = p2;
                x2 = lo + phi * (hi - lo);
                p2 = eval(x2)?;
            }
            if hi - lo < 1e-12 {
                break;
            }
        }
        for p in [p1, p2] {
            if p.1 > best.1 {
                best = p;
            }
        }
        Ok(best)
    }
}

fn dual_norm_sq(g: &GridFunction, d: &GridFunction) -> f64 {
    g.values().iter().zip(d.values()).map(|(a, b)| a * b).sum()
}

pub(crate) fn deform(
    ctx: &ActionContext,
    e: &GridFunction,
    cfg: &MountainPassConfig,
) -> Result<Deformation, SolveError> {
    let mut path = Path::straight(ctx, e, cfg.path_points)?;
    let mut max_history = vec![path.max()];
    let mut iterates = Vec::new();
    let mut step = cfg.deform_step;
    let mut since_progress = 0;
    let mut reference = path.max();
    let mut stop = StopReason::Budget;
    let mut iterations = 0;
    while iterations < cfg.max_outer_iters {
        iterations += 1;
        let i = path.argmax();
        let u = path.nodes[i].clone();
        let ju = path.values[i];
        iterates.push(u.clone());
        let g = action_gradient(ctx, &u)?;
        if crate::gfun::norm(g.values()) <= cfg.grad_tol {
            stop = StopReason::Converged;
            break;
        }
        let d = sobolev_direction(&g);
        if dual_norm_sq(&g, &d).sqrt() <= cfg.handoff_tol {
            stop = StopReason::Handoff;
            break;
        }
        // a move of at most half the distance to either neighbor keeps the
        // polyline from jumping across the ridge
        let gfun = ctx.problem().gfun();
        let reach = [i - 1, i + 1]
            .iter()
            .map(|&k| {
                u.axpy(-1.0, &path.nodes[k])
                    .map(|diff| luxemburg_norm(gfun, &diff, true))
            })
            .collect::<Result<Vec<_>, _>>()?
            .into_iter()
            .fold(f64::INFINITY, f64::min);
        let dn = luxemburg_norm(gfun, &d, true);
        let mut s = step.min(0.5 * reach / dn);
        let mut accepted = None;
        for _ in 0..60 {
            let cand = u.axpy(-s, &d)?;
            let jc = action_value(ctx, &cand)?;
            if jc < ju && path.segments_below(ctx, i, &cand, ju)? {
                accepted = Some((cand, jc));
                break;
            }
            s *= 0.5;
        }
        let Some((cand, jc)) = accepted else {
            stop = StopReason::NoDescent;
            break;
        };
        step = (2.0 * s).min(4.0 * cfg.deform_step);
        path.nodes[i] = cand;
        path.values[i] = jc;
        if let Some(p) = path.equidistributed(ctx)? {
            path = p;
        }
        let top = path.max();
        max_history.push(top);
        if reference - top > 1e-12 * (1.0 + reference.abs()) {
            reference = top;
            since_progress = 0;
        } else {
            since_progress += 1;
            if since_progress >= cfg.stall_iters {
                stop = StopReason::Stalled;
                break;
            }
        }
    }
    Ok(Deformation {
        path,
        max_history,
        iterates,
        iterations,
        stop,
    })
}

#[cfg(test)]
mod tests {
    use std::sync::Arc;

    use super::*;
    use crate::gfun::GFunctionSpec;
    use crate::mpsolver::valley::{default_seed, valley_with_radius};
    use crate::problem::{
        CatalogKinetic, CatalogPotential, Forcing, KineticKind, PotentialKind, ProblemSpec, Witnesses,
    };

    fn quartic(n: usize) -> ActionContext {
        let g = GFunctionSpec::power(1, 2.0, 0.5).unwrap();
        let p = ProblemSpec::new(
            (0.0, 1.0),
            g.clone(),
            Arc::new(CatalogKinetic::new(KineticKind::GOfV, g).unwrap()),
            Arc::new(CatalogPotential::new(PotentialKind::NegPower { kappa: 1.0, theta: 4.0 }, 1).unwrap()),
            Forcing::Constant(vec![0.05]),
            Witnesses::default(),
        )
        .unwrap();
        ActionContext::new(p, n).unwrap()
    }

    #[test]
    fn endpoints_stay_pinned() {
        let ctx = quartic(32);
        let cfg = MountainPassConfig::default();
        let e = valley_with_radius(&ctx, &default_seed(&ctx), &cfg, 0.5).unwrap().e;
        let mut last_max = f64::INFINITY;
        for iters in 1..=8 {
            let d = deform(
                &ctx,
                &e,
                &MountainPassConfig {
                    max_outer_iters: iters,
                    ..cfg.clone()
                },
            )
            .unwrap();
            let m = d.path.nodes.len() - 1;
            assert!(d.path.nodes[0].is_zero());
            assert_eq!(d.path.nodes[m], e);
            assert_eq!(d.path.values[0], 0.0);
            assert!(d.path.max() <= last_max);
            last_max = d.path.max();
        }
    }

    #[test]
    fn sobolev_direction_inverts_stiffness() {
        let d = GridFunction::from_fn(0.0, 1.0, 10, 2, |t| {
            vec![(3.0 * t).sin() * t * (1.0 - t), t * (1.0 - t)]
        })
        .unwrap();
        let h = d.h();
        // g = K d with K = (1/h) tridiag(-1, 2, -1)
        let mut g = vec![0.0; d.values().len()];
        for j in 1..10 {
            for c in 0..2 {
                g[j * 2 + c] = (2.0 * d.node(j)[c] - d.node(j - 1)[c] - d.node(j + 1)[c]) / h;
            }
        }
        let back = sobolev_direction(&d.with_values(g).unwrap());
        for (a, b) in back.values().iter().zip(d.values()) {
            assert!((a - b).abs() < 1e-14);
        }
    }
}
