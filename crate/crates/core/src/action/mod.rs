//! The discrete action functional
//!
//! ```text
//! J(u) = ∫_I F(t, u, u') + V(t, u) + <f(t), u> dt
//! ```
//!
//! on piecewise-linear zero-boundary grid functions. `F` and `V` use one
//! midpoint per cell (`u` at the mean of the end nodes, `u'` the cell
//! slope); the forcing term uses the trapezoid rule on the nodes. The
//! gradient is the exact gradient of this discrete functional.

use crate::error::ProblemError;
use crate::gfun::{dot, norm};
use crate::orlicz::GridFunction;
use crate::problem::ProblemSpec;

/// A problem together with the grid the action is discretized on.
#[derive(Clone, Debug)]
pub struct ActionContext {
    problem: ProblemSpec,
    n: usize,
    /// `f` at the nodes, node-major.
    forcing: Vec<f64>,
}

/// `J` split by term.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct ActionParts {
    pub total: f64,
    pub kinetic: f64,
    pub potential: f64,
    pub forcing: f64,
}

impl ActionParts {
    /// Name of the part with the largest magnitude.
    pub fn dominant(&self) -> &'static str {
        let parts = [
            ("kinetic", self.kinetic),
            ("potential", self.potential),
            ("forcing", self.forcing),
        ];
        parts
            .iter()
            .fold(parts[0], |best, p| if p.1.abs() > best.1.abs() { *p } else { best })
            .0
    }
}

#[derive(Clone, Copy, Debug, PartialEq)]
pub struct Residual {
    /// `max_k |J'(u) φ_k| / h` over interior hat functions.
    pub weak_residual: f64,
    /// `max_k |(F_v)' - F_x - ∇V - f|` at interior nodes.
    pub strong_residual: f64,
}

/// Per-cell derivative data at the quadrature point.
struct CellTerms {
    f_x: Vec<f64>,
    f_v: Vec<f64>,
    grad_v: Vec<f64>,
}

impl ActionContext {
    pub fn new(problem: ProblemSpec, n: usize) -> Result<Self, ProblemError> {
        if n < 2 {
            return Err(ProblemError::invariant("grid.n", format!("need n >= 2, got {n}")));
        }
        let forcing = problem.forcing_grid_on(n);
        Ok(Self { problem, n, forcing })
    }

    pub fn problem(&self) -> &ProblemSpec {
        &self.problem
    }

    /// `(a, b, n)`
    pub fn grid(&self) -> (f64, f64, usize) {
        let (a, b) = self.problem.interval();
        (a, b, self.n)
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn dim(&self) -> usize {
        self.problem.dimension()
    }

    pub fn h(&self) -> f64 {
        self.problem.interval_length() / self.n as f64
    }

    /// The zero function on this grid.
    pub fn zero(&self) -> GridFunction {
        let (a, b, n) = self.grid();
        GridFunction::zeros(a, b, n, self.dim()).expect("validated grid")
    }

    /// Samples `f` on this grid with both end nodes pinned to zero.
    pub fn grid_function<F>(&self, f: F) -> GridFunction
    where
        F: FnMut(f64) -> Vec<f64>,
    {
        let (a, b, n) = self.grid();
        GridFunction::from_fn_zero_boundary(a, b, n, self.dim(), f).expect("validated grid")
    }

    fn check(&self, u: &GridFunction) -> Result<(), ProblemError> {
        let (a, b, n) = self.grid();
        if u.a() != a || u.b() != b || u.n() != n || u.dim() != self.dim() {
            return Err(crate::error::OrliczError::GridMismatch(format!(
                "expected ([{a}, {b}], n={n}, N={}), got ([{}, {}], n={}, N={})",
                self.dim(),
                u.a(),
                u.b(),
                u.n(),
                u.dim()
            ))
            .into());
        }
        Ok(u.require_zero_boundary()?)
    }

    fn t_mid(&self, k: usize) -> f64 {
        self.problem.interval().0 + (k as f64 + 0.5) * self.h()
    }

    fn f_node(&self, k: usize) -> &[f64] {
        let d = self.dim();
        &self.forcing[k * d..(k + 1) * d]
    }

    fn cell_value(&self, k: usize, left: &[f64], right: &[f64]) -> (f64, f64) {
        let h = self.h();
        let x: Vec<f64> = left.iter().zip(right).map(|(l, r)| 0.5 * (l + r)).collect();
        let v: Vec<f64> = left.iter().zip(right).map(|(l, r)| (r - l) / h).collect();
        let t = self.t_mid(k);
        (
            h * self.problem.kinetic().value(t, &x, &v),
            h * self.problem.potential().value(t, &x),
        )
    }

    fn cell_terms(&self, k: usize, u: &GridFunction) -> CellTerms {
        let d = self.dim();
        let x = u.cell_mean(k);
        let v = u.slope(k);
        let t = self.t_mid(k);
        let mut terms = CellTerms {
            f_x: vec![0.0; d],
            f_v: vec![0.0; d],
            grad_v: vec![0.0; d],
        };
        self.problem.kinetic().grad_x(t, &x, &v, &mut terms.f_x);
        self.problem.kinetic().grad_v(t, &x, &v, &mut terms.f_v);
        self.problem.potential().grad(t, &x, &mut terms.grad_v);
        terms
    }

    fn node_weight(&self, k: usize) -> f64 {
        if k == 0 || k == self.n {
            0.5 * self.h()
        } else {
            self.h()
        }
    }

    /// The terms of `J` that depend on interior node `j`: cells `j-1`, `j`
    /// and the forcing at node `j`.
    fn local_action(&self, u: &GridFunction, j: usize, node: &[f64]) -> f64 {
        let (k1, p1) = self.cell_value(j - 1, u.node(j - 1), node);
        let (k2, p2) = self.cell_value(j, node, u.node(j + 1));
        (k1 + p1) + (k2 + p2) + self.node_weight(j) * dot(self.f_node(j), node)
    }
}

impl ProblemSpec {
    fn forcing_grid_on(&self, n: usize) -> Vec<f64> {
        let (a, b) = self.interval();
        let h = (b - a) / n as f64;
        let d = self.dimension();
        let mut out = vec![0.0; (n + 1) * d];
        for k in 0..=n {
            let t = if k == n { b } else { a + h * k as f64 };
            self.forcing().eval_into(t, &mut out[k * d..(k + 1) * d]);
        }
        out
    }
}

/// `J(u)` with its parts.
pub fn action_parts(ctx: &ActionContext, u: &GridFunction) -> Result<ActionParts, ProblemError> {
    ctx.check(u)?;
    let (mut kinetic, mut potential, mut forcing) = (0.0, 0.0, 0.0);
    for k in 0..ctx.n {
        let (kin, pot) = ctx.cell_value(k, u.node(k), u.node(k + 1));
        kinetic += kin;
        potential += pot;
    }
    for k in 0..=ctx.n {
        forcing += ctx.node_weight(k) * dot(ctx.f_node(k), u.node(k));
    }
    Ok(ActionParts {
        total: kinetic + potential + forcing,
        kinetic,
        potential,
        forcing,
    })
}

pub fn action_value(ctx: &ActionContext, u: &GridFunction) -> Result<f64, ProblemError> {
    action_parts(ctx, u).map(|p| p.total)
}

/// Exact gradient of [`action_value`] with respect to the interior nodal
/// values; the end nodes of the result are zero.
pub fn action_gradient(ctx: &ActionContext, u: &GridFunction) -> Result<GridFunction, ProblemError> {
    ctx.check(u)?;
    let d = ctx.dim();
    let h = ctx.h();
    let n = ctx.n;
    let mut g = vec![0.0; (n + 1) * d];
    for k in 0..n {
        let c = ctx.cell_terms(k, u);
        // cell k touches nodes k (slope weight -1/h) and k + 1 (+1/h)
        for i in 0..d {
            let avg = 0.5 * h * (c.f_x[i] + c.grad_v[i]);
            g[k * d + i] += avg - c.f_v[i];
            g[(k + 1) * d + i] += avg + c.f_v[i];
        }
    }
    for j in 1..n {
        for i in 0..d {
            g[j * d + i] += h * ctx.f_node(j)[i];
        }
    }
    g[..d].fill(0.0);
    g[n * d..].fill(0.0);
    Ok(u.with_values(g)?)
}

/// Euclidean norm of the interior gradient.
pub fn gradient_norm(ctx: &ActionContext, u: &GridFunction) -> Result<f64, ProblemError> {
    Ok(norm(action_gradient(ctx, u)?.values()))
}

/// `max |g - g_fd| / (1 + |g|)` over interior degrees of freedom, with
/// `g_fd` the central difference of `J` at step `step`. Only the terms of
/// `J` that depend on the perturbed node are re-evaluated; all others cancel
/// exactly in the difference.
pub fn gradient_fd_check(ctx: &ActionContext, u: &GridFunction, step: f64) -> Result<f64, ProblemError> {
    let g = action_gradient(ctx, u)?;
    let d = ctx.dim();
    let mut worst = 0.0f64;
    for j in 1..ctx.n {
        for i in 0..d {
            let mut node = u.node(j).to_vec();
            let x0 = node[i];
            node[i] = x0 + step;
            let plus = ctx.local_action(u, j, &node);
            node[i] = x0 - step;
            let minus = ctx.local_action(u, j, &node);
            let fd = (plus - minus) / (2.0 * step);
            let an = g.node(j)[i];
            worst = worst.max((an - fd).abs() / (1.0 + an.abs()));
        }
    }
    Ok(worst)
}

/// Weak and strong Euler–Lagrange residuals. The strong residual
/// differentiates `F_v` across the two cells adjacent to each interior node
/// and compares with `F_x + ∇V + f` at the node (central velocity).
pub fn euler_lagrange_residual(ctx: &ActionContext, u: &GridFunction) -> Result<Residual, ProblemError> {
    let g = action_gradient(ctx, u)?;
    let h = ctx.h();
    let d = ctx.dim();
    let weak = g.values().iter().fold(0.0f64, |m, v| m.max(v.abs())) / h;

    let (a, _) = ctx.problem.interval();
    let kin = ctx.problem.kinetic();
    let pot = ctx.problem.potential();
    let mut fv_prev = vec![0.0; d];
    let mut fv_next = vec![0.0; d];
    let mut fx = vec![0.0; d];
    let mut gv = vec![0.0; d];
    let mut strong = 0.0f64;
    kin.grad_v(ctx.t_mid(0), &u.cell_mean(0), &u.slope(0), &mut fv_prev);
    for j in 1..ctx.n {
        kin.grad_v(ctx.t_mid(j), &u.cell_mean(j), &u.slope(j), &mut fv_next);
        let t = a + h * j as f64;
        let x = u.node(j);
        let v: Vec<f64> = u
            .node(j + 1)
            .iter()
            .zip(u.node(j - 1))
            .map(|(r, l)| (r - l) / (2.0 * h))
            .collect();
        kin.grad_x(t, x, &v, &mut fx);
        pot.grad(t, x, &mut gv);
        for i in 0..d {
            let lhs = (fv_next[i] - fv_prev[i]) / h;
            let rhs = fx[i] + gv[i] + ctx.f_node(j)[i];
            strong = strong.max((lhs - rhs).abs());
        }
        std::mem::swap(&mut fv_prev, &mut fv_next);
    }
    Ok(Residual {
        weak_residual: weak,
        strong_residual: strong,
    })
}
