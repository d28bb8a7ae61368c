//! Plain-text reports: one `key = value` per line, keys in a fixed order,
//! numbers with 17 significant digits.

use std::fmt::Write as _;

use crate::action::Residual;
use crate::gfun::{DoublingProbe, EmbeddingData, SimonenkoIndices};
use crate::mpsolver::{PsDiagnostic, SolveReport};
use crate::orlicz::NormBundle;
use crate::problem::{ConstantEstimates, GateResult, HypothesisReport, ProblemSpec};

#[derive(Clone, Debug, Default)]
pub struct Report {
    lines: Vec<(String, String)>,
}

pub fn num(v: f64) -> String {
    if v.is_finite() {
        format!("{v:.16e}")
    } else {
        format!("{v}")
    }
}

fn list(v: &[f64]) -> String {
    v.iter().map(|x| num(*x)).collect::<Vec<_>>().join(",")
}

impl Report {
    pub fn new() -> Self {
        Self::default()
    }

    pub fn text(&mut self, key: impl Into<String>, value: impl Into<String>) -> &mut Self {
        self.lines.push((key.into(), value.into()));
        self
    }

    pub fn num(&mut self, key: impl Into<String>, v: f64) -> &mut Self {
        self.text(key, num(v))
    }

    pub fn opt(&mut self, key: impl Into<String>, v: Option<f64>) -> &mut Self {
        self.text(key, v.map_or_else(|| "none".to_string(), num))
    }

    pub fn int(&mut self, key: impl Into<String>, v: usize) -> &mut Self {
        self.text(key, v.to_string())
    }

    pub fn flag(&mut self, key: impl Into<String>, v: bool) -> &mut Self {
        self.text(key, v.to_string())
    }

    pub fn vec(&mut self, key: impl Into<String>, v: &[f64]) -> &mut Self {
        self.text(key, list(v))
    }

    /// Value stored under `key`, if any.
    pub fn get(&self, key: &str) -> Option<&str> {
        self.lines.iter().find(|(k, _)| k == key).map(|(_, v)| v.as_str())
    }

    pub fn render(&self) -> String {
        let mut out = String::new();
        for (k, v) in &self.lines {
            let _ = writeln!(out, "{k} = {v}");
        }
        out
    }

    pub fn problem(&mut self, p: &ProblemSpec, grid_n: usize) -> &mut Self {
        let (a, b) = p.interval();
        let w = p.witnesses();
        self.num("problem.interval.a", a)
            .num("problem.interval.b", b)
            .int("problem.dimension", p.dimension())
            .text("problem.gfun.kind", p.gfun().kind_name())
            .text("problem.gfun.regime", p.gfun().regime().as_str())
            .text("problem.F.kind", p.kinetic().label())
            .text("problem.V.kind", p.potential().label())
            .text("problem.f.kind", p.forcing().kind_name())
            .num("problem.witness.theta_F", w.theta_f)
            .num("problem.witness.theta_V", w.theta_v)
            .num("problem.witness.Lambda", w.lambda)
            .num("problem.witness.r0", w.r0)
            .num("problem.witness.rho0", w.rho0)
            .int("problem.grid.n", grid_n)
    }

    pub fn hypotheses(&mut self, r: &HypothesisReport) -> &mut Self {
        self.int("hypothesis.samples", r.samples_per_hypothesis)
            .text("hypothesis.seed", r.seed.to_string());
        for h in &r.results {
            let k = format!("hypothesis.{}", h.hypothesis.name());
            self.text(format!("{k}.verdict"), h.verdict.as_str())
                .int(format!("{k}.checked"), h.checked)
                .int(format!("{k}.skipped"), h.skipped)
                .int(format!("{k}.violations"), h.violations)
                .num(format!("{k}.worst_margin"), h.worst_margin);
            if let Some(c) = &h.counterexample {
                self.num(format!("{k}.counterexample.t"), c.sample.t)
                    .vec(format!("{k}.counterexample.x"), &c.sample.x)
                    .vec(format!("{k}.counterexample.v"), &c.sample.v)
                    .vec(format!("{k}.counterexample.w"), &c.sample.w)
                    .num(format!("{k}.counterexample.lambda"), c.sample.lambda)
                    .num(format!("{k}.counterexample.lhs"), c.lhs)
                    .num(format!("{k}.counterexample.rhs"), c.rhs)
                    .num(format!("{k}.counterexample.margin"), c.margin);
            }
            if let Some(n) = &h.note {
                self.text(format!("{k}.note"), n.clone());
            }
        }
        self.flag("hypothesis.all_passed", r.all_passed())
    }

    pub fn estimates(&mut self, e: &ConstantEstimates) -> &mut Self {
        self.opt("estimate.theta_F", e.theta_f)
            .opt("estimate.theta_V", e.theta_v)
            .opt("estimate.Lambda", e.lambda)
            .num("estimate.M", e.m_ps)
            .num("estimate.M_prime", e.m_valley)
    }

    pub fn indices(&mut self, i: &SimonenkoIndices) -> &mut Self {
        self.num("indices.p_G", i.p_g)
            .num("indices.q_G", i.q_g)
            .vec("indices.p_G.at", &i.attained_at.0)
            .vec("indices.q_G.at", &i.attained_at.1)
            .int("indices.skipped", i.skipped)
    }

    pub fn embedding(&mut self, e: &EmbeddingData) -> &mut Self {
        self.num("embedding.C_inf_G", e.c_inf_g)
            .num("embedding.interval_length", e.interval_length)
            .num("embedding.inverse_at_target", e.inverse_at_target)
            .int("embedding.minorant_vertices", e.minorant_samples.len())
            .int("embedding.extensions", e.extensions)
    }

    pub fn doubling(&mut self, d: &DoublingProbe) -> &mut Self {
        self.num("doubling.delta2", d.delta2)
            .flag("doubling.delta2_bounded", d.delta2_bounded)
            .num("doubling.nabla2", d.nabla2)
            .flag("doubling.nabla2_bounded", d.nabla2_bounded)
            .num("doubling.r_min", d.radius_range.0)
            .num("doubling.r_max", d.radius_range.1)
            .int("doubling.samples", d.samples)
            .int("doubling.conjugate_failures", d.conjugate_failures)
    }

    pub fn gates(&mut self, g: &GateResult) -> &mut Self {
        let a = &g.condition_a;
        let b = &g.condition_b;
        self.num("gate.C_inf_G", g.derived.c_inf_g)
            .num("gate.rho", g.derived.rho)
            .num("gate.integral_g", g.derived.integral_g)
            .num("gate.f_dual_norm", g.derived.f_dual_norm)
            .num("gate.p_G", g.derived.p_g)
            .num("gate.q_G", g.derived.q_g)
            .flag("gate.A.applicable", a.applicable)
            .flag("gate.A.holds", a.holds)
            .num("gate.A.lhs", a.lhs)
            .num("gate.A.rhs", a.rhs)
            .flag("gate.A.skipped", a.skipped)
            .flag("gate.B.applicable", b.applicable)
            .flag("gate.B.holds", b.holds)
            .num("gate.B.lhs", b.lhs)
            .num("gate.B.rhs", b.rhs)
            .text("gate.B.branch", b.branch.as_str())
            .flag("gate.B.skipped", b.skipped)
            .flag("gate.any_holds", g.any_holds());
        if let Some(n) = &g.note {
            self.text("gate.note", n.clone());
        }
        self
    }

    pub fn norms(&mut self, n: &NormBundle, modular_u: f64, modular_du: f64) -> &mut Self {
        self.num("norms.luxemburg_u", n.lux_u)
            .num("norms.luxemburg_du", n.lux_du)
            .num("norms.w_norm", n.w_norm)
            .num("norms.w0_norm", n.w0_norm)
            .num("norms.sup_norm", n.sup_norm)
            .num("norms.modular_u", modular_u)
            .num("norms.modular_du", modular_du)
    }

    pub fn residual(&mut self, r: &Residual, grad_norm: f64) -> &mut Self {
        self.num("residual.weak", r.weak_residual)
            .num("residual.strong", r.strong_residual)
            .num("residual.grad_norm", grad_norm)
    }

    pub fn solve(&mut self, s: &SolveReport) -> &mut Self {
        self.text("solve.status", s.status.as_str())
            .text("solve.message", s.message.clone())
            .flag("solve.converged", s.converged)
            .opt("solve.lambda_0", s.lambda_0)
            .opt("solve.J_e", s.j_e)
            .num("solve.rho", s.rho)
            .opt("solve.alpha_est", s.alpha_est)
            .num("solve.c_est", s.c_est)
            .num("solve.J_star", s.j_star)
            .num("solve.u_star.w0_norm", s.u_star_norm)
            .num("solve.u_star.sup_norm", s.u_star.sup_norm())
            .flag("solve.nontrivial", s.nontrivial())
            .num("solve.grad_norm", s.grad_norm)
            .num("solve.residual.weak", s.residual.weak_residual)
            .num("solve.residual.strong", s.residual.strong_residual)
            .int("solve.deform_iterations", s.deform_iterations)
            .int("solve.refine_iterations", s.refine_iterations)
            .text("solve.stop", s.stop.map_or("none", |r| r.as_str()))
            .opt("solve.path_max.first", s.path_max_history.first().copied())
            .opt("solve.path_max.last", s.path_max_history.last().copied());
        self.gates(&s.gate).hypotheses(&s.hypothesis)
    }

    pub fn ps(&mut self, d: &PsDiagnostic) -> &mut Self {
        self.num("ps.M", d.m_ps)
            .num("ps.f_dual_norm", d.f_dual_norm)
            .int("ps.iterates", d.entries.len())
            .num("ps.min_margin", d.min_margin)
    }
}
