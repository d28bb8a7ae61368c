//! The Lagrangian `L(t, x, v) = F(t, x, v) + V(t, x) + <f(t), x>` together
//! with the structural witnesses the existence theory needs.

mod catalog;
mod gates;
mod hypotheses;

use std::fmt;
use std::sync::Arc;

pub use catalog::{CatalogKinetic, CatalogPotential, KineticKind, PotentialKind};
pub use gates::{check_theorem_conditions, Branch, ConditionA, ConditionB, GateDerived, GateOptions, GateResult};
pub use hypotheses::{
    check_hypotheses, estimate_constants, replay, ConstantEstimates, Counterexample, Hypothesis, HypothesisReport,
    HypothesisResult, HypothesisSampler, Sample, Verdict,
};

use crate::error::ProblemError;
use crate::gfun::{GFunctionSpec, SearchConfig};
use crate::orlicz::{dual_norm, GridFunction};

/// The convex "kinetic" part `F(t, x, v)` with its partial gradients.
pub trait Kinetic: Send + Sync + fmt::Debug {
    fn value(&self, t: f64, x: &[f64], v: &[f64]) -> f64;
    fn grad_x(&self, t: f64, x: &[f64], v: &[f64], out: &mut [f64]);
    fn grad_v(&self, t: f64, x: &[f64], v: &[f64], out: &mut [f64]);
    fn label(&self) -> String {
        "custom".into()
    }
}

/// The potential `V(t, x)` with its gradient in `x`.
pub trait Potential: Send + Sync + fmt::Debug {
    fn value(&self, t: f64, x: &[f64]) -> f64;
    fn grad(&self, t: f64, x: &[f64], out: &mut [f64]);
    fn label(&self) -> String {
        "custom".into()
    }
}

/// Scalar witness function (`a(s)`, `b(t)`, `g(t)`).
#[derive(Clone, Debug, PartialEq)]
pub enum Profile {
    Constant(f64),
    /// `c_0 + c_1 s + c_2 s^2 + ...`
    Polynomial(Vec<f64>),
}

impl Profile {
    pub fn eval(&self, s: f64) -> f64 {
        match self {
            Profile::Constant(c) => *c,
            Profile::Polynomial(c) => c.iter().rev().fold(0.0, |acc, ci| acc * s + ci),
        }
    }

    /// Exact `∫_a^b`.
    pub fn integral(&self, a: f64, b: f64) -> f64 {
        match self {
            Profile::Constant(c) => c * (b - a),
            Profile::Polynomial(c) => c
                .iter()
                .enumerate()
                .map(|(k, ck)| {
                    let e = (k + 1) as i32;
                    ck * (b.powi(e) - a.powi(e)) / e as f64
                })
                .sum(),
        }
    }

    fn is_finite(&self) -> bool {
        match self {
            Profile::Constant(c) => c.is_finite(),
            Profile::Polynomial(c) => c.iter().all(|v| v.is_finite()),
        }
    }
}

/// The forcing term `f(t)`.
#[derive(Clone, Debug, PartialEq)]
pub enum Forcing {
    Zero,
    Constant(Vec<f64>),
    /// Nodal samples over the problem interval, interpolated linearly.
    Samples(GridFunction),
}

impl Forcing {
    pub fn eval_into(&self, t: f64, out: &mut [f64]) {
        match self {
            Forcing::Zero => out.fill(0.0),
            Forcing::Constant(c) => out.copy_from_slice(c),
            Forcing::Samples(g) => out.copy_from_slice(&g.eval(t)),
        }
    }

    pub fn is_zero(&self) -> bool {
        match self {
            Forcing::Zero => true,
            Forcing::Constant(c) => c.iter().all(|&v| v == 0.0),
            Forcing::Samples(g) => g.is_zero(),
        }
    }

    pub fn kind_name(&self) -> &'static str {
        match self {
            Forcing::Zero => "zero",
            Forcing::Constant(_) => "constant",
            Forcing::Samples(_) => "samples",
        }
    }
}

/// Structural constants and functions from the hypotheses. All of them are
/// declared by the user; [`estimate_constants`] only suggests values.
#[derive(Clone, Debug, PartialEq)]
pub struct Witnesses {
    pub a: Profile,
    pub b: Profile,
    pub theta_f: f64,
    pub theta_v: f64,
    pub lambda: f64,
    pub r0: f64,
    pub rho0: f64,
    pub g: Profile,
}

impl Default for Witnesses {
    fn default() -> Self {
        Self {
            a: Profile::Constant(1.0),
            b: Profile::Constant(0.0),
            theta_f: 2.0,
            theta_v: 4.0,
            lambda: 1.0,
            r0: 1.0,
            rho0: 1.0,
            g: Profile::Constant(0.0),
        }
    }
}

/// Parts of `L(t, x, v)`.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct LagrangianValue {
    pub total: f64,
    pub kinetic: f64,
    pub potential: f64,
    pub forcing: f64,
}

#[derive(Clone, Debug)]
pub struct ProblemSpec {
    a: f64,
    b: f64,
    gfun: GFunctionSpec,
    kinetic: Arc<dyn Kinetic>,
    potential: Arc<dyn Potential>,
    forcing: Forcing,
    witnesses: Witnesses,
}

impl ProblemSpec {
    pub fn new(
        interval: (f64, f64),
        gfun: GFunctionSpec,
        kinetic: Arc<dyn Kinetic>,
        potential: Arc<dyn Potential>,
        forcing: Forcing,
        witnesses: Witnesses,
    ) -> Result<Self, ProblemError> {
        let (a, b) = interval;
        if !(a.is_finite() && b.is_finite() && a < b) {
            return Err(ProblemError::invariant(
                "interval",
                format!("need a < b, got [{a}, {b}]"),
            ));
        }
        let w = &witnesses;
        if !(w.theta_f.is_finite() && w.theta_f > 0.0) {
            return Err(ProblemError::invariant("theta_F", "θ_F > 0 required"));
        }
        if !(w.theta_v.is_finite() && w.theta_v > 1.0) {
            return Err(ProblemError::invariant("theta_V", "θ_V > 1 required"));
        }
        if !(w.theta_v > w.theta_f) {
            return Err(ProblemError::invariant("theta_V", "θ_V > θ_F required"));
        }
        for (name, v) in [("Lambda", w.lambda), ("r0", w.r0), ("rho0", w.rho0)] {
            if !(v.is_finite() && v > 0.0) {
                return Err(ProblemError::invariant(name, format!("{name} > 0 required, got {v}")));
            }
        }
        for (name, p) in [("a", &w.a), ("b", &w.b), ("g", &w.g)] {
            if !p.is_finite() {
                return Err(ProblemError::invariant(name, "non-finite coefficient"));
            }
        }
        let dim = gfun.dimension();
        match &forcing {
            Forcing::Constant(c) if c.len() != dim => {
                return Err(ProblemError::invariant(
                    "f.value",
                    format!("expected {dim} components, got {}", c.len()),
                ))
            }
            Forcing::Samples(g) if g.dim() != dim || g.a() != a || g.b() != b => {
                return Err(ProblemError::invariant(
                    "f.values",
                    "samples must share the problem interval and dimension",
                ))
            }
            _ => {}
        }
        Ok(Self {
            a,
            b,
            gfun,
            kinetic,
            potential,
            forcing,
            witnesses,
        })
    }

    pub fn interval(&self) -> (f64, f64) {
        (self.a, self.b)
    }

    pub fn interval_length(&self) -> f64 {
        self.b - self.a
    }

    pub fn dimension(&self) -> usize {
        self.gfun.dimension()
    }

    pub fn gfun(&self) -> &GFunctionSpec {
        &self.gfun
    }

    pub fn kinetic(&self) -> &dyn Kinetic {
        &*self.kinetic
    }

    pub fn potential(&self) -> &dyn Potential {
        &*self.potential
    }

    pub fn forcing(&self) -> &Forcing {
        &self.forcing
    }

    pub fn witnesses(&self) -> &Witnesses {
        &self.witnesses
    }

    /// Same problem with a different potential.
    pub fn with_potential(&self, potential: Arc<dyn Potential>) -> Result<Self, ProblemError> {
        Self::new(
            (self.a, self.b),
            self.gfun.clone(),
            self.kinetic.clone(),
            potential,
            self.forcing.clone(),
            self.witnesses.clone(),
        )
    }

    /// Same problem with a different forcing term.
    pub fn with_forcing(&self, forcing: Forcing) -> Result<Self, ProblemError> {
        Self::new(
            (self.a, self.b),
            self.gfun.clone(),
            self.kinetic.clone(),
            self.potential.clone(),
            forcing,
            self.witnesses.clone(),
        )
    }

    pub fn with_witnesses(&self, witnesses: Witnesses) -> Result<Self, ProblemError> {
        Self::new(
            (self.a, self.b),
            self.gfun.clone(),
            self.kinetic.clone(),
            self.potential.clone(),
            self.forcing.clone(),
            witnesses,
        )
    }

    pub fn forcing_at(&self, t: f64) -> Vec<f64> {
        let mut out = vec![0.0; self.dimension()];
        self.forcing.eval_into(t, &mut out);
        out
    }

    /// `L(t, x, v)` split into its three parts.
    pub fn eval_lagrangian(&self, t: f64, x: &[f64], v: &[f64]) -> Result<LagrangianValue, ProblemError> {
        if !(t >= self.a && t <= self.b) {
            return Err(ProblemError::OutsideInterval {
                t,
                a: self.a,
                b: self.b,
            });
        }
        let kinetic = self.kinetic.value(t, x, v);
        let potential = self.potential.value(t, x);
        let forcing = crate::gfun::dot(&self.forcing_at(t), x);
        let total = kinetic + potential + forcing;
        if !total.is_finite() {
            return Err(ProblemError::NonFiniteEvaluation {
                t,
                x: x.to_vec(),
                v: v.to_vec(),
            });
        }
        Ok(LagrangianValue {
            total,
            kinetic,
            potential,
            forcing,
        })
    }

    /// The forcing sampled on `n` uniform subintervals of the problem interval,
    /// or its own grid when given as samples.
    pub fn forcing_grid(&self, n: usize) -> GridFunction {
        match &self.forcing {
            Forcing::Samples(g) => g.clone(),
            other => {
                let dim = self.dimension();
                GridFunction::from_fn(self.a, self.b, n.max(2), dim, |t| {
                    let mut v = vec![0.0; dim];
                    other.eval_into(t, &mut v);
                    v
                })
                .expect("forcing grid over a validated interval")
            }
        }
    }

    /// `‖f‖_{G*}`; exactly zero for a vanishing forcing.
    pub fn forcing_dual_norm(&self, n: usize, search: &SearchConfig) -> Result<f64, ProblemError> {
        if self.forcing.is_zero() {
            return Ok(0.0);
        }
        Ok(dual_norm(&self.gfun, &self.forcing_grid(n), search)?)
    }
}
