//! Existence gates (A) and (B) evaluated from the declared witnesses.

use crate::gfun::{EmbeddingData, Regime, SearchConfig, SimonenkoIndices};

use super::ProblemSpec;

/// Which Simonenko index enters condition (B).
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Branch {
    QG,
    PG,
}

impl Branch {
    pub fn as_str(self) -> &'static str {
        match self {
            Branch::QG => "q_G",
            Branch::PG => "p_G",
        }
    }
}

/// `∫g < (Λ - 2|I| ‖f‖_{G*}) ρ₀ / C_{∞,G}`, applicable when `ρ₀ >= C_{∞,G}`.
#[derive(Clone, Debug, PartialEq)]
pub struct ConditionA {
    pub applicable: bool,
    pub holds: bool,
    pub lhs: f64,
    pub rhs: f64,
    pub skipped: bool,
}

/// `∫g + 2|I| ‖f‖_{G*} ρ < Λ ρ^{q_G or p_G}` with `ρ = ρ₀ / C_{∞,G}`,
/// applicable in the global regime.
#[derive(Clone, Debug, PartialEq)]
pub struct ConditionB {
    pub applicable: bool,
    pub holds: bool,
    pub lhs: f64,
    pub rhs: f64,
    pub branch: Branch,
    pub skipped: bool,
}

#[derive(Clone, Debug, PartialEq)]
pub struct GateDerived {
    pub c_inf_g: f64,
    /// `ρ₀ / C_{∞,G}`
    pub rho: f64,
    pub integral_g: f64,
    /// NaN when the conjugate norm could not be computed.
    pub f_dual_norm: f64,
    pub p_g: f64,
    pub q_g: f64,
}

#[derive(Clone, Debug, PartialEq)]
pub struct GateResult {
    pub condition_a: ConditionA,
    pub condition_b: ConditionB,
    pub derived: GateDerived,
    pub note: Option<String>,
}

impl GateResult {
    /// True when at least one applicable condition holds.
    pub fn any_holds(&self) -> bool {
        (self.condition_a.applicable && self.condition_a.holds)
            || (self.condition_b.applicable && self.condition_b.holds)
    }
}

#[derive(Clone, Debug)]
pub struct GateOptions {
    /// Subintervals used to sample `f` for its conjugate norm.
    pub quadrature_n: usize,
    pub search: SearchConfig,
}

impl Default for GateOptions {
    fn default() -> Self {
        Self {
            quadrature_n: 512,
            search: SearchConfig::default(),
        }
    }
}

/// Both sides of (A) and (B). Strict comparisons, so ties fail.
pub fn check_theorem_conditions(
    spec: &ProblemSpec,
    emb: &EmbeddingData,
    idx: &SimonenkoIndices,
    opts: &GateOptions,
) -> GateResult {
    let w = spec.witnesses();
    let (a, b) = spec.interval();
    let len = b - a;
    let c = emb.c_inf_g;
    let rho = w.rho0 / c;
    let integral_g = w.g.integral(a, b);
    let (f_norm, note) = match spec.forcing_dual_norm(opts.quadrature_n, &opts.search) {
        Ok(n) => (n, None),
        Err(e) => (f64::NAN, Some(format!("conjugate norm of f failed: {e}"))),
    };
    let skipped = !f_norm.is_finite();

    let a_applicable = w.rho0 >= c;
    let a_lhs = integral_g;
    let a_rhs = (w.lambda - 2.0 * len * f_norm) * rho;
    let condition_a = ConditionA {
        applicable: a_applicable,
        holds: a_applicable && !skipped && a_lhs < a_rhs,
        lhs: a_lhs,
        rhs: a_rhs,
        skipped,
    };

    let branch = if w.rho0 <= c { Branch::QG } else { Branch::PG };
    let exponent = match branch {
        Branch::QG => idx.q_g,
        Branch::PG => idx.p_g,
    };
    let b_applicable = spec.gfun().regime() == Regime::Global;
    let b_lhs = integral_g + 2.0 * len * f_norm * rho;
    let b_rhs = w.lambda * rho.powf(exponent);
    let condition_b = ConditionB {
        applicable: b_applicable,
        holds: b_applicable && !skipped && b_lhs < b_rhs,
        lhs: b_lhs,
        rhs: b_rhs,
        branch,
        skipped,
    };

    GateResult {
        condition_a,
        condition_b,
        derived: GateDerived {
            c_inf_g: c,
            rho,
            integral_g,
            f_dual_norm: f_norm,
            p_g: idx.p_g,
            q_g: idx.q_g,
        },
        note,
    }
}
