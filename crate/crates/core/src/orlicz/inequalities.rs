//! Randomized falsification of the classical Orlicz inequalities on grid
//! functions: Hölder (constant 2), Poincaré, the modular/norm relations and
//! the sup-norm embedding.

use crate::gfun::{EmbeddingData, GFunctionSpec, Regime, SearchConfig, SimonenkoIndices};

use super::{dual_norm, luxemburg_norm, modular, GridFunction};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum Inequality {
    /// `|∫<u,v>| <= 2 ‖u‖_G ‖v‖_{G*}`
    Holder,
    /// `‖u‖_G <= |I| ‖u'‖_G` on zero-boundary functions
    Poincare,
    /// `‖u‖ <= 1 ⇒ ‖u‖^{q_G} <= R_G(u)`, `‖u‖ > 1 ⇒ ‖u‖^{p_G} <= R_G(u)` (global regime)
    ModularPowerBound,
    /// `‖u‖ > 1 ⇒ R_G(u) >= ‖u‖`, `‖u‖ <= 1 ⇒ R_G(u) <= ‖u‖`
    ModularLinearBound,
    /// `sup|u| <= C_{∞,G} (‖u‖_G + ‖u'‖_G)`
    Embedding,
}

impl Inequality {
    pub fn name(self) -> &'static str {
        match self {
            Inequality::Holder => "holder",
            Inequality::Poincare => "poincare",
            Inequality::ModularPowerBound => "modular_power_bound",
            Inequality::ModularLinearBound => "modular_linear_bound",
            Inequality::Embedding => "embedding",
        }
    }
}

/// One evaluated instance `lhs <= rhs`.
#[derive(Clone, Debug)]
pub struct CheckOutcome {
    pub inequality: Inequality,
    /// Index of the pair the function came from.
    pub pair: usize,
    pub lhs: f64,
    pub rhs: f64,
    /// `rhs - lhs`; negative beyond the tolerance means a violation.
    pub margin: f64,
    pub holds: bool,
}

#[derive(Clone, Debug)]
pub struct SkippedCheck {
    pub inequality: Inequality,
    pub pair: usize,
    pub reason: String,
}

#[derive(Clone, Debug, Default)]
pub struct InequalityReport {
    pub checks: Vec<CheckOutcome>,
    pub skipped: Vec<SkippedCheck>,
}

impl InequalityReport {
    pub fn violations(&self) -> impl Iterator<Item = &CheckOutcome> {
        self.checks.iter().filter(|c| !c.holds)
    }

    pub fn count(&self, which: Inequality) -> usize {
        self.checks.iter().filter(|c| c.inequality == which).count()
    }

    pub fn all_hold(&self) -> bool {
        self.checks.iter().all(|c| c.holds)
    }
}

/// Comparison settings for [`check_inequalities`].
#[derive(Clone, Debug)]
pub struct InequalityOptions {
    /// `lhs <= rhs + tolerance * max(1, |rhs|)` counts as holding.
    pub tolerance: f64,
    pub search: SearchConfig,
    /// Skip the Hölder check, which needs the conjugate norm of `v`.
    pub skip_holder: bool,
}

impl Default for InequalityOptions {
    fn default() -> Self {
        Self {
            tolerance: 1e-10,
            search: SearchConfig::default(),
            skip_holder: false,
        }
    }
}

struct Recorder<'a> {
    report: &'a mut InequalityReport,
    tol: f64,
}

impl Recorder<'_> {
    fn record(&mut self, inequality: Inequality, pair: usize, lhs: f64, rhs: f64) {
        let holds = lhs <= rhs + self.tol * rhs.abs().max(1.0);
        self.report.checks.push(CheckOutcome {
            inequality,
            pair,
            lhs,
            rhs,
            margin: rhs - lhs,
            holds,
        });
    }
}

/// Checks every inequality on every pair `(u, v)`. Hölder uses both members;
/// the single-function inequalities are applied to `u`.
pub fn check_inequalities(
    spec: &GFunctionSpec,
    pairs: &[(GridFunction, GridFunction)],
    emb: &EmbeddingData,
    indices: &SimonenkoIndices,
    opts: &InequalityOptions,
) -> InequalityReport {
    let mut report = InequalityReport::default();
    let mut skipped = Vec::new();
    {
        let mut rec = Recorder {
            report: &mut report,
            tol: opts.tolerance,
        };
        for (i, (u, v)) in pairs.iter().enumerate() {
            let nu = luxemburg_norm(spec, u, false);
            let ndu = luxemburg_norm(spec, u, true);
            let ru = modular(spec, u, false);

            if !opts.skip_holder {
                match (u.integral_inner(v), dual_norm(spec, v, &opts.search)) {
                    (Ok(inner), Ok(nv)) => rec.record(Inequality::Holder, i, inner.abs(), 2.0 * nu * nv),
                    (Err(e), _) | (_, Err(e)) => skipped.push(SkippedCheck {
                        inequality: Inequality::Holder,
                        pair: i,
                        reason: e.to_string(),
                    }),
                }
            }

            if u.zero_boundary() {
                rec.record(Inequality::Poincare, i, nu, u.interval_length() * ndu);
            } else {
                skipped.push(SkippedCheck {
                    inequality: Inequality::Poincare,
                    pair: i,
                    reason: "function does not vanish at the end nodes".into(),
                });
            }

            if spec.regime() == Regime::Global {
                let exponent = if nu <= 1.0 { indices.q_g } else { indices.p_g };
                rec.record(Inequality::ModularPowerBound, i, nu.powf(exponent), ru);
            }
            if nu > 1.0 {
                rec.record(Inequality::ModularLinearBound, i, nu, ru);
            } else {
                rec.record(Inequality::ModularLinearBound, i, ru, nu);
            }

            rec.record(Inequality::Embedding, i, u.sup_norm(), emb.c_inf_g * (nu + ndu));
        }
    }
    report.skipped = skipped;
    report
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::gfun::{embedding_constant, simonenko_indices, SamplerConfig};

    #[test]
    fn zero_function_satisfies_everything() {
        let g = GFunctionSpec::power(1, 2.0, 1.0).unwrap();
        let s = SamplerConfig::default();
        let emb = embedding_constant(&g, 1.0, &s).unwrap();
        let idx = simonenko_indices(&g, &s).unwrap();
        let z = GridFunction::zeros(0.0, 1.0, 20, 1).unwrap();
        let v = GridFunction::from_fn(0.0, 1.0, 20, 1, |t| vec![(3.0 * t).sin()]).unwrap();
        let r = check_inequalities(&g, &[(z, v)], &emb, &idx, &InequalityOptions::default());
        assert!(r.all_hold(), "{:?}", r.checks);
        assert_eq!(r.count(Inequality::Holder), 1);
        assert_eq!(r.count(Inequality::Poincare), 1);
    }

    #[test]
    fn poincare_on_sine() {
        let g = GFunctionSpec::power(1, 2.0, 1.0).unwrap();
        let s = SamplerConfig::default();
        let emb = embedding_constant(&g, 1.0, &s).unwrap();
        let idx = simonenko_indices(&g, &s).unwrap();
        let u =
            GridFunction::from_fn_zero_boundary(0.0, 1.0, 400, 1, |t| vec![(std::f64::consts::PI * t).sin()]).unwrap();
        let r = check_inequalities(&g, &[(u.clone(), u.clone())], &emb, &idx, &InequalityOptions::default());
        let p = r.checks.iter().find(|c| c.inequality == Inequality::Poincare).unwrap();
        assert!(p.holds);
        assert!((p.lhs / p.rhs - 1.0 / std::f64::consts::PI).abs() < 1e-4);
    }

    #[test]
    fn power_bound_is_tight_for_homogeneous_g() {
        let g = GFunctionSpec::power(1, 2.0, 1.0).unwrap();
        let s = SamplerConfig::default();
        let emb = embedding_constant(&g, 1.0, &s).unwrap();
        let idx = simonenko_indices(&g, &s).unwrap();
        let u = GridFunction::from_fn(0.0, 1.0, 50, 1, |t| vec![3.0 + t]).unwrap();
        let r = check_inequalities(&g, &[(u.clone(), u)], &emb, &idx, &InequalityOptions::default());
        let c = r
            .checks
            .iter()
            .find(|c| c.inequality == Inequality::ModularPowerBound)
            .unwrap();
        assert!(c.holds);
        assert!((c.lhs - c.rhs).abs() < 1e-12 * c.rhs);
        assert!(r.skipped.iter().any(|s| s.inequality == Inequality::Poincare));
    }
}
