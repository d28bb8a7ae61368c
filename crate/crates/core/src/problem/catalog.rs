//! Built-in kinetic terms and potentials.

use crate::error::ProblemError;
use crate::gfun::{norm, GFunctionSpec};

use super::{Kinetic, Potential};

#[derive(Clone, Copy, Debug, PartialEq)]
pub enum KineticKind {
    /// `F = G(v)`
    GOfV,
    /// `F = c G(v)`
    ScaledG { c: f64 },
    /// `F = (1 + ε s(x)) G(v)` with `s(x) = |x|² / (1 + |x|²)`
    XModulated { epsilon: f64 },
}

#[derive(Clone, Debug)]
pub struct CatalogKinetic {
    kind: KineticKind,
    g: GFunctionSpec,
}

impl CatalogKinetic {
    pub fn new(kind: KineticKind, g: GFunctionSpec) -> Result<Self, ProblemError> {
        match kind {
            KineticKind::ScaledG { c } if !(c.is_finite() && c > 0.0) => {
                return Err(ProblemError::invariant("F.c", format!("c > 0 required, got {c}")))
            }
            KineticKind::XModulated { epsilon } if !(epsilon.is_finite() && epsilon > -1.0) => {
                return Err(ProblemError::invariant(
                    "F.epsilon",
                    format!("ε > -1 required, got {epsilon}"),
                ))
            }
            _ => {}
        }
        Ok(Self { kind, g })
    }

    pub fn kind(&self) -> KineticKind {
        self.kind
    }

    fn factor(&self, x: &[f64]) -> f64 {
        match self.kind {
            KineticKind::GOfV => 1.0,
            KineticKind::ScaledG { c } => c,
            KineticKind::XModulated { epsilon } => {
                let r2 = x.iter().map(|c| c * c).sum::<f64>();
                1.0 + epsilon * r2 / (1.0 + r2)
            }
        }
    }
}

impl Kinetic for CatalogKinetic {
    fn value(&self, _t: f64, x: &[f64], v: &[f64]) -> f64 {
        self.factor(x) * self.g.eval(v)
    }

    fn grad_x(&self, _t: f64, x: &[f64], v: &[f64], out: &mut [f64]) {
        match self.kind {
            KineticKind::XModulated { epsilon } => {
                let r2 = x.iter().map(|c| c * c).sum::<f64>();
                let s = epsilon * self.g.eval(v) * 2.0 / ((1.0 + r2) * (1.0 + r2));
                for (o, xi) in out.iter_mut().zip(x) {
                    *o = s * xi;
                }
            }
            _ => out.fill(0.0),
        }
    }

    fn grad_v(&self, _t: f64, x: &[f64], v: &[f64], out: &mut [f64]) {
        self.g.grad_into(v, out);
        let c = self.factor(x);
        if c != 1.0 {
            out.iter_mut().for_each(|o| *o *= c);
        }
    }

    fn label(&self) -> String {
        match self.kind {
            KineticKind::GOfV => "g_of_v".into(),
            KineticKind::ScaledG { .. } => "scaled_g".into(),
            KineticKind::XModulated { .. } => "x_modulated".into(),
        }
    }
}

#[derive(Clone, Copy, Debug, PartialEq)]
pub enum PotentialKind {
    /// `V = 0`
    Zero,
    /// `V = -κ |x|^θ`
    NegPower { kappa: f64, theta: f64 },
    /// `V = κ₁ |x|² - κ₂ |x|^θ`
    Well { kappa1: f64, kappa2: f64, theta: f64 },
}

#[derive(Clone, Debug)]
pub struct CatalogPotential {
    kind: PotentialKind,
    dim: usize,
}

impl CatalogPotential {
    pub fn new(kind: PotentialKind, dim: usize) -> Result<Self, ProblemError> {
        let positive = |name: &str, v: f64| {
            if v.is_finite() && v > 0.0 {
                Ok(())
            } else {
                Err(ProblemError::invariant(name, format!("{name} > 0 required, got {v}")))
            }
        };
        match kind {
            PotentialKind::Zero => {}
            PotentialKind::NegPower { kappa, theta } => {
                positive("V.kappa", kappa)?;
                if !(theta.is_finite() && theta > 1.0) {
                    return Err(ProblemError::invariant(
                        "V.theta",
                        format!("θ > 1 required, got {theta}"),
                    ));
                }
            }
            PotentialKind::Well { kappa1, kappa2, theta } => {
                if !(kappa1.is_finite() && kappa1 >= 0.0) {
                    return Err(ProblemError::invariant(
                        "V.kappa1",
                        format!("κ₁ >= 0 required, got {kappa1}"),
                    ));
                }
                positive("V.kappa2", kappa2)?;
                if !(theta.is_finite() && theta > 2.0) {
                    return Err(ProblemError::invariant(
                        "V.theta",
                        format!("θ > 2 required, got {theta}"),
                    ));
                }
            }
        }
        if dim == 0 {
            return Err(ProblemError::invariant("dimension", "N >= 1 required"));
        }
        Ok(Self { kind, dim })
    }

    pub fn kind(&self) -> PotentialKind {
        self.kind
    }

    pub fn dimension(&self) -> usize {
        self.dim
    }
}

/// `|x|^{θ-2}`, taken as 0 at the origin (all uses multiply by `x`).
fn radial_factor(r: f64, theta: f64) -> f64 {
    if r == 0.0 {
        0.0
    } else {
        r.powf(theta - 2.0)
    }
}

impl Potential for CatalogPotential {
    fn value(&self, _t: f64, x: &[f64]) -> f64 {
        match self.kind {
            PotentialKind::Zero => 0.0,
            PotentialKind::NegPower { kappa, theta } => -kappa * norm(x).powf(theta),
            PotentialKind::Well { kappa1, kappa2, theta } => {
                let r = norm(x);
                kappa1 * r * r - kappa2 * r.powf(theta)
            }
        }
    }

    fn grad(&self, _t: f64, x: &[f64], out: &mut [f64]) {
        let s = match self.kind {
            PotentialKind::Zero => 0.0,
            PotentialKind::NegPower { kappa, theta } => -kappa * theta * radial_factor(norm(x), theta),
            PotentialKind::Well { kappa1, kappa2, theta } => {
                2.0 * kappa1 - kappa2 * theta * radial_factor(norm(x), theta)
            }
        };
        for (o, xi) in out.iter_mut().zip(x) {
            *o = s * xi;
        }
    }

    fn label(&self) -> String {
        match self.kind {
            PotentialKind::Zero => "zero".into(),
            PotentialKind::NegPower { .. } => "neg_power".into(),
            PotentialKind::Well { .. } => "well".into(),
        }
    }
}
