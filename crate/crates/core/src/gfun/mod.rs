//! Anisotropic G-functions.
//!
//! A G-function is a convex, even, superlinear function `G: R^N -> [0, inf)`
//! with `G(0) = 0`. This module evaluates built-in families and user-supplied
//! ones, and hosts the numerical machinery built on top of them: the convex
//! conjugate, Simonenko indices, doubling-condition probes and the
//! `W^1 L_G -> L^inf` embedding constant.

mod conjugate;
mod embedding;
mod indices;
mod sampling;

use std::fmt;
use std::sync::Arc;

pub use conjugate::{Conjugate, SearchConfig};
pub use embedding::{embedding_constant, EmbeddingData};
pub use indices::{delta2_nabla2_probe, simonenko_indices, DoublingProbe, SimonenkoIndices};
pub use sampling::SamplerConfig;

use crate::error::GfunError;

/// Scope of the Δ₂/∇₂ conditions a G-function is assumed to satisfy.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Regime {
    Global,
    AtInfinity,
}

impl Regime {
    pub fn as_str(self) -> &'static str {
        match self {
            Regime::Global => "global",
            Regime::AtInfinity => "at_infinity",
        }
    }
}

impl std::str::FromStr for Regime {
    type Err = GfunError;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        match s {
            "global" => Ok(Regime::Global),
            "at_infinity" => Ok(Regime::AtInfinity),
            other => Err(GfunError::InvalidParameter(format!("unknown regime `{other}`"))),
        }
    }
}

type ValueFn = dyn Fn(&[f64]) -> f64 + Send + Sync;
type GradFn = dyn Fn(&[f64], &mut [f64]) + Send + Sync;

/// User-supplied G-function. The gradient falls back to central differences
/// when not given.
#[derive(Clone)]
pub struct CustomG {
    value: Arc<ValueFn>,
    gradient: Option<Arc<GradFn>>,
}

impl fmt::Debug for CustomG {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_struct("CustomG")
            .field("analytic_gradient", &self.gradient.is_some())
            .finish()
    }
}

#[derive(Clone, Debug)]
pub enum GKind {
    /// `c |x|^p`
    Power {
        exponent: f64,
        coefficient: f64,
    },
    /// `sum_i c_i |x_i|^{p_i}`
    SumPower {
        exponents: Vec<f64>,
        coefficients: Vec<f64>,
    },
    /// `c |x|^p log(1 + |x|)`
    PowerLog {
        exponent: f64,
        coefficient: f64,
    },
    Custom(CustomG),
}

/// A concrete G-function on `R^N` together with the regime of its doubling
/// conditions.
#[derive(Clone, Debug)]
pub struct GFunctionSpec {
    kind: GKind,
    dimension: usize,
    regime: Regime,
}

fn check_exponent(p: f64) -> Result<(), GfunError> {
    if !(p.is_finite() && p > 1.0) {
        return Err(GfunError::InvalidParameter(format!(
            "exponent must be finite and > 1, got {p}"
        )));
    }
    Ok(())
}

fn check_coefficient(c: f64) -> Result<(), GfunError> {
    if !(c.is_finite() && c > 0.0) {
        return Err(GfunError::InvalidParameter(format!(
            "coefficient must be finite and > 0, got {c}"
        )));
    }
    Ok(())
}

fn check_dimension(n: usize) -> Result<(), GfunError> {
    if n == 0 {
        return Err(GfunError::InvalidParameter("dimension must be >= 1".into()));
    }
    Ok(())
}

pub(crate) fn norm(x: &[f64]) -> f64 {
    x.iter().map(|v| v * v).sum::<f64>().sqrt()
}

pub(crate) fn dot(x: &[f64], y: &[f64]) -> f64 {
    x.iter().zip(y).map(|(a, b)| a * b).sum()
}

impl GFunctionSpec {
    /// `coefficient * |x|^exponent` on `R^dimension`.
    pub fn power(dimension: usize, exponent: f64, coefficient: f64) -> Result<Self, GfunError> {
        check_dimension(dimension)?;
        check_exponent(exponent)?;
        check_coefficient(coefficient)?;
        Ok(Self {
            kind: GKind::Power { exponent, coefficient },
            dimension,
            regime: Regime::Global,
        })
    }

    /// `sum_i c_i |x_i|^{p_i}`; the dimension is the number of exponents.
    pub fn sum_power(exponents: Vec<f64>, coefficients: Vec<f64>) -> Result<Self, GfunError> {
        check_dimension(exponents.len())?;
        if exponents.len() != coefficients.len() {
            return Err(GfunError::InvalidParameter(format!(
                "{} exponents but {} coefficients",
                exponents.len(),
                coefficients.len()
            )));
        }
        for &p in &exponents {
            check_exponent(p)?;
        }
        for &c in &coefficients {
            check_coefficient(c)?;
        }
        Ok(Self {
            dimension: exponents.len(),
            kind: GKind::SumPower {
                exponents,
                coefficients,
            },
            regime: Regime::Global,
        })
    }

    /// `coefficient * |x|^exponent * log(1 + |x|)`.
    pub fn power_log(dimension: usize, exponent: f64, coefficient: f64) -> Result<Self, GfunError> {
        check_dimension(dimension)?;
        check_exponent(exponent)?;
        check_coefficient(coefficient)?;
        Ok(Self {
            kind: GKind::PowerLog { exponent, coefficient },
            dimension,
            regime: Regime::Global,
        })
    }

    /// A user-supplied G-function. Convexity, evenness and superlinearity are
    /// the caller's responsibility; see [`GFunctionSpec::structural_probe`].
    pub fn custom<F>(dimension: usize, value: F) -> Result<Self, GfunError>
    where
        F: Fn(&[f64]) -> f64 + Send + Sync + 'static,
    {
        check_dimension(dimension)?;
        Ok(Self {
            kind: GKind::Custom(CustomG {
                value: Arc::new(value),
                gradient: None,
            }),
            dimension,
            regime: Regime::AtInfinity,
        })
    }

    /// Attach an analytic gradient to a custom G-function.
    pub fn with_gradient<D>(mut self, gradient: D) -> Self
    where
        D: Fn(&[f64], &mut [f64]) + Send + Sync + 'static,
    {
        if let GKind::Custom(c) = &mut self.kind {
            c.gradient = Some(Arc::new(gradient));
        }
        self
    }

    pub fn with_regime(mut self, regime: Regime) -> Self {
        self.regime = regime;
        self
    }

    pub fn kind(&self) -> &GKind {
        &self.kind
    }

    pub fn kind_name(&self) -> &'static str {
        match self.kind {
            GKind::Power { .. } => "power",
            GKind::SumPower { .. } => "sum_power",
            GKind::PowerLog { .. } => "power_log",
            GKind::Custom(_) => "custom",
        }
    }

    pub fn dimension(&self) -> usize {
        self.dimension
    }

    pub fn regime(&self) -> Regime {
        self.regime
    }

    /// Exponent list as written in a problem file.
    pub fn exponents(&self) -> Vec<f64> {
        match &self.kind {
            GKind::Power { exponent, .. } | GKind::PowerLog { exponent, .. } => vec![*exponent],
            GKind::SumPower { exponents, .. } => exponents.clone(),
            GKind::Custom(_) => Vec::new(),
        }
    }

    pub fn coefficients(&self) -> Vec<f64> {
        match &self.kind {
            GKind::Power { coefficient, .. } | GKind::PowerLog { coefficient, .. } => {
                vec![*coefficient]
            }
            GKind::SumPower { coefficients, .. } => coefficients.clone(),
            GKind::Custom(_) => Vec::new(),
        }
    }

    /// `G(x)`.
    pub fn eval(&self, x: &[f64]) -> f64 {
        debug_assert_eq!(x.len(), self.dimension);
        match &self.kind {
            GKind::Power { exponent, coefficient } => {
                let r = norm(x);
                if r == 0.0 {
                    0.0
                } else {
                    coefficient * r.powf(*exponent)
                }
            }
            GKind::SumPower {
                exponents,
                coefficients,
            } => x
                .iter()
                .zip(exponents)
                .zip(coefficients)
                .map(|((xi, p), c)| if *xi == 0.0 { 0.0 } else { c * xi.abs().powf(*p) })
                .sum(),
            GKind::PowerLog { exponent, coefficient } => {
                let r = norm(x);
                if r == 0.0 {
                    0.0
                } else {
                    coefficient * r.powf(*exponent) * r.ln_1p()
                }
            }
            GKind::Custom(c) => (c.value)(x),
        }
    }

    /// `∇G(x)` written into `out`.
    pub fn grad_into(&self, x: &[f64], out: &mut [f64]) {
        debug_assert_eq!(x.len(), self.dimension);
        debug_assert_eq!(out.len(), self.dimension);
        match &self.kind {
            GKind::Power { exponent, coefficient } => {
                let r = norm(x);
                if r == 0.0 {
                    out.fill(0.0);
                    return;
                }
                let s = coefficient * exponent * r.powf(exponent - 2.0);
                for (o, xi) in out.iter_mut().zip(x) {
                    *o = s * xi;
                }
            }
            GKind::SumPower {
                exponents,
                coefficients,
            } => {
                for (i, o) in out.iter_mut().enumerate() {
                    let xi = x[i];
                    *o = if xi == 0.0 {
                        0.0
                    } else {
                        coefficients[i] * exponents[i] * xi.abs().powf(exponents[i] - 1.0) * xi.signum()
                    };
                }
            }
            GKind::PowerLog { exponent, coefficient } => {
                let r = norm(x);
                if r == 0.0 {
                    out.fill(0.0);
                    return;
                }
                // dG/dr divided by r
                let radial =
                    coefficient * (exponent * r.powf(exponent - 2.0) * r.ln_1p() + r.powf(exponent - 1.0) / (1.0 + r));
                for (o, xi) in out.iter_mut().zip(x) {
                    *o = radial * xi;
                }
            }
            GKind::Custom(c) => match &c.gradient {
                Some(g) => g(x, out),
                None => central_difference(&*c.value, x, out),
            },
        }
    }

    /// `∇G(x)`.
    pub fn grad(&self, x: &[f64]) -> Vec<f64> {
        let mut out = vec![0.0; self.dimension];
        self.grad_into(x, &mut out);
        out
    }

    /// Samples the structural assumptions on G (value at the origin, evenness,
    /// midpoint convexity, growth of `G(x)/|x|` along rays) and returns the
    /// first failure found.
    pub fn structural_probe(&self, sampler: &SamplerConfig) -> Result<(), GfunError> {
        let dirs = sampler.directions(self.dimension);
        if self.eval(&vec![0.0; self.dimension]) != 0.0 {
            return Err(GfunError::NotAGFunction("G(0) != 0".into()));
        }
        let radii = sampler.radii();
        let tol = 1e-12;
        for d in &dirs {
            let mut last_slope = 0.0;
            for (k, &r) in radii.iter().enumerate() {
                let x: Vec<f64> = d.iter().map(|c| c * r).collect();
                let minus: Vec<f64> = x.iter().map(|c| -c).collect();
                let gx = self.eval(&x);
                let gm = self.eval(&minus);
                if (gx - gm).abs() > tol * (1.0 + gx.abs()) {
                    return Err(GfunError::NotAGFunction(format!("G not even at {x:?}")));
                }
                if k > 0 {
                    // convexity along the ray through two radii and across the origin
                    let y: Vec<f64> = d.iter().map(|c| c * radii[k - 1]).collect();
                    let mid: Vec<f64> = x.iter().zip(&y).map(|(a, b)| 0.5 * (a + b)).collect();
                    if self.eval(&mid) > 0.5 * (gx + self.eval(&y)) + tol * (1.0 + gx.abs()) {
                        return Err(GfunError::NotAGFunction(format!(
                            "midpoint convexity fails between {y:?} and {x:?}"
                        )));
                    }
                }
                last_slope = gx / r;
            }
            let first = radii[0];
            let x0: Vec<f64> = d.iter().map(|c| c * first).collect();
            if last_slope <= self.eval(&x0) / first {
                return Err(GfunError::NotAGFunction(format!(
                    "G(x)/|x| does not grow along direction {d:?}"
                )));
            }
        }
        Ok(())
    }
}

fn central_difference(f: &(dyn Fn(&[f64]) -> f64 + '_), x: &[f64], out: &mut [f64]) {
    let step = 1e-6 * (1.0 + norm(x));
    let mut probe = x.to_vec();
    for i in 0..x.len() {
        probe[i] = x[i] + step;
        let fp = f(&probe);
        probe[i] = x[i] - step;
        let fm = f(&probe);
        probe[i] = x[i];
        out[i] = (fp - fm) / (2.0 * step);
    }
}
