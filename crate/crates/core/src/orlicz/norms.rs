//! Modular and Luxemburg norm of grid functions.
//!
//! `G∘u` is integrated by the composite trapezoid rule on the nodes. `G∘u'`
//! uses one point per cell; `u'` is constant there, so that integral is
//! exact for the piecewise-linear function.

use crate::error::OrliczError;
use crate::gfun::{GFunctionSpec, SearchConfig};

use super::GridFunction;

/// Points and quadrature weights that define an integral `∫ Φ(w(t)) dt`.
pub(crate) struct Quadrature {
    dim: usize,
    points: Vec<f64>,
    weights: Vec<f64>,
}

impl Quadrature {
    pub(crate) fn of(u: &GridFunction, of_derivative: bool) -> Self {
        let h = u.h();
        let n = u.n();
        if of_derivative {
            Self {
                dim: u.dim(),
                points: u.slopes(),
                weights: vec![h; n],
            }
        } else {
            let weights = (0..=n).map(|k| if k == 0 || k == n { 0.5 * h } else { h }).collect();
            Self {
                dim: u.dim(),
                points: u.values().to_vec(),
                weights,
            }
        }
    }

    fn is_zero(&self) -> bool {
        self.points.iter().all(|&v| v == 0.0)
    }

    /// `Σ w_k Φ(p_k / λ)`; identical consecutive points share one evaluation.
    fn modular_at<E, F>(&self, lambda: f64, phi: &mut F) -> Result<f64, E>
    where
        F: FnMut(&[f64]) -> Result<f64, E>,
    {
        let mut scratch = vec![0.0; self.dim];
        let mut prev: Option<(&[f64], f64)> = None;
        let mut sum = 0.0;
        for (p, w) in self.points.chunks_exact(self.dim).zip(&self.weights) {
            let val = match prev {
                Some((q, v)) if q == p => v,
                _ => {
                    for (s, x) in scratch.iter_mut().zip(p) {
                        *s = x / lambda;
                    }
                    phi(&scratch)?
                }
            };
            prev = Some((p, val));
            sum += w * val;
        }
        Ok(sum)
    }

    /// Smallest `λ` with `Σ w_k Φ(p_k/λ) <= 1`, by bisection on `log λ`
    /// down to adjacent floating-point brackets.
    fn luxemburg<F>(&self, mut phi: F) -> Result<f64, OrliczError>
    where
        F: FnMut(&[f64]) -> Result<f64, OrliczError>,
    {
        if self.is_zero() {
            return Ok(0.0);
        }
        let mut m = |l: f64| self.modular_at(l, &mut phi);
        let r1 = m(1.0)?;
        let mut hi = if r1.is_finite() { 1.0 + r1 } else { 2.0 };
        let mut budget = 0;
        while !(m(hi)? <= 1.0) {
            hi *= 2.0;
            budget += 1;
            if budget > 2000 {
                return Err(OrliczError::Bracket(format!("upper bracket failed at λ = {hi}")));
            }
        }
        let mut lo = 1e-12_f64.min(hi * 0.5);
        budget = 0;
        while m(lo)? <= 1.0 {
            lo *= 1e-6;
            budget += 1;
            if budget > 50 || lo == 0.0 {
                return Err(OrliczError::Bracket(format!("lower bracket failed at λ = {lo}")));
            }
        }
        for _ in 0..BISECTION_BUDGET {
            let mid = (lo * hi).sqrt();
            if !(mid > lo && mid < hi) {
                break;
            }
            if m(mid)? <= 1.0 {
                hi = mid;
            } else {
                lo = mid;
            }
        }
        Ok(hi)
    }
}

const BISECTION_BUDGET: usize = 200;

/// `R_G(u) = ∫ G(u) dt` or, with `of_derivative`, `∫ G(u') dt`.
pub fn modular(spec: &GFunctionSpec, u: &GridFunction, of_derivative: bool) -> f64 {
    Quadrature::of(u, of_derivative)
        .modular_at::<std::convert::Infallible, _>(1.0, &mut |x| Ok(spec.eval(x)))
        .unwrap_or_else(|e| match e {})
}

/// Luxemburg norm `inf { λ > 0 : R_G(u/λ) <= 1 }` of `u` (or of `u'`).
pub fn luxemburg_norm(spec: &GFunctionSpec, u: &GridFunction, of_derivative: bool) -> f64 {
    Quadrature::of(u, of_derivative)
        .luxemburg(|x| Ok(spec.eval(x)))
        .expect("Luxemburg bracket for a finite G-function")
}

/// Luxemburg norm of `u` in the conjugate space `L_{G*}`, with `G*`
/// evaluated numerically at every node.
pub fn dual_norm(spec: &GFunctionSpec, u: &GridFunction, search: &SearchConfig) -> Result<f64, OrliczError> {
    Quadrature::of(u, false).luxemburg(|y| Ok(spec.conjugate_value(y, search)?))
}

/// Conjugate modular `∫ G*(u) dt`.
pub fn dual_modular(spec: &GFunctionSpec, u: &GridFunction, search: &SearchConfig) -> Result<f64, OrliczError> {
    Quadrature::of(u, false).modular_at(1.0, &mut |y| Ok(spec.conjugate_value(y, search)?))
}

/// The norms of `W^1 L_G` and `W^1_0 L_G` computed on one grid.
#[derive(Clone, Debug, PartialEq)]
pub struct NormBundle {
    pub lux_u: f64,
    pub lux_du: f64,
    /// `‖u‖_G + ‖u'‖_G`
    pub w_norm: f64,
    /// `‖u'‖_G`, equivalent on the zero-boundary subspace
    pub w0_norm: f64,
    pub sup_norm: f64,
}

pub fn norm_bundle(spec: &GFunctionSpec, u: &GridFunction) -> NormBundle {
    let lux_u = luxemburg_norm(spec, u, false);
    let lux_du = luxemburg_norm(spec, u, true);
    NormBundle {
        lux_u,
        lux_du,
        w_norm: lux_u + lux_du,
        w0_norm: lux_du,
        sup_norm: u.sup_norm(),
    }
}

/// `R_G(u') / ‖u'‖_G`, the quantity that blows up along any sequence with
/// unbounded norm. `None` for `u' ≡ 0`.
pub fn coercivity_ratio(spec: &GFunctionSpec, u: &GridFunction) -> Option<f64> {
    let norm = luxemburg_norm(spec, u, true);
    (norm > 0.0).then(|| modular(spec, u, true) / norm)
}
