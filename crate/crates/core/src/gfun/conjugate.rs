//! Numerical convex conjugate `G*(y) = sup_x { <x, y> - G(x) }`.
//!
//! The objective is concave in `x`, so a ray search along `y/|y|` followed by
//! coordinate sweeps converges to the supremum. Every reported value is
//! attained at the returned maximizer, hence a lower bound on `G*(y)`.

use super::{dot, norm, GFunctionSpec};
use crate::error::GfunError;

#[derive(Clone, Debug)]
pub struct SearchConfig {
    /// First trial step of the expanding bracket.
    pub initial_step: f64,
    /// Sweeps stop when the objective improves by less than
    /// `tolerance * (1 + |value|)`.
    pub tolerance: f64,
    pub max_expansions: usize,
    pub max_golden_iters: usize,
    pub max_sweeps: usize,
}

impl Default for SearchConfig {
    fn default() -> Self {
        Self {
            initial_step: 1.0,
            tolerance: 1e-10,
            max_expansions: 200,
            max_golden_iters: 400,
            max_sweeps: 100,
        }
    }
}

/// Value of `G*(y)` together with the maximizer that attains it.
#[derive(Clone, Debug)]
pub struct Conjugate {
    pub value: f64,
    pub argmax: Vec<f64>,
    pub sweeps: usize,
}

const INV_PHI: f64 = 0.618_033_988_749_894_9;

/// Golden-section maximization of a unimodal `f` on `[lo, hi]`.
fn golden_max<F: FnMut(f64) -> f64>(mut f: F, mut lo: f64, mut hi: f64, iters: usize) -> (f64, f64) {
    let mut x1 = hi - INV_PHI * (hi - lo);
    let mut x2 = lo + INV_PHI * (hi - lo);
    let mut f1 = f(x1);
    let mut f2 = f(x2);
    for _ in 0..iters {
        if hi - lo <= 1e-13 * x1.abs().max(x2.abs()) + 1e-300 {
            break;
        }
        if f1 < f2 {
            lo = x1;
            x1 = x2;
            f1 = f2;
            x2 = lo + INV_PHI * (hi - lo);
            f2 = f(x2);
        } else {
            hi = x2;
            x2 = x1;
            f2 = f1;
            x1 = hi - INV_PHI * (hi - lo);
            f1 = f(x1);
        }
    }
    if f1 >= f2 {
        (x1, f1)
    } else {
        (x2, f2)
    }
}

/// Maximizes a concave `f` over `[0, inf)` given `f(0)`. Returns `None` when
/// the bracket cannot be closed within the expansion budget.
fn maximize_half_line<F: FnMut(f64) -> f64>(mut f: F, f0: f64, cfg: &SearchConfig) -> Option<(f64, f64)> {
    let mut prev = (0.0, f0);
    let mut s = cfg.initial_step;
    for _ in 0..cfg.max_expansions {
        let fs = f(s);
        if !(fs >= prev.1) {
            let lo = if prev.0 == 0.0 { 0.0 } else { prev.0 * 0.5 };
            let (x, fx) = golden_max(&mut f, lo, s, cfg.max_golden_iters);
            return Some(if fx >= prev.1 { (x, fx) } else { prev });
        }
        prev = (s, fs);
        s *= 2.0;
    }
    None
}

/// Maximizes a concave `f` over the real line starting from `t0`.
fn maximize_line<F: FnMut(f64) -> f64>(mut f: F, t0: f64, cfg: &SearchConfig) -> Option<(f64, f64)> {
    let f0 = f(t0);
    let step = 1e-3 * (1.0 + t0.abs());
    let fp = f(t0 + step);
    let fm = f(t0 - step);
    if !(fp > f0) && !(fm > f0) {
        let (x, fx) = golden_max(&mut f, t0 - step, t0 + step, cfg.max_golden_iters);
        return Some(if fx >= f0 { (x, fx) } else { (t0, f0) });
    }
    let dir = if fp > fm { 1.0 } else { -1.0 };
    let local = SearchConfig {
        initial_step: step,
        ..cfg.clone()
    };
    maximize_half_line(|s| f(t0 + dir * s), f0, &local).map(|(s, v)| (t0 + dir * s, v))
}

impl GFunctionSpec {
    /// `G*(y)` by concave maximization. Fails with a diagnostic when the inner
    /// search does not close its bracket within `cfg.max_expansions`.
    pub fn conjugate(&self, y: &[f64], cfg: &SearchConfig) -> Result<Conjugate, GfunError> {
        debug_assert_eq!(y.len(), self.dimension());
        let ny = norm(y);
        let dim = self.dimension();
        if ny == 0.0 {
            return Ok(Conjugate {
                value: 0.0,
                argmax: vec![0.0; dim],
                sweeps: 0,
            });
        }
        let dir: Vec<f64> = y.iter().map(|c| c / ny).collect();
        let mut point = vec![0.0; dim];
        let objective = |x: &[f64]| dot(x, y) - self.eval(x);

        let ray = maximize_half_line(
            |s| {
                let x: Vec<f64> = dir.iter().map(|d| d * s).collect();
                objective(&x)
            },
            0.0,
            cfg,
        );
        let (s, mut best) = ray.ok_or_else(|| GfunError::ConjugateDiverged {
            y: y.to_vec(),
            best: f64::NAN,
            detail: "ray bracket never closed".into(),
        })?;
        for (p, d) in point.iter_mut().zip(&dir) {
            *p = d * s;
        }

        let mut sweeps = 0;
        if dim > 1 {
            let mut scratch = point.clone();
            loop {
                if sweeps >= cfg.max_sweeps {
                    return Err(GfunError::ConjugateDiverged {
                        y: y.to_vec(),
                        best,
                        detail: format!("no convergence after {sweeps} coordinate sweeps"),
                    });
                }
                sweeps += 1;
                let start = best;
                for i in 0..dim {
                    let t0 = point[i];
                    let line = maximize_line(
                        |t| {
                            scratch.copy_from_slice(&point);
                            scratch[i] = t;
                            objective(&scratch)
                        },
                        t0,
                        cfg,
                    );
                    let (t, v) = line.ok_or_else(|| GfunError::ConjugateDiverged {
                        y: y.to_vec(),
                        best,
                        detail: format!("coordinate {i} bracket never closed"),
                    })?;
                    if v > best {
                        point[i] = t;
                        best = v;
                    }
                }
                if best - start <= cfg.tolerance * (1.0 + best.abs()) {
                    break;
                }
            }
        }
        Ok(Conjugate {
            value: best.max(0.0),
            argmax: point,
            sweeps,
        })
    }

    /// Convenience wrapper returning only `G*(y)`.
    pub fn conjugate_value(&self, y: &[f64], cfg: &SearchConfig) -> Result<f64, GfunError> {
        self.conjugate(y, cfg).map(|c| c.value)
    }
}
