use super::{dot, GFunctionSpec, Regime, SamplerConfig, SearchConfig};
use crate::error::GfunError;

/// Sampled Simonenko indices `p_G = inf <x,∇G(x)>/G(x)` and
/// `q_G = sup <x,∇G(x)>/G(x)` over `x != 0`.
///
/// The sampled values are inner approximations: `p_G` is never below the
/// true infimum and `q_G` never above the true supremum.
#[derive(Clone, Debug)]
pub struct SimonenkoIndices {
    pub p_g: f64,
    pub q_g: f64,
    pub attained_at: (Vec<f64>, Vec<f64>),
    /// Samples dropped because `G(x) = 0` at `x != 0`.
    pub skipped: usize,
}

fn scaled(d: &[f64], r: f64) -> Vec<f64> {
    d.iter().map(|c| c * r).collect()
}

/// Index ratio `<x, ∇G(x)> / G(x)`, `None` when `G(x) = 0`.
pub(crate) fn index_ratio(spec: &GFunctionSpec, x: &[f64], grad: &mut [f64]) -> Option<f64> {
    let g = spec.eval(x);
    if !(g > 0.0) {
        return None;
    }
    spec.grad_into(x, grad);
    Some(dot(x, grad) / g)
}

pub fn simonenko_indices(spec: &GFunctionSpec, sampler: &SamplerConfig) -> Result<SimonenkoIndices, GfunError> {
    let dim = spec.dimension();
    let mut grad = vec![0.0; dim];
    let mut lo: Option<(f64, Vec<f64>)> = None;
    let mut hi: Option<(f64, Vec<f64>)> = None;
    let mut skipped = 0;
    for d in sampler.directions(dim) {
        for r in sampler.radii() {
            let x = scaled(&d, r);
            let Some(ratio) = index_ratio(spec, &x, &mut grad) else {
                skipped += 1;
                continue;
            };
            if !ratio.is_finite() {
                skipped += 1;
                continue;
            }
            if lo.as_ref().is_none_or(|(v, _)| ratio < *v) {
                lo = Some((ratio, x.clone()));
            }
            if hi.as_ref().is_none_or(|(v, _)| ratio > *v) {
                hi = Some((ratio, x));
            }
        }
    }
    let (Some((p_g, at_p)), Some((q_g, at_q))) = (lo, hi) else {
        return Err(GfunError::DegenerateSamples("G vanishes at every sampled point".into()));
    };
    if !(p_g > 1.0 && q_g.is_finite()) {
        return Err(GfunError::NotAGFunction(format!(
            "sampled Simonenko indices ({p_g}, {q_g}) violate 1 < p_G <= q_G < inf"
        )));
    }
    Ok(SimonenkoIndices {
        p_g,
        q_g,
        attained_at: (at_p, at_q),
        skipped,
    })
}

/// Sampled doubling constants. These are diagnostics: a bounded sample says
/// nothing about radii outside the sampled range.
#[derive(Clone, Debug)]
pub struct DoublingProbe {
    /// `sup G(2x)/G(x)` over the sample.
    pub delta2: f64,
    pub delta2_at: Vec<f64>,
    pub delta2_bounded: bool,
    /// `sup G*(2y)/G*(y)` over `y = ∇G(x)`.
    pub nabla2: f64,
    pub nabla2_at: Vec<f64>,
    pub nabla2_bounded: bool,
    /// Radius range actually probed.
    pub radius_range: (f64, f64),
    pub samples: usize,
    pub conjugate_failures: usize,
}

/// Ratios above this are reported as unbounded growth.
const DOUBLING_CAP: f64 = 1e6;

struct RatioTrack {
    sup: f64,
    at: Vec<f64>,
    at_radius: f64,
    /// largest ratio seen strictly below the top decade of the radial range
    sup_inner: f64,
}

impl RatioTrack {
    fn new() -> Self {
        Self {
            sup: f64::NEG_INFINITY,
            at: Vec::new(),
            at_radius: 0.0,
            sup_inner: f64::NEG_INFINITY,
        }
    }

    fn push(&mut self, ratio: f64, x: &[f64], r: f64, inner: bool) {
        let ratio = if ratio.is_nan() { f64::INFINITY } else { ratio };
        if ratio > self.sup {
            self.sup = ratio;
            self.at = x.to_vec();
            self.at_radius = r;
        }
        if inner && ratio > self.sup_inner {
            self.sup_inner = ratio;
        }
    }

    /// Bounded unless the sup is huge, or it sits in the outermost decade and
    /// clearly exceeds everything seen further in.
    fn bounded(&self, r_top: f64) -> bool {
        if !(self.sup.is_finite() && self.sup <= DOUBLING_CAP) {
            return false;
        }
        !(self.at_radius >= r_top && self.sup > 1.1 * self.sup_inner)
    }
}

pub fn delta2_nabla2_probe(spec: &GFunctionSpec, sampler: &SamplerConfig, search: &SearchConfig) -> DoublingProbe {
    let dim = spec.dimension();
    let r_floor = match spec.regime() {
        Regime::Global => 0.0,
        Regime::AtInfinity => 1.0,
    };
    let radii: Vec<f64> = sampler.radii().into_iter().filter(|&r| r >= r_floor).collect();
    let r_lo = radii.first().copied().unwrap_or(f64::NAN);
    let r_hi = radii.last().copied().unwrap_or(f64::NAN);
    let r_top = r_hi / 10.0;
    let mut delta = RatioTrack::new();
    let mut nabla = RatioTrack::new();
    let mut samples = 0;
    let mut failures = 0;
    let mut grad = vec![0.0; dim];
    for d in sampler.directions(dim) {
        for &r in &radii {
            let x = scaled(&d, r);
            let gx = spec.eval(&x);
            if !(gx > 0.0) {
                continue;
            }
            samples += 1;
            let inner = r < r_top;
            let x2 = scaled(&x, 2.0);
            delta.push(spec.eval(&x2) / gx, &x, r, inner);

            spec.grad_into(&x, &mut grad);
            let y2 = scaled(&grad, 2.0);
            match (spec.conjugate_value(&grad, search), spec.conjugate_value(&y2, search)) {
                (Ok(c1), Ok(c2)) if c1 > 0.0 => nabla.push(c2 / c1, &grad, r, inner),
                (Ok(_), Ok(_)) => {}
                _ => failures += 1,
            }
        }
    }
    DoublingProbe {
        delta2_bounded: delta.bounded(r_top),
        delta2: delta.sup,
        delta2_at: delta.at,
        nabla2_bounded: nabla.bounded(r_top) && failures == 0,
        nabla2: nabla.sup,
        nabla2_at: nabla.at,
        radius_range: (r_lo, r_hi),
        samples,
        conjugate_failures: failures,
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn coarse() -> SamplerConfig {
        SamplerConfig {
            radial_points: 60,
            directions: Some(16),
            ..SamplerConfig::default()
        }
    }

    #[test]
    fn homogeneous_indices() {
        for p in [1.5, 2.0, 3.0, 4.0] {
            let g = GFunctionSpec::power(2, p, 1.0 / p).unwrap();
            let idx = simonenko_indices(&g, &SamplerConfig::default()).unwrap();
            assert!((idx.p_g - p).abs() < 1e-6 && (idx.q_g - p).abs() < 1e-6, "{idx:?}");
        }
    }

    #[test]
    fn anisotropic_indices_on_axes() {
        let g = GFunctionSpec::sum_power(vec![2.0, 3.0], vec![1.0, 1.0]).unwrap();
        let idx = simonenko_indices(&g, &SamplerConfig::default()).unwrap();
        assert!((idx.p_g - 2.0).abs() < 1e-12);
        assert!((idx.q_g - 3.0).abs() < 1e-12);
    }

    #[test]
    fn degenerate_directions_are_skipped() {
        // vanishes on the x2 and x3 axes but is not identically zero
        let g = GFunctionSpec::custom(3, |x| x[0] * x[0])
            .unwrap()
            .with_gradient(|x, out| {
                out.fill(0.0);
                out[0] = 2.0 * x[0];
            });
        let idx = simonenko_indices(&g, &coarse()).unwrap();
        assert!(idx.skipped > 0);
        assert!((idx.p_g - 2.0).abs() < 1e-6);
    }

    #[test]
    fn doubling_constants() {
        let s = coarse();
        let search = SearchConfig::default();
        let quad = GFunctionSpec::power(1, 2.0, 1.0).unwrap();
        let pr = delta2_nabla2_probe(&quad, &s, &search);
        assert!((pr.delta2 - 4.0).abs() < 1e-9 && pr.delta2_bounded);
        assert!((pr.nabla2 - 4.0).abs() < 1e-6 && pr.nabla2_bounded);

        let cubic = GFunctionSpec::power(1, 3.0, 1.0).unwrap();
        let pr = delta2_nabla2_probe(&cubic, &s, &search);
        assert!((pr.delta2 - 8.0).abs() < 1e-9);

        let pl = GFunctionSpec::power_log(1, 2.0, 1.0).unwrap();
        let pr = delta2_nabla2_probe(&pl, &s, &search);
        assert!(pr.delta2 <= 8.0 && pr.delta2 > 7.9, "{}", pr.delta2);
    }

    #[test]
    fn exponential_growth_is_flagged() {
        let g = GFunctionSpec::custom(1, |x| x[0].abs().exp_m1() - x[0].abs())
            .unwrap()
            .with_regime(Regime::AtInfinity);
        let s = SamplerConfig { r_max: 1e3, ..coarse() };
        let pr = delta2_nabla2_probe(&g, &s, &SearchConfig::default());
        assert!(!pr.delta2_bounded);
        assert!(pr.radius_range.0 >= 1.0);
    }
}
