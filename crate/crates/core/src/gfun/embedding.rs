//! Embedding constant `C_{∞,G} = max{1, |I|} · A_G^{-1}(1/|I|)`.
//!
//! `A_G` is taken as the greatest convex nondecreasing minorant of the radial
//! minimum `h(r) = min_{|x| = r} G(x)`. The minorant is the lower convex hull
//! of sampled `(r, h(r))` pairs; the hull segment that brackets `1/|I|` is
//! resampled until the crossing radius stops moving.

use super::{sampling::log_space, GFunctionSpec, SamplerConfig};
use crate::error::GfunError;

#[derive(Clone, Debug)]
pub struct EmbeddingData {
    /// Vertices `(r, A_G(r))` of the piecewise-linear minorant, sorted by radius.
    pub minorant_samples: Vec<(f64, f64)>,
    pub c_inf_g: f64,
    pub interval_length: f64,
    /// `A_G^{-1}(1/|I|)`.
    pub inverse_at_target: f64,
    /// Number of times the radial range was widened to reach `1/|I|`.
    pub extensions: usize,
}

const MAX_EXTENSIONS: usize = 12;
const REFINE_ROUNDS: usize = 40;
const REFINE_POINTS: usize = 32;

impl EmbeddingData {
    /// Piecewise-linear evaluation of the minorant; constant extrapolation
    /// beyond the last vertex is never needed by the inversion.
    pub fn minorant(&self, r: f64) -> f64 {
        piecewise_linear(&self.minorant_samples, r)
    }
}

fn piecewise_linear(v: &[(f64, f64)], r: f64) -> f64 {
    if r <= v[0].0 {
        return v[0].1;
    }
    let k = v.partition_point(|p| p.0 <= r);
    if k >= v.len() {
        let (r1, a1) = v[v.len() - 1];
        let (r0, a0) = v[v.len() - 2];
        return a1 + (a1 - a0) / (r1 - r0) * (r - r1);
    }
    let (r0, a0) = v[k - 1];
    let (r1, a1) = v[k];
    a0 + (a1 - a0) * (r - r0) / (r1 - r0)
}

/// Lower convex hull (monotone chain) of points sorted by abscissa.
fn lower_hull(points: &[(f64, f64)]) -> Vec<(f64, f64)> {
    let mut hull: Vec<(f64, f64)> = Vec::with_capacity(points.len());
    for &p in points {
        while hull.len() >= 2 {
            let (o, a) = (hull[hull.len() - 2], hull[hull.len() - 1]);
            let cross = (a.0 - o.0) * (p.1 - o.1) - (a.1 - o.1) * (p.0 - o.0);
            if cross <= 0.0 {
                hull.pop();
            } else {
                break;
            }
        }
        hull.push(p);
    }
    hull
}

fn radial_minimum(spec: &GFunctionSpec, dirs: &[Vec<f64>], r: f64) -> f64 {
    let mut x = vec![0.0; spec.dimension()];
    dirs.iter()
        .map(|d| {
            for (xi, di) in x.iter_mut().zip(d) {
                *xi = di * r;
            }
            spec.eval(&x)
        })
        .fold(f64::INFINITY, f64::min)
}

fn build_minorant(samples: &mut Vec<(f64, f64)>) -> Vec<(f64, f64)> {
    samples.sort_by(|a, b| a.0.total_cmp(&b.0));
    samples.dedup_by(|a, b| a.0 == b.0);
    let mut hull = lower_hull(samples);
    for k in 1..hull.len() {
        if hull[k].1 < hull[k - 1].1 {
            hull[k].1 = hull[k - 1].1;
        }
    }
    hull
}

/// Smallest `r` with `A(r) >= target` on a nondecreasing piecewise-linear `A`.
fn invert(hull: &[(f64, f64)], target: f64) -> f64 {
    let k = hull.partition_point(|p| p.1 < target);
    let (mut lo, mut hi) = (hull[k - 1].0, hull[k].0);
    for _ in 0..200 {
        let mid = 0.5 * (lo + hi);
        if mid <= lo || mid >= hi {
            break;
        }
        if piecewise_linear(hull, mid) < target {
            lo = mid;
        } else {
            hi = mid;
        }
    }
    hi
}

pub fn embedding_constant(
    spec: &GFunctionSpec,
    interval_length: f64,
    sampler: &SamplerConfig,
) -> Result<EmbeddingData, GfunError> {
    if !(interval_length.is_finite() && interval_length > 0.0) {
        return Err(GfunError::InvalidParameter(format!(
            "interval length must be positive, got {interval_length}"
        )));
    }
    let dirs = sampler.directions(spec.dimension());
    let target = 1.0 / interval_length;
    let mut samples: Vec<(f64, f64)> = std::iter::once(0.0)
        .chain(sampler.radii())
        .map(|r| (r, radial_minimum(spec, &dirs, r)))
        .collect();
    let mut hull = build_minorant(&mut samples);

    let mut extensions = 0;
    let mut r_max = sampler.r_max;
    while hull.last().is_none_or(|p| !(p.1 >= target)) {
        if extensions == MAX_EXTENSIONS {
            return Err(GfunError::EmbeddingRange {
                target,
                reached: hull.last().map_or(0.0, |p| p.1),
                r_max,
            });
        }
        extensions += 1;
        let next = r_max * 10.0;
        samples.extend(
            log_space(r_max, next, sampler.radial_points.max(2) / 4 + 2)
                .into_iter()
                .map(|r| (r, radial_minimum(spec, &dirs, r))),
        );
        r_max = next;
        hull = build_minorant(&mut samples);
    }

    let mut inverse = invert(&hull, target);
    for _ in 0..REFINE_ROUNDS {
        let k = hull.partition_point(|p| p.1 < target).max(1);
        let (lo, hi) = (hull[k - 1].0, hull[k].0);
        samples.extend((1..REFINE_POINTS).map(|j| {
            let r = lo + (hi - lo) * j as f64 / REFINE_POINTS as f64;
            (r, radial_minimum(spec, &dirs, r))
        }));
        hull = build_minorant(&mut samples);
        let next = invert(&hull, target);
        let moved = (next - inverse).abs();
        inverse = next;
        if moved <= 1e-15 * inverse {
            break;
        }
    }

    Ok(EmbeddingData {
        c_inf_g: interval_length.max(1.0) * inverse,
        interval_length,
        inverse_at_target: inverse,
        minorant_samples: hull,
        extensions,
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn quadratic_constants() {
        let s = SamplerConfig::default();
        let half = GFunctionSpec::power(1, 2.0, 0.5).unwrap();
        let e = embedding_constant(&half, 1.0, &s).unwrap();
        assert!((e.c_inf_g - 2f64.sqrt()).abs() < 1e-12, "{}", e.c_inf_g);

        let full = GFunctionSpec::power(1, 2.0, 1.0).unwrap();
        let e = embedding_constant(&full, 1.0, &s).unwrap();
        assert!((e.c_inf_g - 1.0).abs() < 1e-12, "{}", e.c_inf_g);
        let e = embedding_constant(&full, 2.0, &s).unwrap();
        assert!((e.c_inf_g - 2f64.sqrt()).abs() < 1e-12, "{}", e.c_inf_g);
    }

    #[test]
    fn range_extension_kicks_in() {
        let g = GFunctionSpec::power(1, 2.0, 1.0).unwrap();
        let s = SamplerConfig {
            r_max: 1e-2,
            ..SamplerConfig::default()
        };
        let e = embedding_constant(&g, 1.0, &s).unwrap();
        assert!(e.extensions >= 2);
        assert!((e.c_inf_g - 1.0).abs() < 1e-12);
    }

    #[test]
    fn minorant_is_below_and_monotone() {
        let g = GFunctionSpec::sum_power(vec![2.0, 3.0], vec![1.0, 1.0]).unwrap();
        let s = SamplerConfig::default();
        let e = embedding_constant(&g, 0.5, &s).unwrap();
        for w in e.minorant_samples.windows(2) {
            assert!(w[1].1 >= w[0].1);
        }
        for d in s.directions(2) {
            for r in s.radii() {
                let x: Vec<f64> = d.iter().map(|c| c * r).collect();
                assert!(e.minorant(r) <= g.eval(&x) * (1.0 + 1e-12) + 1e-300);
            }
        }
    }

    #[test]
    fn rejects_nonpositive_length() {
        let g = GFunctionSpec::power(1, 2.0, 1.0).unwrap();
        assert!(embedding_constant(&g, 0.0, &SamplerConfig::default()).is_err());
    }
}
