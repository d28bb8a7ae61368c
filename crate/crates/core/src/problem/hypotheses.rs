//! Randomized falsification of the structural hypotheses on `(F, V, f)`.
//!
//! Every pointwise hypothesis is a pure function of `(spec, sample)` returning
//! `lhs` and `rhs` of a comparison `lhs <= rhs` (or `lhs < rhs`), so a stored
//! counterexample replays with a bit-identical margin.

use rand::{Rng, RngExt};

use crate::gfun::{dot, norm, SearchConfig};
use crate::parallel::{block_rng, map_blocks};
use crate::DEFAULT_SEED;

use super::ProblemSpec;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum Hypothesis {
    /// midpoint convexity of `v -> F(t, x, v)`
    F1,
    /// `|F| <= a(|x|)(b(t) + G(v))`
    F2F,
    /// `|F_x| <= a(|x|)(b(t) + G(v))`
    F2Fx,
    /// `G*(F_v) <= a(|x|)(b(t) + G*(∇G(v)))`
    F2Fv,
    /// `<F_x, x> + <F_v, v> <= θ_F F`
    F3,
    /// `F >= Λ G(v)`
    F4,
    /// `F(t, x, 0) = 0`
    F5,
    /// `<∇V, x> <= θ_V V` for `|x| >= r₀`
    V1,
    /// `∫ V(t, 0) dt = 0`
    V2,
    /// `V >= -g(t)` for `|x| <= ρ₀`
    V3,
    /// `V < 0` for `|x| >= r₀`
    V4,
    /// `‖f‖_{G*} < ∞`
    Forcing,
    /// `F(t, λx, λv) <= λ^{θ_F} F(t, x, v)` for `λ > 1`
    SubhomF,
    /// `V(t, λx) <= λ^{θ_V} V(t, x)` for `λ > 1`, `|x| >= r₀`
    SubhomV,
}

impl Hypothesis {
    pub const ALL: [Hypothesis; 14] = [
        Hypothesis::F1,
        Hypothesis::F2F,
        Hypothesis::F2Fx,
        Hypothesis::F2Fv,
        Hypothesis::F3,
        Hypothesis::F4,
        Hypothesis::F5,
        Hypothesis::V1,
        Hypothesis::V2,
        Hypothesis::V3,
        Hypothesis::V4,
        Hypothesis::Forcing,
        Hypothesis::SubhomF,
        Hypothesis::SubhomV,
    ];

    pub fn name(self) -> &'static str {
        match self {
            Hypothesis::F1 => "F1",
            Hypothesis::F2F => "F2_F",
            Hypothesis::F2Fx => "F2_Fx",
            Hypothesis::F2Fv => "F2_Fv",
            Hypothesis::F3 => "F3",
            Hypothesis::F4 => "F4",
            Hypothesis::F5 => "F5",
            Hypothesis::V1 => "V1",
            Hypothesis::V2 => "V2",
            Hypothesis::V3 => "V3",
            Hypothesis::V4 => "V4",
            Hypothesis::Forcing => "f",
            Hypothesis::SubhomF => "subhom_F",
            Hypothesis::SubhomV => "subhom_V",
        }
    }

    fn stream(self) -> u64 {
        Self::ALL.iter().position(|&h| h == self).unwrap() as u64 + 1
    }

    fn strict(self) -> bool {
        self == Hypothesis::V4
    }

    fn pointwise(self) -> bool {
        !matches!(self, Hypothesis::V2 | Hypothesis::Forcing)
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Verdict {
    Passed,
    Violated,
    Skipped,
}

impl Verdict {
    pub fn as_str(self) -> &'static str {
        match self {
            Verdict::Passed => "passed",
            Verdict::Violated => "violated",
            Verdict::Skipped => "skipped",
        }
    }
}

/// One sample point. `w` is the second velocity used by the convexity check
/// and `lambda` the scaling used by the subhomogeneity checks.
#[derive(Clone, Debug, PartialEq)]
pub struct Sample {
    pub t: f64,
    pub x: Vec<f64>,
    pub v: Vec<f64>,
    pub w: Vec<f64>,
    pub lambda: f64,
}

#[derive(Clone, Debug, PartialEq)]
pub struct Counterexample {
    pub sample: Sample,
    pub lhs: f64,
    pub rhs: f64,
    /// `rhs - lhs`
    pub margin: f64,
}

#[derive(Clone, Debug)]
pub struct HypothesisResult {
    pub hypothesis: Hypothesis,
    pub verdict: Verdict,
    pub checked: usize,
    /// Samples that could not be evaluated (conjugate search failures).
    pub skipped: usize,
    pub violations: usize,
    /// First violating sample in sampling order.
    pub counterexample: Option<Counterexample>,
    /// Smallest `rhs - lhs` seen.
    pub worst_margin: f64,
    pub note: Option<String>,
}

#[derive(Clone, Debug)]
pub struct HypothesisReport {
    pub results: Vec<HypothesisResult>,
    pub samples_per_hypothesis: usize,
    pub seed: u64,
}

impl HypothesisReport {
    pub fn get(&self, h: Hypothesis) -> Option<&HypothesisResult> {
        self.results.iter().find(|r| r.hypothesis == h)
    }

    pub fn verdict(&self, h: Hypothesis) -> Option<Verdict> {
        self.get(h).map(|r| r.verdict)
    }

    pub fn violated(&self) -> impl Iterator<Item = &HypothesisResult> {
        self.results.iter().filter(|r| r.verdict == Verdict::Violated)
    }

    pub fn all_passed(&self) -> bool {
        self.violated().next().is_none()
    }
}

#[derive(Clone, Debug)]
pub struct HypothesisSampler {
    /// Samples per pointwise hypothesis.
    pub samples: usize,
    /// Defaults to `max(10 r₀, 10 ρ₀)`.
    pub x_max: Option<f64>,
    pub v_max: f64,
    /// Scalings are drawn from `(1, lambda_max]`.
    pub lambda_max: f64,
    pub seed: u64,
    /// Relative slack on non-strict comparisons.
    pub tolerance: f64,
    /// Subintervals for the integral checks.
    pub quadrature_n: usize,
    pub search: SearchConfig,
}

impl Default for HypothesisSampler {
    fn default() -> Self {
        Self {
            samples: 10_000,
            x_max: None,
            v_max: 100.0,
            lambda_max: 10.0,
            seed: DEFAULT_SEED,
            tolerance: 1e-9,
            quadrature_n: 512,
            search: SearchConfig::default(),
        }
    }
}

impl HypothesisSampler {
    pub fn x_max_for(&self, spec: &ProblemSpec) -> f64 {
        let w = spec.witnesses();
        self.x_max.unwrap_or(10.0 * w.r0.max(w.rho0))
    }
}

const BLOCK: usize = 256;

#[derive(Clone, Copy, Debug)]
struct Comparison {
    lhs: f64,
    rhs: f64,
}

impl Comparison {
    fn margin(self) -> f64 {
        self.rhs - self.lhs
    }

    fn violated(self, strict: bool, tol: f64) -> bool {
        if strict {
            !(self.lhs < self.rhs)
        } else {
            !(self.lhs <= self.rhs + tol * (1.0 + self.lhs.abs() + self.rhs.abs()))
        }
    }
}

fn random_unit<R: Rng>(rng: &mut R, dim: usize) -> Vec<f64> {
    loop {
        let d: Vec<f64> = (0..dim).map(|_| rng.random_range(-1.0..1.0)).collect();
        let r = norm(&d);
        if r > 1e-3 && r <= 1.0 {
            return d.into_iter().map(|c| c / r).collect();
        }
    }
}

/// Radius in `[lo, hi]`, half the time uniform and half the time
/// log-uniform so small scales are represented.
fn random_radius<R: Rng>(rng: &mut R, lo: f64, hi: f64) -> f64 {
    if hi <= lo {
        return lo;
    }
    if rng.random::<bool>() {
        lo + (hi - lo) * rng.random::<f64>()
    } else {
        let l = lo.max(1e-3 * hi);
        (l.ln() + (hi.ln() - l.ln()) * rng.random::<f64>()).exp().clamp(lo, hi)
    }
}

fn random_vector<R: Rng>(rng: &mut R, dim: usize, lo: f64, hi: f64) -> Vec<f64> {
    let r = random_radius(rng, lo, hi);
    random_unit(rng, dim).into_iter().map(|c| c * r).collect()
}

/// `|x|` range for each hypothesis.
fn x_range(h: Hypothesis, spec: &ProblemSpec, x_max: f64) -> (f64, f64) {
    let w = spec.witnesses();
    match h {
        Hypothesis::V1 | Hypothesis::V4 | Hypothesis::SubhomV => (w.r0, x_max.max(w.r0)),
        Hypothesis::V3 => (0.0, w.rho0),
        _ => (0.0, x_max),
    }
}

fn draw(h: Hypothesis, spec: &ProblemSpec, cfg: &HypothesisSampler, block: usize, count: usize) -> Vec<Sample> {
    let dim = spec.dimension();
    let (a, b) = spec.interval();
    let (lo, hi) = x_range(h, spec, cfg.x_max_for(spec));
    let mut rng = block_rng(cfg.seed, h.stream(), block as u64);
    (0..count)
        .map(|i| {
            let t = a + (b - a) * rng.random::<f64>();
            let mut x = random_vector(&mut rng, dim, lo, hi);
            if block == 0 && i == 0 {
                // the edge of the sampled shell is always probed
                x = vec![0.0; dim];
                x[0] = if lo > 0.0 { lo } else { hi };
            }
            let v = if h == Hypothesis::F5 {
                vec![0.0; dim]
            } else {
                random_vector(&mut rng, dim, 0.0, cfg.v_max)
            };
            let w = random_vector(&mut rng, dim, 0.0, cfg.v_max);
            let u: f64 = rng.random();
            let lambda = 1.0 + (cfg.lambda_max - 1.0) * (1.0 - u);
            Sample { t, x, v, w, lambda }
        })
        .collect()
}

/// `lhs`/`rhs` of a pointwise hypothesis at one sample; `None` when the
/// sample cannot be evaluated.
fn compare(h: Hypothesis, spec: &ProblemSpec, s: &Sample, search: &SearchConfig) -> Option<Comparison> {
    let wit = spec.witnesses();
    let kin = spec.kinetic();
    let pot = spec.potential();
    let g = spec.gfun();
    let dim = spec.dimension();
    let (t, x, v) = (s.t, s.x.as_slice(), s.v.as_slice());
    let growth = |gv: f64| wit.a.eval(norm(x)) * (wit.b.eval(t) + gv);
    let c = match h {
        Hypothesis::F1 => {
            let mid: Vec<f64> = v.iter().zip(&s.w).map(|(p, q)| 0.5 * (p + q)).collect();
            Comparison {
                lhs: kin.value(t, x, &mid),
                rhs: 0.5 * (kin.value(t, x, v) + kin.value(t, x, &s.w)),
            }
        }
        Hypothesis::F2F => Comparison {
            lhs: kin.value(t, x, v).abs(),
            rhs: growth(g.eval(v)),
        },
        Hypothesis::F2Fx => {
            let mut fx = vec![0.0; dim];
            kin.grad_x(t, x, v, &mut fx);
            Comparison {
                lhs: norm(&fx),
                rhs: growth(g.eval(v)),
            }
        }
        Hypothesis::F2Fv => {
            let mut fv = vec![0.0; dim];
            kin.grad_v(t, x, v, &mut fv);
            let gradg = g.grad(v);
            let rhs_conj = g.conjugate_value(&gradg, search).ok()?;
            let lhs = if fv == gradg {
                rhs_conj
            } else {
                g.conjugate_value(&fv, search).ok()?
            };
            Comparison {
                lhs,
                rhs: growth(rhs_conj),
            }
        }
        Hypothesis::F3 => {
            let mut fx = vec![0.0; dim];
            let mut fv = vec![0.0; dim];
            kin.grad_x(t, x, v, &mut fx);
            kin.grad_v(t, x, v, &mut fv);
            Comparison {
                lhs: dot(&fx, x) + dot(&fv, v),
                rhs: wit.theta_f * kin.value(t, x, v),
            }
        }
        Hypothesis::F4 => Comparison {
            lhs: wit.lambda * g.eval(v),
            rhs: kin.value(t, x, v),
        },
        Hypothesis::F5 => Comparison {
            lhs: kin.value(t, x, v).abs(),
            rhs: 0.0,
        },
        Hypothesis::V1 => {
            let mut gv = vec![0.0; dim];
            pot.grad(t, x, &mut gv);
            Comparison {
                lhs: dot(&gv, x),
                rhs: wit.theta_v * pot.value(t, x),
            }
        }
        Hypothesis::V3 => Comparison {
            lhs: -wit.g.eval(t),
            rhs: pot.value(t, x),
        },
        Hypothesis::V4 => Comparison {
            lhs: pot.value(t, x),
            rhs: 0.0,
        },
        Hypothesis::SubhomF => {
            let lx: Vec<f64> = x.iter().map(|c| c * s.lambda).collect();
            let lv: Vec<f64> = v.iter().map(|c| c * s.lambda).collect();
            Comparison {
                lhs: kin.value(t, &lx, &lv),
                rhs: s.lambda.powf(wit.theta_f) * kin.value(t, x, v),
            }
        }
        Hypothesis::SubhomV => {
            let lx: Vec<f64> = x.iter().map(|c| c * s.lambda).collect();
            Comparison {
                lhs: pot.value(t, &lx),
                rhs: s.lambda.powf(wit.theta_v) * pot.value(t, x),
            }
        }
        Hypothesis::V2 | Hypothesis::Forcing => return None,
    };
    Some(c)
}

/// `∫ V(t, 0) dt` by the trapezoid rule, with the integral of `|V(t, 0)|` as
/// the comparison scale.
fn v2_comparison(spec: &ProblemSpec, n: usize) -> (Comparison, f64) {
    let (a, b) = spec.interval();
    let n = n.max(2);
    let h = (b - a) / n as f64;
    let zero = vec![0.0; spec.dimension()];
    let (mut sum, mut scale) = (0.0, 0.0);
    for k in 0..=n {
        let t = if k == n { b } else { a + h * k as f64 };
        let w = if k == 0 || k == n { 0.5 * h } else { h };
        let v = spec.potential().value(t, &zero);
        sum += w * v;
        scale += w * v.abs();
    }
    (
        Comparison {
            lhs: sum.abs(),
            rhs: 0.0,
        },
        scale,
    )
}

struct Tally {
    checked: usize,
    skipped: usize,
    violations: usize,
    first: Option<Counterexample>,
    worst: f64,
}

fn check_pointwise(h: Hypothesis, spec: &ProblemSpec, cfg: &HypothesisSampler) -> Tally {
    let blocks = cfg.samples.div_ceil(BLOCK);
    let tallies = map_blocks(blocks, |blk| {
        let count = BLOCK.min(cfg.samples - blk * BLOCK);
        let mut tally = Tally {
            checked: 0,
            skipped: 0,
            violations: 0,
            first: None,
            worst: f64::INFINITY,
        };
        for s in draw(h, spec, cfg, blk, count) {
            let Some(c) = compare(h, spec, &s, &cfg.search) else {
                tally.skipped += 1;
                continue;
            };
            tally.checked += 1;
            let m = c.margin();
            if m < tally.worst || m.is_nan() {
                tally.worst = m;
            }
            if c.violated(h.strict(), cfg.tolerance) {
                tally.violations += 1;
                if tally.first.is_none() {
                    tally.first = Some(Counterexample {
                        sample: s,
                        lhs: c.lhs,
                        rhs: c.rhs,
                        margin: m,
                    });
                }
            }
        }
        tally
    });
    let mut total = Tally {
        checked: 0,
        skipped: 0,
        violations: 0,
        first: None,
        worst: f64::INFINITY,
    };
    for t in tallies {
        total.checked += t.checked;
        total.skipped += t.skipped;
        total.violations += t.violations;
        if total.first.is_none() {
            total.first = t.first;
        }
        if t.worst < total.worst || t.worst.is_nan() {
            total.worst = t.worst;
        }
    }
    total
}

fn check_one(h: Hypothesis, spec: &ProblemSpec, cfg: &HypothesisSampler) -> HypothesisResult {
    let mut result = HypothesisResult {
        hypothesis: h,
        verdict: Verdict::Passed,
        checked: 0,
        skipped: 0,
        violations: 0,
        counterexample: None,
        worst_margin: f64::INFINITY,
        note: None,
    };
    let dim = spec.dimension();
    let origin = Sample {
        t: spec.interval().0,
        x: vec![0.0; dim],
        v: vec![0.0; dim],
        w: vec![0.0; dim],
        lambda: 1.0,
    };
    match h {
        Hypothesis::V2 => {
            let (c, scale) = v2_comparison(spec, cfg.quadrature_n);
            result.checked = 1;
            result.worst_margin = c.margin();
            if c.lhs > cfg.tolerance * scale {
                result.violations = 1;
                result.counterexample = Some(Counterexample {
                    sample: origin,
                    lhs: c.lhs,
                    rhs: c.rhs,
                    margin: c.margin(),
                });
            }
        }
        Hypothesis::Forcing => match spec.forcing_dual_norm(cfg.quadrature_n, &cfg.search) {
            Ok(n) if n.is_finite() => {
                result.checked = 1;
                result.worst_margin = f64::INFINITY;
                result.note = Some(format!("‖f‖_G* = {n:.16e}"));
            }
            Ok(n) => {
                result.checked = 1;
                result.violations = 1;
                result.worst_margin = f64::NEG_INFINITY;
                result.counterexample = Some(Counterexample {
                    sample: origin,
                    lhs: n,
                    rhs: f64::INFINITY,
                    margin: f64::NEG_INFINITY,
                });
            }
            Err(e) => {
                result.skipped = 1;
                result.note = Some(e.to_string());
            }
        },
        _ => {
            let t = check_pointwise(h, spec, cfg);
            result.checked = t.checked;
            result.skipped = t.skipped;
            result.violations = t.violations;
            result.counterexample = t.first;
            result.worst_margin = t.worst;
        }
    }
    result.verdict = if result.violations > 0 {
        Verdict::Violated
    } else if result.checked == 0 {
        Verdict::Skipped
    } else {
        Verdict::Passed
    };
    result
}

pub fn check_hypotheses(spec: &ProblemSpec, cfg: &HypothesisSampler) -> HypothesisReport {
    HypothesisReport {
        results: Hypothesis::ALL.iter().map(|&h| check_one(h, spec, cfg)).collect(),
        samples_per_hypothesis: cfg.samples,
        seed: cfg.seed,
    }
}

/// Re-evaluates a hypothesis at a stored sample and returns `rhs - lhs`.
/// The integral hypotheses ignore the sample.
pub fn replay(spec: &ProblemSpec, cfg: &HypothesisSampler, h: Hypothesis, sample: &Sample) -> Option<f64> {
    if h.pointwise() {
        compare(h, spec, sample, &cfg.search).map(Comparison::margin)
    } else if h == Hypothesis::V2 {
        Some(v2_comparison(spec, cfg.quadrature_n).0.margin())
    } else {
        spec.forcing_dual_norm(cfg.quadrature_n, &cfg.search).ok().map(|n| {
            if n.is_finite() {
                f64::INFINITY
            } else {
                f64::NEG_INFINITY
            }
        })
    }
}

/// Empirical values of the structural constants over the sample cloud.
/// These are suggestions for the witnesses, never used by the gates.
#[derive(Clone, Debug, PartialEq)]
pub struct ConstantEstimates {
    /// `sup (<F_x,x> + <F_v,v>) / F` over `F > 0`
    pub theta_f: Option<f64>,
    /// `inf <∇V,x> / V` over `|x| >= r₀`, `V < 0`
    pub theta_v: Option<f64>,
    /// `inf F / G(v)` over `G(v) > 0`
    pub lambda: Option<f64>,
    /// `sup |θ_V V - <∇V,x>|` over `|x| <= r₀`
    pub m_ps: f64,
    /// `sup |V|` over `|x| <= r₀`
    pub m_valley: f64,
    pub samples: usize,
}

const ESTIMATOR_STREAM: u64 = 0xE5;

pub fn estimate_constants(spec: &ProblemSpec, cfg: &HypothesisSampler) -> ConstantEstimates {
    let dim = spec.dimension();
    let (a, b) = spec.interval();
    let wit = spec.witnesses();
    let x_max = cfg.x_max_for(spec);
    let blocks = cfg.samples.div_ceil(BLOCK);
    let parts = map_blocks(blocks, |blk| {
        let count = BLOCK.min(cfg.samples - blk * BLOCK);
        let mut rng = block_rng(cfg.seed, ESTIMATOR_STREAM, blk as u64);
        let (mut tf, mut tv, mut lam) = (f64::NEG_INFINITY, f64::INFINITY, f64::INFINITY);
        let (mut m_ps, mut m_valley) = (0.0f64, 0.0f64);
        let (mut fx, mut fv, mut gv) = (vec![0.0; dim], vec![0.0; dim], vec![0.0; dim]);
        for i in 0..count {
            let t = a + (b - a) * rng.random::<f64>();
            let x = random_vector(&mut rng, dim, 0.0, x_max);
            let v = random_vector(&mut rng, dim, 0.0, cfg.v_max);
            let kin = spec.kinetic();
            let f = kin.value(t, &x, &v);
            if f > 0.0 {
                kin.grad_x(t, &x, &v, &mut fx);
                kin.grad_v(t, &x, &v, &mut fv);
                tf = tf.max((dot(&fx, &x) + dot(&fv, &v)) / f);
            }
            let gval = spec.gfun().eval(&v);
            if gval > 0.0 {
                lam = lam.min(f / gval);
            }
            let xo = random_vector(&mut rng, dim, wit.r0, x_max.max(wit.r0));
            let vo = spec.potential().value(t, &xo);
            if vo < 0.0 {
                spec.potential().grad(t, &xo, &mut gv);
                tv = tv.min(dot(&gv, &xo) / vo);
            }
            let mut xi = random_vector(&mut rng, dim, 0.0, wit.r0);
            if blk == 0 && i == 0 {
                xi.fill(0.0);
                xi[0] = wit.r0;
            }
            let vi = spec.potential().value(t, &xi);
            spec.potential().grad(t, &xi, &mut gv);
            m_ps = m_ps.max((wit.theta_v * vi - dot(&gv, &xi)).abs());
            m_valley = m_valley.max(vi.abs());
        }
        (tf, tv, lam, m_ps, m_valley)
    });
    let (mut tf, mut tv, mut lam, mut m_ps, mut m_valley) =
        (f64::NEG_INFINITY, f64::INFINITY, f64::INFINITY, 0.0f64, 0.0f64);
    for p in parts {
        tf = tf.max(p.0);
        tv = tv.min(p.1);
        lam = lam.min(p.2);
        m_ps = m_ps.max(p.3);
        m_valley = m_valley.max(p.4);
    }
    ConstantEstimates {
        theta_f: tf.is_finite().then_some(tf),
        theta_v: tv.is_finite().then_some(tv),
        lambda: lam.is_finite().then_some(lam),
        m_ps,
        m_valley,
        samples: cfg.samples,
    }
}

#[cfg(test)]
mod tests {
    use std::sync::Arc;

    use super::*;
    use crate::gfun::GFunctionSpec;
    use crate::problem::{CatalogKinetic, CatalogPotential, Forcing, KineticKind, Potential, PotentialKind, Witnesses};

    fn spec_with(potential: Arc<dyn Potential>) -> ProblemSpec {
        let g = GFunctionSpec::power(1, 2.0, 0.5).unwrap();
        ProblemSpec::new(
            (0.0, 1.0),
            g.clone(),
            Arc::new(CatalogKinetic::new(KineticKind::GOfV, g).unwrap()),
            potential,
            Forcing::Zero,
            Witnesses {
                theta_f: 2.0,
                theta_v: 4.0,
                lambda: 1.0,
                r0: 1.0,
                rho0: 0.5,
                g: crate::problem::Profile::Constant(0.0625),
                ..Witnesses::default()
            },
        )
        .unwrap()
    }

    fn small() -> HypothesisSampler {
        HypothesisSampler {
            samples: 600,
            ..HypothesisSampler::default()
        }
    }

    #[derive(Debug)]
    struct Bowl;

    impl Potential for Bowl {
        fn value(&self, _t: f64, x: &[f64]) -> f64 {
            x[0] * x[0]
        }
        fn grad(&self, _t: f64, x: &[f64], out: &mut [f64]) {
            out[0] = 2.0 * x[0];
        }
    }

    #[test]
    fn quartic_benchmark_passes() {
        let p = spec_with(Arc::new(
            CatalogPotential::new(PotentialKind::NegPower { kappa: 1.0, theta: 4.0 }, 1).unwrap(),
        ));
        let r = check_hypotheses(&p, &small());
        for res in &r.results {
            assert_eq!(res.verdict, Verdict::Passed, "{res:?}");
        }
        assert_eq!(r.get(Hypothesis::V2).unwrap().worst_margin, 0.0);
    }

    #[test]
    fn positive_potential_fails_v4_at_r0() {
        let p = spec_with(Arc::new(Bowl));
        let cfg = small();
        let r = check_hypotheses(&p, &cfg);
        let v4 = r.get(Hypothesis::V4).unwrap();
        assert_eq!(v4.verdict, Verdict::Violated);
        let ce = v4.counterexample.as_ref().unwrap();
        assert_eq!(ce.sample.x, vec![1.0]);
        let again = replay(&p, &cfg, Hypothesis::V4, &ce.sample).unwrap();
        assert_eq!(again.to_bits(), ce.margin.to_bits());
    }

    #[test]
    fn reports_are_deterministic() {
        let p = spec_with(Arc::new(Bowl));
        let a = check_hypotheses(&p, &small());
        let b = check_hypotheses(&p, &small());
        for (x, y) in a.results.iter().zip(&b.results) {
            assert_eq!(x.counterexample, y.counterexample);
            assert_eq!(x.worst_margin.to_bits(), y.worst_margin.to_bits());
        }
    }

    #[test]
    fn estimator_recovers_quartic_constants() {
        let p = spec_with(Arc::new(
            CatalogPotential::new(PotentialKind::NegPower { kappa: 1.0, theta: 4.0 }, 1).unwrap(),
        ));
        let e = estimate_constants(&p, &small());
        assert!((e.theta_f.unwrap() - 2.0).abs() < 1e-12);
        assert!((e.theta_v.unwrap() - 4.0).abs() < 1e-12);
        assert!((e.lambda.unwrap() - 1.0).abs() < 1e-12);
        assert!(e.m_ps < 1e-12);
        assert!((e.m_valley - 1.0).abs() < 1e-12);
    }
}
