//! Randomized invariants of the hypothesis checks, gates and the discrete action.

mod common;

use std::sync::{Arc, OnceLock};

use mpsolve::action::{action_value, gradient_fd_check, ActionContext};
use mpsolve::gfun::{embedding_constant, simonenko_indices, SamplerConfig, SearchConfig};
use mpsolve::mpsolver::ps_diagnostic;
use mpsolve::orlicz::{luxemburg_norm, modular, GridFunction};
use mpsolve::problem::{
    check_hypotheses, check_theorem_conditions, replay, Forcing, GateOptions, Hypothesis, HypothesisSampler, Potential,
    ProblemSpec, Verdict,
};
use proptest::prelude::*;

fn small_sampler() -> HypothesisSampler {
    HypothesisSampler {
        samples: 300,
        ..HypothesisSampler::default()
    }
}

fn catalog() -> &'static [ProblemSpec] {
    static C: OnceLock<Vec<ProblemSpec>> = OnceLock::new();
    C.get_or_init(common::catalog)
}

fn state(dim: usize, n: usize) -> impl Strategy<Value = GridFunction> {
    prop::collection::vec(-2.0f64..2.0, (n - 1) * dim).prop_map(move |inner| {
        let mut v = vec![0.0; dim];
        v.extend(inner);
        v.extend(std::iter::repeat_n(0.0, dim));
        GridFunction::new(0.0, 1.0, dim, v).unwrap()
    })
}

#[test]
fn action_vanishes_at_origin() {
    let cfg = small_sampler();
    for p in catalog() {
        let r = check_hypotheses(p, &cfg);
        if r.verdict(Hypothesis::F5) == Some(Verdict::Passed) && r.verdict(Hypothesis::V2) == Some(Verdict::Passed) {
            let ctx = ActionContext::new(p.clone(), 40).unwrap();
            assert!(action_value(&ctx, &ctx.zero()).unwrap().abs() < 1e-12);
        }
    }
}

#[test]
fn v2_passes_exactly_for_catalog_potentials() {
    let cfg = small_sampler();
    for p in catalog() {
        let v2 = check_hypotheses(p, &cfg).get(Hypothesis::V2).unwrap().clone();
        assert_eq!(v2.verdict, Verdict::Passed);
        assert_eq!(v2.worst_margin, 0.0);
    }
}

#[test]
fn subhomogeneity_follows_from_f3() {
    let cfg = small_sampler();
    for p in catalog() {
        let r = check_hypotheses(p, &cfg);
        if r.verdict(Hypothesis::F3) == Some(Verdict::Passed) {
            assert_eq!(
                r.verdict(Hypothesis::SubhomF),
                Some(Verdict::Passed),
                "{:?}",
                p.kinetic()
            );
        }
    }
}

#[derive(Debug)]
struct Tilted;

impl Potential for Tilted {
    fn value(&self, t: f64, x: &[f64]) -> f64 {
        x[0] * x[0] - t * x[0].powi(4) + 0.5 * t
    }
    fn grad(&self, t: f64, x: &[f64], out: &mut [f64]) {
        out[0] = 2.0 * x[0] - 4.0 * t * x[0].powi(3);
    }
}

#[test]
fn violations_replay_with_identical_margin() {
    let cfg = small_sampler();
    let p = common::quartic(0.5, 0.0).with_potential(Arc::new(Tilted)).unwrap();
    let r = check_hypotheses(&p, &cfg);
    let mut replayed = 0;
    for h in r.violated() {
        let c = h.counterexample.as_ref().unwrap();
        if let Some(m) = replay(&p, &cfg, h.hypothesis, &c.sample) {
            assert_eq!(m.to_bits(), c.margin.to_bits(), "{}", h.hypothesis.name());
            replayed += 1;
        }
    }
    assert!(replayed > 0);
}

#[test]
fn action_converges_at_second_order() {
    let p = common::quartic(0.5, 0.0);
    let exact = std::f64::consts::PI.powi(2) / 4.0 - 3.0 / 8.0;
    let errs: Vec<f64> = [16, 32, 64, 128]
        .iter()
        .map(|&n| {
            let ctx = ActionContext::new(p.clone(), n).unwrap();
            let u = ctx.grid_function(|t| vec![(std::f64::consts::PI * t).sin()]);
            (action_value(&ctx, &u).unwrap() - exact).abs()
        })
        .collect();
    for w in errs.windows(2) {
        assert!((w[0] / w[1]).log2() >= 1.9, "{errs:?}");
    }
}

fn quartic_gates(rho0: f64, f: f64) -> mpsolve::problem::GateResult {
    let p = common::quartic(rho0, f);
    let s = SamplerConfig::default();
    let idx = simonenko_indices(p.gfun(), &s).unwrap();
    let emb = embedding_constant(p.gfun(), 1.0, &s).unwrap();
    check_theorem_conditions(&p, &emb, &idx, &GateOptions::default())
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]

    #[test]
    fn exact_gradient_matches_differences(u in state(1, 32), k in 0usize..6) {
        let p = &catalog()[k * 6];
        let ctx = ActionContext::new(p.clone(), 32).unwrap();
        prop_assert!(gradient_fd_check(&ctx, &u, 1e-6).unwrap() < 1e-5);
    }

    #[test]
    fn gradient_matches_differences_in_two_dimensions(u in state(2, 24), k in 0usize..18) {
        let p = catalog().iter().filter(|p| p.dimension() == 2).nth(k).unwrap();
        let ctx = ActionContext::new(p.clone(), 24).unwrap();
        let scaled = u.scaled(0.5);
        prop_assert!(gradient_fd_check(&ctx, &scaled, 1e-6).unwrap() < 1e-5);
    }

    #[test]
    fn action_bounded_below_inside_the_ball(u in state(1, 40), f in -0.5f64..0.5) {
        let rho0 = 0.5;
        let p = common::quartic(rho0, f);
        let u = u.scaled(rho0 / u.sup_norm().max(rho0));
        let ctx = ActionContext::new(p.clone(), 40).unwrap();
        let w = p.witnesses();
        let g = p.gfun();
        let fnorm = p.forcing_dual_norm(256, &SearchConfig::default()).unwrap();
        let lower = w.lambda * modular(g, &u, true) - w.g.integral(0.0, 1.0) - 2.0 * fnorm * luxemburg_norm(g, &u, false);
        let j = action_value(&ctx, &u).unwrap();
        prop_assert!(j >= lower - 1e-12, "{j} < {lower}");
    }

    #[test]
    fn ps_display_holds_on_random_states(u in state(1, 32), s in 0.1f64..20.0, f in -0.5f64..0.5) {
        let p = common::quartic(0.5, f);
        let ctx = ActionContext::new(p, 32).unwrap();
        let d = ps_diagnostic(&ctx, &[u.scaled(s)], &small_sampler()).unwrap();
        prop_assert!(d.holds(1e-8), "margin {}", d.min_margin);
    }

    #[test]
    fn larger_forcing_never_rescues_gate_a(c in 1.0f64..50.0) {
        let base = quartic_gates(2.0, 0.05);
        let scaled = quartic_gates(2.0, 0.05 * c);
        prop_assert!(!base.condition_a.holds);
        prop_assert!(scaled.condition_a.rhs <= base.condition_a.rhs + 1e-12);
        prop_assert!(!scaled.condition_a.holds);
    }
}

#[test]
fn forcing_kinds_agree_on_constant_samples() {
    let p = common::quartic(0.5, 0.3);
    let samples = GridFunction::from_fn(0.0, 1.0, 16, 1, |_| vec![0.3]).unwrap();
    let q = p.with_forcing(Forcing::Samples(samples)).unwrap();
    let a = ActionContext::new(p, 32).unwrap();
    let b = ActionContext::new(q, 32).unwrap();
    let u = a.grid_function(|t| vec![t * (1.0 - t)]);
    assert!((action_value(&a, &u).unwrap() - action_value(&b, &u).unwrap()).abs() < 1e-15);
}
