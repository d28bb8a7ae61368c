//! Randomized invariants of G-functions, conjugates, indices and Orlicz norms.

mod common;

use std::sync::OnceLock;

use mpsolve::gfun::{
    embedding_constant, simonenko_indices, EmbeddingData, GFunctionSpec, SamplerConfig, SearchConfig, SimonenkoIndices,
};
use mpsolve::mpsolver::{coercivity_profile, is_nondecreasing};
use mpsolve::orlicz::{coercivity_ratio, luxemburg_norm, modular, GridFunction};
use proptest::prelude::*;

struct Kind {
    g: GFunctionSpec,
    idx: SimonenkoIndices,
    emb: EmbeddingData,
}

fn kinds() -> &'static [Kind] {
    static KINDS: OnceLock<Vec<Kind>> = OnceLock::new();
    KINDS.get_or_init(|| {
        let s = SamplerConfig::default();
        [
            GFunctionSpec::power(1, 2.0, 0.5).unwrap(),
            GFunctionSpec::power(2, 3.0, 1.0 / 3.0).unwrap(),
            GFunctionSpec::sum_power(vec![1.5, 4.0], vec![1.0, 0.25]).unwrap(),
            GFunctionSpec::power_log(2, 2.0, 0.5).unwrap(),
        ]
        .into_iter()
        .map(|g| Kind {
            idx: simonenko_indices(&g, &s).unwrap(),
            emb: embedding_constant(&g, 1.0, &s).unwrap(),
            g,
        })
        .collect()
    })
}

fn point(dim: usize) -> impl Strategy<Value = Vec<f64>> {
    (prop::collection::vec(-1.0f64..1.0, dim), -3.0f64..3.0).prop_map(|(d, logr)| {
        let n = d.iter().map(|a| a * a).sum::<f64>().sqrt().max(1e-3);
        d.iter().map(|a| a / n * 10f64.powf(logr)).collect()
    })
}

fn kind_and_point() -> impl Strategy<Value = (usize, Vec<f64>, Vec<f64>)> {
    (0..4usize).prop_flat_map(|k| {
        let dim = kinds()[k].g.dimension();
        (Just(k), point(dim), point(dim))
    })
}

fn dot(x: &[f64], y: &[f64]) -> f64 {
    x.iter().zip(y).map(|(a, b)| a * b).sum()
}

/// Zero-boundary grid function from random sine coefficients.
fn grid_function(dim: usize) -> impl Strategy<Value = GridFunction> {
    (prop::collection::vec(-3.0f64..3.0, dim * 4), 4usize..80, -2.0f64..2.0).prop_map(move |(c, n, logs)| {
        let s = 10f64.powf(logs);
        GridFunction::from_fn_zero_boundary(0.0, 1.0, n, dim, |t| {
            (0..dim)
                .map(|i| {
                    s * (0..4)
                        .map(|m| c[i * 4 + m] * ((m + 1) as f64 * std::f64::consts::PI * t).sin())
                        .sum::<f64>()
                })
                .collect()
        })
        .unwrap()
    })
}

fn kind_and_function() -> impl Strategy<Value = (usize, GridFunction)> {
    (0..4usize).prop_flat_map(|k| (Just(k), grid_function(kinds()[k].g.dimension())))
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(200))]

    #[test]
    fn fenchel_inequality_and_equality((k, x, y) in kind_and_point()) {
        let g = &kinds()[k].g;
        let search = SearchConfig::default();
        let gstar_y = g.conjugate_value(&y, &search).unwrap();
        prop_assert!(dot(&x, &y) <= g.eval(&x) + gstar_y + 1e-9 * (1.0 + dot(&x, &y).abs()));
        let gx = g.grad(&x);
        let gap = dot(&x, &gx) - g.eval(&x) - g.conjugate_value(&gx, &search).unwrap();
        prop_assert!(gap.abs() <= 1e-6 * (1.0 + dot(&x, &gx).abs()), "gap {gap}");
    }

    #[test]
    fn conjugate_is_midpoint_convex((k, y1, y2) in kind_and_point()) {
        let g = &kinds()[k].g;
        let s = SearchConfig::default();
        let mid: Vec<f64> = y1.iter().zip(&y2).map(|(a, b)| 0.5 * (a + b)).collect();
        let lhs = g.conjugate_value(&mid, &s).unwrap();
        let rhs = 0.5 * (g.conjugate_value(&y1, &s).unwrap() + g.conjugate_value(&y2, &s).unwrap());
        prop_assert!(lhs <= rhs + 1e-8 * (1.0 + rhs.abs()), "{lhs} > {rhs}");
    }

    #[test]
    fn index_ratio_between_indices((k, x, _y) in kind_and_point()) {
        let kind = &kinds()[k];
        let r = dot(&x, &kind.g.grad(&x)) / kind.g.eval(&x);
        prop_assert!(kind.idx.p_g - 1e-6 <= r && r <= kind.idx.q_g + 1e-6, "{} <= {r} <= {}", kind.idx.p_g, kind.idx.q_g);
    }

    #[test]
    fn luxemburg_normalizes_modular((k, u) in kind_and_function()) {
        let g = &kinds()[k].g;
        for d in [false, true] {
            let n = luxemburg_norm(g, &u, d);
            prop_assert!((modular(g, &u.scaled(1.0 / n), d) - 1.0).abs() < 1e-8);
        }
    }

    #[test]
    fn luxemburg_is_homogeneous((k, u) in kind_and_function(), c in -50.0f64..50.0) {
        prop_assume!(c.abs() > 1e-3);
        let g = &kinds()[k].g;
        let n = luxemburg_norm(g, &u, false);
        let nc = luxemburg_norm(g, &u.scaled(c), false);
        prop_assert!((nc - c.abs() * n).abs() <= 1e-9 * nc.max(1e-300), "{nc} vs {}", c.abs() * n);
    }

    #[test]
    fn poincare_holds((k, u) in kind_and_function()) {
        let g = &kinds()[k].g;
        prop_assert!(luxemburg_norm(g, &u, false) <= u.interval_length() * luxemburg_norm(g, &u, true) * (1.0 + 1e-10));
    }
}

#[test]
fn minorant_below_g_on_sampled_points() {
    let s = SamplerConfig::default();
    for kind in kinds() {
        let dirs = s.directions(kind.g.dimension());
        for &(r, a) in &kind.emb.minorant_samples {
            for d in &dirs {
                let x: Vec<f64> = d.iter().map(|c| c * r).collect();
                let gx = kind.g.eval(&x);
                assert!(a <= gx * (1.0 + 1e-12), "A({r}) = {a} > G = {gx}");
                assert!(kind.emb.minorant(r) <= gx * (1.0 + 1e-12));
            }
        }
    }
}

#[test]
fn bounded_families_have_bounded_modulars_and_norms() {
    for kind in kinds() {
        let g = &kind.g;
        let u0 = GridFunction::from_fn_zero_boundary(0.0, 1.0, 64, g.dimension(), |t| {
            vec![(std::f64::consts::PI * t).sin(); g.dimension()]
        })
        .unwrap();
        // k·u0 grows in both senses, (1 - 1/k)·u0 in neither
        let growing: Vec<(f64, f64)> = (1..=200)
            .map(|k| {
                let u = u0.scaled(k as f64);
                (modular(g, &u, true), luxemburg_norm(g, &u, true))
            })
            .collect();
        let bounded: Vec<(f64, f64)> = (1..=200)
            .map(|k| {
                let u = u0.scaled(1.0 - 1.0 / k as f64);
                (modular(g, &u, true), luxemburg_norm(g, &u, true))
            })
            .collect();
        let max = |v: &[(f64, f64)]| v.iter().fold((0.0f64, 0.0f64), |m, p| (m.0.max(p.0), m.1.max(p.1)));
        let (mb, nb) = max(&bounded);
        let (m0, n0) = (modular(g, &u0, true), luxemburg_norm(g, &u0, true));
        assert!(mb <= m0 && nb <= n0);
        let (mg, ng) = max(&growing);
        assert!(mg > 100.0 * m0 && ng > 100.0 * n0);
    }
}

#[test]
fn coercivity_ratio_grows_along_rays() {
    for kind in kinds() {
        let g = &kind.g;
        let u0 = GridFunction::from_fn_zero_boundary(0.0, 1.0, 32, g.dimension(), |t| {
            (0..g.dimension())
                .map(|i| ((i + 1) as f64 * 3.0 * t).sin() * 0.1)
                .collect()
        })
        .unwrap();
        let profile = coercivity_profile(g, &u0, 1000);
        assert_eq!(profile.len(), 1000);
        assert!(is_nondecreasing(&profile, 1e-12));
        assert!(profile[999] > 10.0 * coercivity_ratio(g, &u0).unwrap());
    }
}

#[test]
fn conjugate_matches_brute_force_scan() {
    let gs = [
        GFunctionSpec::power(1, 1.5, 1.0 / 1.5).unwrap(),
        GFunctionSpec::power(1, 3.0, 1.0 / 3.0).unwrap(),
        GFunctionSpec::power_log(1, 2.0, 0.5).unwrap(),
    ];
    for g in &gs {
        for y in [-4.0, -0.3, 0.05, 1.0, 2.5] {
            let exact = common::brute_conjugate_1d(g, y, 50.0);
            let got = g.conjugate_value(&[y], &SearchConfig::default()).unwrap();
            assert!(
                (got - exact).abs() <= 1e-9 * (1.0 + exact.abs()),
                "{got} vs {exact} at y = {y}"
            );
        }
    }
}
