//! Problem builders and independent oracles shared by the integration tests.
#![allow(dead_code)]

use std::path::PathBuf;
use std::sync::Arc;

use mpsolve::gfun::GFunctionSpec;
use mpsolve::problem::{
    CatalogKinetic, CatalogPotential, Forcing, KineticKind, PotentialKind, ProblemSpec, Profile, Witnesses,
};

pub fn data(name: &str) -> PathBuf {
    PathBuf::from(env!("CARGO_MANIFEST_DIR")).join("data").join(name)
}

/// `F = ½|v|²`, `V = -|x|⁴`, constant forcing `f`, on `[0, 1]`.
pub fn quartic(rho0: f64, f: f64) -> ProblemSpec {
    let g = GFunctionSpec::power(1, 2.0, 0.5).unwrap();
    let forcing = if f == 0.0 {
        Forcing::Zero
    } else {
        Forcing::Constant(vec![f])
    };
    ProblemSpec::new(
        (0.0, 1.0),
        g.clone(),
        Arc::new(CatalogKinetic::new(KineticKind::GOfV, g).unwrap()),
        Arc::new(CatalogPotential::new(PotentialKind::NegPower { kappa: 1.0, theta: 4.0 }, 1).unwrap()),
        forcing,
        Witnesses {
            rho0,
            g: Profile::Constant(rho0.powi(4)),
            ..Witnesses::default()
        },
    )
    .unwrap()
}

/// `F = ½|v|²`, `V = 0`, `f ≡ 1` on `[0, 1]`; the solution is `t(t - 1)/2`.
pub fn linear() -> ProblemSpec {
    let g = GFunctionSpec::power(1, 2.0, 0.5).unwrap();
    ProblemSpec::new(
        (0.0, 1.0),
        g.clone(),
        Arc::new(CatalogKinetic::new(KineticKind::GOfV, g).unwrap()),
        Arc::new(CatalogPotential::new(PotentialKind::Zero, 1).unwrap()),
        Forcing::Constant(vec![1.0]),
        Witnesses {
            rho0: 0.5,
            ..Witnesses::default()
        },
    )
    .unwrap()
}

/// Every catalog combination over the three G kinds, with and without forcing.
pub fn catalog() -> Vec<ProblemSpec> {
    let gs = [
        GFunctionSpec::power(1, 2.0, 0.5).unwrap(),
        GFunctionSpec::power(1, 3.0, 1.0 / 3.0).unwrap(),
        GFunctionSpec::sum_power(vec![2.0, 3.0], vec![0.5, 1.0 / 3.0]).unwrap(),
        GFunctionSpec::power_log(2, 2.0, 0.5).unwrap(),
    ];
    let kinetics = [
        KineticKind::GOfV,
        KineticKind::ScaledG { c: 2.0 },
        KineticKind::XModulated { epsilon: 0.5 },
    ];
    let potentials = [
        PotentialKind::Zero,
        PotentialKind::NegPower { kappa: 1.0, theta: 4.0 },
        PotentialKind::Well {
            kappa1: 1.0,
            kappa2: 0.5,
            theta: 4.0,
        },
    ];
    let mut out = Vec::new();
    for g in &gs {
        let dim = g.dimension();
        for k in kinetics {
            for v in potentials {
                for f in [Forcing::Zero, Forcing::Constant(vec![0.3; dim])] {
                    out.push(
                        ProblemSpec::new(
                            (0.0, 1.0),
                            g.clone(),
                            Arc::new(CatalogKinetic::new(k, g.clone()).unwrap()),
                            Arc::new(CatalogPotential::new(v, dim).unwrap()),
                            f,
                            Witnesses::default(),
                        )
                        .unwrap(),
                    );
                }
            }
        }
    }
    out
}

/// RK4 solution of `u'' = -4u³ + f`, `u(0) = 0`, `u'(0) = s` at `steps + 1`
/// equally spaced points of `[0, 1]`.
pub fn shoot(s: f64, f: f64, steps: usize) -> Vec<f64> {
    let h = 1.0 / steps as f64;
    let acc = |u: f64| -4.0 * u * u * u + f;
    let (mut u, mut v) = (0.0f64, s);
    let mut out = Vec::with_capacity(steps + 1);
    out.push(u);
    for _ in 0..steps {
        let k1 = (v, acc(u));
        let k2 = (v + 0.5 * h * k1.1, acc(u + 0.5 * h * k1.0));
        let k3 = (v + 0.5 * h * k2.1, acc(u + 0.5 * h * k2.0));
        let k4 = (v + h * k3.1, acc(u + h * k3.0));
        u += h / 6.0 * (k1.0 + 2.0 * k2.0 + 2.0 * k3.0 + k4.0);
        v += h / 6.0 * (k1.1 + 2.0 * k2.1 + 2.0 * k3.1 + k4.1);
        out.push(u);
    }
    out
}

/// Positive one-hump solution of `u'' = -4u³ + f`, `u(0) = u(1) = 0`, by
/// bisection on the initial slope in `[1, 10]`.
pub fn shooting_solution(f: f64, steps: usize) -> Vec<f64> {
    let (mut lo, mut hi) = (1.0, 10.0);
    for _ in 0..200 {
        let mid = 0.5 * (lo + hi);
        if *shoot(mid, f, steps).last().unwrap() > 0.0 {
            lo = mid;
        } else {
            hi = mid;
        }
    }
    shoot(lo, f, steps)
}

/// `sup_x <x, y> - G(x)` for `N = 1` by a dense scan of `[-x_max, x_max]`
/// followed by a local grid refinement.
pub fn brute_conjugate_1d(g: &GFunctionSpec, y: f64, x_max: f64) -> f64 {
    let phi = |x: f64| x * y - g.eval(&[x]);
    let m = 20_000;
    let step = 2.0 * x_max / m as f64;
    let mut best = (0.0, phi(0.0));
    for k in 0..=m {
        let x = -x_max + step * k as f64;
        let v = phi(x);
        if v > best.1 {
            best = (x, v);
        }
    }
    let mut width = step;
    for _ in 0..40 {
        for k in -10..=10 {
            let x = best.0 + width * k as f64 / 10.0;
            let v = phi(x);
            if v > best.1 {
                best = (x, v);
            }
        }
        width *= 0.5;
    }
    best.1
}

/// Trapezoid rule on `n` subintervals.
pub fn trapezoid(f: impl Fn(f64) -> f64, a: f64, b: f64, n: usize) -> f64 {
    let h = (b - a) / n as f64;
    let inner: f64 = (1..n).map(|k| f(a + h * k as f64)).sum();
    h * (0.5 * f(a) + inner + 0.5 * f(b))
}
