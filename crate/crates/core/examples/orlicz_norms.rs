//! Modulars and Luxemburg norms of a grid function, plus a randomized run of
//! the Hölder, Poincaré, modular and embedding inequalities.

use mpsolve::gfun::{embedding_constant, simonenko_indices, GFunctionSpec, SamplerConfig};
use mpsolve::orlicz::{check_inequalities, modular, norm_bundle, GridFunction, InequalityOptions};

fn main() -> Result<(), Box<dyn std::error::Error>> {
    let g = GFunctionSpec::sum_power(vec![2.0, 3.0], vec![0.5, 1.0 / 3.0])?;
    let u = GridFunction::from_fn_zero_boundary(0.0, 1.0, 200, 2, |t| {
        vec![(std::f64::consts::PI * t).sin(), t * (1.0 - t) * 4.0]
    })?;
    let n = norm_bundle(&g, &u);
    println!(
        "R_G(u) = {:.8}, R_G(u') = {:.8}",
        modular(&g, &u, false),
        modular(&g, &u, true)
    );
    println!(
        "|u|_G = {:.8}, |u'|_G = {:.8}, |u|_W = {:.8}, sup|u| = {:.8}",
        n.lux_u, n.lux_du, n.w_norm, n.sup_norm
    );
    println!("R_G(u/|u|_G) = {:.12}", modular(&g, &u.scaled(1.0 / n.lux_u), false));

    let sampler = SamplerConfig::default();
    let idx = simonenko_indices(&g, &sampler)?;
    let emb = embedding_constant(&g, 1.0, &sampler)?;
    let pairs: Vec<_> = (1..=20)
        .map(|k| {
            let k = k as f64;
            let u = GridFunction::from_fn_zero_boundary(0.0, 1.0, 100, 2, |t| {
                vec![
                    k * (k * t).sin() * t * (1.0 - t),
                    (3.0 * t).cos() / k - (3.0f64).cos() * t / k - (1.0 - t) / k,
                ]
            });
            let v = GridFunction::from_fn(0.0, 1.0, 100, 2, |t| vec![t.cos() * k, 1.0 - t]);
            Ok((u?, v?))
        })
        .collect::<Result<_, mpsolve::OrliczError>>()?;
    let report = check_inequalities(&g, &pairs, &emb, &idx, &InequalityOptions::default());
    println!("{} checks, all hold: {}", report.checks.len(), report.all_hold());
    for w in report.violations() {
        println!(
            "  violated: {} on pair {} ({} > {})",
            w.inequality.name(),
            w.pair,
            w.lhs,
            w.rhs
        );
    }
    Ok(())
}
