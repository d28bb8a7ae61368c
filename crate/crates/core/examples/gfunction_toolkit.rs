//! G-function basics: values, gradients, conjugates, Simonenko indices,
//! doubling probes and the embedding constant for the three built-in kinds.

use mpsolve::gfun::{
    delta2_nabla2_probe, embedding_constant, simonenko_indices, GFunctionSpec, SamplerConfig, SearchConfig,
};

fn main() -> Result<(), Box<dyn std::error::Error>> {
    let sampler = SamplerConfig::default();
    let search = SearchConfig::default();
    let kinds = [
        ("power p=3", GFunctionSpec::power(1, 3.0, 1.0 / 3.0)?),
        (
            "sum_power (2, 4)",
            GFunctionSpec::sum_power(vec![2.0, 4.0], vec![0.5, 0.25])?,
        ),
        ("power_log p=2", GFunctionSpec::power_log(2, 2.0, 0.5)?),
    ];
    for (name, g) in &kinds {
        let x: Vec<f64> = (0..g.dimension()).map(|i| 0.7 + 0.3 * i as f64).collect();
        let y = g.grad(&x);
        let gstar = g.conjugate_value(&y, &search)?;
        let xy: f64 = x.iter().zip(&y).map(|(a, b)| a * b).sum();
        let idx = simonenko_indices(g, &sampler)?;
        let probe = delta2_nabla2_probe(g, &sampler, &search);
        let emb = embedding_constant(g, 1.0, &sampler)?;
        println!("{name}");
        println!(
            "  G(x) = {:.6}, G*(grad G(x)) = {:.6}, Fenchel gap = {:.2e}",
            g.eval(&x),
            gstar,
            xy - g.eval(&x) - gstar
        );
        println!("  p_G = {:.6}, q_G = {:.6}", idx.p_g, idx.q_g);
        println!(
            "  delta2 = {:.4} (bounded: {}), nabla2 = {:.4} (bounded: {})",
            probe.delta2, probe.delta2_bounded, probe.nabla2, probe.nabla2_bounded
        );
        println!("  C_inf,G on |I| = 1: {:.6}", emb.c_inf_g);
    }
    Ok(())
}
