//! Sampled hypothesis checks on a problem file, with a counterexample for a
//! potential that breaks the superquadratic growth condition.

use std::path::Path;
use std::sync::Arc;

use mpsolve::cli::load_problem;
use mpsolve::problem::{
    check_hypotheses, estimate_constants, replay, HypothesisSampler, Potential, ProblemSpec, Verdict,
};

/// `V(x) = |x|²`, positive where the growth hypotheses want it negative.
#[derive(Debug)]
struct Bowl;

impl Potential for Bowl {
    fn value(&self, _t: f64, x: &[f64]) -> f64 {
        x.iter().map(|a| a * a).sum()
    }
    fn grad(&self, _t: f64, x: &[f64], out: &mut [f64]) {
        for (o, a) in out.iter_mut().zip(x) {
            *o = 2.0 * a;
        }
    }
}

fn summarize(spec: &ProblemSpec, cfg: &HypothesisSampler) {
    let report = check_hypotheses(spec, cfg);
    for r in &report.results {
        print!(
            "  {:<9} {:<8} checked {:>5}",
            r.hypothesis.name(),
            r.verdict.as_str(),
            r.checked
        );
        if let Some(c) = &r.counterexample {
            print!("  counterexample x = {:?}: {:.6} vs {:.6}", c.sample.x, c.lhs, c.rhs);
            if r.verdict == Verdict::Violated {
                let again = replay(spec, cfg, r.hypothesis, &c.sample);
                print!(" (replayed margin {again:?})");
            }
        }
        println!();
    }
}

fn main() -> Result<(), Box<dyn std::error::Error>> {
    let path = Path::new(env!("CARGO_MANIFEST_DIR")).join("data/quartic.cfg");
    let spec = load_problem(&path)?;
    let cfg = HypothesisSampler {
        samples: 2000,
        ..HypothesisSampler::default()
    };
    println!("quartic benchmark");
    summarize(&spec, &cfg);
    let est = estimate_constants(&spec, &cfg);
    println!(
        "  estimated theta_F = {:?}, theta_V = {:?}, M = {:.3e}",
        est.theta_f, est.theta_v, est.m_ps
    );

    let bowl = spec.with_potential(Arc::new(Bowl))?;
    println!("V = |x|^2");
    summarize(&bowl, &cfg);
    Ok(())
}
