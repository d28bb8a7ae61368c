//! Mountain-pass solve of `u'' = -4u³`, `u(0) = u(1) = 0`, and the
//! Palais-Smale diagnostic along the iterates.

use std::path::Path;
use std::time::Instant;

use mpsolve::action::ActionContext;
use mpsolve::cli::load_problem;
use mpsolve::mpsolver::{mountain_pass_solve, ps_diagnostic, MountainPassConfig};
use mpsolve::problem::HypothesisSampler;

fn main() -> Result<(), Box<dyn std::error::Error>> {
    let path = Path::new(env!("CARGO_MANIFEST_DIR")).join("data/quartic.cfg");
    let ctx = ActionContext::new(load_problem(&path)?, 64)?;
    let start = Instant::now();
    let r = mountain_pass_solve(&ctx, &MountainPassConfig::default())?;
    println!("status: {} ({})", r.status.as_str(), r.message);
    println!(
        "valley: lambda_0 = {:?}, J(e) = {:.4}",
        r.lambda_0,
        r.j_e.unwrap_or(f64::NAN)
    );
    println!(
        "rim: rho = {:.6}, alpha ~ {:.6}",
        r.rho,
        r.alpha_est.unwrap_or(f64::NAN)
    );
    println!(
        "path max {:.6} -> {:.6} after {} deformations ({})",
        r.path_max_history[0],
        r.c_est,
        r.deform_iterations,
        r.stop.map_or("none", |s| s.as_str())
    );
    println!(
        "J(u*) = {:.10}, sup|u*| = {:.8}, |J'(u*)| = {:.2e} after {} Newton steps",
        r.j_star,
        r.u_star.sup_norm(),
        r.grad_norm,
        r.refine_iterations
    );
    println!(
        "gates: A holds {}, B holds {}",
        r.gate.condition_a.holds, r.gate.condition_b.holds
    );
    println!("solved in {:.2?}", start.elapsed());

    let ps = ps_diagnostic(&ctx, &r.iterates, &HypothesisSampler::default())?;
    println!(
        "PS lower bound on {} iterates: min margin {:.4e}, holds {}",
        ps.entries.len(),
        ps.min_margin,
        ps.holds(1e-8)
    );
    Ok(())
}
