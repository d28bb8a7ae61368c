//! The discrete action, its exact gradient checked against central
//! differences, and Euler-Lagrange residuals of an exact solution.

use std::path::Path;

use mpsolve::action::{action_parts, euler_lagrange_residual, gradient_fd_check, gradient_norm, ActionContext};
use mpsolve::cli::load_problem;

fn main() -> Result<(), Box<dyn std::error::Error>> {
    let dir = Path::new(env!("CARGO_MANIFEST_DIR")).join("data");

    let quartic = ActionContext::new(load_problem(&dir.join("quartic.cfg"))?, 64)?;
    let u = quartic.grid_function(|t| vec![2.0 * (std::f64::consts::PI * t).sin()]);
    let parts = action_parts(&quartic, &u)?;
    println!(
        "J(2 sin(pi t)) = {:.10} (kinetic {:.6}, potential {:.6})",
        parts.total, parts.kinetic, parts.potential
    );
    println!(
        "|J'(u)| = {:.6e}, fd check = {:.3e}",
        gradient_norm(&quartic, &u)?,
        gradient_fd_check(&quartic, &u, 1e-6)?
    );

    let linear = load_problem(&dir.join("linear.cfg"))?;
    for n in [25, 50, 100] {
        let ctx = ActionContext::new(linear.clone(), n)?;
        let exact = ctx.grid_function(|t| vec![0.5 * t * (t - 1.0)]);
        let r = euler_lagrange_residual(&ctx, &exact)?;
        println!(
            "n = {n:>3}: weak residual {:.3e}, strong residual {:.3e}",
            r.weak_residual, r.strong_residual
        );
    }
    Ok(())
}
