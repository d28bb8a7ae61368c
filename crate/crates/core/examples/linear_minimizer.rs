//! Without a potential there is no mountain-pass geometry; the solver
//! reports this and returns the minimizer, here `t(t - 1)/2`.

use std::path::Path;

use mpsolve::action::ActionContext;
use mpsolve::cli::load_problem;
use mpsolve::mpsolver::{mountain_pass_solve, MountainPassConfig};

fn main() -> Result<(), Box<dyn std::error::Error>> {
    let spec = load_problem(&Path::new(env!("CARGO_MANIFEST_DIR")).join("data/linear.cfg"))?;
    let mut last = None;
    for n in [50, 100, 200] {
        let ctx = ActionContext::new(spec.clone(), n)?;
        let r = mountain_pass_solve(&ctx, &MountainPassConfig::default())?;
        // piecewise-linear interpolant against the exact solution at cell midpoints
        let err = (0..n)
            .map(|j| {
                let t = ctx.h() * (j as f64 + 0.5);
                (r.u_star.eval(t)[0] - 0.5 * t * (t - 1.0)).abs()
            })
            .fold(0.0, f64::max);
        let order = last.map(|e: f64| (e / err).log2());
        println!(
            "n = {n:>3}: {} J* = {:.8}, sup error {:.3e}, order {:?}",
            r.status.as_str(),
            r.j_star,
            err,
            order
        );
        last = Some(err);
    }
    Ok(())
}
