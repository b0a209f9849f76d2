//! Integrates f(t) = e^{it} on [pi/6, pi/3] and measures the convergence
//! order of composite Simpson as the node grid doubles.

use bochner_bounds::prelude::*;
use num_complex::Complex64;
use std::f64::consts::{FRAC_PI_3, FRAC_PI_6, PI};

fn arc(n: usize) -> GridFunction {
    GridFunction::sample_scalar(
        Interval::new(FRAC_PI_6, FRAC_PI_3).unwrap(),
        n + 1,
        Interp::Linear,
        |t| Complex64::new(t.cos(), t.sin()),
    )
    .unwrap()
}

fn main() -> Result<()> {
    let exact = 2.0 * (PI / 12.0).sin();
    let f = arc(256);
    let i = integrate(&f, &QuadratureRule::simpson(1))?;
    println!("∫|f|  = {:.15}  (pi/6 = {:.15})", i.norm, FRAC_PI_6);
    println!("|∫f|  = {:.15}  (2 sin(pi/12) = {:.15})", i.vector.norm(), exact);

    println!("\n  N   error          ratio");
    let mut prev = None;
    for n in [16, 32, 64, 128, 256] {
        let err = (integrate(&arc(n), &QuadratureRule::simpson(1))?.vector.norm() - exact).abs();
        match prev {
            Some(p) => println!("{n:>4}  {err:.3e}  {:.2}", f64::log2(p / err)),
            None => println!("{n:>4}  {err:.3e}"),
        }
        prev = Some(err);
    }

    // the interpolant itself, refined until stable
    let r = refine_until(&arc(8), &QuadratureRule::default())?;
    println!(
        "\ninterpolant on 9 nodes: ∫|f| = {:.12} after refinement {} (diff {:.1e})",
        r.integrals.norm, r.refinement, r.achieved_tol
    );
    Ok(())
}
