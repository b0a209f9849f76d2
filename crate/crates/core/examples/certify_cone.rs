//! Certifies the cone bound on an arc of the unit circle and compares it
//! with the Karamata bound for the same function.

use bochner_bounds::cli::render_table;
use bochner_bounds::prelude::*;
use num_complex::Complex64;
use std::f64::consts::{FRAC_PI_3, FRAC_PI_6};

fn main() -> Result<()> {
    let f = GridFunction::sample_scalar(
        Interval::new(FRAC_PI_6, FRAC_PI_3)?,
        257,
        Interp::Linear,
        |t| Complex64::new(t.cos(), t.sin()),
    )?;
    let rule = QuadratureRule::simpson(1);
    let cone = certify(&f, &Hypothesis::Cone { phi1: FRAC_PI_6, phi2: FRAC_PI_3 }, &rule, 1e-9)?;
    let kar = certify(&f, &Hypothesis::Karamata { theta: FRAC_PI_3 }, &rule, 1e-9)?;
    print!("{}", render_table(&[cone.clone(), kar])?);

    println!("\nphi1    phi2    karamata  cone");
    for (p1, p2) in [(0.0, 0.8), (0.2, 0.8), (0.5, 0.8), (0.8, 0.8), (1.2, 1.4)] {
        let (k, c) = karamata_vs_cone(p1, p2);
        println!("{p1:<6}  {p2:<6}  {k:.6}  {c:.6}");
    }
    println!("\nJSON:\n{}", bochner_bounds::report::document(&cone).unwrap());
    Ok(())
}
