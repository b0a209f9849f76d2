//! Checks pointwise hypotheses on a sampled function and estimates the best
//! constants it satisfies.

use bochner_bounds::hypotheses::{estimate_k, estimate_unit_vector};
use bochner_bounds::prelude::*;
use num_complex::Complex64;

fn main() -> Result<()> {
    // a slowly turning vector in C^2
    let e = ComplexVec::new(vec![Complex64::new(1.0, 0.0), Complex64::new(0.0, 0.0)])?;
    let f = GridFunction::sample(Interval::unit(), 41, Interp::Linear, |t| {
        let z = Complex64::from_polar(1.0 + 0.5 * t, 0.3 + 0.6 * t);
        ComplexVec::new(vec![z, Complex64::new(0.2 * t, 0.1)]).unwrap()
    })?;

    let (k1, k2) = estimate_unit_vector(&f, &e)?;
    let k = estimate_k(&f, &e)?;
    println!("estimated k1 = {k1:.6}, k2 = {k2:.6}, K = {k:.6}");

    let hs = [
        Hypothesis::UnitVector { e: e.clone(), k1, k2 },
        Hypothesis::UnitVector { e: e.clone(), k1: k1 + 0.05, k2 },
        Hypothesis::KCond { e: e.clone(), k },
        Hypothesis::Disk { e: e.clone(), eta1: 0.95, eta2: 0.95 },
    ];
    for h in &hs {
        let r = check(&f, h, 1e-9)?;
        println!(
            "{:<12} holds = {:<5}  worst margin {:+.3e} at t = {:.4}",
            h.tag(),
            r.holds,
            r.worst_margin,
            r.worst_t
        );
    }

    let disk = Hypothesis::Disk { e, eta1: 0.9, eta2: 0.9 };
    println!("disk(0.9, 0.9) implies {:?}", disk.implied_unit_vector()?);
    Ok(())
}
