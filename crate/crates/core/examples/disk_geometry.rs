//! The two-disk condition: feasibility, the implied unit-vector constants,
//! and sampling from the intersection.

use bochner_bounds::hypotheses::{disk_feasible, disk_to_k};
use bochner_bounds::prelude::*;
use bochner_bounds::witness::{gen_disk, rejection_probe};
use std::f64::consts::SQRT_2;

fn main() -> Result<()> {
    println!("eta      feasible  probe hits / 10^5");
    for d in [-0.05, -0.01, 0.0, 0.01, 0.05] {
        let eta = SQRT_2 / 2.0 + d / 2.0;
        println!(
            "{eta:.5}  {:<8}  {}",
            disk_feasible(eta, eta),
            rejection_probe(eta, eta, 100_000, 1)
        );
    }

    let e = ComplexVec::from_real(&[1.0])?;
    let f = gen_disk(3, e.clone(), 0.9, 0.9, 8)?;
    let h = Hypothesis::Disk { e, eta1: 0.9, eta2: 0.9 };
    println!("\nsampled values: {:?}", f.values().iter().map(|v| v.entries()[0]).collect::<Vec<_>>());
    println!("check holds: {}", check(&f, &h, 1e-12)?.holds);
    println!("implied k1 = k2 = {:.6}", disk_to_k(0.9)?);
    let r = certify(&f, &h, &QuadratureRule::default(), 1e-9)?;
    println!("coefficient {:.6}  lower {:.6}  ||∫f|| {:.6}", r.coefficient, r.lower_bound, r.true_norm);
    Ok(())
}
