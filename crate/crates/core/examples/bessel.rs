//! Orthonormal families: Bessel's inequality and the coefficient of the
//! multi-vector hypothesis.

use bochner_bounds::hilbert::{bessel_defect, orthonormalize, projection_residual};
use bochner_bounds::prelude::*;
use bochner_bounds::witness::rng::Sampler;

fn main() -> Result<()> {
    let mut s = Sampler::new(7);
    let raw: Vec<ComplexVec> = (0..3).map(|_| s.gaussian_vec(5)).collect();
    let fam = check_orthonormal(orthonormalize(&raw)?, 1e-12)?;
    for _ in 0..5 {
        let x = s.gaussian_vec(5);
        let defect = bessel_defect(&x, &fam)?;
        let residual = projection_residual(&x, &fam)?.norm_sqr();
        println!("defect {defect:.12}  ||x - Px||^2 {residual:.12}");
    }

    let h = Hypothesis::Orthonormal { family: fam.clone(), ks: vec![0.3, 0.2, 0.1], hs: vec![0.4, 0.0, 0.2] };
    println!("\northonormal coefficient {:.6}", coefficient(&h));
    let real = Hypothesis::orthonormal_real(fam, vec![0.3, 0.2, 0.1]);
    println!("real-only coefficient   {:.6}", coefficient(&real));
    Ok(())
}
