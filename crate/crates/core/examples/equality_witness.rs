//! Builds equality-case witnesses and shows the gap opening up under a
//! phase spread while amplitude modulation leaves equality intact.

use bochner_bounds::prelude::*;
use num_complex::Complex64;
use std::f64::consts::FRAC_1_SQRT_2;

fn main() -> Result<()> {
    let e = ComplexVec::new(vec![Complex64::new(FRAC_1_SQRT_2, 0.0), Complex64::new(0.0, FRAC_1_SQRT_2)])?;
    let rule = QuadratureRule::simpson(1);
    let witnesses = [
        Hypothesis::UnitVector { e: e.clone(), k1: 0.6, k2: 0.8 },
        Hypothesis::Cone { phi1: 0.7, phi2: 0.7 },
        Hypothesis::KCond { e: e.clone(), k: 1.0 },
        Hypothesis::Disk {
            e: ComplexVec::from_real(&[1.0])?,
            eta1: FRAC_1_SQRT_2,
            eta2: FRAC_1_SQRT_2,
        },
    ];
    for h in &witnesses {
        let w = make_witness(&WitnessSpec { node_count: 129, ..WitnessSpec::new(h.clone()) })?;
        let r = certify(&w, h, &rule, 1e-12)?;
        println!(
            "{:<12} f = {:?}  gap {:.1e}  equality {}",
            h.tag(),
            w.values()[0].entries(),
            r.gap,
            equality_holds(&r, 1e-10)?
        );
        for mode in [Perturbation::PhaseSpread, Perturbation::Amplitude] {
            match perturb_scan(&w, h, &[1e-3, 1e-2, 1e-1], mode, &rule) {
                Ok(scan) => {
                    for p in scan {
                        println!(
                            "    {mode:?} eps = {:<6} gap = {:.3e}  equality = {}",
                            p.epsilon, p.gap, p.equality_holds
                        );
                    }
                }
                Err(err) => println!("    {mode:?}: {err}"),
            }
        }
    }
    Ok(())
}
