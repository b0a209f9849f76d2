//! Randomized tightness benchmark: lower_bound / ||∫ f|| over seeded
//! samples from several hypothesis classes.

use bochner_bounds::prelude::*;
use std::f64::consts::{FRAC_PI_3, FRAC_PI_6};

fn main() -> Result<()> {
    let e = ComplexVec::from_real(&[0.6, 0.8])?;
    let rule = QuadratureRule::default();
    let cone = Hypothesis::Cone { phi1: FRAC_PI_6, phi2: FRAC_PI_3 };
    let runs = [
        (GeneratorSpec::matching(cone.clone()), cone.clone()),
        (GeneratorSpec::matching(cone), Hypothesis::Karamata { theta: FRAC_PI_3 }),
        (
            GeneratorSpec::matching(Hypothesis::UnitVector { e: e.clone(), k1: 0.5, k2: 0.4 }),
            Hypothesis::UnitVector { e: e.clone(), k1: 0.5, k2: 0.4 },
        ),
        (
            GeneratorSpec::matching(Hypothesis::Disk { e: e.clone(), eta1: 0.8, eta2: 0.8 }),
            Hypothesis::Disk { e, eta1: 0.8, eta2: 0.8 },
        ),
    ];
    println!("{:<28} {}", "generator -> hypothesis", TightnessStats::CSV_HEADER);
    for (g, h) in &runs {
        let s = tightness(1000, g, h, &rule, 42)?;
        let label = format!("{} -> {}", g.hypothesis.tag(), h.tag());
        println!("{label:<28} {}", s.csv_record());
    }
    Ok(())
}
