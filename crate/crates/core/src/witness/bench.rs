use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use super::generators::GeneratorSpec;
use crate::bounds::certify;
use crate::error::{invalid, Result};
use crate::hypotheses::{Hypothesis, DEFAULT_CHECK_TOL};
use crate::quadrature::QuadratureRule;

/// A trial counts as a soundness violation when its gap is below this.
pub const VIOLATION_TOL: f64 = 1e-8;

/// Aggregate of `lower_bound / true_norm` over the verified trials.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct TightnessStats {
    pub trials: usize,
    pub mean_ratio: f64,
    pub min_ratio: f64,
    pub max_ratio: f64,
    pub violations: usize,
    /// Trials whose sample failed the hypothesis check; excluded above.
    pub unverified: usize,
    pub min_gap: f64,
}

impl TightnessStats {
    pub const CSV_HEADER: &'static str = "trials,mean_ratio,min_ratio,max_ratio,violations";

    pub fn csv_record(&self) -> String {
        format!(
            "{},{:.16e},{:.16e},{:.16e},{}",
            self.trials, self.mean_ratio, self.min_ratio, self.max_ratio, self.violations
        )
    }
}

struct Trial {
    verified: bool,
    ratio: f64,
    gap: f64,
}

fn ratio(lower: f64, true_norm: f64) -> f64 {
    if true_norm > 0.0 {
        lower / true_norm
    } else if lower == 0.0 {
        1.0
    } else {
        f64::INFINITY
    }
}

/// Certifies `h` on `trials` samples from `family`, trial `i` seeded with
/// `seed + i`. Trials run in parallel; aggregation is sequential in trial
/// order, so the result does not depend on the thread count.
pub fn tightness(
    trials: usize,
    family: &GeneratorSpec,
    h: &Hypothesis,
    rule: &QuadratureRule,
    seed: u64,
) -> Result<TightnessStats> {
    if trials == 0 {
        return Err(invalid("trials", "must be >= 1"));
    }
    h.validate()?;
    rule.validate()?;
    let outcomes: Vec<Trial> = (0..trials)
        .into_par_iter()
        .map(|i| {
            let f = family.sample(seed.wrapping_add(i as u64))?;
            let r = certify(&f, h, rule, DEFAULT_CHECK_TOL)?;
            Ok(Trial {
                verified: r.hypothesis_verified,
                ratio: ratio(r.lower_bound, r.true_norm),
                gap: r.gap,
            })
        })
        .collect::<Result<_>>()?;

    let mut n = 0usize;
    let mut sum = 0.0;
    let mut min_ratio = f64::INFINITY;
    let mut max_ratio = f64::NEG_INFINITY;
    let mut min_gap = f64::INFINITY;
    let mut violations = 0;
    for t in outcomes.iter().filter(|t| t.verified) {
        n += 1;
        sum += t.ratio;
        min_ratio = min_ratio.min(t.ratio);
        max_ratio = max_ratio.max(t.ratio);
        min_gap = min_gap.min(t.gap);
        if t.gap < -VIOLATION_TOL {
            violations += 1;
        }
    }
    let mean_ratio = if n > 0 { sum / n as f64 } else { f64::NAN };
    if n == 0 {
        min_ratio = f64::NAN;
        max_ratio = f64::NAN;
        min_gap = f64::NAN;
    }
    Ok(TightnessStats {
        trials,
        mean_ratio,
        min_ratio,
        max_ratio,
        violations,
        unverified: trials - n,
        min_gap,
    })
}
