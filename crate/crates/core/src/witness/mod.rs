//! Equality-case witnesses, perturbation scans and randomized tightness
//! benchmarks.

mod bench;
mod generators;
pub mod rng;

pub use bench::{tightness, TightnessStats};
pub use generators::{gen_cone, gen_disk, rejection_probe, GeneratorSpec, REJECTION_CAP};

use std::f64::consts::{FRAC_PI_2, TAU};

use num_complex::Complex64;
use serde::{Deserialize, Serialize};

use crate::bounds::{certify, coefficient, equality_direction, equality_holds};
use crate::error::{invalid, Error, Result};
use crate::function::{GridFunction, Interval};
use crate::hilbert::ComplexVec;
use crate::hypotheses::{check, Hypothesis, DEFAULT_CHECK_TOL, I};
use crate::quadrature::QuadratureRule;

/// How far the coefficient of a witness hypothesis may stray from 1.
pub const SURFACE_TOL: f64 = 1e-12;

/// Tolerance for the two-sided equality test in scans.
pub const EQUALITY_TOL: f64 = 1e-10;

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct WitnessSpec {
    pub hypothesis: Hypothesis,
    #[serde(default = "Interval::unit")]
    pub interval: Interval,
    #[serde(default = "default_node_count")]
    pub node_count: usize,
}

fn default_node_count() -> usize {
    33
}

impl WitnessSpec {
    pub fn new(hypothesis: Hypothesis) -> Self {
        WitnessSpec {
            hypothesis,
            interval: Interval::unit(),
            node_count: default_node_count(),
        }
    }
}

/// `lambda > 0` with `lambda v` in the class of `h`: 1 for the cone-shaped
/// classes, otherwise the midpoint of the ray's intersection with every ball
/// (a single point when two balls are tangent).
fn admissible_scale(h: &Hypothesis, v: &ComplexVec) -> Result<f64> {
    let balls: Vec<(ComplexVec, f64)> = match h {
        Hypothesis::Disk { e, eta1, eta2 } => vec![(e.clone(), *eta1), (e.scale(I), *eta2)],
        Hypothesis::MBounds { e, m1, big_m1, m2, big_m2 } => vec![
            (e.scale((0.5 * (big_m1 + m1)).into()), 0.5 * (big_m1 - m1)),
            (e.scale(I * (0.5 * (big_m2 + m2))), 0.5 * (big_m2 - m2)),
        ],
        Hypothesis::OrthoDisk { family, rhos, etas } => family
            .vectors()
            .iter()
            .enumerate()
            .flat_map(|(j, e)| [(e.clone(), rhos[j]), (e.scale(I), etas[j])])
            .collect(),
        Hypothesis::OrthoMBounds { family, ms, big_ms, ns, big_ns } => family
            .vectors()
            .iter()
            .enumerate()
            .flat_map(|(j, e)| {
                [
                    (e.scale((0.5 * (big_ms[j] + ms[j])).into()), 0.5 * (big_ms[j] - ms[j])),
                    (e.scale(I * (0.5 * (big_ns[j] + ns[j]))), 0.5 * (big_ns[j] - ns[j])),
                ]
            })
            .collect(),
        _ => return Ok(1.0),
    };
    // ||lambda v - c||^2 <= r^2 as a quadratic in lambda
    let a = v.norm_sqr();
    let (mut lo, mut hi) = (0.0_f64, f64::INFINITY);
    for (c, r) in &balls {
        let b = v.inner(c)?.re;
        let disc = b * b - a * (c.norm_sqr() - r * r);
        if disc < -SURFACE_TOL {
            return Err(Error::Infeasible(format!(
                "no positive multiple of the equality vector satisfies `{}`",
                h.tag()
            )));
        }
        let s = disc.max(0.0).sqrt();
        lo = lo.max((b - s) / a);
        hi = hi.min((b + s) / a);
    }
    if lo > hi + SURFACE_TOL {
        return Err(Error::Infeasible(format!(
            "no positive multiple of the equality vector satisfies `{}`",
            h.tag()
        )));
    }
    Ok(if lo <= 1.0 && 1.0 <= hi { 1.0 } else { 0.5 * (lo + hi.max(lo)) })
}

/// A constant equality-case witness: a positive multiple of the predicted
/// equality direction lying in the class.
///
/// Only hypotheses with coefficient 1 admit such a witness: integrating the
/// pointwise condition and the equality condition together forces it. The
/// constant is checked against the hypothesis before it is returned.
pub fn make_witness(spec: &WitnessSpec) -> Result<GridFunction> {
    let h = &spec.hypothesis;
    h.validate()?;
    if spec.node_count < 2 {
        return Err(invalid(
            "node_count",
            format!("need at least 2, got {}", spec.node_count),
        ));
    }
    let v = equality_direction(h).ok_or(Error::NoEqualityCase(h.tag()))?;
    let c = coefficient(h);
    if !((c - 1.0).abs() <= SURFACE_TOL) {
        return Err(Error::OffEqualitySurface { coefficient: c });
    }
    let lambda = admissible_scale(h, &v)?;
    let f = GridFunction::constant(spec.interval, spec.node_count, v.scale(lambda.into()))?;
    let r = check(&f, h, SURFACE_TOL)?;
    if !r.holds {
        return Err(Error::Infeasible(format!(
            "the equality vector violates `{}` (margin {:e})",
            h.tag(),
            r.worst_margin
        )));
    }
    Ok(f)
}

/// Perturbation applied in [`perturb_scan`].
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Perturbation {
    /// Multiplies by `e^{i theta(t)}` with `theta` running linearly from
    /// `-eps` to `eps`; the hypothesis is widened by `eps` to contain it.
    PhaseSpread,
    /// Multiplies by `1 + eps sin(2 pi (t - a)/(b - a))`; direction fixed.
    Amplitude,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct ScanPoint {
    pub epsilon: f64,
    pub gap: f64,
    pub equality_residual: Option<f64>,
    pub equality_holds: bool,
    /// The hypothesis the perturbed function was certified against.
    pub hypothesis: Hypothesis,
}

fn leaves(field: &str, value: f64, bound: &str) -> Error {
    Error::LeavesClass(format!("{field} = {value} {bound}"))
}

/// Rotates the first-quadrant direction `(k, h)` by up to `eps` either way
/// and returns the widened lower bounds.
fn widen_pair(k: f64, h: f64, eps: f64, j: Option<usize>) -> Result<(f64, f64)> {
    let r = k.hypot(h);
    if r == 0.0 {
        return Ok((0.0, 0.0));
    }
    let psi = h.atan2(k);
    let idx = j.map(|j| format!("[{j}]")).unwrap_or_default();
    if psi + eps > FRAC_PI_2 {
        return Err(leaves(&format!("arg(k{idx} + i h{idx}) + eps"), psi + eps, "> pi/2"));
    }
    if psi - eps < 0.0 {
        return Err(leaves(&format!("arg(k{idx} + i h{idx}) - eps"), psi - eps, "< 0"));
    }
    Ok((r * (psi + eps).cos(), r * (psi - eps).sin()))
}

/// The smallest member of the hypothesis family that contains every phase
/// rotation by at most `eps` of a function satisfying `h`.
fn widen(h: &Hypothesis, eps: f64) -> Result<Hypothesis> {
    if eps == 0.0 {
        return Ok(h.clone());
    }
    Ok(match h {
        Hypothesis::Cone { phi1, phi2 } => {
            if phi1 - eps < 0.0 {
                return Err(leaves("phi1 - eps", phi1 - eps, "< 0"));
            }
            if phi2 + eps >= FRAC_PI_2 {
                return Err(leaves("phi2 + eps", phi2 + eps, ">= pi/2"));
            }
            Hypothesis::Cone {
                phi1: phi1 - eps,
                phi2: phi2 + eps,
            }
        }
        Hypothesis::UnitVector { e, k1, k2 } => {
            let (k1, k2) = widen_pair(*k1, *k2, eps, None)?;
            Hypothesis::UnitVector { e: e.clone(), k1, k2 }
        }
        Hypothesis::Orthonormal { family, ks, hs } => {
            let mut nk = Vec::with_capacity(ks.len());
            let mut nh = Vec::with_capacity(ks.len());
            for (j, (k, h)) in ks.iter().zip(hs).enumerate() {
                let (a, b) = widen_pair(*k, *h, eps, Some(j))?;
                nk.push(a);
                nh.push(b);
            }
            Hypothesis::Orthonormal {
                family: family.clone(),
                ks: nk,
                hs: nh,
            }
        }
        Hypothesis::KCond { e, k } => {
            if eps >= FRAC_PI_2 {
                return Err(leaves("eps", eps, ">= pi/2"));
            }
            Hypothesis::KCond {
                e: e.clone(),
                k: k / eps.cos(),
            }
        }
        // Balls are not rotation invariant; the check below decides.
        other => other.clone(),
    })
}

fn perturb(w: &GridFunction, eps: f64, mode: Perturbation) -> Result<GridFunction> {
    let iv = w.interval();
    let values = w
        .nodes()
        .iter()
        .zip(w.values())
        .map(|(&t, v)| {
            let s = (t - iv.a()) / iv.width();
            let c = match mode {
                Perturbation::PhaseSpread => Complex64::from_polar(1.0, eps * (2.0 * s - 1.0)),
                Perturbation::Amplitude => Complex64::new(1.0 + eps * (TAU * s).sin(), 0.0),
            };
            v.scale(c)
        })
        .collect();
    w.with_values(values)
}

/// Perturbs the witness `w` of `h` by each `eps` and certifies the result.
///
/// Phase spreads are certified against the widened hypothesis, amplitude
/// modulation against `h` itself. A perturbed function outside its class
/// is an error naming the failed condition.
pub fn perturb_scan(
    w: &GridFunction,
    h: &Hypothesis,
    epsilons: &[f64],
    mode: Perturbation,
    rule: &QuadratureRule,
) -> Result<Vec<ScanPoint>> {
    epsilons
        .iter()
        .map(|&eps| {
            if !(eps >= 0.0 && eps.is_finite()) {
                return Err(invalid("epsilon", format!("must be finite and >= 0, got {eps}")));
            }
            let target = match mode {
                Perturbation::PhaseSpread => widen(h, eps)?,
                Perturbation::Amplitude => h.clone(),
            };
            let f = perturb(w, eps, mode)?;
            let r = certify(&f, &target, rule, DEFAULT_CHECK_TOL)?;
            if !r.hypothesis_verified {
                return Err(Error::LeavesClass(format!(
                    "`{}` fails at t = {} (margin {:e}){}",
                    target.tag(),
                    r.condition.worst_t,
                    r.condition.worst_margin,
                    r.condition
                        .diagnostic
                        .as_ref()
                        .map(|d| format!(": {d}"))
                        .unwrap_or_default()
                )));
            }
            let holds = equality_holds(&r, EQUALITY_TOL).unwrap_or(false);
            Ok(ScanPoint {
                epsilon: eps,
                gap: r.gap,
                equality_residual: r.equality_residual,
                equality_holds: holds,
                hypothesis: target,
            })
        })
        .collect()
}
