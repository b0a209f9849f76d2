//! Reverse-inequality coefficients, certified lower bounds on `||∫ f||`, and
//! equality-case predictions.
//!
//! Every supported hypothesis yields `c ∫ ||f|| <= ||∫ f||` for a closed-form
//! coefficient `c`. All but the Karamata baseline also characterize equality:
//! it holds iff `∫ f = (∫ ||f||) v` for a variant-specific vector `v`.

use num_complex::Complex64;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::function::GridFunction;
use crate::hilbert::ComplexVec;
use crate::hypotheses::{check, ConditionReport, Hypothesis, I};
use crate::quadrature::{integrate, QuadratureRule};

fn m_ratio(m: f64, big_m: f64) -> f64 {
    m * big_m / ((big_m + m) * (big_m + m))
}

fn m_root(m: f64, big_m: f64) -> f64 {
    (m * big_m).sqrt() / (big_m + m)
}

/// Closed-form coefficient of the reverse inequality for `h`.
///
/// The formula is total; a value above 1 means no function satisfies `h`
/// (see [`exceeds_one`]).
pub fn coefficient(h: &Hypothesis) -> f64 {
    match h {
        Hypothesis::KCond { k, .. } => 1.0 / k,
        Hypothesis::Karamata { theta } => theta.cos(),
        Hypothesis::UnitVector { k1, k2, .. } => (k1 * k1 + k2 * k2).sqrt(),
        Hypothesis::Disk { eta1, eta2, .. } => (2.0 - eta1 * eta1 - eta2 * eta2).sqrt(),
        Hypothesis::MBounds {
            m1,
            big_m1,
            m2,
            big_m2,
            ..
        } => 2.0 * (m_ratio(*m1, *big_m1) + m_ratio(*m2, *big_m2)).sqrt(),
        Hypothesis::Orthonormal { ks, hs, .. } => ks
            .iter()
            .zip(hs)
            .fold(0.0, |acc, (k, h)| acc + (k * k + h * h))
            .sqrt(),
        Hypothesis::OrthoDisk { rhos, etas, .. } => rhos
            .iter()
            .zip(etas)
            .fold(0.0, |acc, (r, e)| acc + (2.0 - r * r - e * e))
            .sqrt(),
        // Real form: the n = 1 case must reduce to the single-vector m/M bound.
        Hypothesis::OrthoMBounds {
            ms,
            big_ms,
            ns,
            big_ns,
            ..
        } => {
            let s = (0..ms.len()).fold(0.0, |acc, j| {
                acc + (m_ratio(ms[j], big_ms[j]) + m_ratio(ns[j], big_ns[j]))
            });
            2.0 * s.sqrt()
        }
        Hypothesis::Cone { phi1, phi2 } => {
            let (s, c) = (phi1.sin(), phi2.cos());
            (s * s + c * c).sqrt()
        }
    }
}

/// Slack allowed before a coefficient is flagged as exceeding 1.
pub const COEFFICIENT_WARN_TOL: f64 = 1e-12;

pub fn exceeds_one(coefficient: f64) -> bool {
    coefficient > 1.0 + COEFFICIENT_WARN_TOL
}

/// The vector `v` with `∫ f = (∫ ||f||) v` exactly in the equality case, or
/// `None` for the Karamata baseline.
pub fn equality_direction(h: &Hypothesis) -> Option<ComplexVec> {
    let along = |e: &ComplexVec, c: Complex64| Some(e.scale(c));
    let combine = |vs: &[ComplexVec], cs: &mut dyn Iterator<Item = Complex64>| {
        let mut acc = ComplexVec::zeros(vs[0].dim()).expect("dimension >= 1");
        for (e, c) in vs.iter().zip(cs) {
            acc.add_scaled(c, e).expect("family shares a dimension");
        }
        Some(acc)
    };
    match h {
        Hypothesis::Karamata { .. } => None,
        Hypothesis::KCond { e, k } => along(e, Complex64::new(1.0 / k, 0.0)),
        Hypothesis::UnitVector { e, k1, k2 } => along(e, Complex64::new(*k1, *k2)),
        Hypothesis::Disk { e, eta1, eta2 } => along(
            e,
            Complex64::new((1.0 - eta1 * eta1).sqrt(), (1.0 - eta2 * eta2).sqrt()),
        ),
        Hypothesis::MBounds {
            e,
            m1,
            big_m1,
            m2,
            big_m2,
        } => along(
            e,
            Complex64::new(2.0 * m_root(*m1, *big_m1), 2.0 * m_root(*m2, *big_m2)),
        ),
        Hypothesis::Orthonormal { family, ks, hs } => combine(
            family.vectors(),
            &mut ks.iter().zip(hs).map(|(k, h)| Complex64::new(*k, *h)),
        ),
        Hypothesis::OrthoDisk { family, rhos, etas } => combine(
            family.vectors(),
            &mut rhos
                .iter()
                .zip(etas)
                .map(|(r, e)| Complex64::new((1.0 - r * r).sqrt(), (1.0 - e * e).sqrt())),
        ),
        Hypothesis::OrthoMBounds {
            family,
            ms,
            big_ms,
            ns,
            big_ns,
        } => combine(
            family.vectors(),
            &mut (0..ms.len()).map(|j| {
                Complex64::new(
                    2.0 * m_root(ms[j], big_ms[j]),
                    2.0 * m_root(ns[j], big_ns[j]),
                )
            }),
        ),
        Hypothesis::Cone { phi1, phi2 } => Some(ComplexVec::scalar(
            Complex64::new(phi2.cos(), 0.0) + I * phi1.sin(),
        )),
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct BoundReport {
    pub hypothesis: String,
    pub coefficient: f64,
    /// Set when the coefficient exceeds 1: the hypothesis class is empty.
    pub coefficient_exceeds_one: bool,
    /// `coefficient * ∫ ||f||`
    pub lower_bound: f64,
    pub norm_integral: f64,
    /// `||∫ f||`
    pub true_norm: f64,
    /// `true_norm - lower_bound`
    pub gap: f64,
    pub integral: ComplexVec,
    /// Predicted `∫ f` in the equality case.
    pub equality_vector: Option<ComplexVec>,
    /// `||∫ f - equality_vector||`
    pub equality_residual: Option<f64>,
    pub hypothesis_verified: bool,
    pub condition: ConditionReport,
}

/// Checks `h` on `f`, integrates with `rule`, and compares the certified
/// lower bound against `||∫ f||`.
pub fn certify(
    f: &GridFunction,
    h: &Hypothesis,
    rule: &QuadratureRule,
    tol: f64,
) -> Result<BoundReport> {
    let condition = check(f, h, tol)?;
    let ints = integrate(f, rule)?;
    let c = coefficient(h);
    let true_norm = ints.vector.norm();
    let lower_bound = c * ints.norm;
    let equality_vector =
        equality_direction(h).map(|v| v.scale(Complex64::new(ints.norm, 0.0)));
    let equality_residual = equality_vector
        .as_ref()
        .map(|v| ints.vector.sub(v).map(|r| r.norm()))
        .transpose()?;
    Ok(BoundReport {
        hypothesis: h.tag().to_string(),
        coefficient: c,
        coefficient_exceeds_one: exceeds_one(c),
        lower_bound,
        norm_integral: ints.norm,
        true_norm,
        gap: true_norm - lower_bound,
        integral: ints.vector,
        equality_vector,
        equality_residual,
        hypothesis_verified: condition.holds,
        condition,
    })
}

/// Two-sided equality test: both `|gap|` and the residual against the
/// predicted equality vector must vanish, relative to `max(1, true_norm)`.
pub fn equality_holds(report: &BoundReport, tol: f64) -> Result<bool> {
    let residual = report
        .equality_residual
        .ok_or(Error::NoEqualityCase("karamata"))?;
    let scale = report.true_norm.max(1.0);
    Ok(report.gap.abs() <= tol * scale && residual <= tol * scale)
}

/// `(cos phi2, sqrt(sin^2 phi1 + cos^2 phi2))`: the Karamata coefficient for
/// the half-angle `phi2` against the cone coefficient.
pub fn karamata_vs_cone(phi1: f64, phi2: f64) -> (f64, f64) {
    (
        coefficient(&Hypothesis::Karamata { theta: phi2 }),
        coefficient(&Hypothesis::Cone { phi1, phi2 }),
    )
}
