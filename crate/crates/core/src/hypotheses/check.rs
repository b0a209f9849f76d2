use num_complex::Complex64;
use serde::{Deserialize, Serialize};

use super::{Hypothesis, I};
use crate::error::{Error, Result};
use crate::function::GridFunction;
use crate::hilbert::{inner, ComplexVec};

/// Outcome of checking a pointwise hypothesis over the sampled model.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct ConditionReport {
    pub holds: bool,
    /// Location of the most negative slack (smallest `t` on ties).
    pub worst_t: f64,
    /// Most negative slack; `+inf` when every point was skipped.
    pub worst_margin: f64,
    pub checked_points: usize,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub diagnostic: Option<String>,
}

/// Slack of one sample point.
#[derive(Debug, Clone, PartialEq)]
pub enum PointSlack {
    Value(f64),
    /// The condition is vacuous here (a cone at `f(t) = 0`).
    Skipped,
    /// The point lies outside the half-plane a cone requires.
    OutsideHalfPlane(f64),
}

/// `Re<Z - x, x - z>`
fn m_form(x: &ComplexVec, upper: &ComplexVec, lower: &ComplexVec) -> f64 {
    let a = upper.sub(x).expect("validated dimension");
    let b = x.sub(lower).expect("validated dimension");
    inner(&a, &b).expect("validated dimension").re
}

fn scaled(e: &ComplexVec, c: Complex64) -> ComplexVec {
    e.scale(c)
}

fn real(x: f64) -> Complex64 {
    Complex64::new(x, 0.0)
}

fn arg_slack(z: Complex64, lo: f64, hi: f64) -> PointSlack {
    if z.re == 0.0 && z.im == 0.0 {
        return PointSlack::Skipped;
    }
    let arg = z.arg();
    let slack = (arg - lo).min(hi - arg);
    if z.re <= 0.0 {
        PointSlack::OutsideHalfPlane(slack)
    } else {
        PointSlack::Value(slack)
    }
}

/// The signed slack of hypothesis `h` at the point value `x`; nonnegative
/// iff the pointwise condition holds there.
///
/// `h` and `x` must already agree on dimension.
pub fn pointwise_slack(h: &Hypothesis, x: &ComplexVec) -> PointSlack {
    let nx = x.norm();
    let ip = |e: &ComplexVec| inner(x, e).expect("validated dimension");
    let v = match h {
        Hypothesis::KCond { e, k } => k * ip(e).re - nx,
        Hypothesis::Karamata { theta } => return arg_slack(x.entries()[0], -theta, *theta),
        Hypothesis::Cone { phi1, phi2 } => return arg_slack(x.entries()[0], *phi1, *phi2),
        Hypothesis::UnitVector { e, k1, k2 } => {
            let z = ip(e);
            (z.re - k1 * nx).min(z.im - k2 * nx)
        }
        Hypothesis::Disk { e, eta1, eta2 } => {
            let d1 = x.sub(e).expect("validated dimension").norm();
            let d2 = x.sub(&scaled(e, I)).expect("validated dimension").norm();
            (eta1 - d1).min(eta2 - d2)
        }
        Hypothesis::MBounds {
            e,
            m1,
            big_m1,
            m2,
            big_m2,
        } => {
            let s1 = m_form(x, &scaled(e, real(*big_m1)), &scaled(e, real(*m1)));
            let s2 = m_form(x, &scaled(e, I * big_m2), &scaled(e, I * m2));
            s1.min(s2)
        }
        Hypothesis::Orthonormal { family, ks, hs } => family
            .vectors()
            .iter()
            .zip(ks.iter().zip(hs))
            .map(|(e, (k, h))| {
                let z = ip(e);
                (z.re - k * nx).min(z.im - h * nx)
            })
            .fold(f64::INFINITY, f64::min),
        Hypothesis::OrthoDisk { family, rhos, etas } => family
            .vectors()
            .iter()
            .zip(rhos.iter().zip(etas))
            .map(|(e, (rho, eta))| {
                let d1 = x.sub(e).expect("validated dimension").norm();
                let d2 = x.sub(&scaled(e, I)).expect("validated dimension").norm();
                (rho - d1).min(eta - d2)
            })
            .fold(f64::INFINITY, f64::min),
        Hypothesis::OrthoMBounds {
            family,
            ms,
            big_ms,
            ns,
            big_ns,
        } => family
            .vectors()
            .iter()
            .enumerate()
            .map(|(j, e)| {
                let s1 = m_form(x, &scaled(e, real(big_ms[j])), &scaled(e, real(ms[j])));
                let s2 = m_form(x, &scaled(e, I * big_ns[j]), &scaled(e, I * ns[j]));
                s1.min(s2)
            })
            .fold(f64::INFINITY, f64::min),
    };
    PointSlack::Value(v)
}

/// Evaluates `h` at every node and node-interval midpoint of `f`.
///
/// `holds` iff `worst_margin >= -tol` and, for cones, no checked point has
/// `Re f(t) <= 0`.
pub fn check(f: &GridFunction, h: &Hypothesis, tol: f64) -> Result<ConditionReport> {
    h.validate_for(f)?;
    let mut worst_t = f.interval().a();
    let mut worst_margin = f64::INFINITY;
    let mut checked = 0;
    let mut diagnostic = None;
    for (t, x) in f.check_points() {
        let slack = match pointwise_slack(h, &x) {
            PointSlack::Skipped => continue,
            PointSlack::Value(s) => s,
            PointSlack::OutsideHalfPlane(s) => {
                if diagnostic.is_none() {
                    diagnostic = Some(format!("Re f(t) <= 0 at t = {t}"));
                }
                s
            }
        };
        checked += 1;
        if slack < worst_margin || slack.is_nan() {
            worst_margin = slack;
            worst_t = t;
        }
    }
    Ok(ConditionReport {
        holds: worst_margin >= -tol && diagnostic.is_none(),
        worst_t,
        worst_margin,
        checked_points: checked,
        diagnostic,
    })
}

/// Compares the two equivalent forms of the m/M condition at every checked
/// point: `Re<Z - x, x - z> >= 0` against `||x - (Z + z)/2|| <= ||Z - z||/2`.
///
/// Each form is judged against `tol` in its own units.
pub fn mforms_agree(f: &GridFunction, h: &Hypothesis, tol: f64) -> Result<bool> {
    h.validate_for(f)?;
    let pairs: Vec<(ComplexVec, ComplexVec)> = match h {
        Hypothesis::MBounds {
            e,
            m1,
            big_m1,
            m2,
            big_m2,
        } => vec![
            (scaled(e, real(*big_m1)), scaled(e, real(*m1))),
            (scaled(e, I * big_m2), scaled(e, I * m2)),
        ],
        Hypothesis::OrthoMBounds {
            family,
            ms,
            big_ms,
            ns,
            big_ns,
        } => family
            .vectors()
            .iter()
            .enumerate()
            .flat_map(|(j, e)| {
                [
                    (scaled(e, real(big_ms[j])), scaled(e, real(ms[j]))),
                    (scaled(e, I * big_ns[j]), scaled(e, I * ns[j])),
                ]
            })
            .collect(),
        other => {
            return Err(Error::Unsupported(format!(
                "mforms_agree needs an m/M hypothesis, got `{}`",
                other.tag()
            )))
        }
    };
    for (_, x) in f.check_points() {
        let mut form_i = true;
        let mut form_ii = true;
        for (upper, lower) in &pairs {
            form_i &= m_form(&x, upper, lower) >= -tol;
            let center = upper.add(lower)?.scale(real(0.5));
            let radius = 0.5 * upper.sub(lower)?.norm();
            form_ii &= radius - x.sub(&center)?.norm() >= -tol;
        }
        if form_i != form_ii {
            return Ok(false);
        }
    }
    Ok(true)
}
