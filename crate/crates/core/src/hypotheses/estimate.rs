use std::f64::consts::SQRT_2;

use super::{check_unit, Hypothesis};
use crate::error::{invalid, Error, Result};
use crate::function::GridFunction;
use crate::hilbert::{inner, ComplexVec};

// Rounding slack before a negative infimum is called infeasible.
const EST_TOL: f64 = 1e-12;

fn nonzero_projections(f: &GridFunction, e: &ComplexVec) -> Result<Vec<(f64, f64, f64)>> {
    check_unit("e", e)?;
    if f.dim() != e.dim() {
        return Err(Error::DimensionMismatch {
            expected: e.dim(),
            found: f.dim(),
        });
    }
    let pts: Vec<_> = f
        .check_points()
        .into_iter()
        .filter_map(|(_, x)| {
            let n = x.norm();
            (n > 0.0).then(|| {
                let z = inner(&x, e).expect("checked dimension");
                (z.re, z.im, n)
            })
        })
        .collect();
    if pts.is_empty() {
        return Err(Error::ZeroFunction);
    }
    Ok(pts)
}

/// Largest `(k1, k2)` such that `UnitVector(e, k1, k2)` holds on every
/// checked point of `f`: the infima of `Re<f, e>/||f||` and `Im<f, e>/||f||`.
pub fn estimate_unit_vector(f: &GridFunction, e: &ComplexVec) -> Result<(f64, f64)> {
    let pts = nonzero_projections(f, e)?;
    let k1 = pts.iter().map(|p| p.0 / p.2).fold(f64::INFINITY, f64::min);
    let k2 = pts.iter().map(|p| p.1 / p.2).fold(f64::INFINITY, f64::min);
    if k1 < -EST_TOL {
        return Err(Error::Infeasible(format!("inf Re<f, e>/||f|| = {k1} < 0")));
    }
    if k2 < -EST_TOL {
        return Err(Error::Infeasible(format!("inf Im<f, e>/||f|| = {k2} < 0")));
    }
    Ok((k1.max(0.0), k2.max(0.0)))
}

/// Smallest `K >= 1` with `||f(t)|| <= K Re<f(t), e>` on every checked point.
pub fn estimate_k(f: &GridFunction, e: &ComplexVec) -> Result<f64> {
    let pts = nonzero_projections(f, e)?;
    let mut k = 1.0_f64;
    for (re, _, n) in pts {
        if re <= 0.0 {
            return Err(Error::Infeasible(format!(
                "Re<f, e> = {re} <= 0 where ||f|| = {n}"
            )));
        }
        k = k.max(n / re);
    }
    Ok(k)
}

/// `sqrt(1 - eta^2)`: the unit-vector constant implied by a disk of radius `eta`.
pub fn disk_to_k(eta: f64) -> Result<f64> {
    if !(eta > 0.0 && eta < 1.0) {
        return Err(invalid("eta", format!("must lie in (0, 1), got {eta}")));
    }
    Ok((1.0 - eta * eta).sqrt())
}

/// `2 sqrt(m M) / (M + m)`: the unit-vector constant implied by an m/M condition.
pub fn mm_to_k(m: f64, big_m: f64) -> Result<f64> {
    if !(m > 0.0 && m.is_finite()) {
        return Err(invalid("m", format!("must be > 0, got {m}")));
    }
    if !(big_m >= m && big_m.is_finite()) {
        return Err(invalid("M", format!("must be >= m = {m}, got {big_m}")));
    }
    Ok(2.0 * (m * big_m).sqrt() / (big_m + m))
}

/// Whether the closed balls `B(e, eta1)` and `B(ie, eta2)` intersect.
///
/// The centres are `||e - ie|| = sqrt(2)` apart in any dimension, so the
/// intersection is nonempty iff `eta1 + eta2 >= sqrt(2)`; at equality it is
/// the single point `(1 + i)/2 e`.
pub fn disk_feasible(eta1: f64, eta2: f64) -> bool {
    eta1 + eta2 >= SQRT_2
}

impl Hypothesis {
    /// The unit-vector hypothesis implied pointwise by a disk or m/M hypothesis.
    pub fn implied_unit_vector(&self) -> Result<Hypothesis> {
        match self {
            Hypothesis::Disk { e, eta1, eta2 } => Ok(Hypothesis::UnitVector {
                e: e.clone(),
                k1: disk_to_k(*eta1)?,
                k2: disk_to_k(*eta2)?,
            }),
            Hypothesis::MBounds {
                e,
                m1,
                big_m1,
                m2,
                big_m2,
            } => Ok(Hypothesis::UnitVector {
                e: e.clone(),
                k1: mm_to_k(*m1, *big_m1)?,
                k2: mm_to_k(*m2, *big_m2)?,
            }),
            other => Err(Error::Unsupported(format!(
                "`{}` does not reduce to a unit-vector hypothesis",
                other.tag()
            ))),
        }
    }
}
