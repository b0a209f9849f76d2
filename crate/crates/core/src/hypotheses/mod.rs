//! Pointwise hypotheses under which `||∫ f||` is bounded below by a multiple
//! of `∫ ||f||`, their checkers, and best-constant estimators.

mod check;
mod estimate;

pub use check::{check, mforms_agree, pointwise_slack, ConditionReport, PointSlack};
pub use estimate::{disk_feasible, disk_to_k, estimate_k, estimate_unit_vector, mm_to_k};

use std::f64::consts::FRAC_PI_2;

use num_complex::Complex64;
use serde::{Deserialize, Serialize};

use crate::error::{invalid, Error, Result};
use crate::function::GridFunction;
use crate::hilbert::{ComplexVec, OrthonormalFamily};

/// Default absolute tolerance on pointwise slack.
pub const DEFAULT_CHECK_TOL: f64 = 1e-9;

/// How far `||e||` may stray from 1 for a direction vector.
pub const UNIT_TOL: f64 = 1e-12;

pub(crate) const I: Complex64 = Complex64::new(0.0, 1.0);

/// Every hypothesis class supported by the checker and the bound calculator.
///
/// Serialized as a JSON object tagged by `"type"`.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(tag = "type", rename_all = "snake_case")]
pub enum Hypothesis {
    /// `||f(t)|| <= K Re<f(t), e>`.
    KCond {
        e: ComplexVec,
        #[serde(rename = "K")]
        k: f64,
    },
    /// `-theta <= arg f(t) <= theta`, scalar functions only.
    Karamata { theta: f64 },
    /// `k1 ||f|| <= Re<f, e>` and `k2 ||f|| <= Im<f, e>`.
    UnitVector { e: ComplexVec, k1: f64, k2: f64 },
    /// `||f - e|| <= eta1` and `||f - i e|| <= eta2`.
    Disk { e: ComplexVec, eta1: f64, eta2: f64 },
    /// `Re<M1 e - f, f - m1 e> >= 0` and `Re<M2 ie - f, f - m2 ie> >= 0`.
    MBounds {
        e: ComplexVec,
        m1: f64,
        #[serde(rename = "M1")]
        big_m1: f64,
        m2: f64,
        #[serde(rename = "M2")]
        big_m2: f64,
    },
    /// `k_j ||f|| <= Re<f, e_j>` and `h_j ||f|| <= Im<f, e_j>` for every j.
    Orthonormal {
        family: OrthonormalFamily,
        ks: Vec<f64>,
        hs: Vec<f64>,
    },
    /// `||f - e_k|| <= rho_k` and `||f - i e_k|| <= eta_k` for every k.
    OrthoDisk {
        family: OrthonormalFamily,
        rhos: Vec<f64>,
        etas: Vec<f64>,
    },
    /// The m/M condition against every `e_k` and `i e_k`.
    OrthoMBounds {
        family: OrthonormalFamily,
        ms: Vec<f64>,
        #[serde(rename = "Ms")]
        big_ms: Vec<f64>,
        ns: Vec<f64>,
        #[serde(rename = "Ns")]
        big_ns: Vec<f64>,
    },
    /// `0 <= phi1 <= arg f(t) <= phi2 < pi/2`, scalar functions only.
    Cone { phi1: f64, phi2: f64 },
}

fn check_unit(field: &str, e: &ComplexVec) -> Result<()> {
    let n = e.norm();
    if !((n - 1.0).abs() <= UNIT_TOL) {
        return Err(invalid(field, format!("must be a unit vector, norm is {n}")));
    }
    Ok(())
}

fn check_open_unit(field: &str, x: f64) -> Result<()> {
    if !(x > 0.0 && x < 1.0) {
        return Err(invalid(field, format!("must lie in (0, 1), got {x}")));
    }
    Ok(())
}

fn check_nonneg(field: &str, x: f64) -> Result<()> {
    if !(x >= 0.0 && x.is_finite()) {
        return Err(invalid(field, format!("must be finite and >= 0, got {x}")));
    }
    Ok(())
}

fn check_ordered(lo_field: &str, lo: f64, hi_field: &str, hi: f64) -> Result<()> {
    if !(lo > 0.0 && lo.is_finite()) {
        return Err(invalid(lo_field, format!("must be > 0, got {lo}")));
    }
    if !(hi >= lo && hi.is_finite()) {
        return Err(invalid(hi_field, format!("must be >= {lo_field} = {lo}, got {hi}")));
    }
    Ok(())
}

fn check_len(field: &str, xs: &[f64], n: usize) -> Result<()> {
    if xs.len() != n {
        return Err(invalid(
            field,
            format!("needs one entry per family vector ({n}), found {}", xs.len()),
        ));
    }
    Ok(())
}

impl Hypothesis {
    pub fn tag(&self) -> &'static str {
        match self {
            Hypothesis::KCond { .. } => "k_cond",
            Hypothesis::Karamata { .. } => "karamata",
            Hypothesis::UnitVector { .. } => "unit_vector",
            Hypothesis::Disk { .. } => "disk",
            Hypothesis::MBounds { .. } => "m_bounds",
            Hypothesis::Orthonormal { .. } => "orthonormal",
            Hypothesis::OrthoDisk { .. } => "ortho_disk",
            Hypothesis::OrthoMBounds { .. } => "ortho_m_bounds",
            Hypothesis::Cone { .. } => "cone",
        }
    }

    /// Dimension of the functions this hypothesis applies to.
    pub fn dim(&self) -> usize {
        match self {
            Hypothesis::KCond { e, .. }
            | Hypothesis::UnitVector { e, .. }
            | Hypothesis::Disk { e, .. }
            | Hypothesis::MBounds { e, .. } => e.dim(),
            Hypothesis::Orthonormal { family, .. }
            | Hypothesis::OrthoDisk { family, .. }
            | Hypothesis::OrthoMBounds { family, .. } => family.dim(),
            Hypothesis::Karamata { .. } | Hypothesis::Cone { .. } => 1,
        }
    }

    pub fn is_scalar_only(&self) -> bool {
        matches!(self, Hypothesis::Karamata { .. } | Hypothesis::Cone { .. })
    }

    /// Checks every parameter range, naming the first offending field.
    pub fn validate(&self) -> Result<()> {
        match self {
            Hypothesis::KCond { e, k } => {
                check_unit("e", e)?;
                if !(*k >= 1.0 && k.is_finite()) {
                    return Err(invalid("K", format!("must be finite and >= 1, got {k}")));
                }
            }
            Hypothesis::Karamata { theta } => {
                if !(*theta > 0.0 && *theta < FRAC_PI_2) {
                    return Err(invalid("theta", format!("must lie in (0, pi/2), got {theta}")));
                }
            }
            Hypothesis::UnitVector { e, k1, k2 } => {
                check_unit("e", e)?;
                check_nonneg("k1", *k1)?;
                check_nonneg("k2", *k2)?;
            }
            Hypothesis::Disk { e, eta1, eta2 } => {
                check_unit("e", e)?;
                check_open_unit("eta1", *eta1)?;
                check_open_unit("eta2", *eta2)?;
            }
            Hypothesis::MBounds {
                e,
                m1,
                big_m1,
                m2,
                big_m2,
            } => {
                check_unit("e", e)?;
                check_ordered("m1", *m1, "M1", *big_m1)?;
                check_ordered("m2", *m2, "M2", *big_m2)?;
            }
            Hypothesis::Orthonormal { family, ks, hs } => {
                check_len("ks", ks, family.len())?;
                check_len("hs", hs, family.len())?;
                for (j, (&k, &h)) in ks.iter().zip(hs).enumerate() {
                    check_nonneg(&format!("ks[{j}]"), k)?;
                    check_nonneg(&format!("hs[{j}]"), h)?;
                }
            }
            Hypothesis::OrthoDisk { family, rhos, etas } => {
                check_len("rhos", rhos, family.len())?;
                check_len("etas", etas, family.len())?;
                for (j, (&r, &e)) in rhos.iter().zip(etas).enumerate() {
                    check_open_unit(&format!("rhos[{j}]"), r)?;
                    check_open_unit(&format!("etas[{j}]"), e)?;
                }
            }
            Hypothesis::OrthoMBounds {
                family,
                ms,
                big_ms,
                ns,
                big_ns,
            } => {
                let n = family.len();
                check_len("ms", ms, n)?;
                check_len("Ms", big_ms, n)?;
                check_len("ns", ns, n)?;
                check_len("Ns", big_ns, n)?;
                for j in 0..n {
                    check_ordered(&format!("ms[{j}]"), ms[j], &format!("Ms[{j}]"), big_ms[j])?;
                    check_ordered(&format!("ns[{j}]"), ns[j], &format!("Ns[{j}]"), big_ns[j])?;
                }
            }
            Hypothesis::Cone { phi1, phi2 } => {
                if !(*phi1 >= 0.0) {
                    return Err(invalid("phi1", format!("must be >= 0, got {phi1}")));
                }
                if !(*phi2 >= *phi1) {
                    return Err(invalid("phi2", format!("must be >= phi1, got {phi2}")));
                }
                if !(*phi2 < FRAC_PI_2) {
                    return Err(invalid("phi2", format!("must be < pi/2, got {phi2}")));
                }
            }
        }
        Ok(())
    }

    /// Validates the hypothesis and that `f` lives in its space.
    pub fn validate_for(&self, f: &GridFunction) -> Result<()> {
        self.validate()?;
        let d = f.dim();
        if self.is_scalar_only() && d != 1 {
            return Err(Error::RequiresScalar {
                variant: self.tag(),
                found: d,
            });
        }
        if self.dim() != d {
            return Err(Error::DimensionMismatch {
                expected: self.dim(),
                found: d,
            });
        }
        Ok(())
    }

    /// Orthonormal hypothesis from real lower bounds only (all `h_j = 0`).
    pub fn orthonormal_real(family: OrthonormalFamily, ks: Vec<f64>) -> Self {
        let hs = vec![0.0; ks.len()];
        Hypothesis::Orthonormal { family, ks, hs }
    }
}
