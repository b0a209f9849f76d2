//! Quadrature of `∫ f` (vector-valued) and `∫ ||f||` (scalar) over a [`GridFunction`].
//!
//! Each node interval is split into `refinement` equal subintervals and the
//! interpolant is sampled at the resulting points. Trapezoid sums over those
//! samples; composite Simpson pairs consecutive subintervals (the three-point
//! rule for unequal spacing, which reduces to 1-4-1 on uniform grids). When
//! the total subinterval count would be odd, Simpson doubles the refinement.
//!
//! Consequences worth knowing:
//! * with `refinement = 1` on an even number of node intervals, Simpson panels
//!   span two node intervals, so node samples of a smooth function are
//!   integrated to fourth order;
//! * with even `refinement`, every Simpson panel sits inside one node interval
//!   and `∫ f` of a piecewise-linear interpolant is exact (as is trapezoid).
//!
//! Both integrals use the same nonnegative weights, summed left to right.

use num_complex::Complex64;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::function::GridFunction;
use crate::hilbert::ComplexVec;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Default, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum QuadKind {
    Trapezoid,
    #[default]
    Simpson,
}

impl std::str::FromStr for QuadKind {
    type Err = Error;
    fn from_str(s: &str) -> Result<Self> {
        match s {
            "trapezoid" => Ok(QuadKind::Trapezoid),
            "simpson" => Ok(QuadKind::Simpson),
            other => Err(Error::InvalidRule(format!("unknown quadrature kind `{other}`"))),
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct QuadratureRule {
    pub kind: QuadKind,
    /// Subdivisions per node interval.
    pub refinement: usize,
    /// Convergence tolerance used by [`refine_until`].
    pub tol: f64,
    pub max_doublings: u32,
}

impl Default for QuadratureRule {
    fn default() -> Self {
        QuadratureRule {
            kind: QuadKind::Simpson,
            refinement: 8,
            tol: 1e-10,
            max_doublings: 20,
        }
    }
}

impl QuadratureRule {
    pub fn new(kind: QuadKind, refinement: usize, tol: f64) -> Result<Self> {
        let rule = QuadratureRule {
            kind,
            refinement,
            tol,
            ..Default::default()
        };
        rule.validate()?;
        Ok(rule)
    }

    pub fn simpson(refinement: usize) -> Self {
        QuadratureRule {
            refinement,
            ..Default::default()
        }
    }

    pub fn trapezoid(refinement: usize) -> Self {
        QuadratureRule {
            kind: QuadKind::Trapezoid,
            refinement,
            ..Default::default()
        }
    }

    pub fn validate(&self) -> Result<()> {
        if self.refinement < 1 {
            return Err(Error::InvalidRule("refinement must be >= 1".into()));
        }
        if !(self.tol > 0.0) {
            return Err(Error::InvalidRule("tol must be > 0".into()));
        }
        Ok(())
    }

    /// Subdivisions per node interval actually used for `f`.
    pub fn effective_refinement(&self, f: &GridFunction) -> usize {
        let intervals = f.nodes().len() - 1;
        match self.kind {
            QuadKind::Simpson if (intervals * self.refinement) % 2 == 1 => 2 * self.refinement,
            _ => self.refinement,
        }
    }
}

/// `(∫ f, ∫ ||f||)` under one rule.
#[derive(Debug, Clone, PartialEq)]
pub struct Integrals {
    pub vector: ComplexVec,
    pub norm: f64,
}

struct Accum {
    vector: Vec<Complex64>,
    norm: f64,
}

impl Accum {
    fn add(&mut self, w: f64, v: &ComplexVec) {
        for (s, z) in self.vector.iter_mut().zip(v.entries()) {
            *s += z * w;
        }
        self.norm += w * v.norm();
    }
}

fn samples(f: &GridFunction, r: usize) -> impl Iterator<Item = (f64, ComplexVec)> + '_ {
    let nodes = f.nodes();
    let inner = (0..nodes.len() - 1).flat_map(move |k| {
        let (t0, t1) = (nodes[k], nodes[k + 1]);
        (0..r).map(move |j| {
            let t = if j == 0 {
                t0
            } else {
                t0 + (t1 - t0) * (j as f64) / (r as f64)
            };
            (t, f.eval_in(k, t))
        })
    });
    let last = nodes.len() - 1;
    inner.chain(std::iter::once((nodes[last], f.values()[last].clone())))
}

/// Both integrals under `rule` (validated) in a single pass.
pub fn integrate(f: &GridFunction, rule: &QuadratureRule) -> Result<Integrals> {
    rule.validate()?;
    Ok(integrate_at(f, rule.kind, rule.effective_refinement(f)))
}

fn integrate_at(f: &GridFunction, kind: QuadKind, r: usize) -> Integrals {
    let mut acc = Accum {
        vector: vec![Complex64::new(0.0, 0.0); f.dim()],
        norm: 0.0,
    };
    let mut it = samples(f, r);
    let mut prev = it.next().expect("grid has at least two nodes");
    match kind {
        QuadKind::Trapezoid => {
            for cur in it {
                let half = 0.5 * (cur.0 - prev.0);
                acc.add(half, &prev.1);
                acc.add(half, &cur.1);
                prev = cur;
            }
        }
        QuadKind::Simpson => {
            while let Some(mid) = it.next() {
                let end = it
                    .next()
                    .expect("effective refinement keeps the subinterval count even");
                let h0 = mid.0 - prev.0;
                let h1 = end.0 - mid.0;
                let s = (h0 + h1) / 6.0;
                acc.add(s * (2.0 - h1 / h0), &prev.1);
                acc.add(s * (h0 + h1) * (h0 + h1) / (h0 * h1), &mid.1);
                acc.add(s * (2.0 - h0 / h1), &end.1);
                prev = end;
            }
        }
    }
    Integrals {
        vector: ComplexVec::new(acc.vector).expect("dimension >= 1"),
        norm: acc.norm,
    }
}

/// `∫_a^b f(t) dt`, componentwise.
pub fn integrate_vector(f: &GridFunction, rule: &QuadratureRule) -> Result<ComplexVec> {
    integrate(f, rule).map(|i| i.vector)
}

/// `∫_a^b ||f(t)|| dt`.
pub fn integrate_norm(f: &GridFunction, rule: &QuadratureRule) -> Result<f64> {
    integrate(f, rule).map(|i| i.norm)
}

#[derive(Debug, Clone, PartialEq)]
pub struct Refined {
    pub integrals: Integrals,
    /// Difference between the last two estimates.
    pub achieved_tol: f64,
    /// Refinement of the returned estimate.
    pub refinement: usize,
    /// Successive differences, one per doubling.
    pub history: Vec<f64>,
}

/// Doubles the refinement until successive `(∫ f, ∫ ||f||)` estimates differ
/// by less than `rule.tol` (vector norm and absolute value respectively).
pub fn refine_until(f: &GridFunction, rule: &QuadratureRule) -> Result<Refined> {
    rule.validate()?;
    let mut r = rule.effective_refinement(f);
    let mut prev = integrate_at(f, rule.kind, r);
    let mut history = Vec::new();
    for _ in 0..rule.max_doublings {
        r = r
            .checked_mul(2)
            .ok_or_else(|| Error::InvalidRule("refinement overflow".into()))?;
        let cur = integrate_at(f, rule.kind, r);
        let dv = cur.vector.sub(&prev.vector)?.norm();
        let diff = dv.max((cur.norm - prev.norm).abs());
        history.push(diff);
        if diff < rule.tol {
            return Ok(Refined {
                integrals: cur,
                achieved_tol: diff,
                refinement: r,
                history,
            });
        }
        prev = cur;
    }
    Err(Error::NoConvergence {
        doublings: rule.max_doublings,
        achieved: history.last().copied().unwrap_or(f64::INFINITY),
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::function::{Interp, Interval};
    use approx::assert_relative_eq;
    use std::f64::consts::{FRAC_PI_3, FRAC_PI_6, PI};

    fn c(re: f64, im: f64) -> Complex64 {
        Complex64::new(re, im)
    }

    fn expit(a: f64, b: f64, n: usize) -> GridFunction {
        GridFunction::sample_scalar(Interval::new(a, b).unwrap(), n, Interp::Linear, |t| {
            c(t.cos(), t.sin())
        })
        .unwrap()
    }

    // ∫_a^b e^{it} dt = (e^{ib} - e^{ia}) / i
    fn expit_integral(a: f64, b: f64) -> Complex64 {
        (c(b.cos(), b.sin()) - c(a.cos(), a.sin())) / c(0.0, 1.0)
    }

    #[test]
    fn constant_integrates_exactly() {
        let e = ComplexVec::new(vec![c(0.6, 0.8), c(-1.0, 0.25)]).unwrap();
        let f = GridFunction::constant(Interval::unit(), 4, e.clone()).unwrap();
        for rule in [QuadratureRule::trapezoid(1), QuadratureRule::simpson(3)] {
            let got = integrate_vector(&f, &rule).unwrap();
            assert!(got.sub(&e).unwrap().norm() < 1e-15);
        }
        let unit = GridFunction::constant(Interval::unit(), 4, ComplexVec::scalar(c(1.0, 0.0))).unwrap();
        assert_relative_eq!(
            integrate_norm(&unit, &QuadratureRule::default()).unwrap(),
            1.0,
            max_relative = 1e-15
        );
    }

    #[test]
    fn dense_samples_of_expit_with_simpson() {
        let f = expit(0.0, FRAC_PI_3, 257);
        let rule = QuadratureRule::simpson(1);
        let got = integrate_vector(&f, &rule).unwrap().entries()[0];
        assert!((got - c(3f64.sqrt() / 2.0, 0.5)).norm() < 1e-9);
        assert!((integrate_norm(&f, &rule).unwrap() - FRAC_PI_3).abs() < 1e-9);

        let g = expit(FRAC_PI_6, FRAC_PI_3, 257);
        let z = integrate_vector(&g, &rule).unwrap().entries()[0];
        let expected = expit_integral(FRAC_PI_6, FRAC_PI_3);
        assert!((z - expected).norm() < 1e-9);
        assert_relative_eq!(z.norm(), 2.0 * (PI / 12.0).sin(), max_relative = 1e-9);
        assert_relative_eq!(z.norm(), 0.517638, epsilon = 1e-6);
    }

    #[test]
    fn constant_modulus_scalar() {
        let f = GridFunction::constant(Interval::unit(), 2, ComplexVec::scalar(c(0.5, 0.5))).unwrap();
        assert_relative_eq!(
            integrate_norm(&f, &QuadratureRule::default()).unwrap(),
            0.5f64.sqrt(),
            max_relative = 1e-14
        );
    }

    #[test]
    fn trapezoid_is_exact_for_linear_interpolant() {
        // ∫ of the chord interpolant over [t_k, t_k+1] is h (v_k + v_k+1) / 2,
        // independent of refinement.
        let f = expit(0.0, 1.0, 5);
        let coarse = integrate_vector(&f, &QuadratureRule::trapezoid(1)).unwrap();
        let fine = integrate_vector(&f, &QuadratureRule::trapezoid(64)).unwrap();
        let simpson_even = integrate_vector(&f, &QuadratureRule::simpson(2)).unwrap();
        assert!(coarse.sub(&fine).unwrap().norm() < 1e-15);
        assert!(coarse.sub(&simpson_even).unwrap().norm() < 1e-15);
    }

    #[test]
    fn odd_simpson_counts_are_doubled() {
        let f = expit(0.0, 1.0, 4); // 3 intervals
        assert_eq!(QuadratureRule::simpson(1).effective_refinement(&f), 2);
        assert_eq!(QuadratureRule::simpson(2).effective_refinement(&f), 2);
        assert_eq!(QuadratureRule::trapezoid(1).effective_refinement(&f), 1);
    }

    #[test]
    fn nonuniform_simpson_is_exact_for_quadratics() {
        let nodes = vec![0.0, 0.1, 0.5, 0.6, 1.0];
        let values = nodes
            .iter()
            .map(|&t: &f64| ComplexVec::scalar(c(t * t, 3.0 * t * t - t)))
            .collect();
        let f = GridFunction::new(Interval::unit(), nodes, values, Interp::Linear).unwrap();
        let got = integrate_vector(&f, &QuadratureRule::simpson(1)).unwrap().entries()[0];
        assert!((got - c(1.0 / 3.0, 0.5)).norm() < 1e-14);
    }

    #[test]
    fn rule_validation() {
        assert!(QuadratureRule::new(QuadKind::Simpson, 0, 1e-10).is_err());
        assert!(QuadratureRule::new(QuadKind::Simpson, 1, 0.0).is_err());
        assert_eq!("trapezoid".parse::<QuadKind>().unwrap(), QuadKind::Trapezoid);
        assert!("gauss".parse::<QuadKind>().is_err());
    }

    #[test]
    fn refine_constant_converges_immediately() {
        let f = GridFunction::constant(Interval::unit(), 3, ComplexVec::scalar(c(2.0, -1.0))).unwrap();
        let out = refine_until(&f, &QuadratureRule::default()).unwrap();
        assert_eq!(out.history.len(), 1);
        assert!(out.achieved_tol < 1e-10);
    }

    #[test]
    fn refine_smooth_norm_converges_at_fourth_order() {
        // Coarse chords of e^{it}: ∫f is exact for even refinement, so the
        // differences come from ∫||f||, whose integrand is smooth per piece.
        let f = expit(0.0, FRAC_PI_3, 3);
        let rule = QuadratureRule {
            refinement: 2,
            tol: 1e-14,
            ..Default::default()
        };
        let out = refine_until(&f, &rule).unwrap();
        let h = &out.history;
        assert!(h.len() >= 4, "{h:?}");
        for w in h.windows(2).take(3) {
            let ratio = w[0] / w[1];
            assert!((12.0..20.0).contains(&ratio), "ratio {ratio} in {h:?}");
        }
    }

    #[test]
    fn refine_step_function_converges_at_first_order() {
        let vals = vec![
            ComplexVec::scalar(c(1.0, 0.0)),
            ComplexVec::scalar(c(0.0, 3.0)),
            ComplexVec::scalar(c(0.0, 3.0)),
        ];
        let f = GridFunction::new(
            Interval::new(0.0, 2.0).unwrap(),
            vec![0.0, 1.0, 2.0],
            vals,
            Interp::ConstLeft,
        )
        .unwrap();
        let rule = QuadratureRule {
            refinement: 2,
            tol: 1e-4,
            ..Default::default()
        };
        let out = refine_until(&f, &rule).unwrap();
        for w in out.history.windows(2) {
            assert_relative_eq!(w[0] / w[1], 2.0, max_relative = 1e-6);
        }
        // converges to the step-function integral 1 + 3i
        let z = out.integrals.vector.entries()[0];
        assert!((z - c(1.0, 3.0)).norm() < 1e-3);
    }

    #[test]
    fn refine_reports_non_convergence() {
        let f = expit(0.0, 1.0, 3);
        let rule = QuadratureRule {
            refinement: 2,
            tol: 1e-300,
            max_doublings: 3,
            ..Default::default()
        };
        assert!(matches!(
            refine_until(&f, &rule),
            Err(Error::NoConvergence { doublings: 3, .. })
        ));
    }
}
