//! Seeded random functions whose node values lie in a hypothesis class.
//!
//! Every supported class is convex, so the linear interpolant of admissible
//! node values is admissible too and passes [`check`](crate::hypotheses::check).

use num_complex::Complex64;
use serde::{Deserialize, Serialize};

use super::rng::Sampler;
use crate::error::{invalid, Error, Result};
use crate::function::{GridFunction, Interp, Interval};
use crate::hilbert::{projection_residual, ComplexVec, OrthonormalFamily};
use crate::hypotheses::{disk_feasible, Hypothesis, I};

/// Attempts per node before rejection sampling gives up.
pub const REJECTION_CAP: u64 = 1_000_000;

const TANGENT_TOL: f64 = 1e-12;

/// A random function family: node values drawn from the class of
/// `hypothesis` on `nodes` uniform nodes of `interval`.
///
/// `rmin`/`rmax` bound the modulus for the scale-invariant classes (cones,
/// sectors, unit-vector and K conditions); the ball classes ignore them.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct GeneratorSpec {
    pub hypothesis: Hypothesis,
    #[serde(default = "Interval::unit")]
    pub interval: Interval,
    #[serde(default = "default_nodes")]
    pub nodes: usize,
    #[serde(default = "default_rmin")]
    pub rmin: f64,
    #[serde(default = "default_rmax")]
    pub rmax: f64,
}

fn default_nodes() -> usize {
    16
}

fn default_rmin() -> f64 {
    0.5
}

fn default_rmax() -> f64 {
    1.5
}

impl GeneratorSpec {
    pub fn matching(h: Hypothesis) -> Self {
        GeneratorSpec {
            hypothesis: h,
            interval: Interval::unit(),
            nodes: default_nodes(),
            rmin: default_rmin(),
            rmax: default_rmax(),
        }
    }

    pub fn with_nodes(mut self, nodes: usize) -> Self {
        self.nodes = nodes;
        self
    }

    pub fn with_radii(mut self, rmin: f64, rmax: f64) -> Self {
        self.rmin = rmin;
        self.rmax = rmax;
        self
    }

    /// Draws one function; identical seeds give bit-identical results.
    pub fn sample(&self, seed: u64) -> Result<GridFunction> {
        if self.nodes < 2 {
            return Err(invalid("nodes", format!("need at least 2, got {}", self.nodes)));
        }
        if !(self.rmin > 0.0 && self.rmax >= self.rmin && self.rmax.is_finite()) {
            return Err(invalid(
                "rmax",
                format!("need 0 < rmin <= rmax, got [{}, {}]", self.rmin, self.rmax),
            ));
        }
        let plan = Plan::new(&self.hypothesis)?;
        let mut s = Sampler::new(seed);
        let mut values = Vec::with_capacity(self.nodes);
        for _ in 0..self.nodes {
            values.push(plan.draw(&mut s, self.rmin, self.rmax)?);
        }
        GridFunction::new(
            self.interval,
            self.interval.uniform_nodes(self.nodes),
            values,
            Interp::Linear,
        )
    }
}

enum Plan {
    Sector { lo: f64, hi: f64 },
    Directional {
        family: OrthonormalFamily,
        base: Vec<f64>,
    },
    KCone { e: ComplexVec, k: f64 },
    Balls {
        balls: Vec<(ComplexVec, f64)>,
        /// A ball containing the intersection, sampled from by rejection.
        proposal: (ComplexVec, f64),
    },
    Point(ComplexVec),
}

/// The smallest of the given balls and of the balls bounding each pairwise
/// lens. The lens of `B(c1, r1)` and `B(c2, r2)` lies in the ball about the
/// point where the radical hyperplane cuts the segment, with the half-chord
/// as radius, whenever that point lies between the centres.
fn proposal_ball(balls: &[(ComplexVec, f64)]) -> Result<(ComplexVec, f64)> {
    let mut best = balls
        .iter()
        .min_by(|p, q| p.1.total_cmp(&q.1))
        .cloned()
        .expect("at least two balls");
    for (i, (c1, r1)) in balls.iter().enumerate() {
        for (c2, r2) in &balls[i + 1..] {
            let u = c2.sub(c1)?;
            let d = u.norm();
            if d == 0.0 {
                continue;
            }
            let a = (d * d + r1 * r1 - r2 * r2) / (2.0 * d);
            if !(0.0..=d).contains(&a) {
                continue;
            }
            let h = (r1 * r1 - a * a).max(0.0).sqrt();
            if h < best.1 {
                let mut p = c1.clone();
                p.add_scaled(Complex64::new(a / d, 0.0), &u)?;
                best = (p, h);
            }
        }
    }
    Ok(best)
}

fn m_ball(e: &ComplexVec, rot: Complex64, m: f64, big_m: f64) -> (ComplexVec, f64) {
    (e.scale(rot * (0.5 * (big_m + m))), 0.5 * (big_m - m))
}

impl Plan {
    fn new(h: &Hypothesis) -> Result<Plan> {
        h.validate()?;
        let one = Complex64::new(1.0, 0.0);
        Ok(match h {
            Hypothesis::Cone { phi1, phi2 } => Plan::Sector { lo: *phi1, hi: *phi2 },
            Hypothesis::Karamata { theta } => Plan::Sector {
                lo: -theta,
                hi: *theta,
            },
            Hypothesis::KCond { e, k } => Plan::KCone { e: e.clone(), k: *k },
            Hypothesis::UnitVector { e, k1, k2 } => {
                let family = crate::hilbert::check_orthonormal(vec![e.clone()], 1e-12)?;
                Plan::directional(family, &[*k1], &[*k2])?
            }
            Hypothesis::Orthonormal { family, ks, hs } => {
                Plan::directional(family.clone(), ks, hs)?
            }
            Hypothesis::Disk { e, eta1, eta2 } => {
                if !disk_feasible(*eta1, *eta2) {
                    return Err(Error::EmptyIntersection(format!(
                        "eta1 + eta2 = {} < sqrt(2)",
                        eta1 + eta2
                    )));
                }
                Plan::balls(vec![(e.clone(), *eta1), (e.scale(I), *eta2)])?
            }
            Hypothesis::MBounds {
                e,
                m1,
                big_m1,
                m2,
                big_m2,
            } => Plan::balls(vec![m_ball(e, one, *m1, *big_m1), m_ball(e, I, *m2, *big_m2)])?,
            Hypothesis::OrthoDisk { family, rhos, etas } => Plan::balls(
                family
                    .vectors()
                    .iter()
                    .enumerate()
                    .flat_map(|(j, e)| [(e.clone(), rhos[j]), (e.scale(I), etas[j])])
                    .collect(),
            )?,
            Hypothesis::OrthoMBounds {
                family,
                ms,
                big_ms,
                ns,
                big_ns,
            } => Plan::balls(
                family
                    .vectors()
                    .iter()
                    .enumerate()
                    .flat_map(|(j, e)| {
                        [m_ball(e, one, ms[j], big_ms[j]), m_ball(e, I, ns[j], big_ns[j])]
                    })
                    .collect(),
            )?,
        })
    }

    fn directional(family: OrthonormalFamily, ks: &[f64], hs: &[f64]) -> Result<Plan> {
        let base: Vec<f64> = ks.iter().zip(hs).flat_map(|(k, h)| [*k, *h]).collect();
        let s: f64 = base.iter().map(|b| b * b).sum();
        if s > 1.0 + TANGENT_TOL {
            return Err(Error::Infeasible(format!(
                "sum of squared bounds is {s} > 1; only f = 0 qualifies"
            )));
        }
        Ok(Plan::Directional { family, base })
    }

    fn balls(balls: Vec<(ComplexVec, f64)>) -> Result<Plan> {
        let inside = |x: &ComplexVec, tol: f64| {
            balls
                .iter()
                .all(|(c, r)| x.sub(c).expect("same dim").norm() <= r + tol)
        };
        for (i, (ci, ri)) in balls.iter().enumerate() {
            for (cj, rj) in &balls[i + 1..] {
                let d = ci.sub(cj)?.norm();
                let reach = ri + rj;
                if d > reach * (1.0 + TANGENT_TOL) {
                    return Err(Error::EmptyIntersection(format!(
                        "balls of radii {ri} and {rj} lie {d} apart"
                    )));
                }
                if d >= reach * (1.0 - TANGENT_TOL) && d > 0.0 {
                    // externally tangent: the intersection is one point
                    let mut p = ci.clone();
                    p.add_scaled(Complex64::new(ri / d, 0.0), &cj.sub(ci)?)?;
                    if inside(&p, 1e-12) {
                        return Ok(Plan::Point(p));
                    }
                    return Err(Error::EmptyIntersection(
                        "tangency point violates another ball".into(),
                    ));
                }
            }
        }
        let proposal = proposal_ball(&balls)?;
        Ok(Plan::Balls { balls, proposal })
    }

    fn draw(&self, s: &mut Sampler, rmin: f64, rmax: f64) -> Result<ComplexVec> {
        match self {
            Plan::Sector { lo, hi } => {
                let r = s.range(rmin, rmax);
                let phi = s.range(*lo, *hi);
                Ok(ComplexVec::scalar(Complex64::from_polar(r, phi)))
            }
            Plan::KCone { e, k } => {
                // f = r (e + v) with Re<v, e> = 0 and ||v||^2 <= K^2 - 1
                let g = s.gaussian_vec(e.dim());
                let mut v = g.clone();
                v.add_scaled(Complex64::new(-g.inner(e)?.re, 0.0), e)?;
                let nv = v.norm();
                let len = s.uniform() * (k * k - 1.0).sqrt();
                let mut x = e.clone();
                if nv > 0.0 {
                    x.add_scaled(Complex64::new(len / nv, 0.0), &v)?;
                }
                Ok(x.scale(Complex64::new(s.range(rmin, rmax), 0.0)))
            }
            Plan::Directional { family, base } => {
                // coefficients z_j >= (k_j, h_j) componentwise with sum |z_j|^2 <= 1
                let dir: Vec<f64> = base.iter().map(|_| s.normal().abs()).collect();
                let a: f64 = dir.iter().map(|d| d * d).sum();
                let b: f64 = 2.0 * base.iter().zip(&dir).map(|(x, d)| x * d).sum::<f64>();
                let c: f64 = base.iter().map(|x| x * x).sum::<f64>() - 1.0;
                let t_max = if a > 0.0 && c < 0.0 {
                    (-b + (b * b - 4.0 * a * c).sqrt()) / (2.0 * a)
                } else {
                    0.0
                };
                let t = s.uniform() * t_max;
                let z: Vec<f64> = base.iter().zip(&dir).map(|(x, d)| x + t * d).collect();
                let mass: f64 = z.iter().map(|x| x * x).sum();
                let mut x = ComplexVec::zeros(family.dim())?;
                for (j, e) in family.vectors().iter().enumerate() {
                    x.add_scaled(Complex64::new(z[2 * j], z[2 * j + 1]), e)?;
                }
                let w = projection_residual(&s.gaussian_vec(family.dim()), family)?;
                let nw = w.norm();
                let room = (1.0 - mass).max(0.0);
                let len = (s.uniform() * room).sqrt();
                if nw > 1e-8 {
                    x.add_scaled(Complex64::new(len / nw, 0.0), &w)?;
                }
                Ok(x.scale(Complex64::new(s.range(rmin, rmax), 0.0)))
            }
            Plan::Balls { balls, proposal } => {
                let (c, r) = proposal;
                for _ in 0..REJECTION_CAP {
                    let x = s.in_ball(c, *r);
                    if balls
                        .iter()
                        .all(|(ci, ri)| x.sub(ci).expect("same dim").norm() <= *ri)
                    {
                        return Ok(x);
                    }
                }
                Err(Error::RejectionCapExceeded {
                    attempts: REJECTION_CAP,
                })
            }
            Plan::Point(p) => Ok(p.clone()),
        }
    }
}

/// Scalar function with node values `r e^{i phi}`, `r` uniform in
/// `[rmin, rmax]` and `phi` uniform in `[phi1, phi2]`, on `[0, 1]`.
pub fn gen_cone(
    seed: u64,
    phi1: f64,
    phi2: f64,
    rmin: f64,
    rmax: f64,
    nodes: usize,
) -> Result<GridFunction> {
    GeneratorSpec::matching(Hypothesis::Cone { phi1, phi2 })
        .with_nodes(nodes)
        .with_radii(rmin, rmax)
        .sample(seed)
}

/// Function on `[0, 1]` with node values drawn uniformly from
/// `B(e, eta1) ∩ B(ie, eta2)` by rejection from the smaller ball.
pub fn gen_disk(seed: u64, e: ComplexVec, eta1: f64, eta2: f64, nodes: usize) -> Result<GridFunction> {
    GeneratorSpec::matching(Hypothesis::Disk { e, eta1, eta2 })
        .with_nodes(nodes)
        .sample(seed)
}

/// Counts how many of `samples` uniform draws from the smaller of the disks
/// `D(1, eta1)`, `D(i, eta2)` in the complex plane land in both.
pub fn rejection_probe(eta1: f64, eta2: f64, samples: u64, seed: u64) -> u64 {
    let one = ComplexVec::scalar(Complex64::new(1.0, 0.0));
    let i = ComplexVec::scalar(I);
    let (c, r) = if eta1 <= eta2 { (&one, eta1) } else { (&i, eta2) };
    let mut s = Sampler::new(seed);
    (0..samples)
        .filter(|_| {
            let x = s.in_ball(c, r);
            x.sub(&one).unwrap().norm() <= eta1 && x.sub(&i).unwrap().norm() <= eta2
        })
        .count() as u64
}
