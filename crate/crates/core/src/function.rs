//! Sampled vector-valued functions on a closed interval.
//!
//! A [`GridFunction`] is the model every check and bound is computed on:
//! node values plus an interpolation rule. Pointwise hypotheses are checked
//! at every node and every node-interval midpoint of the interpolant, so a
//! certificate is relative to this sampled model.

use num_complex::Complex64;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::hilbert::ComplexVec;

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
#[serde(try_from = "IntervalRepr")]
pub struct Interval {
    a: f64,
    b: f64,
}

#[derive(Deserialize)]
struct IntervalRepr {
    a: f64,
    b: f64,
}

impl TryFrom<IntervalRepr> for Interval {
    type Error = Error;
    fn try_from(r: IntervalRepr) -> Result<Self> {
        Interval::new(r.a, r.b)
    }
}

impl Interval {
    pub fn new(a: f64, b: f64) -> Result<Self> {
        if !(a < b) || !a.is_finite() || !b.is_finite() {
            return Err(Error::InvalidInterval { a, b });
        }
        Ok(Interval { a, b })
    }

    pub fn unit() -> Self {
        Interval { a: 0.0, b: 1.0 }
    }

    pub fn a(&self) -> f64 {
        self.a
    }

    pub fn b(&self) -> f64 {
        self.b
    }

    pub fn width(&self) -> f64 {
        self.b - self.a
    }

    /// `n` equally spaced nodes from `a` to `b` inclusive, with exact endpoints.
    pub fn uniform_nodes(&self, n: usize) -> Vec<f64> {
        let last = n - 1;
        (0..n)
            .map(|k| {
                if k == last {
                    self.b
                } else {
                    self.a + (self.b - self.a) * (k as f64) / (last as f64)
                }
            })
            .collect()
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Default, Serialize, Deserialize)]
pub enum Interp {
    #[default]
    #[serde(rename = "linear")]
    Linear,
    /// Right-continuous step function: `f(t) = v_k` on `[t_k, t_{k+1})`.
    #[serde(rename = "constleft")]
    ConstLeft,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(try_from = "GridRepr", into = "GridRepr")]
pub struct GridFunction {
    interval: Interval,
    nodes: Vec<f64>,
    values: Vec<ComplexVec>,
    interp: Interp,
}

#[derive(Serialize, Deserialize)]
struct GridRepr {
    a: f64,
    b: f64,
    nodes: Vec<f64>,
    values: Vec<ComplexVec>,
    #[serde(default)]
    interp: Interp,
}

impl TryFrom<GridRepr> for GridFunction {
    type Error = Error;
    fn try_from(r: GridRepr) -> Result<Self> {
        GridFunction::new(Interval::new(r.a, r.b)?, r.nodes, r.values, r.interp)
    }
}

impl From<GridFunction> for GridRepr {
    fn from(f: GridFunction) -> Self {
        GridRepr {
            a: f.interval.a,
            b: f.interval.b,
            nodes: f.nodes,
            values: f.values,
            interp: f.interp,
        }
    }
}

impl GridFunction {
    pub fn new(
        interval: Interval,
        nodes: Vec<f64>,
        values: Vec<ComplexVec>,
        interp: Interp,
    ) -> Result<Self> {
        if nodes.len() < 2 {
            return Err(Error::InvalidGrid(format!(
                "need at least 2 nodes, found {}",
                nodes.len()
            )));
        }
        if values.len() != nodes.len() {
            return Err(Error::InvalidGrid(format!(
                "{} values for {} nodes",
                values.len(),
                nodes.len()
            )));
        }
        if nodes[0] != interval.a || nodes[nodes.len() - 1] != interval.b {
            return Err(Error::InvalidGrid(
                "first and last nodes must equal a and b".into(),
            ));
        }
        if let Some(k) = nodes.windows(2).position(|w| !(w[0] < w[1])) {
            return Err(Error::InvalidGrid(format!(
                "nodes not strictly increasing at index {}",
                k + 1
            )));
        }
        let d = values[0].dim();
        if let Some(v) = values.iter().find(|v| v.dim() != d) {
            return Err(Error::DimensionMismatch {
                expected: d,
                found: v.dim(),
            });
        }
        Ok(GridFunction {
            interval,
            nodes,
            values,
            interp,
        })
    }

    /// Samples `f` at `n` uniform nodes.
    pub fn sample<F>(interval: Interval, n: usize, interp: Interp, mut f: F) -> Result<Self>
    where
        F: FnMut(f64) -> ComplexVec,
    {
        let nodes = interval.uniform_nodes(n.max(2));
        let values = nodes.iter().map(|&t| f(t)).collect();
        Self::new(interval, nodes, values, interp)
    }

    /// Samples a scalar function into C^1.
    pub fn sample_scalar<F>(interval: Interval, n: usize, interp: Interp, mut f: F) -> Result<Self>
    where
        F: FnMut(f64) -> Complex64,
    {
        Self::sample(interval, n, interp, |t| ComplexVec::scalar(f(t)))
    }

    pub fn constant(interval: Interval, n: usize, value: ComplexVec) -> Result<Self> {
        Self::sample(interval, n, Interp::Linear, |_| value.clone())
    }

    pub fn interval(&self) -> Interval {
        self.interval
    }

    pub fn nodes(&self) -> &[f64] {
        &self.nodes
    }

    pub fn values(&self) -> &[ComplexVec] {
        &self.values
    }

    pub fn interp(&self) -> Interp {
        self.interp
    }

    pub fn dim(&self) -> usize {
        self.values[0].dim()
    }

    /// Same nodes and interpolation, new values.
    pub fn with_values(&self, values: Vec<ComplexVec>) -> Result<Self> {
        Self::new(self.interval, self.nodes.clone(), values, self.interp)
    }

    /// Value at `t` inside node interval `k`, i.e. `t` in `[t_k, t_{k+1}]`.
    pub(crate) fn eval_in(&self, k: usize, t: f64) -> ComplexVec {
        let (t0, t1) = (self.nodes[k], self.nodes[k + 1]);
        if t == t0 {
            return self.values[k].clone();
        }
        if t == t1 {
            return self.values[k + 1].clone();
        }
        match self.interp {
            Interp::ConstLeft => self.values[k].clone(),
            Interp::Linear => {
                let s = (t - t0) / (t1 - t0);
                self.values[k]
                    .lerp(&self.values[k + 1], s)
                    .expect("grid values share a dimension")
            }
        }
    }

    pub fn eval(&self, t: f64) -> Result<ComplexVec> {
        let Interval { a, b } = self.interval;
        if !(a <= t && t <= b) {
            return Err(Error::OutOfRange { t, a, b });
        }
        // first node strictly greater than t, minus one
        let upper = self.nodes.partition_point(|&x| x <= t);
        let k = upper.saturating_sub(1).min(self.nodes.len() - 2);
        Ok(self.eval_in(k, t))
    }

    /// Nodes and node-interval midpoints in increasing order, with values.
    pub fn check_points(&self) -> Vec<(f64, ComplexVec)> {
        let mut pts = Vec::with_capacity(2 * self.nodes.len() - 1);
        for k in 0..self.nodes.len() - 1 {
            pts.push((self.nodes[k], self.values[k].clone()));
            let mid = 0.5 * (self.nodes[k] + self.nodes[k + 1]);
            pts.push((mid, self.eval_in(k, mid)));
        }
        let last = self.nodes.len() - 1;
        pts.push((self.nodes[last], self.values[last].clone()));
        pts
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn c(re: f64, im: f64) -> Complex64 {
        Complex64::new(re, im)
    }

    #[test]
    fn interval_validation() {
        assert!(Interval::new(0.0, 1.0).is_ok());
        assert_eq!(
            Interval::new(1.0, 1.0),
            Err(Error::InvalidInterval { a: 1.0, b: 1.0 })
        );
        assert!(Interval::new(0.0, f64::NAN).is_err());
    }

    #[test]
    fn constant_eval() {
        let e = ComplexVec::new(vec![c(0.6, 0.8), c(0.0, 0.0)]).unwrap();
        let f = GridFunction::constant(Interval::unit(), 5, e.clone()).unwrap();
        for t in [0.0, 0.13, 0.5, 0.99, 1.0] {
            assert_eq!(f.eval(t).unwrap(), e);
        }
    }

    #[test]
    fn linear_midpoint() {
        let v0 = ComplexVec::scalar(c(1.0, -2.0));
        let v1 = ComplexVec::scalar(c(3.0, 4.0));
        let f = GridFunction::new(
            Interval::new(-1.0, 3.0).unwrap(),
            vec![-1.0, 3.0],
            vec![v0, v1],
            Interp::Linear,
        )
        .unwrap();
        assert_eq!(f.eval(1.0).unwrap(), ComplexVec::scalar(c(2.0, 1.0)));
    }

    #[test]
    fn constleft_holds_left_value() {
        let vals: Vec<_> = (0..4).map(|k| ComplexVec::scalar(c(k as f64, 0.0))).collect();
        let f = GridFunction::new(
            Interval::new(0.0, 3.0).unwrap(),
            vec![0.0, 1.0, 2.0, 3.0],
            vals,
            Interp::ConstLeft,
        )
        .unwrap();
        assert_eq!(f.eval(1.0).unwrap().entries()[0].re, 1.0);
        assert_eq!(f.eval(1.999).unwrap().entries()[0].re, 1.0);
        assert_eq!(f.eval(2.0).unwrap().entries()[0].re, 2.0);
        assert_eq!(f.eval(3.0).unwrap().entries()[0].re, 3.0);
    }

    #[test]
    fn eval_reproduces_nodes_exactly() {
        let f = GridFunction::sample_scalar(Interval::new(0.1, 2.3).unwrap(), 37, Interp::Linear, |t| {
            c(t.sin(), t.cos())
        })
        .unwrap();
        for (t, v) in f.nodes().iter().zip(f.values()) {
            assert_eq!(&f.eval(*t).unwrap(), v);
        }
    }

    #[test]
    fn eval_out_of_range() {
        let f = GridFunction::constant(Interval::unit(), 2, ComplexVec::scalar(c(1.0, 0.0))).unwrap();
        assert!(matches!(f.eval(1.5), Err(Error::OutOfRange { .. })));
        assert!(matches!(f.eval(-0.1), Err(Error::OutOfRange { .. })));
    }

    #[test]
    fn grid_validation() {
        let one = ComplexVec::scalar(c(1.0, 0.0));
        let two = ComplexVec::new(vec![c(1.0, 0.0), c(0.0, 0.0)]).unwrap();
        let i = Interval::unit();
        assert!(GridFunction::new(i, vec![0.0], vec![one.clone()], Interp::Linear).is_err());
        assert!(GridFunction::new(i, vec![0.0, 1.0], vec![one.clone()], Interp::Linear).is_err());
        assert!(GridFunction::new(
            i,
            vec![0.0, 0.5, 0.5, 1.0],
            vec![one.clone(); 4],
            Interp::Linear
        )
        .is_err());
        assert!(matches!(
            GridFunction::new(i, vec![0.0, 1.0], vec![one, two], Interp::Linear),
            Err(Error::DimensionMismatch { .. })
        ));
    }

    #[test]
    fn check_points_interleave_midpoints() {
        let f = GridFunction::constant(Interval::unit(), 3, ComplexVec::scalar(c(1.0, 0.0))).unwrap();
        let ts: Vec<f64> = f.check_points().iter().map(|p| p.0).collect();
        assert_eq!(ts, vec![0.0, 0.25, 0.5, 0.75, 1.0]);
    }

    #[test]
    fn json_schema_fields() {
        let f = GridFunction::new(
            Interval::unit(),
            vec![0.0, 1.0],
            vec![ComplexVec::scalar(c(1.0, 2.0)), ComplexVec::scalar(c(3.0, 4.0))],
            Interp::ConstLeft,
        )
        .unwrap();
        let v = serde_json::to_value(&f).unwrap();
        assert_eq!(
            v,
            serde_json::json!({
                "a": 0.0, "b": 1.0, "nodes": [0.0, 1.0],
                "values": [[[1.0, 2.0]], [[3.0, 4.0]]],
                "interp": "constleft"
            })
        );
        let back: GridFunction = serde_json::from_value(v).unwrap();
        assert_eq!(back, f);
        let missing_interp: GridFunction = serde_json::from_str(
            r#"{"a":0,"b":1,"nodes":[0,1],"values":[[[1,0]],[[1,0]]]}"#,
        )
        .unwrap();
        assert_eq!(missing_interp.interp(), Interp::Linear);
    }
}
