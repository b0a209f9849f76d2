//! Finite-dimensional complex Hilbert space primitives.
//!
//! The inner product is linear in the first slot and conjugate-linear in the
//! second: `<u, v> = sum_j u_j * conj(v_j)`. Under this convention
//! `Re<x, i e> = Im<x, e>`, which the unit-vector hypotheses rely on.

use num_complex::Complex64;
use serde::{Deserialize, Deserializer, Serialize, Serializer};

use crate::error::{Error, Result};

/// Default tolerance for accepting a family as orthonormal.
pub const DEFAULT_ORTHO_TOL: f64 = 1e-12;

/// An element of C^d, d >= 1.
#[derive(Debug, Clone, PartialEq)]
pub struct ComplexVec(Vec<Complex64>);

impl ComplexVec {
    pub fn new(entries: Vec<Complex64>) -> Result<Self> {
        if entries.is_empty() {
            return Err(Error::ZeroDimension);
        }
        Ok(ComplexVec(entries))
    }

    /// Builds a vector with real entries.
    pub fn from_real(entries: &[f64]) -> Result<Self> {
        Self::new(entries.iter().map(|&x| Complex64::new(x, 0.0)).collect())
    }

    /// A vector in C^1.
    pub fn scalar(z: Complex64) -> Self {
        ComplexVec(vec![z])
    }

    pub fn zeros(dim: usize) -> Result<Self> {
        Self::new(vec![Complex64::new(0.0, 0.0); dim])
    }

    /// The `j`-th standard basis vector of C^dim.
    pub fn basis(dim: usize, j: usize) -> Result<Self> {
        if j >= dim {
            return Err(Error::DimensionMismatch {
                expected: dim,
                found: j + 1,
            });
        }
        let mut v = Self::zeros(dim)?;
        v.0[j] = Complex64::new(1.0, 0.0);
        Ok(v)
    }

    pub fn dim(&self) -> usize {
        self.0.len()
    }

    pub fn entries(&self) -> &[Complex64] {
        &self.0
    }

    pub fn into_entries(self) -> Vec<Complex64> {
        self.0
    }

    fn same_dim(&self, other: &ComplexVec) -> Result<()> {
        if self.dim() != other.dim() {
            return Err(Error::DimensionMismatch {
                expected: self.dim(),
                found: other.dim(),
            });
        }
        Ok(())
    }

    pub fn inner(&self, other: &ComplexVec) -> Result<Complex64> {
        inner(self, other)
    }

    pub fn norm(&self) -> f64 {
        norm(self)
    }

    pub fn norm_sqr(&self) -> f64 {
        self.0.iter().map(|z| z.norm_sqr()).sum()
    }

    pub fn add(&self, other: &ComplexVec) -> Result<ComplexVec> {
        self.same_dim(other)?;
        Ok(ComplexVec(
            self.0.iter().zip(&other.0).map(|(a, b)| a + b).collect(),
        ))
    }

    pub fn sub(&self, other: &ComplexVec) -> Result<ComplexVec> {
        self.same_dim(other)?;
        Ok(ComplexVec(
            self.0.iter().zip(&other.0).map(|(a, b)| a - b).collect(),
        ))
    }

    pub fn scale(&self, c: Complex64) -> ComplexVec {
        ComplexVec(self.0.iter().map(|z| z * c).collect())
    }

    /// `self += c * x`
    pub fn add_scaled(&mut self, c: Complex64, x: &ComplexVec) -> Result<()> {
        self.same_dim(x)?;
        for (s, v) in self.0.iter_mut().zip(&x.0) {
            *s += c * v;
        }
        Ok(())
    }

    /// `(1 - s) * self + s * other`, exact at `s = 0` and `s = 1`.
    pub fn lerp(&self, other: &ComplexVec, s: f64) -> Result<ComplexVec> {
        self.same_dim(other)?;
        if s == 0.0 {
            return Ok(self.clone());
        }
        if s == 1.0 {
            return Ok(other.clone());
        }
        Ok(ComplexVec(
            self.0
                .iter()
                .zip(&other.0)
                .map(|(a, b)| a * (1.0 - s) + b * s)
                .collect(),
        ))
    }

    pub fn is_zero(&self) -> bool {
        self.0.iter().all(|z| z.re == 0.0 && z.im == 0.0)
    }
}

impl Serialize for ComplexVec {
    fn serialize<S: Serializer>(&self, serializer: S) -> std::result::Result<S::Ok, S::Error> {
        serializer.collect_seq(self.0.iter().map(|z| [z.re, z.im]))
    }
}

impl<'de> Deserialize<'de> for ComplexVec {
    fn deserialize<D: Deserializer<'de>>(deserializer: D) -> std::result::Result<Self, D::Error> {
        let pairs = Vec::<[f64; 2]>::deserialize(deserializer)?;
        ComplexVec::new(pairs.into_iter().map(|[re, im]| Complex64::new(re, im)).collect())
            .map_err(serde::de::Error::custom)
    }
}

/// `sum_j u_j * conj(v_j)`, summed left to right.
pub fn inner(u: &ComplexVec, v: &ComplexVec) -> Result<Complex64> {
    u.same_dim(v)?;
    Ok(u
        .0
        .iter()
        .zip(&v.0)
        .fold(Complex64::new(0.0, 0.0), |acc, (a, b)| acc + a * b.conj()))
}

pub fn norm(u: &ComplexVec) -> f64 {
    u.norm_sqr().sqrt()
}

/// A family of vectors whose Gram matrix is within `tol` of the identity.
///
/// Only constructible through [`check_orthonormal`].
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(try_from = "FamilyRepr")]
pub struct OrthonormalFamily {
    vectors: Vec<ComplexVec>,
    tol: f64,
}

#[derive(Deserialize)]
struct FamilyRepr {
    vectors: Vec<ComplexVec>,
    #[serde(default = "default_ortho_tol")]
    tol: f64,
}

fn default_ortho_tol() -> f64 {
    DEFAULT_ORTHO_TOL
}

impl TryFrom<FamilyRepr> for OrthonormalFamily {
    type Error = Error;

    fn try_from(repr: FamilyRepr) -> Result<Self> {
        check_orthonormal(repr.vectors, repr.tol)
    }
}

impl OrthonormalFamily {
    pub fn vectors(&self) -> &[ComplexVec] {
        &self.vectors
    }

    pub fn len(&self) -> usize {
        self.vectors.len()
    }

    pub fn is_empty(&self) -> bool {
        self.vectors.is_empty()
    }

    pub fn dim(&self) -> usize {
        self.vectors[0].dim()
    }

    pub fn tol(&self) -> f64 {
        self.tol
    }

    /// The first `n` standard basis vectors of C^dim.
    pub fn standard(dim: usize, n: usize) -> Result<Self> {
        let vs = (0..n)
            .map(|j| ComplexVec::basis(dim, j))
            .collect::<Result<Vec<_>>>()?;
        check_orthonormal(vs, DEFAULT_ORTHO_TOL)
    }
}

/// Accepts `vs` iff every Gram entry satisfies `|<e_j, e_k> - delta_jk| <= tol`.
///
/// On rejection the error names the first (row-major) pair attaining the
/// largest deviation.
pub fn check_orthonormal(vs: Vec<ComplexVec>, tol: f64) -> Result<OrthonormalFamily> {
    let first = vs.first().ok_or(Error::EmptyFamily)?;
    let d = first.dim();
    for v in &vs {
        first.same_dim(v)?;
    }
    if vs.len() > d {
        return Err(Error::TooManyVectors { n: vs.len(), d });
    }
    let mut worst = (0, 0, 0.0_f64);
    for (j, ej) in vs.iter().enumerate() {
        for (k, ek) in vs.iter().enumerate() {
            let delta = if j == k { 1.0 } else { 0.0 };
            let dev = (inner(ej, ek)? - delta).norm();
            if dev > worst.2 || dev.is_nan() {
                worst = (j, k, dev);
            }
        }
    }
    if !(worst.2 <= tol) {
        return Err(Error::NotOrthonormal {
            j: worst.0,
            k: worst.1,
            deviation: worst.2,
        });
    }
    Ok(OrthonormalFamily { vectors: vs, tol })
}

/// `x - sum_j <x, e_j> e_j`, the component of `x` orthogonal to the family span.
pub fn projection_residual(x: &ComplexVec, fam: &OrthonormalFamily) -> Result<ComplexVec> {
    let mut r = x.clone();
    for e in fam.vectors() {
        let c = inner(x, e)?;
        r.add_scaled(-c, e)?;
    }
    Ok(r)
}

/// `||x||^2 - sum_j |<x, e_j>|^2`, nonnegative up to rounding (Bessel).
pub fn bessel_defect(x: &ComplexVec, fam: &OrthonormalFamily) -> Result<f64> {
    let mut captured = 0.0;
    for e in fam.vectors() {
        captured += inner(x, e)?.norm_sqr();
    }
    Ok(x.norm_sqr() - captured)
}

/// Modified Gram-Schmidt. Vectors whose residual norm falls below `1e-10`
/// relative to their input norm are dropped.
pub fn orthonormalize(vs: &[ComplexVec]) -> Result<Vec<ComplexVec>> {
    let mut out: Vec<ComplexVec> = Vec::with_capacity(vs.len());
    for v in vs {
        let scale = v.norm();
        let mut w = v.clone();
        for e in &out {
            let c = inner(&w, e)?;
            w.add_scaled(-c, e)?;
        }
        let n = w.norm();
        if scale > 0.0 && n > 1e-10 * scale {
            out.push(w.scale(Complex64::new(1.0 / n, 0.0)));
        }
    }
    Ok(out)
}

#[cfg(test)]
mod tests {
    use super::*;
    use approx::assert_abs_diff_eq;
    use std::f64::consts::FRAC_1_SQRT_2;

    fn c(re: f64, im: f64) -> Complex64 {
        Complex64::new(re, im)
    }

    fn cv(entries: &[(f64, f64)]) -> ComplexVec {
        ComplexVec::new(entries.iter().map(|&(a, b)| c(a, b)).collect()).unwrap()
    }

    #[test]
    fn inner_products_on_small_vectors() {
        let e1 = cv(&[(1.0, 0.0), (0.0, 0.0)]);
        let ie1 = cv(&[(0.0, 1.0), (0.0, 0.0)]);
        assert_eq!(inner(&e1, &e1).unwrap(), c(1.0, 0.0));
        assert_eq!(inner(&ie1, &e1).unwrap(), c(0.0, 1.0));
        assert_eq!(inner(&e1, &ie1).unwrap(), c(0.0, -1.0));
    }

    #[test]
    fn inner_rejects_mismatched_dimensions() {
        let a = cv(&[(1.0, 0.0)]);
        let b = cv(&[(1.0, 0.0), (0.0, 0.0)]);
        assert_eq!(
            inner(&a, &b),
            Err(Error::DimensionMismatch {
                expected: 1,
                found: 2
            })
        );
    }

    #[test]
    fn norms() {
        assert_eq!(ComplexVec::from_real(&[3.0, 4.0]).unwrap().norm(), 5.0);
        let z = ComplexVec::scalar(c(FRAC_1_SQRT_2, FRAC_1_SQRT_2));
        assert_abs_diff_eq!(z.norm(), 1.0, epsilon = 1e-15);
        assert_eq!(ComplexVec::zeros(4).unwrap().norm(), 0.0);
        assert_eq!(ComplexVec::new(vec![]), Err(Error::ZeroDimension));
    }

    #[test]
    fn imaginary_rotation_swaps_real_and_imaginary_parts() {
        let x = cv(&[(0.3, -1.2), (2.0, 0.5)]);
        let e = cv(&[(0.6, 0.0), (0.0, 0.8)]);
        let ie = e.scale(c(0.0, 1.0));
        assert_abs_diff_eq!(
            inner(&x, &ie).unwrap().re,
            inner(&x, &e).unwrap().im,
            epsilon = 1e-15
        );
    }

    #[test]
    fn standard_basis_is_orthonormal() {
        let fam = check_orthonormal(
            vec![ComplexVec::basis(2, 0).unwrap(), ComplexVec::basis(2, 1).unwrap()],
            1e-12,
        )
        .unwrap();
        assert_eq!(fam.len(), 2);
    }

    #[test]
    fn duplicate_vector_is_rejected_at_first_offdiagonal_pair() {
        let e = ComplexVec::basis(2, 0).unwrap();
        match check_orthonormal(vec![e.clone(), e], 1e-12) {
            Err(Error::NotOrthonormal { j, k, deviation }) => {
                assert_eq!((j, k), (0, 1));
                assert_eq!(deviation, 1.0);
            }
            other => panic!("unexpected {other:?}"),
        }
    }

    #[test]
    fn rotated_real_basis_is_orthonormal() {
        let a = ComplexVec::from_real(&[FRAC_1_SQRT_2, FRAC_1_SQRT_2]).unwrap();
        let b = ComplexVec::from_real(&[FRAC_1_SQRT_2, -FRAC_1_SQRT_2]).unwrap();
        // Gram: <a,a> = 1/2 + 1/2, <a,b> = 1/2 - 1/2
        assert!(check_orthonormal(vec![a, b], 1e-12).is_ok());
    }

    #[test]
    fn too_many_vectors() {
        let e = ComplexVec::basis(1, 0).unwrap();
        assert_eq!(
            check_orthonormal(vec![e.clone(), e], 1e-12),
            Err(Error::TooManyVectors { n: 2, d: 1 })
        );
        assert_eq!(check_orthonormal(vec![], 1e-12), Err(Error::EmptyFamily));
    }

    #[test]
    fn bessel_defect_cases() {
        let fam = OrthonormalFamily::standard(2, 1).unwrap();
        let e1 = ComplexVec::basis(2, 0).unwrap();
        assert_eq!(bessel_defect(&e1, &fam).unwrap(), 0.0);

        let fam = OrthonormalFamily::standard(3, 2).unwrap();
        let e3 = ComplexVec::basis(3, 2).unwrap();
        assert_eq!(bessel_defect(&e3, &fam).unwrap(), 1.0);

        let x = cv(&[(0.4, -1.1), (2.5, 0.3), (-0.7, 1.9)]);
        // direct expansion: only the third coordinate escapes the span
        let expected = 0.7_f64.powi(2) + 1.9_f64.powi(2);
        assert_abs_diff_eq!(bessel_defect(&x, &fam).unwrap(), expected, epsilon = 1e-12);
    }

    #[test]
    fn family_json_validates() {
        let ok: OrthonormalFamily =
            serde_json::from_str(r#"{"vectors": [[[1,0],[0,0]], [[0,0],[0,1]]]}"#).unwrap();
        assert_eq!(ok.tol(), DEFAULT_ORTHO_TOL);
        let bad = serde_json::from_str::<OrthonormalFamily>(r#"{"vectors": [[[1,0]], [[1,0]]]}"#);
        assert!(bad.is_err());
    }

    #[test]
    fn gram_schmidt_drops_dependent_vectors() {
        let a = cv(&[(1.0, 1.0), (0.0, 0.0)]);
        let b = a.scale(c(0.0, 2.0));
        let q = orthonormalize(&[a, b, ComplexVec::basis(2, 1).unwrap()]).unwrap();
        assert_eq!(q.len(), 2);
        assert!(check_orthonormal(q, 1e-12).is_ok());
    }
}
