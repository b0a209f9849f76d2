//! Reverse triangle inequalities for Bochner integrals of functions with
//! values in a complex inner product space.
//!
//! A [`function::GridFunction`] is a sampled, interpolated map
//! `[a, b] -> C^d`. Under a [`hypotheses::Hypothesis`] on its range, the
//! crate certifies a lower bound `c ∫ ||f|| <= ||∫ f||` ([`bounds::certify`]),
//! predicts the equality case, builds functions attaining it
//! ([`witness::make_witness`]) and measures tightness on random ensembles
//! ([`witness::tightness`]).
//!
//! ```
//! use bochner_bounds::prelude::*;
//! use num_complex::Complex64;
//!
//! let f = GridFunction::sample_scalar(
//!     Interval::new(0.5, 1.0).unwrap(),
//!     65,
//!     Interp::Linear,
//!     |t| Complex64::new(t.cos(), t.sin()),
//! )
//! .unwrap();
//! let h = Hypothesis::Cone { phi1: 0.5, phi2: 1.0 };
//! let r = certify(&f, &h, &QuadratureRule::default(), 1e-9).unwrap();
//! assert!(r.hypothesis_verified && r.gap >= 0.0);
//! ```

pub mod bounds;
pub mod cli;
pub mod error;
pub mod function;
pub mod hilbert;
pub mod hypotheses;
pub mod quadrature;
pub mod report;
pub mod witness;

pub use error::{Error, Result};

pub mod prelude {
    pub use crate::bounds::{
        certify, coefficient, equality_direction, equality_holds, karamata_vs_cone, BoundReport,
    };
    pub use crate::error::{Error, Result};
    pub use crate::function::{GridFunction, Interp, Interval};
    pub use crate::hilbert::{check_orthonormal, inner, norm, ComplexVec, OrthonormalFamily};
    pub use crate::hypotheses::{check, ConditionReport, Hypothesis};
    pub use crate::quadrature::{integrate, refine_until, QuadKind, QuadratureRule};
    pub use crate::witness::{
        make_witness, perturb_scan, tightness, GeneratorSpec, Perturbation, TightnessStats,
        WitnessSpec,
    };
}
