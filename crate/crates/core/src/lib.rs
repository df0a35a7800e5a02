//! Constructive representations of natural numbers as sums of generalized
//! polygonal numbers.
//!
//! - [`polygonal`]: evaluation, inversion and enumeration of `p_m(x)`.
//! - [`ternary`]: constrained representations by diagonal ternary forms,
//!   excluded sets and Dickson's closed forms.
//! - [`transforms`]: value-preserving rewrites that strengthen congruence
//!   conditions on a representation.
//! - [`pipelines`]: end-to-end witness construction with certificates for
//!   `p5+b*p5+c*p5`, `p3+p5+p11` and `3p3+p5+p7`.
//! - [`universality`]: exhaustive range scans and counterexample search.
//! - [`certify`]: the certificate model, independent verifier and JSON codec.

pub mod certify;
pub mod error;
pub mod pipelines;
pub mod polygonal;
pub mod ternary;
pub mod transforms;
pub mod universality;

pub(crate) mod arith;

pub use error::{Error, Result};
pub use polygonal::{GeneralizedIndex, PolygonalKind};
pub use ternary::{Constraint, CoordConstraint, DiagonalForm, Representation};
