//! Exact asymptotic densities of semi-simple subsets of `Z^n`.
//!
//! A semi-simple set is a finite disjoint union of shifted free commutative
//! monoids `a + B*`. Under the L1 or Linf norm its density is the sum over
//! components of `vol(B_{p,1} ∩ cone(B)) / (vol(B_{p,1}) · d(Λ(B)))`, where
//! only full-rank components contribute. This crate computes that value
//! exactly, and checks it two other ways: through the leading coefficient of
//! a fitted Ehrhart quasipolynomial, and through brute-force relative
//! frequencies in growing balls.

pub mod density;
pub mod error;
pub mod geometry;
pub mod lattice;
pub mod linalg;
pub mod ratset;
pub mod scan;

pub use error::{Error, Result};
pub use geometry::NormKind;
pub use linalg::{IntVector, RatVector, Rational};
