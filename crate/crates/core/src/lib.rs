//! Exact shift-operator reduction for holonomic sequences, specialized to
//! Delannoy numbers and polynomials, together with a brute-force harness
//! that checks the resulting congruences.
//!
//! Layers, bottom up:
//!
//! * [`arith`]: big integers, rationals, polynomials and normalized rational
//!   functions in the parameter `z`, plus Legendre symbols and 2-adic
//!   valuations.
//! * [`sequences`]: Delannoy, generalized central trinomial, Schmidt and
//!   large Schröder generators.
//! * [`operator`]: annihilating operators, adjoints, telescoping
//!   certificates, operator degree, nondegeneracy and the symmetry test.
//! * [`reduction`]: the reduction constants `c_v`, `ρ_v` and friends, and a
//!   generic reducer producing checkable certificates.
//! * [`verify`]: per-claim checkers and the parallel sweep runner.

pub mod arith;
pub mod error;
pub mod operator;
pub mod reduction;
pub mod sequences;
pub mod verify;

pub use error::{Error, Result};
