//! Exact-arithmetic toolkit for spaces of diagonal alternating polynomials
//! and the variety of almost-commuting tuples (X, Y, i, j).
//!
//! The crate builds the bidegree pieces of A^k (spans of k-fold products of
//! alternating polynomials in x_1..x_n, y_1..y_n), certifies their freeness
//! as modules over the symmetric polynomials in y up to a cutoff, and checks
//! the geometry that underpins that statement: verified stratum samples of
//! the almost-commuting variety, Krylov dimensions, Jacobian ranks, the
//! determinant-twisted functions and their restriction to diagonal pairs.
//!
//! All arithmetic is exact; every identity is checked with zero tolerance.
//! Sampling is fully seeded and independent of scheduling.

pub mod acv;
pub mod alternants;
pub mod error;
pub mod freeness;
pub mod isotypic;
pub mod linalg;
pub mod perm;
pub mod poly;
pub mod rng;
pub mod scalar;

pub use error::{LabError, Result};
pub use poly::{BiDegree, Monomial, Polynomial};
pub use scalar::{Fp64, Rat, Scalar};
