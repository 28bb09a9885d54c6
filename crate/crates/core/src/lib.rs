//! Alternating sign matrices, staircases and double Schubert polynomials.
//!
//! The crate computes weighted partition functions of staircases (equivalently
//! alternating sign matrices, or square-ice configurations) with fixed first
//! and last columns, and compares them against closed forms built from double
//! Schubert polynomials and flagged multi-Schur determinants. All arithmetic
//! is exact: polynomials are sparse Laurent polynomials over the rationals.
//!
//! Module map:
//! - [`exactpoly`]: the Laurent polynomial kernel.
//! - [`permutation`]: one-line permutations, Lehmer codes, reduced words.
//! - [`shapes`]: increasing partitions, skew shapes, strips, ribbons and their weights.
//! - [`schubert`]: divided differences, Schubert polynomials, complete functions, determinants.
//! - [`staircase`]: columns, staircases, ASMs and the bijections between them.
//! - [`partitionfn`]: brute-force and closed-form partition functions, verification suites.

pub mod error;
pub mod exactpoly;
pub mod partitionfn;
pub mod permutation;
pub mod schubert;
pub mod shapes;
pub mod staircase;

pub use error::{Error, Result};
pub use exactpoly::{Family, LaurentPoly, Monomial, Rational, RenderFormat, Variable};
pub use permutation::{Code, PermClass, Permutation};
pub use shapes::{PartitionShape, SkewShape};
pub use staircase::{AsmMatrix, Column, LevelSequence, Staircase};
