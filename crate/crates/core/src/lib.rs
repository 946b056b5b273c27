//! Exact arithmetic for panmagic and panstochastic matrices.
//!
//! An `n x n` matrix is *panmagic* when all `4n` of its lines (rows, columns,
//! and both families of broken diagonals) have the same sum, and
//! *panstochastic* when in addition every entry is nonnegative and the common
//! line sum is `1`. This crate verifies those properties, enumerates the
//! panmagic permutations that serve as extreme points, builds wreath and
//! Kronecker products, decomposes `5 x 5` panstochastic matrices into convex
//! combinations of permutation matrices, and certifies that such
//! decompositions are impossible at every other order.
//!
//! All arithmetic is over arbitrary-precision rationals ([`Scalar`]): results
//! are exact and every verdict is reproducible bit for bit. The crate is
//! `no_std` (with `alloc`); IO and file formats live in the companion CLI
//! crate.

#![no_std]
#![forbid(unsafe_code)]
// Error enums deliberately carry full rational reports (the offending line
// sum, the violated entry) rather than boxed summaries; callers rely on
// them for exact diagnostics.
#![allow(clippy::result_large_err)]

extern crate alloc;

#[cfg(test)]
extern crate std;

pub mod decomp;
pub mod gallery;
pub mod matrix;
pub mod perm;
pub mod products;
pub mod scalar;
mod simplex;

pub use matrix::{
    support_subset, LineKind, LineSums, LineViolation, MagicReport, MatrixError, SquareMatrix,
    StochasticReport,
};
pub use perm::{AffineSpec, PanmagicWitness, PermError, Permutation};
pub use scalar::Scalar;
