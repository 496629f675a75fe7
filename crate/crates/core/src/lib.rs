//! Exact root-system computations for symmetrizable Kac–Moody algebras.
//!
//! The crate validates generalized Cartan matrices, computes symmetrizers and
//! finite/affine/indefinite type, enumerates root multiplicities with an
//! exact-rational recurrence, extracts and classifies root strings (finite,
//! semi-infinite, bi-infinite, with growth certificates), and machine-checks
//! a battery of multiplicity inequalities over a built-in corpus.
//!
//! All root-theoretic arithmetic is exact (machine integers for lattice
//! coefficients, arbitrary-precision rationals inside the recurrence); the
//! only floating-point value in the crate is the advisory Hardy–Ramanujan
//! asymptotic.

pub mod cache;
pub mod cartan;
pub mod combinatorics;
pub mod error;
pub mod lattice;
pub mod multiplicity;
pub mod strings;
pub mod verify;
pub mod weyl;

pub use error::{Error, Result};
