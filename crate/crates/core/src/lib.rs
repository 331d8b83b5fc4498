//! Exact deterministic rank truncation of matrices over finite fields and
//! the rationals, with representative-family computation for linear matroids.
//!
//! The central operation takes an `n x m` matrix `M` over a field `F` and a
//! bound `k <= n`, and produces a `k x m` matrix over the polynomial ring
//! `F[X]` that preserves linear independence of every column subset of size
//! at most `k`. Two constructions are used, both driven by Wronskian
//! determinants:
//!
//! - the classical Wronskian (rows of iterated formal derivatives), valid
//!   over the rationals and over fields of characteristic larger than `n`;
//! - the folded Wronskian (rows `P(alpha^i X)` for an element `alpha` of
//!   sufficiently large multiplicative order), valid over any finite field
//!   after a deterministic field-size preprocessing step.
//!
//! On top of truncation, the crate computes q-representative subfamilies of
//! set families over linear matroids, in a column-basis variant and a
//! spanning-set variant, together with an exhaustive verifier.
//!
//! All arithmetic is exact: prime-field residues, extension-field coefficient
//! vectors, or arbitrary-precision rationals. Every search and tie-break has
//! a pinned deterministic order, so identical inputs produce identical
//! outputs.
//!
//! # Example
//!
//! ```
//! use matrunc::field::Field;
//! use matrunc::fxmatrix::FMatrix;
//! use matrunc::truncation::truncate;
//!
//! # fn main() -> matrunc::Result<()> {
//! // A rank-3 matrix over F_2 and its 2-row truncation.
//! let f2 = Field::prime(2)?;
//! #[rustfmt::skip]
//! let m = FMatrix::from_integers(&f2, 3, 4, &[
//!     1, 0, 0, 1,
//!     0, 1, 0, 1,
//!     0, 0, 1, 0,
//! ]);
//! let t = truncate(&m, 2)?;
//! for subset in [vec![0, 1], vec![0, 3], vec![0, 1, 3]] {
//!     assert_eq!(
//!         t.matrix.independent_columns(&subset)?,
//!         m.independent_columns(&subset)?,
//!     );
//! }
//! # Ok(()) }
//! ```

pub mod error;
pub mod field;
pub mod fxmatrix;
pub mod io;
pub mod matroid;
pub mod poly;
pub mod repset;
mod rng;
pub mod truncation;
pub mod wronskian;

pub use error::{Error, Result};
