//! Exact computation over the max-min algebra on the unit interval.
//!
//! The carrier is `[0, 1]` with `a ⊕ b = max(a, b)` and
//! `a ⊗ b = min(a, b)`; scalars are exact rationals, so every comparison
//! in the crate is exact. On top of the matrix algebra the crate provides:
//!
//! - metric matrix `A⁺`, Kleene star `A*` and the generators of the
//!   principal eigenvectors (`A ⊗ x = x`), in [`closure`];
//! - the full solution set of the Bellman equation `x = A⊗x ⊕ b`, in
//!   [`bellman`];
//! - a covering-based solver for `A⊗z ⊕ b = λ·1` under entrywise `≤ λ`
//!   coefficients, in [`cover`];
//! - the λ-eigenspace `A ⊗ x = λ ⊗ x`, decomposed into pure, background
//!   and (K, L)-pieces, in [`eigenspace`];
//! - a brute-force grid oracle that cross-validates every symbolic
//!   description, in [`oracle`];
//! - JSON file formats for problems and solution descriptions, in [`io`].
//!
//! Every solution set is reported as a [`sets::ParametricSet`]
//! `{offset ⊕ G⊗z : z ∈ [0,1]^k}`, with exact membership tests by
//! residuation.
//!
//! ```
//! use maxmin_eigen::{Matrix, Scalar, Vector};
//! use maxmin_eigen::eigenspace::full_eigenspace;
//!
//! let s = |t: &str| t.parse::<Scalar>().unwrap();
//! let a = Matrix::from_rows(vec![
//!     vec![s(".1"), s(".5"), s(".7")],
//!     vec![s("0"),  s(".4"), s(".8")],
//!     vec![s(".1"), s(".1"), s(".5")],
//! ])?;
//!
//! let description = full_eigenspace(&a, s(".5"))?;
//! // (.5, .7, .5) solves A⊗x = .5⊗x; (.6, .7, .6) does not
//! assert!(description.contains(&Vector::new(vec![s(".5"), s(".7"), s(".5")]))?);
//! assert!(!description.contains(&Vector::new(vec![s(".6"), s(".7"), s(".6")]))?);
//! # Ok::<(), maxmin_eigen::Error>(())
//! ```

#![forbid(unsafe_code)]

pub mod algebra;
pub mod bellman;
pub mod closure;
pub mod cover;
pub mod eigenspace;
pub mod error;
pub mod io;
pub mod oracle;
pub mod scalar;
pub mod sets;

pub use algebra::{lambda_matrix, lambda_w_matrix, IndexSet, Matrix, Vector};
pub use error::Error;
pub use scalar::Scalar;
pub use sets::ParametricSet;
