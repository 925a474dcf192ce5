//! Exact construction and verification of finite-dimensional algebraic
//! quantum groups and the quantum hypergroups obtained from group-like
//! projections.
//!
//! All arithmetic is over the Gaussian rationals ℚ(i); every identity is
//! checked exactly on basis elements.

pub mod algebra;
pub mod builders;
pub mod analysis;
pub mod duality;
pub mod error;
pub mod group;
pub mod hypergroup;
pub mod ledger;
pub mod linalg;
pub mod report;
pub mod scene;
pub mod sweep;
pub mod scalar;
pub mod structure;

pub use error::{Error, Result};
pub use ledger::{Check, Ledger, Witness};
pub use linalg::{Matrix, Subspace, Vector};
pub use scalar::{Rational, Scalar};
