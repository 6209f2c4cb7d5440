//! Numerical laboratory for eigenvalue statistics of random-matrix
//! beta-ensembles.
//!
//! Three mutually cross-checking routes to the classical limit laws:
//!
//! * large-scale simulation of tridiagonal beta-Hermite matrices
//!   ([`ensembles`], [`tridiag`], [`spacings`], [`histogram`]),
//! * Painleve II / Painleve V initial-value problems for the
//!   Tracy-Widom laws and the Gaudin spacing law ([`painleve2`],
//!   [`painleve5`], [`numerics`]),
//! * gap probabilities from Prolate-matrix eigenvalues with Richardson
//!   extrapolation ([`prolate`]),
//!
//! plus ingestion of Riemann zeta zero tables for comparison against the
//! Gaudin law ([`zeta`]).

pub mod ensembles;
pub mod error;
pub mod histogram;
pub mod numerics;
pub mod painleve2;
pub mod painleve5;
pub mod prolate;
pub mod spacings;
pub mod tridiag;
pub mod zeta;

pub use error::{Error, Result};
