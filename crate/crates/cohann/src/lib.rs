//! Exact computation of stable annihilators of matrix factorizations and
//! cohomology annihilator ideals for hypersurface singularities.
//!
//! Everything is computed over the rationals with exact linear algebra in a
//! truncated local ring `k[x_1..x_m] / (relations + m^N)`; each result
//! carries the truncation it was computed at and a stabilization flag
//! comparing the answer at `N` and `N + 2`.

pub mod algebra;
pub mod annihilator;
pub mod catalog;
pub mod error;
pub mod invariants;
pub mod linalg;
pub mod mf;
pub mod poly;
pub mod verify;

pub use error::{Error, Result};
