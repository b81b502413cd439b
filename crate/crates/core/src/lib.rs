//! Convex-geometry kernel for verifying sumset volume inequalities.
//!
//! Sets are exact-rational convex polytopes, voxel unions or finite lattice
//! sets. On top of hulls, Minkowski sums, slice bodies and exact volumes sit
//! checkers for the Ruzsa triangle inequality, the Koester–Katz containment,
//! the slice-volume and integral bounds, Brunn–Minkowski and the
//! difference-body bound, together with the scalar analysis of the σ sum and
//! the simplex extremal example.

pub mod bundles;
pub mod checks;
pub mod error;
pub mod geometry;
pub mod linalg;
pub mod measure;
pub mod precise;
pub mod scalar;
pub mod sets;
pub mod sigma;
pub mod simplex;

mod dd;

pub use error::{Error, Result};
pub use scalar::Q;

/// Largest dimension for exact facet enumeration and exact volumes.
pub const FACET_DIM_CAP: usize = 6;
