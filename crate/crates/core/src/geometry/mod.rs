//! The geometric kernel: hulls, facets, Minkowski sums, difference and slice
//! bodies, membership, and measure-matched subsets.

pub mod hull;
mod membership;
mod minkowski;
mod slice;
mod subset;

pub use hull::{convex_hull, convex_hull_with_mode, facet_enum, vertex_enum};
pub use membership::{in_convex_hull_lp, membership, MembershipOracle};
pub use minkowski::{grid_minkowski, minkowski_sum, DifferenceBody};
pub use slice::slice_body;
pub use subset::{SelectSubset, SubsetSelection};
