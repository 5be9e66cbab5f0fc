//! Convex polytopes with dual vertex/facet representation, and finite unions
//! of interior-disjoint polytopes.

mod dd;
mod hull;
pub(crate) mod linalg;
mod literal;
mod polytope;
mod region;

pub use literal::{HalfspaceLiteral, PolytopeLiteral};
pub(crate) use polytope::{map_points, vertex_sums};
pub use polytope::{Halfspace, Polytope};
pub use region::{region_difference, Region};

/// Tolerance for halfspace satisfaction, vertex dedup and thinness.
pub const EPS_GEO: f64 = 1e-9;
