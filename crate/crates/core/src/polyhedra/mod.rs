//! Half-space descriptions, an exact simplex solver, planar polygon
//! extraction and upper concave hulls.

mod halfspace;
pub mod hull;
pub mod lp;
mod polygon;

pub use halfspace::{reduce, AffinePiece, HPolyhedron, HalfSpace};
pub use hull::{convex_hull_hrep, upper_concave_hull, AffineHull, UpperHull};
pub use lp::{simplex_solve, LinearProgram, LpOutcome, LpSolution, Sense};
pub use polygon::{polygon_from_halfspaces, Polygon};
pub(crate) use polygon::{angle_cmp, cross, primitive, rot90};
