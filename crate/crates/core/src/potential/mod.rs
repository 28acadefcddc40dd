//! Potentials of labeled subdivisions, exact path integrals of subgradient
//! selections, and cyclic-monotonicity tests on sampled correspondences.

mod cyclic;
mod integrate;
mod path;

pub use cyclic::{check_cyclic_monotonicity, CorrespondenceSample, CycleReport, Direction, SamplePair};
pub use integrate::integrate_subdivision;
pub use path::{path_integral, Polyline};
