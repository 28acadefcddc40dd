//! Exact scalars, vectors and small dense linear algebra over the rationals.

pub mod linalg;
mod rational;
mod vector;

pub use rational::Rational;
pub use vector::{primitive_direction, primitive_direction_rational, IntegerVector, RationalVector};
