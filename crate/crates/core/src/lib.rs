pub mod cli;
pub mod complexes;
pub mod equilibrium;
pub mod error;
pub mod exactmath;
pub mod polyhedra;
pub mod potential;
pub mod render;
pub mod valuation;

pub use error::{Error, Result};
