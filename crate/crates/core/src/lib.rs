//! Exact solvers for linear systems over ordered rings and partially ordered
//! modules: polyhedral cones, Hilbert bases, and piecewise-linear functions
//! on lattice-ordered groups.

pub mod calculus;
pub mod cli;
pub mod cone;
pub mod error;
pub mod fm;
pub mod genset;
pub mod hilbert;
pub mod json;
pub mod lattice;
pub mod lgroup;
pub mod linalg;
pub mod matrix;
pub mod ring;

pub use error::{Error, Result};
pub use genset::GenSet;
pub use matrix::Mat;
pub use ring::{RingSpec, Scalar};
