pub mod basis;
pub mod bench;
pub mod error;
pub mod geometry;
pub mod mesh;
pub mod quadrature;
pub mod smoothing;
pub mod solver;

pub use error::{Error, Result};
