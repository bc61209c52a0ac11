//! Numerical laboratory for the bilinear (Fierz-current) form of the
//! Maxwell-Dirac stress-energy tensor.

pub mod bilinear;
pub mod clifford;
pub mod commands;
pub mod error;
pub mod fierz;
pub mod io;
pub mod report;
pub mod sampling;
pub mod spherical;
pub mod stress;
pub mod suite;
pub mod tensor;

pub use error::{Error, Result};
