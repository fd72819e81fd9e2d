//! Exact symbolic engine for noncommutative-residue computations of
//! Dirac-Witten operators on 4- and 6-manifolds with boundary.

pub mod boundary;
pub mod clifford;
pub mod error;
pub mod interior;
pub mod poly;
pub mod ratfun;
pub mod scalar;
pub mod sphere;
pub mod symbols;

pub use error::{Error, Result};
