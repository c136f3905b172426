//! Exact sumset arithmetic in cyclic groups and the integers, with checkers
//! for the 3k−4 structure theory modulo a prime.

pub mod analytic;
pub mod arith;
pub mod cyclic;
pub mod error;
pub mod harness;
pub mod isoperimetry;
pub mod progressions;
pub mod trios;

pub use cyclic::{AffineMap, CyclicSet, IntSet};
pub use error::{Error, Result};
