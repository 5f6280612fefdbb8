pub mod arith;
pub mod brute_force;
pub mod element_counts;
pub mod error;
pub mod group_orders;
pub mod kgv_bounds;
pub mod orbit_bounds;
pub mod partitions;
pub mod polyfield;

pub use error::{Error, Result};
