//! Exact topological recursion on the framed mirror curve of C^3.

pub mod error;
pub mod exactmath;
pub mod series;
pub mod curve;
pub mod recursion;
pub mod verify;
pub mod cache;
pub mod cli;

pub use error::{Error, Result};
