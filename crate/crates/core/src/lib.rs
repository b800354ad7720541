//! Tilings of Boolean lattices and grids by copies of a finite poset.

pub mod chains;
pub mod cli;
pub mod error;
pub mod grid;
pub mod pipeline;
pub mod poset;
pub mod tiling;
pub mod verify;
pub mod weights;

pub use error::{Error, Infeasibility, Result};
