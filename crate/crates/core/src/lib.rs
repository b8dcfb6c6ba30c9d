//! Exact tools for classifying rational angles in planar lattices.

pub mod algebra;
pub mod angles;
pub mod classify;
pub mod cli;
pub mod coset;
pub mod data;
pub mod error;
pub mod examples;
mod ser;
pub mod spaces;
pub mod surface;
pub mod uniteq;

pub use error::{Error, Result};
