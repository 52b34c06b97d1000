pub mod bounds;
pub mod cli;
pub mod combinatorics;
pub mod error;
pub mod ffield;
pub mod indicators;
pub mod partition;
pub mod scalars;
pub mod search;
pub mod selftest;
pub mod tensors;

pub use error::{Error, Result};
