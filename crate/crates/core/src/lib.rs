pub mod branch;
pub mod cli;
mod count;
pub mod divide;
pub mod error;
pub mod lattice;
pub mod monodromy;
pub mod report;
pub mod strata;

pub use error::{Error, Result};
