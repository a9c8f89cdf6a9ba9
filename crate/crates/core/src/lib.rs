pub mod cli;
pub mod error;
pub mod exactla;
pub mod flagvariety;
pub mod kgroup;
pub mod orbits;
pub mod rootdata;
pub mod schubert;
pub mod symmetry;
pub mod weyl;

pub use error::{Error, Result};
