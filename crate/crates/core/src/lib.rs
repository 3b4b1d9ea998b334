pub mod action;
pub(crate) mod engine;
pub mod error;
pub mod gl_hecke;
pub mod heis;
pub mod heis_hecke;
pub mod json;
pub mod linalg;
pub mod orbit_lab;
pub mod residue;
pub mod small;
pub mod verify;

pub use error::{HeckeError, Result};
pub use residue::Budget;
