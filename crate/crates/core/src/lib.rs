pub mod characters;
pub mod config;
pub mod equidist;
pub mod error;
pub mod eulerchar;
pub mod field;
pub mod linalg;
pub mod poly;
pub mod repweights;
pub mod rootsys;
pub mod sums;
pub mod verify;
pub mod wildmono;

pub use error::{KlError, Result};
