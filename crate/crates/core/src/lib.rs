pub mod algebra;
pub mod error;
pub mod geometry;
pub mod ktheory;
pub mod measure;
pub mod motive;
pub mod schur;
pub mod zeta;

pub use error::{MotiveError, Result};
