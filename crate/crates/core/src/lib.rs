//! Entropy weight and entropy distance for linear codes and linear encoders
//! over finite fields.

pub mod bounds;
pub mod codes;
pub mod encoders;
pub mod entropy;
pub mod error;
pub mod gf;
pub mod packing;

pub use entropy::LogQValue;
pub use error::{Error, Result};
pub use gf::{Field, Matrix, Vector};
