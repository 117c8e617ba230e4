//! Exact computations with weakly idempotent complete additive categories,
//! bounded complexes over them, stupid weight structures and K₀.

pub mod addcat;
pub mod complexes;
pub mod error;
pub mod exactlin;
pub mod json;
pub mod k0;
pub mod random;
pub mod weights;

pub use error::{Error, Result};
