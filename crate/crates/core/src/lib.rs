//! Exact arithmetic on tensor powers of the Carlitz module over rational
//! function fields F_{q^m}(θ).

pub mod error;
pub mod ff;

pub use error::{Error, Result};
pub mod places;
pub mod tpoly;
pub mod carlitz;
pub mod linalg;
pub mod relsolve;
pub mod criteria;
pub mod series;
