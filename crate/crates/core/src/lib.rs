//! Sum-rank metric codes and their geometry: finite field towers, skew
//! polynomial evaluation codes, linear sets, h-designs and derived
//! two-weight codes and strongly regular graphs.

pub mod codes;
pub mod combinat;
pub mod derived;
pub mod error;
pub mod fields;
pub mod geometry;
pub mod guards;
pub mod linalg;
pub mod skewpoly;

pub use error::{Error, Result};
pub use fields::{make_tower, FieldElement, FieldTower};
pub use guards::Guards;
