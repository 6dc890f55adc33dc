//! Exact search over small set families: intersecting and cross-intersecting
//! families, label compressions, independent sets of the depth-two claw and
//! weighted sums over set sizes.

pub mod claw;
pub mod error;
pub mod labeled;
pub mod report;
pub mod rng;
pub mod sample;
pub mod search;
pub mod sets;
pub mod weights;

pub use error::{Error, Result};
pub use sets::{Family, SetMask};
