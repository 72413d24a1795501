//! Exact truncated q-series, overpartition families with gap conditions,
//! the universal mock theta functions `g2` / `g3`, and a probabilistic
//! realization of `g2` through independent events.

pub mod cli;
pub mod error;
pub mod mocktheta;
pub mod partitions;
pub mod probability;
pub mod qseries;
pub mod verify;

pub use error::{Error, Result};
pub use partitions::{Family, FamilyParams, OverPartition, Part};
pub use qseries::{Monomial, TruncatedSeries};
