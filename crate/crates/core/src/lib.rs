//! Exact symmetric functions, modified Macdonald polynomials, the HLV kernel and
//! finite-field counting oracles.

pub mod error;
pub mod hlv;
pub mod macdonald;
pub mod oracle;
pub mod partitions;
pub mod scalars;
pub mod seriesalg;
pub mod symfunc;
pub mod verify;

pub use error::{Error, Result};
