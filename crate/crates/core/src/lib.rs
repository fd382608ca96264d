//! Exact Stirling, Lah, Bell and binomial number families, truncated power
//! series over the rationals, and a registry of convolution identities
//! checked by evaluating both sides independently.

pub mod cli;
pub mod error;
pub mod identities;
pub mod kernel;
pub mod series;

pub use error::{Error, Result};
