//! Tomographic entanglement indicators for two continuous-variable systems:
//! entangled Talbot carpets (position-basis slice) and biphoton frequency
//! combs (time-time chronocyclic slice).

// `!(x > 0.0)` is deliberate: NaN must fail positivity checks.
#![allow(clippy::neg_cmp_op_on_partial_ord)]

pub mod biphoton;
pub mod cli;
pub mod error;
pub mod numerics;
pub mod talbot;

pub use error::{Error, Result};
