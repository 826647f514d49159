//! Power means, exponential means, and bounds on the ratio of two power means.
//!
//! The crate is organized bottom-up:
//!
//! - [`means`]: log-domain evaluation of power means `P_p` and exponential means `E_p`.
//! - [`special`]: `sinh(x)/x`, its logarithm, and the auxiliary function `f(x) = ln(sinh x / x) - x²/6`.
//! - [`bounds`]: Kantorovich, Cargo–Shisha and the `exp((p-q)/8 · ln²γ)` bound.
//! - [`extremal`]: supremum of the ratio over vectors of bounded spread, and the sharpness probe.
//! - [`verify`]: seeded property campaigns over random inputs.

// `!(x > 0.0)` style guards are deliberate: they also reject NaN
#![allow(clippy::neg_cmp_op_on_partial_ord)]

pub mod bounds;
pub mod error;
pub mod extremal;
pub mod format;
pub mod means;
pub mod special;
pub mod verify;

pub use error::{Error, Result};
pub use means::{ExtendedExponent, PositiveVector, RealVector};
