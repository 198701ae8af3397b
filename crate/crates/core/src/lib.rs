//! Numerical companion to the Voros / Li family of Riemann-hypothesis
//! positivity criteria.
//!
//! * [`exact`]: exact rational coefficient tables `A_{k,n}` and `F_2n`.
//! * [`numerics`]: arbitrary-precision `zeta`, `Gamma`, `xi` and contour
//!   derivatives of `ln xi` and `xi`.
//! * [`zeros`]: zero-ordinate tables and truncation-tail bounds.
//! * [`criteria`]: the zero sums, the derivative criterion and their identity.
//! * [`arith`]: von Mangoldt partial sums.
//! * [`cli`]: the command-line front end.

pub mod arith;
pub mod cli;
pub mod criteria;
pub mod error;
pub mod exact;
pub mod numerics;
pub mod zeros;

pub use error::{Error, Result};
