//! Numerical laboratory for entire functions of order zero with positive
//! Taylor coefficients.
//!
//! The crate studies three families,
//!
//! * `F_a(z) = Σ z^k / ((a+1)(a²+1)…(a^k+1))`,
//! * the partial theta function `g_a(z) = Σ z^j a^(-j²)`,
//! * `h_a(z) = Σ z^k / ((a-1)(a²-1)…(a^k-1))`,
//!
//! and decides membership in the Laguerre-Pólya class through finite
//! criteria: second-quotient tests, sign tests on a real interval, Rouché
//! radii and winding numbers, and certified bisection for the critical
//! constants.
//!
//! Module map:
//!
//! * [`series`]: coefficients (log form), evaluation with certified tail
//!   bounds, quotient sequences, and the pluggable [`real::Real`] hook.
//! * [`polyroots`]: exact Sturm-sequence real-root isolation, refinement,
//!   real-rootedness, and an Aberth solver for cross-checks.
//! * [`zerocount`]: winding-number zero counts on circles, Rouché radii.
//! * [`criteria`]: membership tests and the threshold machinery.
//! * [`constants`]: bisection solvers for `q∞`, `c_n`, `a*` and the
//!   threshold polynomials.
//! * [`verify`]: grid checks of every displayed inequality.

// `!(x > y)` also rejects NaN.
#![allow(clippy::neg_cmp_op_on_partial_ord)]

pub mod constants;
pub mod criteria;
mod error;
pub mod optimize;
pub mod polyroots;
pub mod real;
pub mod series;
pub mod verify;
pub mod zerocount;

pub use error::{Error, Result};
pub use series::{EvalResult, FamilyKind, QuotientView, SeriesFamily};

/// Tool version reported by front ends.
pub const VERSION: &str = env!("CARGO_PKG_VERSION");
