//! Evaluation and analysis of the Epstein zeta function of diagonal quadratic
//! forms,
//!
//! ```text
//! Z_n(s; a_1..a_n) = sum_{k in Z^n \ 0} (sum_i (a_i k_i)^2)^(-s),
//! ```
//!
//! and of its completed form `Xi_n(s; a) = V pi^(-s) Gamma(s) Z_n(s; a)` with
//! `V = sqrt(prod a_i)`, for real `s`.
//!
//! Every numerical result is returned together with an absolute error bound
//! (see [`Approximation`]) so that sign decisions can be made only when the
//! bound excludes zero.
//!
//! Module map:
//!
//! * [`specfun`]: theta, Riemann zeta, incomplete gamma, Bessel K, gamma.
//! * [`epstein`]: the primary Xi/Z/Lambda evaluator (incomplete-gamma lattice sums).
//! * [`chowla`]: an independent Chowla-Selberg evaluator used as a cross-check.
//! * [`analysis`]: positivity intervals, second derivatives, sign bounds.
//! * [`convexity`]: log-convexity of theta, determinant identities, convexity checks.
//! * [`regions`]: sign-region scans over hyperplane charts and their geometry.

// `!(x > 0.0)` style guards also reject NaN.
#![allow(clippy::neg_cmp_op_on_partial_ord)]

pub mod analysis;
pub mod chowla;
pub mod convexity;
pub mod epstein;
pub mod regions;
pub mod specfun;

mod approx;
mod error;
mod sum;

pub use approx::{Approximation, Sign};
pub use epstein::{EvalConfig, ScaleVector, XiValue};
pub use error::{Error, Result};
