//! Real-argument special functions with absolute error bounds.
//!
//! Everything here is a pure function of its arguments. Routines that can
//! only be evaluated approximately return an [`Approximation`](crate::Approximation).

mod bessel;
mod gamma;
pub mod quad;
mod theta;
mod zeta;

pub use bessel::bessel_k;
pub use gamma::{
    gamma, gamma_kernel, incgamma_bound, integration_by_parts_series, ln_gamma, sin_pi,
    upper_incomplete_gamma, BoundSide,
};
pub use theta::{theta, theta_log_derivatives, ThetaLogDerivatives};
pub use zeta::riemann_zeta;

pub(crate) use gamma::GAMMA_REL_ERR;
pub(crate) use theta::theta_series;

/// Euler-Mascheroni constant.
pub const EULER_GAMMA: f64 = 0.577_215_664_901_532_9;
