//! Evaluation of `Xi_n`, `Z_n` and `Lambda_n` through the incomplete-gamma
//! form of the theta-integral continuation:
//!
//! ```text
//! Xi_n(s; a) = -V/s - V^-1/(n/2 - s)
//!            + V   sum_{k!=0} (pi Q(k))^-s        Gamma(s, pi Q(k))
//!            + V^-1 sum_{k!=0} (pi Q*(k))^(s-n/2) Gamma(n/2 - s, pi Q*(k))
//! ```
//!
//! with `Q(k) = sum (a_i k_i)^2` and `Q*(k) = sum (k_i / a_i)^2`.

mod config;
pub(crate) mod lattice;
mod scales;

pub use config::EvalConfig;
pub use scales::ScaleVector;

use crate::specfun::{gamma, gamma_kernel};
use crate::{Approximation, Error, Result};
use serde::Serialize;
use std::f64::consts::PI;

const EPS: f64 = f64::EPSILON;
/// Width of the excluded band around the poles `s = 0` and `s = n/2`.
pub const POLE_GUARD: f64 = 1e-6;

/// A value of `Xi_n(s; a)` with its error bound.
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct XiValue {
    pub value: f64,
    pub err: f64,
    pub n: usize,
    pub s: f64,
}

impl XiValue {
    pub fn approximation(&self) -> Approximation {
        Approximation::new(self.value, self.err)
    }
}

/// Residual of the functional equation together with the combined error bound
/// of the two evaluations.
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct Residual {
    pub residual: f64,
    pub bound: f64,
}

impl Residual {
    pub fn holds(&self) -> bool {
        self.residual <= self.bound
    }
}

fn check_dimension(n: usize, scales: &ScaleVector) -> Result<()> {
    if n == 0 || scales.len() != n {
        return Err(Error::Dimension {
            expected: n,
            got: scales.len(),
        });
    }
    Ok(())
}

pub(crate) fn check_poles(n: usize, s: f64) -> Result<()> {
    if !s.is_finite() {
        return Err(Error::Domain { what: "s", value: s });
    }
    if s.abs() < POLE_GUARD || (s - 0.5 * n as f64).abs() < POLE_GUARD {
        return Err(Error::Pole { s });
    }
    Ok(())
}

fn squares(scales: &ScaleVector) -> (Vec<f64>, Vec<f64>) {
    let a = scales.as_slice();
    (
        a.iter().map(|x| x * x).collect(),
        a.iter().map(|x| 1.0 / (x * x)).collect(),
    )
}

/// The two lattice sums of the continuation, each with its own tail target.
fn halves(
    s: f64,
    scales: &ScaleVector,
    cfg: &EvalConfig,
    targets: (f64, f64),
) -> Result<(Approximation, Approximation)> {
    cfg.validate()?;
    let beta2 = 0.5 * scales.len() as f64 - s;
    let (w, w_dual) = squares(scales);
    let first = lattice::lattice_sum(&w, s, targets.0, cfg.max_radius, |x| gamma_kernel(s, x))?;
    let second = lattice::lattice_sum(&w_dual, beta2, targets.1, cfg.max_radius, |x| {
        gamma_kernel(beta2, x)
    })?;
    Ok((first, second))
}

/// `Lambda_n(s; a)`: the sum of the two lattice sums, without volume weights
/// or pole terms.
pub fn lambda_n(s: f64, scales: &ScaleVector, cfg: &EvalConfig) -> Result<Approximation> {
    if !s.is_finite() {
        return Err(Error::Domain { what: "s", value: s });
    }
    let (first, second) = halves(s, scales, cfg, (0.25 * cfg.tol, 0.25 * cfg.tol))?;
    Ok((first + second).with_rounding(2.0))
}

/// `Xi_n(s; a) = V pi^-s Gamma(s) Z_n(s; a)`.
pub fn xi(n: usize, s: f64, scales: &ScaleVector, cfg: &EvalConfig) -> Result<XiValue> {
    check_dimension(n, scales)?;
    check_poles(n, s)?;
    let v = scales.volume();
    let half_n = 0.5 * n as f64;
    let (first, second) = halves(s, scales, cfg, (0.25 * cfg.tol / v, 0.25 * cfg.tol * v))?;
    let parts = [-v / s, -1.0 / (v * (half_n - s)), v * first.value, second.value / v];
    let value: f64 = parts.iter().sum();
    let rounding = 4.0 * EPS * parts.iter().map(|p| p.abs()).sum::<f64>();
    Ok(XiValue {
        value,
        err: v * first.err + second.err / v + rounding,
        n,
        s,
    })
}

/// `Z_n(s; a)`, recovered from `Xi_n` by dividing out `V pi^-s Gamma(s)`.
///
/// Exactly zero at the negative integers. `s = 0` is not supported.
pub fn z(n: usize, s: f64, scales: &ScaleVector, cfg: &EvalConfig) -> Result<Approximation> {
    check_dimension(n, scales)?;
    if s == 0.0 {
        return Err(Error::SpecialPoint);
    }
    if s == 0.5 * n as f64 {
        return Err(Error::Pole { s });
    }
    if s < 0.0 && s == s.trunc() {
        return Ok(Approximation::exact(0.0));
    }
    let x = xi(n, s, scales, cfg)?;
    let factor = scales.volume() * (-s * PI.ln()).exp() * gamma(s);
    let value = x.value / factor;
    Ok(Approximation::new(
        value,
        x.err / factor.abs() + (crate::specfun::GAMMA_REL_ERR + 8.0 * EPS) * value.abs(),
    ))
}

/// `hat Xi_n(s) = Xi_n(n s / 2; 1..1)` for `s` in `(0, 1)`.
pub fn hat_xi(n: usize, s_hat: f64, cfg: &EvalConfig) -> Result<XiValue> {
    if !(s_hat > 0.0 && s_hat < 1.0) {
        return Err(Error::Domain {
            what: "s_hat",
            value: s_hat,
        });
    }
    xi(n, 0.5 * n as f64 * s_hat, &ScaleVector::unit(n), cfg)
}

/// `|Xi_n(s; a) - Xi_n(n/2 - s; 1/a)|`, evaluated from two independent sums.
pub fn functional_equation_residual(
    n: usize,
    s: f64,
    scales: &ScaleVector,
    cfg: &EvalConfig,
) -> Result<Residual> {
    let left = xi(n, s, scales, cfg)?;
    let right = xi(n, 0.5 * n as f64 - s, &scales.reciprocal(), cfg)?;
    Ok(Residual {
        residual: (left.value - right.value).abs(),
        bound: left.err + right.err + 4.0 * EPS * left.value.abs().max(right.value.abs()),
    })
}
