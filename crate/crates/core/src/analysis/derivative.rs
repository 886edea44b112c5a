use super::certified_sign;
use crate::epstein::lattice::lattice_sum;
use crate::epstein::check_poles;
use crate::specfun::gamma_kernel;
use crate::{Approximation, EvalConfig, Result, Sign};
use serde::Serialize;

const EPS: f64 = f64::EPSILON;
/// Step of the central second difference in `beta`.
const STEP: f64 = 2e-3;

/// `d^2/d beta^2 int_1^inf t^(beta-1) e^(-x t) dt = int_1^inf t^(beta-1) (ln t)^2 e^(-x t) dt`
/// by a central second difference of the kernel.
fn kernel_second_difference(beta: f64, x: f64) -> Result<Approximation> {
    let h2 = STEP * STEP;
    let kp = gamma_kernel(beta + STEP, x)?;
    let k0 = gamma_kernel(beta, x)?;
    let km = gamma_kernel(beta - STEP, x)?;
    let value = (kp.value - 2.0 * k0.value + km.value) / h2;
    let rounding = (kp.err + 2.0 * k0.err + km.err + 4.0 * EPS * (kp.value + 2.0 * k0.value + km.value)) / h2;
    // fourth beta-derivative <= kernel(beta + 4) / e^4, since ln t <= t / e
    let k4 = gamma_kernel(beta + STEP + 4.0, x)?;
    let truncation = 2.0 * h2 / 12.0 * k4.value * (-4.0f64).exp();
    Ok(Approximation::new(value, rounding + truncation))
}

/// `Xi_n''(s)` at unit scales.
pub fn xi_second_derivative(n: usize, s: f64, cfg: &EvalConfig) -> Result<Approximation> {
    check_poles(n, s)?;
    cfg.validate()?;
    let half_n = 0.5 * n as f64;
    let beta2 = half_n - s;
    let w = vec![1.0; n];
    let target = 0.25 * cfg.tol;
    // (ln t)^2 <= t^2, so the kernel at beta + 2 dominates the summand
    let first = lattice_sum(&w, s + 2.0 + STEP, target, cfg.max_radius, |x| {
        kernel_second_difference(s, x)
    })?;
    let second = lattice_sum(&w, beta2 + 2.0 + STEP, target, cfg.max_radius, |x| {
        kernel_second_difference(beta2, x)
    })?;
    let poles = -2.0 / s.powi(3) - 2.0 / beta2.powi(3);
    let value = poles + first.value + second.value;
    Ok(Approximation::new(
        value,
        first.err + second.err + 4.0 * EPS * (poles.abs() + first.value.abs() + second.value.abs()),
    ))
}

/// `hat Xi_n''(s) = (n/2)^2 Xi_n''(n s / 2)`.
pub fn hat_xi_second_derivative(n: usize, s_hat: f64, cfg: &EvalConfig) -> Result<Approximation> {
    if !(s_hat > 0.0 && s_hat < 1.0) {
        return Err(crate::Error::Domain {
            what: "s_hat",
            value: s_hat,
        });
    }
    let half_n = 0.5 * n as f64;
    Ok(xi_second_derivative(n, half_n * s_hat, cfg)?.scale(half_n * half_n))
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum CriticalPoint {
    LocalMax,
    LocalMin,
}

/// Nature of the critical point `s = n/4` of `Xi_n` at unit scales.
pub fn classify_critical_point(n: usize, cfg: &EvalConfig) -> Result<CriticalPoint> {
    let (sign, _) = certified_sign(cfg, |c| hat_xi_second_derivative(n, 0.5, c))?;
    Ok(match sign {
        Sign::Negative => CriticalPoint::LocalMax,
        Sign::Positive => CriticalPoint::LocalMin,
    })
}
