use crate::specfun::{theta_log_derivatives, theta_series};
use crate::{Approximation, Error, EvalConfig, Result};
use serde::Serialize;
use std::f64::consts::PI;

const EPS: f64 = f64::EPSILON;

/// `h(v) = theta''(v) theta(v) - theta'(v)^2 + theta(v) theta'(v) / v` for `v >= 1`.
///
/// Its positivity on `[1, inf)` is equivalent to strict convexity of
/// `u -> log theta(e^u)` for `u >= 0`.
pub fn h_of_v(v: f64, cfg: &EvalConfig) -> Result<Approximation> {
    if !(v >= 1.0) || !v.is_finite() {
        return Err(Error::Domain { what: "h(v)", value: v });
    }
    cfg.validate()?;
    // h(v) is of order e^(-pi v); truncate relative to that scale
    let eps = (cfg.tol.min(1e-3) * (-PI * v).exp()).max(f64::MIN_POSITIVE);
    let t = theta_series(v, eps);
    let (th, d1, d2) = (t.theta, t.d1, t.d2);
    let terms = [d2 * th, -d1 * d1, th * d1 / v];
    let value: f64 = terms.iter().sum();
    let err = t.err2 * th
        + d2.abs() * t.err0
        + 2.0 * d1.abs() * t.err1
        + (t.err0 * d1.abs() + th * t.err1) / v
        + t.err0 * t.err2
        + t.err1 * t.err1
        + 8.0 * EPS * terms.iter().map(|x| x.abs()).sum::<f64>();
    Ok(Approximation::new(value, err))
}

/// `C(j, k) = pi (k^2 - j^2)^2 - (j^2 + k^2) / v`, the coefficient of
/// `(pi/2) e^(-pi v (j^2 + k^2))` in the double-sum form of `h(v)`.
pub fn claim_coefficient(j: i64, k: i64, v: f64) -> f64 {
    let (j2, k2) = ((j * j) as f64, (k * k) as f64);
    PI * (k2 - j2).powi(2) - (j2 + k2) / v
}

/// `q(k) = C(k - 1, k) + C(k, k) / 2`.
pub fn claim_q(k: i64, v: f64) -> f64 {
    claim_coefficient(k - 1, k, v) + 0.5 * claim_coefficient(k, k, v)
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct ClaimReport {
    pub kmax: i64,
    pub q1: f64,
    /// `C(j, k) > 0` for all `0 <= j < k <= kmax`.
    pub off_diagonal_positive: bool,
    /// `q(k) > 0` for `k = 1..kmax`.
    pub paired_diagonal_positive: bool,
    pub first_failure: Option<(i64, i64)>,
}

impl ClaimReport {
    pub fn passed(&self) -> bool {
        self.off_diagonal_positive && self.paired_diagonal_positive
    }
}

/// Checks the two coefficient claims at the worst case `v = 1`.
pub fn claim_ab_check(kmax: i64) -> Result<ClaimReport> {
    if kmax < 2 {
        return Err(Error::Domain {
            what: "kmax",
            value: kmax as f64,
        });
    }
    let mut first_failure = None;
    let mut off = true;
    for k in 1..=kmax {
        for j in 0..k {
            if claim_coefficient(j, k, 1.0) <= 0.0 {
                off = false;
                first_failure.get_or_insert((j, k));
            }
        }
    }
    let mut paired = true;
    for k in 1..=kmax {
        if claim_q(k, 1.0) <= 0.0 {
            paired = false;
            first_failure.get_or_insert((k - 1, k));
        }
    }
    Ok(ClaimReport {
        kmax,
        q1: claim_q(1, 1.0),
        off_diagonal_positive: off,
        paired_diagonal_positive: paired,
        first_failure,
    })
}

/// `f''(u)` for `f(u) = log theta(e^u)`, evaluated at `u` as given.
pub fn log_theta_second_derivative(u: f64) -> Result<Approximation> {
    if !u.is_finite() {
        return Err(Error::Domain { what: "u", value: u });
    }
    let t = u.exp();
    let d = theta_log_derivatives(t)?;
    let a = t * t * d.g2.value;
    let b = t * d.g1.value;
    Ok(Approximation::new(
        a + b,
        t * t * d.g2.err + t * d.g1.err + 4.0 * EPS * (a.abs() + b.abs()),
    ))
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct LogConvexityReport {
    /// `(u, f''(|u|))` for each grid point.
    pub points: Vec<(f64, Approximation)>,
    pub all_positive: bool,
}

/// Certifies `f''(u) > 0` on a grid, using `f''(-u) = f''(u)` to evaluate at
/// `|u|` where the series has no cancellation.
pub fn log_theta_convexity(u_grid: &[f64]) -> Result<LogConvexityReport> {
    if u_grid.is_empty() {
        return Err(Error::Analysis("empty grid".into()));
    }
    let points = u_grid
        .iter()
        .map(|&u| Ok((u, log_theta_second_derivative(u.abs())?)))
        .collect::<Result<Vec<_>>>()?;
    let all_positive = points.iter().all(|(_, a)| a.lower() > 0.0);
    Ok(LogConvexityReport { points, all_positive })
}
