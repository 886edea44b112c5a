use crate::{Approximation, Error, EvalConfig, Result};
use std::f64::consts::PI;

const EPS: f64 = f64::EPSILON;

/// Partial sums of the theta series and its first two `t`-derivatives at
/// `t >= 1`, each with a truncation bound.
#[derive(Debug, Clone, Copy)]
pub(crate) struct ThetaSeries {
    /// `theta(t) = 1 + 2 sum e^{-pi t k^2}`
    pub theta: f64,
    /// `theta'(t) = -2 pi sum k^2 e^{-pi t k^2}`
    pub d1: f64,
    /// `theta''(t) = 2 pi^2 sum k^4 e^{-pi t k^2}`
    pub d2: f64,
    pub err0: f64,
    pub err1: f64,
    pub err2: f64,
}

/// Truncation `|k| <= K`, `K = ceil(sqrt(ln(1/eps) / (pi t))) + 1`; each tail is
/// bounded by twice its first omitted term (successive term ratios are below
/// `16 e^{-3 pi}` for `t >= 1`).
pub(crate) fn theta_series(t: f64, eps: f64) -> ThetaSeries {
    debug_assert!(t >= 1.0);
    let kmax = ((1.0 / eps).ln() / (PI * t)).sqrt().ceil() as usize + 1;
    let (mut s0, mut s1, mut s2) = (0.0, 0.0, 0.0);
    for k in (1..=kmax).rev() {
        let k2 = (k * k) as f64;
        let e = (-PI * t * k2).exp();
        s0 += e;
        s1 += k2 * e;
        s2 += k2 * k2 * e;
    }
    let k2 = ((kmax + 1) * (kmax + 1)) as f64;
    let omitted = (-PI * t * k2).exp();
    let theta = 1.0 + 2.0 * s0;
    let d1 = -2.0 * PI * s1;
    let d2 = 2.0 * PI * PI * s2;
    ThetaSeries {
        theta,
        d1,
        d2,
        err0: 4.0 * omitted + 4.0 * EPS * theta,
        err1: 4.0 * PI * k2 * omitted + 4.0 * EPS * d1.abs(),
        err2: 4.0 * PI * PI * k2 * k2 * omitted + 4.0 * EPS * d2.abs(),
    }
}

fn check_arg(t: f64) -> Result<()> {
    if t > 0.0 && t.is_finite() {
        Ok(())
    } else {
        Err(Error::Domain {
            what: "theta",
            value: t,
        })
    }
}

/// `theta(t) = sum_{k in Z} exp(-pi t k^2)` for `t > 0`.
///
/// For `t < 1` the reflection `theta(t) = t^{-1/2} theta(1/t)` is applied so
/// the summed series always has argument `>= 1`.
pub fn theta(t: f64, cfg: &EvalConfig) -> Result<Approximation> {
    check_arg(t)?;
    let eps = cfg.tol.min(1e-3);
    if t >= 1.0 {
        let s = theta_series(t, eps);
        Ok(Approximation::new(s.theta, s.err0))
    } else {
        let s = theta_series(1.0 / t, eps);
        Ok(Approximation::new(s.theta, s.err0).scale(t.sqrt().recip()).with_rounding(2.0))
    }
}

/// `g1 = theta'/theta` and `g2 = (theta'' theta - theta'^2) / theta^2`, derivatives in `t`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct ThetaLogDerivatives {
    pub g1: Approximation,
    pub g2: Approximation,
}

/// First and second derivatives of `log theta(t)`.
pub fn theta_log_derivatives(t: f64) -> Result<ThetaLogDerivatives> {
    check_arg(t)?;
    if t >= 1.0 {
        return Ok(direct_log_derivatives(t));
    }
    // log theta(t) = -ln(t)/2 + log theta(1/t)
    let u = 1.0 / t;
    let inner = direct_log_derivatives(u);
    let (t2, t3, t4) = (t * t, t * t * t, t * t * t * t);
    let g1 = -0.5 / t - inner.g1.value / t2;
    let g1_err = inner.g1.err / t2 + 4.0 * EPS * (0.5 / t + inner.g1.value.abs() / t2);
    let terms = [0.5 / t2, 2.0 * inner.g1.value / t3, inner.g2.value / t4];
    let g2 = terms.iter().sum::<f64>();
    let g2_err = 2.0 * inner.g1.err / t3
        + inner.g2.err / t4
        + 4.0 * EPS * terms.iter().map(|x| x.abs()).sum::<f64>();
    Ok(ThetaLogDerivatives {
        g1: Approximation::new(g1, g1_err),
        g2: Approximation::new(g2, g2_err),
    })
}

fn direct_log_derivatives(t: f64) -> ThetaLogDerivatives {
    let s = theta_series(t, 1e-30);
    let g1 = s.d1 / s.theta;
    let g1_err = s.err1 / s.theta + g1.abs() * s.err0 / s.theta + 2.0 * EPS * g1.abs();
    let a = s.d2 / s.theta;
    let g2 = a - g1 * g1;
    let a_err = s.err2 / s.theta + a.abs() * s.err0 / s.theta + 2.0 * EPS * a.abs();
    let g2_err = a_err + 2.0 * g1.abs() * g1_err + 4.0 * EPS * (a.abs() + g1 * g1);
    ThetaLogDerivatives {
        g1: Approximation::new(g1, g1_err),
        g2: Approximation::new(g2, g2_err),
    }
}
