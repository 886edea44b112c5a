use crate::{Approximation, Error, Result};
use std::f64::consts::PI;

const EPS: f64 = f64::EPSILON;
const CF_MAX_ITER: usize = 300;
const FPMIN: f64 = 1e-300;

const LANCZOS_G: f64 = 7.0;
const LANCZOS: [f64; 9] = [
    0.999_999_999_999_809_9,
    676.520_368_121_885_1,
    -1_259.139_216_722_402_8,
    771.323_428_777_653_1,
    -176.615_029_162_140_6,
    12.507_343_278_686_905,
    -0.138_571_095_265_720_12,
    9.984_369_578_019_572e-6,
    1.505_632_735_149_311_6e-7,
];

/// Relative accuracy assumed for [`gamma`] and [`ln_gamma`] results.
pub(crate) const GAMMA_REL_ERR: f64 = 4e-15;

/// Taylor coefficients of 1/Gamma(z) = sum c_k z^k, k = 1..26.
const RECIP_GAMMA: [f64; 26] = [
    1.0,
    0.577_215_664_901_532_9,
    -0.655_878_071_520_253_8,
    -0.042_002_635_034_095_2,
    0.166_538_611_382_291_5,
    -0.042_197_734_555_544_3,
    -0.009_621_971_527_877_0,
    0.007_218_943_246_663_0,
    -0.001_165_167_591_859_1,
    -0.000_215_241_674_114_9,
    0.000_128_050_282_388_2,
    -0.000_020_134_854_780_7,
    -0.000_001_250_493_482_1,
    0.000_001_133_027_232_0,
    -0.000_000_205_633_841_7,
    0.000_000_006_116_095_0,
    0.000_000_005_002_007_5,
    -0.000_000_001_181_274_6,
    0.000_000_000_104_342_7,
    0.000_000_000_007_782_3,
    -0.000_000_000_003_696_8,
    0.000_000_000_000_510_0,
    -0.000_000_000_000_020_6,
    -0.000_000_000_000_005_4,
    0.000_000_000_000_001_4,
    0.000_000_000_000_000_1,
];

/// `sin(pi x)` with exact zeros at the integers.
pub fn sin_pi(x: f64) -> f64 {
    if x == x.trunc() {
        return 0.0;
    }
    let r = x - 2.0 * (x / 2.0).round();
    if r > 0.5 {
        (PI * (1.0 - r)).sin()
    } else if r < -0.5 {
        -(PI * (1.0 + r)).sin()
    } else {
        (PI * r).sin()
    }
}

fn lanczos_sum(x: f64) -> f64 {
    LANCZOS[1..]
        .iter()
        .enumerate()
        .fold(LANCZOS[0], |acc, (i, c)| acc + c / (x + (i + 1) as f64))
}

/// The gamma function for real `x`; NaN at the poles `0, -1, -2, ...`.
pub fn gamma(x: f64) -> f64 {
    if x <= 0.0 && x == x.trunc() {
        return f64::NAN;
    }
    if x < 0.5 {
        return PI / (sin_pi(x) * gamma(1.0 - x));
    }
    let xm = x - 1.0;
    let t = xm + LANCZOS_G + 0.5;
    let half = t.powf(0.5 * (xm + 0.5));
    (2.0 * PI).sqrt() * half * (-t).exp() * half * lanczos_sum(xm)
}

/// `ln |Gamma(x)|` for real `x` away from the poles.
pub fn ln_gamma(x: f64) -> f64 {
    if x <= 0.0 && x == x.trunc() {
        return f64::INFINITY;
    }
    if x < 0.5 {
        return (PI / sin_pi(x).abs()).ln() - ln_gamma(1.0 - x);
    }
    let xm = x - 1.0;
    let t = xm + LANCZOS_G + 0.5;
    0.5 * (2.0 * PI).ln() + (xm + 0.5) * t.ln() - t + lanczos_sum(xm).ln()
}

/// `(Gamma(1 + b) - 1) / b` for `|b| <= 0.5`, without cancellation at small `b`.
fn gamma1p_m1_over(b: f64) -> f64 {
    debug_assert!(b.abs() <= 0.5);
    // 1/Gamma(1+b) = 1 + sum_{k>=2} c_k b^(k-1)
    let mut tail = 0.0;
    for &c in RECIP_GAMMA[1..].iter().rev() {
        tail = tail * b + c;
    }
    let recip = 1.0 + b * tail;
    -tail / recip
}

/// Upper incomplete gamma on `0 <= beta <= 1` for small `x`, written so that the
/// `beta -> 0` limit (the exponential integral) is reached smoothly.
fn small_beta_series(beta: f64, x: f64) -> Approximation {
    let lx = x.ln();
    let bracket = if beta == 0.0 {
        -super::EULER_GAMMA - lx
    } else if beta < 0.5 {
        gamma1p_m1_over(beta) - (beta * lx).exp_m1() / beta
    } else {
        (gamma(1.0 + beta) - x.powf(beta)) / beta
    };
    // sum_{k>=1} (-x)^k / (k! (k + beta))
    let mut term = 1.0;
    let mut sum = 0.0;
    let mut mag = 0.0;
    for k in 1..200 {
        let kf = k as f64;
        term *= -x / kf;
        let t = term / (kf + beta);
        sum += t;
        mag += t.abs();
        if t.abs() <= EPS * sum.abs() {
            break;
        }
    }
    let xb = x.powf(beta);
    let value = bracket - xb * sum;
    let bracket_err = if beta >= 0.5 {
        GAMMA_REL_ERR * gamma(1.0 + beta) / beta
    } else {
        4.0 * EPS
    };
    let err = 16.0 * EPS * (bracket.abs() + xb * mag) + bracket_err;
    Approximation::new(value, err)
}

/// Continued fraction for `h` with `Gamma(a, x) = e^-x x^a h` (modified Lentz).
fn continued_fraction(a: f64, x: f64) -> Result<(f64, usize)> {
    let mut b = x + 1.0 - a;
    let mut c = 1.0 / FPMIN;
    let mut d = if b.abs() < FPMIN { 1.0 / FPMIN } else { 1.0 / b };
    let mut h = d;
    for i in 1..=CF_MAX_ITER {
        let an = -(i as f64) * (i as f64 - a);
        b += 2.0;
        d = an * d + b;
        if d.abs() < FPMIN {
            d = FPMIN;
        }
        c = b + an / c;
        if c.abs() < FPMIN {
            c = FPMIN;
        }
        d = 1.0 / d;
        let del = d * c;
        h *= del;
        if (del - 1.0).abs() <= EPS {
            return Ok((h, i));
        }
    }
    Err(Error::Convergence {
        what: "incomplete gamma continued fraction",
        iterations: CF_MAX_ITER,
    })
}

/// Kernel `x^-beta Gamma(beta, x)` with a relative or absolute error bound.
fn kernel_impl(beta: f64, x: f64) -> Result<Approximation> {
    if !(x > 0.0) || !x.is_finite() || !beta.is_finite() {
        return Err(Error::Domain {
            what: "incomplete gamma",
            value: x,
        });
    }
    if x > beta + 1.0 && x >= 1.0 {
        let (h, iters) = continued_fraction(beta, x)?;
        let value = (-x).exp() * h;
        let rel = (8.0 + iters as f64 / 4.0) * EPS;
        return Ok(Approximation::new(value, rel * value.abs()));
    }
    let g = if beta > 1.0 {
        // Gamma(beta) minus the lower-gamma series.
        let mut ap = beta;
        let mut term = 1.0 / beta;
        let mut sum = term;
        for _ in 0..1000 {
            ap += 1.0;
            term *= x / ap;
            sum += term;
            if term.abs() <= EPS * sum.abs() {
                break;
            }
        }
        let lower = sum * (beta * x.ln() - x).exp();
        let full = gamma(beta);
        Approximation::new(full - lower, GAMMA_REL_ERR * full.abs() + 16.0 * EPS * lower.abs())
    } else if beta >= 0.0 {
        small_beta_series(beta, x)
    } else {
        // Downward recurrence Gamma(b-1, x) = (Gamma(b, x) - x^(b-1) e^-x) / (b-1).
        let start = beta - beta.floor();
        let steps = (start - beta).round() as usize;
        let mut g = small_beta_series(start, x);
        let mut b = start;
        for _ in 0..steps {
            let p = (b - 1.0) * x.ln() - x;
            let power = p.exp();
            g = Approximation::new(
                (g.value - power) / (b - 1.0),
                (g.err + 4.0 * EPS * (g.value.abs() + power)) / (b - 1.0).abs(),
            );
            b -= 1.0;
        }
        g
    };
    Ok(g.scale(x.powf(-beta)).with_rounding(4.0))
}

/// Upper incomplete gamma function `Gamma(beta, x)` for real `beta` and `x > 0`.
///
/// Continued fraction for `x > beta + 1` (and `x >= 1`), `Gamma(beta)` minus the
/// lower series for `beta > 1`, a cancellation-free series for `0 <= beta <= 1`
/// and downward recurrence below that.
pub fn upper_incomplete_gamma(beta: f64, x: f64) -> Result<Approximation> {
    let k = kernel_impl(beta, x)?;
    Ok(k.scale(x.powf(beta)).with_rounding(2.0))
}

/// `x^-beta Gamma(beta, x) = int_1^inf t^(beta-1) e^(-x t) dt`.
///
/// This is the lattice kernel of the theta-integral continuation; it avoids
/// the overflow of `x^beta` and `Gamma(beta, x)` separately.
pub fn gamma_kernel(beta: f64, x: f64) -> Result<Approximation> {
    kernel_impl(beta, x)
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum BoundSide {
    Upper,
    Lower,
}

/// `sum_{j=0}^{terms} prod_{i=1}^{j} (beta - i) / x^j`.
pub fn integration_by_parts_series(beta: f64, x: f64, terms: usize) -> f64 {
    let mut sum = 1.0;
    let mut prod = 1.0;
    for j in 1..=terms {
        prod *= (beta - j as f64) / x;
        sum += prod;
    }
    sum
}

/// Closed-form bracket of `Gamma(beta, x)` from repeated integration by parts:
/// truncating after `floor(beta)` terms gives an upper bound and after
/// `floor(beta) + 1` terms a lower bound.
pub fn incgamma_bound(beta: f64, x: f64, side: BoundSide) -> Result<f64> {
    if !(beta > 0.0) || !(x > beta) {
        return Err(Error::BoundInapplicable { beta, x });
    }
    let m = beta.floor() as usize;
    let terms = match side {
        BoundSide::Upper => m,
        BoundSide::Lower => m + 1,
    };
    Ok((( beta - 1.0) * x.ln() - x).exp() * integration_by_parts_series(beta, x, terms))
}
