use super::certified_sign;
use crate::epstein::{hat_xi, xi};
use crate::specfun::integration_by_parts_series;
use crate::{EvalConfig, Error, Result, ScaleVector, Sign};
use rayon::prelude::*;
use serde::Serialize;
use std::f64::consts::PI;

/// Which side of the true quantity a bound lies on.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum Direction {
    Upper,
    Lower,
    Exact,
}

/// One numbered step of a sign argument: a bound on `quantity` and, when a
/// threshold is given, the sign of `quantity - threshold` it implies.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct BoundReport {
    pub quantity: String,
    pub bound_value: f64,
    pub direction: Direction,
    pub threshold: Option<f64>,
    pub conclusion: Option<Sign>,
}

impl BoundReport {
    pub fn new(quantity: impl Into<String>, bound_value: f64, direction: Direction, threshold: Option<f64>) -> Self {
        let mut r = Self {
            quantity: quantity.into(),
            bound_value,
            direction,
            threshold,
            conclusion: None,
        };
        r.conclusion = r.implied_conclusion();
        r
    }

    /// The conclusion that follows from `bound_value` and `threshold` alone.
    pub fn implied_conclusion(&self) -> Option<Sign> {
        let t = self.threshold?;
        let b = self.bound_value;
        match self.direction {
            Direction::Upper if b < t => Some(Sign::Negative),
            Direction::Lower if b > t => Some(Sign::Positive),
            Direction::Exact if b < t => Some(Sign::Negative),
            Direction::Exact if b > t => Some(Sign::Positive),
            _ => None,
        }
    }
}

/// `sum_{k in Z^9, |k| >= 2} e^(-pi |k|^2) <= ((e^pi + 1)/(e^pi - 1))^9 - 1 - 18 e^-pi`.
fn theta_tail_9() -> f64 {
    let e = PI.exp();
    ((e + 1.0) / (e - 1.0)).powi(9) - 1.0 - 18.0 * (-PI).exp()
}

/// First-shell term and shell-tail bound of one lattice sum in dimension 9:
/// `(18/pi) e^-pi S(beta, pi, m)` and `(1/2pi) S(beta, 2pi, m) * tail`.
fn shell_split(beta: f64, m: usize) -> (f64, f64) {
    let first = 18.0 / PI * (-PI).exp() * integration_by_parts_series(beta, PI, m);
    let tail = integration_by_parts_series(beta, 2.0 * PI, m) * theta_tail_9() / (2.0 * PI);
    (first, tail)
}

/// `Z_1(s) = -1/s - 1/(9/2 - s)`, the pole part of `Xi_9`.
pub fn staircase_z1(s: f64) -> f64 {
    -1.0 / s - 1.0 / (4.5 - s)
}

/// Upper bound for the lattice part `Z_2(s)` of `Xi_9`, from the
/// integration-by-parts bound truncated at `floor(beta)` in both sums.
pub fn staircase_z2_upper(s: f64) -> f64 {
    [s, 4.5 - s]
        .iter()
        .map(|&beta| {
            let (first, tail) = shell_split(beta, beta.floor() as usize);
            first + tail
        })
        .sum()
}

/// The constants of the closed-form sign argument that `Xi_9(9/4) < 0 < Xi_10(5/2)`,
/// followed by the computed values themselves.
pub fn lemma1_bounds(cfg: &EvalConfig) -> Result<Vec<BoundReport>> {
    let (first, tail) = shell_split(2.25, 2);
    let combined = first + tail;
    let xi9_upper = -8.0 / 9.0 + 2.0 * combined;
    let shell10 = 40.0 / PI * (-PI).exp() * integration_by_parts_series(2.5, PI, 3);
    let xi10_lower = -0.8 + shell10;
    let xi9 = hat_xi(9, 0.5, cfg)?;
    let xi10 = hat_xi(10, 0.5, cfg)?;
    Ok(vec![
        BoundReport::new("first shell |k| = 1, n = 9, s = 9/4", first, Direction::Exact, None),
        BoundReport::new("shells |k| >= 2, n = 9, s = 9/4", tail, Direction::Upper, None),
        BoundReport::new("lattice sum, n = 9, s = 9/4", combined, Direction::Upper, Some(4.0 / 9.0)),
        BoundReport::new("Xi_9(9/4)", xi9_upper, Direction::Upper, Some(0.0)),
        BoundReport::new("Xi_10(5/2)", xi10_lower, Direction::Lower, Some(0.0)),
        BoundReport::new("Xi_9(9/4) computed, upper end", xi9.value + xi9.err, Direction::Upper, Some(0.0)),
        BoundReport::new("Xi_10(5/2) computed, lower end", xi10.value - xi10.err, Direction::Lower, Some(0.0)),
    ])
}

/// Grid `{0.01 k} in (0, n/4]` plus `n/4` itself.
pub(crate) fn quarter_grid(n: usize) -> Vec<f64> {
    let quarter = 0.25 * n as f64;
    let mut grid: Vec<f64> = (1..)
        .map(|k| 0.01 * k as f64)
        .take_while(|&s| s < quarter - 1e-9)
        .collect();
    grid.push(quarter);
    grid
}

/// Negativity of `Xi_n` on `(0, n/2)` for `n <= 9`.
///
/// For `n = 9` the four-stair closed-form argument is reproduced. For every
/// `n` the sign of `Xi_n` is certified on the `0.01` grid of `(0, n/4]`
/// (the other half follows from the functional equation); the final report's
/// bound is the largest upper end `value + err` met on the grid.
pub fn verify_negative_range(n: usize, cfg: &EvalConfig) -> Result<Vec<BoundReport>> {
    if !(1..=9).contains(&n) {
        return Err(Error::Domain {
            what: "negative range dimension",
            value: n as f64,
        });
    }
    let mut reports = Vec::new();
    if n == 9 {
        for (lo, hi) in [(0.0, 0.95), (0.95, 1.55), (1.55, 2.0), (2.0, 2.25)] {
            let z2 = staircase_z2_upper(lo);
            let z1 = staircase_z1(hi);
            reports.push(BoundReport::new(format!("Z_2({lo})"), z2, Direction::Upper, None));
            reports.push(BoundReport::new(format!("Z_1({hi})"), z1, Direction::Exact, None));
            reports.push(BoundReport::new(
                format!("Xi_9 on [{lo}, {hi}]"),
                z1 + z2,
                Direction::Upper,
                Some(0.0),
            ));
        }
    }
    let unit = ScaleVector::unit(n);
    let uppers: Vec<f64> = quarter_grid(n)
        .into_par_iter()
        .map(|s| match certified_sign(cfg, |c| Ok(xi(n, s, &unit, c)?.approximation())) {
            Ok((_, a)) => Ok(a.upper()),
            Err(Error::Indeterminate { value, err }) => Ok(value + err),
            Err(e) => Err(e),
        })
        .collect::<Result<_>>()?;
    let worst = uppers.into_iter().fold(f64::NEG_INFINITY, f64::max);
    reports.push(BoundReport::new(
        format!("max Xi_{n}(s) + err over the 0.01 grid of (0, {}]", 0.25 * n as f64),
        worst,
        Direction::Upper,
        Some(0.0),
    ));
    Ok(reports)
}
