use super::bounds::{quarter_grid, verify_negative_range};
use super::certified_sign;
use crate::epstein::xi;
use crate::{Approximation, Error, EvalConfig, Result, ScaleVector, Sign, XiValue};
use rayon::prelude::*;
use serde::Serialize;

/// Left seed of the sign scan; `Xi_n` tends to `-inf` as `s -> 0+`.
const LEFT_SEED: f64 = 1e-4;
/// Bisection stops once the bracket is at most this wide.
const BRACKET: f64 = 2e-5;
const MAX_GRID: usize = 10_000;

/// The positivity interval `(gamma, n/2 - gamma)` of `Xi_n` at unit scales.
///
/// `Xi_n` changes sign in `(gamma - bracket_width, gamma + bracket_width)`;
/// `left` and `right` are the certified values at the two bracket ends.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct SignInterval {
    pub n: usize,
    pub gamma: f64,
    pub mirror: f64,
    pub bracket_width: f64,
    /// Number of positive runs seen on the scan grid of `(0, n/4]`.
    pub components: usize,
    pub left: Approximation,
    pub right: Approximation,
}

fn unit_sign(n: usize, s: f64, cfg: &EvalConfig) -> Result<(Sign, Approximation)> {
    let unit = ScaleVector::unit(n);
    certified_sign(cfg, |c| Ok(xi(n, s, &unit, c)?.approximation()))
}

/// Smallest sign change of `Xi_n` on `(0, n/4]`, refined by bisection.
///
/// Returns `None` for `n <= 9` once the grid negativity check has passed.
pub fn find_positive_interval(n: usize, cfg: &EvalConfig) -> Result<Option<SignInterval>> {
    if n == 0 {
        return Err(Error::Dimension { expected: 1, got: 0 });
    }
    if n <= 9 {
        let reports = verify_negative_range(n, cfg)?;
        let grid = reports.last().expect("grid report");
        return match grid.conclusion {
            Some(Sign::Negative) => Ok(None),
            _ => Err(Error::Analysis(format!(
                "Xi_{n} not certified negative on the scan grid (max upper end {})",
                grid.bound_value
            ))),
        };
    }
    let mut grid = vec![LEFT_SEED];
    grid.extend(quarter_grid(n));
    if grid.len() > MAX_GRID {
        return Err(Error::Analysis(format!("scan grid for n = {n} exceeds {MAX_GRID} points")));
    }
    let signs: Vec<(Sign, Approximation)> = grid
        .par_iter()
        .map(|&s| unit_sign(n, s, cfg))
        .collect::<Result<_>>()?;
    if signs[0].0 != Sign::Negative {
        return Err(Error::Analysis(format!("Xi_{n}({LEFT_SEED}) is not negative")));
    }
    let Some(first) = signs.iter().position(|(sg, _)| *sg == Sign::Positive) else {
        return Err(Error::Analysis(format!("no sign change of Xi_{n} on (0, n/4]")));
    };
    let components = signs
        .windows(2)
        .filter(|w| w[0].0 == Sign::Negative && w[1].0 == Sign::Positive)
        .count();

    let (mut lo, mut hi) = (grid[first - 1], grid[first]);
    let (mut left, mut right) = (signs[first - 1].1, signs[first].1);
    while hi - lo > BRACKET {
        let mid = 0.5 * (lo + hi);
        let (sg, a) = unit_sign(n, mid, cfg)?;
        if sg == Sign::Negative {
            lo = mid;
            left = a;
        } else {
            hi = mid;
            right = a;
        }
    }
    let gamma = 0.5 * (lo + hi);
    Ok(Some(SignInterval {
        n,
        gamma,
        mirror: 0.5 * n as f64 - gamma,
        bracket_width: 0.5 * (hi - lo),
        components,
        left,
        right,
    }))
}

/// `Xi_n(s)` at unit scales on the given points, in order.
pub fn sweep(n: usize, points: &[f64], cfg: &EvalConfig) -> Vec<Result<XiValue>> {
    let unit = ScaleVector::unit(n);
    points.par_iter().map(|&s| xi(n, s, &unit, cfg)).collect()
}

/// Doubles `a_j` (other scales fixed at 1) until `Xi_n(s; a)` is certified
/// positive, and returns that `a_j`.
pub fn large_scale_positivity(n: usize, s: f64, j: usize, cfg: &EvalConfig) -> Result<f64> {
    if n < 2 {
        return Err(Error::Dimension { expected: 2, got: n });
    }
    if !(s > 0.0 && s < 0.5 * n as f64) {
        return Err(Error::Domain { what: "s", value: s });
    }
    if !(1..=n).contains(&j) {
        return Err(Error::Domain {
            what: "axis index",
            value: j as f64,
        });
    }
    for e in 0..=60 {
        let aj = 2f64.powi(e);
        let mut a = vec![1.0; n];
        a[j - 1] = aj;
        let scales = ScaleVector::new(a)?;
        match certified_sign(cfg, |c| Ok(xi(n, s, &scales, c)?.approximation())) {
            Ok((Sign::Positive, _)) => return Ok(aj),
            Ok(_) | Err(Error::Indeterminate { .. }) => {}
            Err(e) => return Err(e),
        }
    }
    Err(Error::Analysis(format!(
        "Xi_{n}({s}) not positive for a_{j} up to 2^60"
    )))
}
