use super::HyperplaneChart;
use crate::epstein::xi as xi_eval;
use crate::{Error, EvalConfig, Result, ScaleVector, XiValue};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;
use serde::Serialize;

/// Separation in log-coordinates beyond which the minimum must be strict.
pub const STRICT_MARGIN: f64 = 0.05;

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct MidpointReport {
    pub at_b1: XiValue,
    pub at_b2: XiValue,
    pub at_mid: XiValue,
    /// `(Xi(b1) + Xi(b2)) / 2 - Xi(mid)`.
    pub gap: f64,
    pub allowance: f64,
    pub holds: bool,
}

/// `Xi(mid) <= (Xi(b1) + Xi(b2)) / 2` along a chart, up to the error bounds.
pub fn midpoint_convexity_xi(
    n: usize,
    s: f64,
    chart: &HyperplaneChart,
    b1: &[f64],
    b2: &[f64],
    cfg: &EvalConfig,
) -> Result<MidpointReport> {
    if chart.n() != n {
        return Err(Error::Dimension {
            expected: n,
            got: chart.n(),
        });
    }
    if b1.len() != b2.len() {
        return Err(Error::Dimension {
            expected: b1.len(),
            got: b2.len(),
        });
    }
    let mid: Vec<f64> = b1.iter().zip(b2).map(|(x, y)| 0.5 * (x + y)).collect();
    let at_b1 = xi_eval(n, s, &chart.scales_at(b1)?, cfg)?;
    let at_b2 = xi_eval(n, s, &chart.scales_at(b2)?, cfg)?;
    let at_mid = xi_eval(n, s, &chart.scales_at(&mid)?, cfg)?;
    let gap = 0.5 * (at_b1.value + at_b2.value) - at_mid.value;
    let allowance = at_mid.err + 0.5 * (at_b1.err + at_b2.err);
    Ok(MidpointReport {
        at_b1,
        at_b2,
        at_mid,
        gap,
        allowance,
        holds: gap >= -allowance,
    })
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct MinimumReport {
    pub n: usize,
    pub s: f64,
    pub minimum: XiValue,
    pub samples: usize,
    /// Draws with `max |log a_i| > STRICT_MARGIN`.
    pub strict_samples: usize,
    /// Smallest `Xi(a) - Xi(1..1)` over the draws.
    pub smallest_excess: f64,
    /// Log-scales of draws that violated the inequality.
    pub failures: Vec<Vec<f64>>,
}

impl MinimumReport {
    pub fn passed(&self) -> bool {
        self.failures.is_empty()
    }
}

/// Random log-scales with `log a_i ~ U[-1, 1]` for `i < n` and the last
/// coordinate balancing the sum to zero.
pub fn product_one_samples(n: usize, samples: usize, seed: u64) -> Vec<Vec<f64>> {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    (0..samples)
        .map(|_| {
            let mut logs: Vec<f64> = (0..n - 1).map(|_| rng.gen_range(-1.0..=1.0)).collect();
            logs.push(-logs.iter().sum::<f64>());
            logs
        })
        .collect()
}

/// Checks `Xi_n(s; a) >= Xi_n(s; 1..1)` on random product-one scales, strictly
/// once the draw is at least [`STRICT_MARGIN`] away from equal scales.
pub fn verify_minimum_at_equal_scales(
    n: usize,
    s: f64,
    samples: usize,
    seed: u64,
    cfg: &EvalConfig,
) -> Result<MinimumReport> {
    if n < 2 {
        return Err(Error::Dimension { expected: 2, got: n });
    }
    let minimum = xi_eval(n, s, &ScaleVector::unit(n), cfg)?;
    let draws = product_one_samples(n, samples, seed);
    let values: Vec<XiValue> = draws
        .par_iter()
        .map(|logs| xi_eval(n, s, &ScaleVector::from_logs(logs)?, cfg))
        .collect::<Result<_>>()?;
    let mut failures = Vec::new();
    let mut strict_samples = 0;
    let mut smallest_excess = f64::INFINITY;
    for (logs, x) in draws.iter().zip(&values) {
        let excess = x.value - minimum.value;
        smallest_excess = smallest_excess.min(excess);
        let allowance = x.err + minimum.err;
        let strict = logs.iter().any(|l| l.abs() > STRICT_MARGIN);
        let ok = if strict {
            strict_samples += 1;
            excess > allowance
        } else {
            excess >= -2.0 * allowance
        };
        if !ok {
            failures.push(logs.clone());
        }
    }
    Ok(MinimumReport {
        n,
        s,
        minimum,
        samples,
        strict_samples,
        smallest_excess,
        failures,
    })
}
