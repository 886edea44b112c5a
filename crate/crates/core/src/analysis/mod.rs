//! Sign analysis of `Xi_n(s)` at unit scales: positivity intervals, the
//! nature of the critical point `s = n/4`, closed-form sign bounds, and the
//! large-anisotropy threshold.

mod bounds;
mod derivative;
mod interval;

pub use bounds::{lemma1_bounds, staircase_z1, staircase_z2_upper, verify_negative_range, BoundReport, Direction};
pub use derivative::{classify_critical_point, hat_xi_second_derivative, xi_second_derivative, CriticalPoint};
pub use interval::{find_positive_interval, large_scale_positivity, sweep, SignInterval};

use crate::{Approximation, Error, EvalConfig, Result, Sign};

/// Number of tenfold tolerance refinements tried before a sign is reported
/// as indeterminate.
pub const REFINEMENTS: usize = 3;

/// Evaluates `f` until its error bound excludes zero, tightening the
/// tolerance tenfold up to [`REFINEMENTS`] times.
pub fn certified_sign<F>(cfg: &EvalConfig, mut f: F) -> Result<(Sign, Approximation)>
where
    F: FnMut(&EvalConfig) -> Result<Approximation>,
{
    let mut c = *cfg;
    let mut last = f(&c)?;
    for _ in 0..REFINEMENTS {
        if let Some(sign) = last.sign() {
            return Ok((sign, last));
        }
        c = c.with_tol(c.tol * 0.1);
        last = f(&c)?;
    }
    match last.sign() {
        Some(sign) => Ok((sign, last)),
        None => Err(Error::Indeterminate {
            value: last.value,
            err: last.err,
        }),
    }
}
