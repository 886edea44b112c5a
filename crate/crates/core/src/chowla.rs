//! Chowla-Selberg expansion of `pi^-s Gamma(s) Z_n(s; a)`:
//!
//! ```text
//! 2 a_1^-2s pi^-s Gamma(s) zeta(2s)
//! + sum_{j=1}^{n-1} 2 pi^(j/2-s) Gamma(s-j/2) zeta(2s-j) / (a_{j+1}^(2s-j) a_1..a_j)
//! + sum_{j=1}^{n-1} 4 / (a_1..a_j) sum_{k in Z^j \ 0} sum_{p>=1}
//!       (r / (p a_{j+1}))^(s-j/2) K_{s-j/2}(2 pi p a_{j+1} r),   r = |k / a|
//! ```
//!
//! Each lattice vector is filed under its last nonzero coordinate. The Bessel
//! double sums converge exponentially. This is an independent check on
//! [`crate::epstein`], not a primary evaluator.

use crate::specfun::{bessel_k, gamma, riemann_zeta, GAMMA_REL_ERR};
use crate::{Approximation, Error, EvalConfig, Result, ScaleVector, XiValue};
use serde::Serialize;
use std::f64::consts::PI;

const EPS: f64 = f64::EPSILON;
/// Distance from the excluded half-integers below which `s` is rejected.
pub const GENERIC_GUARD: f64 = 1e-4;

/// The three term groups of the expansion (before the volume factor).
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct CSTerms {
    pub leading: f64,
    /// Entry `j - 1` holds the `j`-th zeta term.
    pub tower: Vec<f64>,
    /// Includes the factor 4 and the `1 / (a_1..a_j)` prefactors.
    pub bessel_tail: f64,
    pub err: f64,
}

impl CSTerms {
    pub fn total(&self) -> f64 {
        self.leading + self.tower.iter().sum::<f64>() + self.bessel_tail
    }
}

fn check_generic(n: usize, s: f64) -> Result<()> {
    let twice = 2.0 * s;
    let nearest = twice.round();
    if nearest <= n as f64 && (twice - nearest).abs() < 2.0 * GENERIC_GUARD {
        return Err(Error::Inapplicable(format!(
            "s = {s} is within {GENERIC_GUARD} of the half-integer {}; use the lattice evaluator",
            nearest / 2.0
        )));
    }
    Ok(())
}

/// Zeta-type term `2 pi^(j/2-s) Gamma(s-j/2) zeta(2s-j) c^(j-2s) / prod`.
fn zeta_term(j: usize, s: f64, c: f64, prod: f64, cfg: &EvalConfig) -> Result<Approximation> {
    let jf = j as f64;
    let nu = s - 0.5 * jf;
    let zeta = riemann_zeta(2.0 * s - jf, cfg)?;
    let factor = 2.0 * ((0.5 * jf - s) * PI.ln() + (jf - 2.0 * s) * c.ln()).exp() * gamma(nu) / prod;
    let value = factor * zeta.value;
    Ok(Approximation::new(
        value,
        factor.abs() * zeta.err + (GAMMA_REL_ERR + 16.0 * EPS) * value.abs(),
    ))
}

/// Nonnegative-orthant points of `Z^j \ 0` with `sum (k_l / a_l)^2 <= r2_max`,
/// as `(r, multiplicity)`, sorted by `r`.
fn dual_shells(a: &[f64], r2_max: f64) -> Vec<(f64, f64)> {
    fn rec(a: &[f64], r2_max: f64, r2: f64, mult: f64, out: &mut Vec<(f64, f64)>) {
        let Some((&al, rest)) = a.split_first() else {
            if r2 > 0.0 {
                out.push((r2.sqrt(), mult));
            }
            return;
        };
        let kmax = (((r2_max - r2).max(0.0)).sqrt() * al).floor() as u64;
        for k in 0..=kmax {
            let kr = k as f64 / al;
            rec(rest, r2_max, r2 + kr * kr, if k == 0 { mult } else { 2.0 * mult }, out);
        }
    }
    let mut out = Vec::new();
    rec(a, r2_max, 0.0, 1.0, &mut out);
    out.sort_by(|x, y| x.0.total_cmp(&y.0));
    out
}

/// The expansion's term groups at `(n, s, a)`.
pub fn cs_terms(n: usize, s: f64, scales: &ScaleVector, cfg: &EvalConfig) -> Result<CSTerms> {
    cfg.validate()?;
    if scales.len() != n || n == 0 {
        return Err(Error::Dimension {
            expected: n,
            got: scales.len(),
        });
    }
    if !s.is_finite() {
        return Err(Error::Domain { what: "s", value: s });
    }
    check_generic(n, s)?;
    let a = scales.as_slice();
    let lead = zeta_term(0, s, a[0], 1.0, cfg)?;
    let mut err = lead.err;
    let mut tower = Vec::with_capacity(n - 1);
    let mut bessel_tail = 0.0;
    let cutoff = (1.0 / cfg.tol).ln() + 40.0;
    let mut prod = 1.0;
    for j in 1..n {
        prod *= a[j - 1];
        let t = zeta_term(j, s, a[j], prod, cfg)?;
        tower.push(t.value);
        err += t.err;

        let nu = s - 0.5 * j as f64;
        let c = a[j];
        let r_max = cutoff / (2.0 * PI * c);
        let mut group = 0.0;
        let mut group_err = 0.0;
        for (r, mult) in dual_shells(&a[..j], r_max * r_max) {
            let mut p = 1.0f64;
            while 2.0 * PI * p * c * r <= cutoff {
                let k = bessel_k(nu, 2.0 * PI * p * c * r)?;
                let w = (nu * (r / (p * c)).ln()).exp();
                group += mult * w * k.value;
                group_err += mult * w * k.err;
                p += 1.0;
            }
        }
        let scale = 4.0 / prod;
        bessel_tail += scale * group;
        // every omitted term is below e^-cutoff relative to the K factor at the cutoff
        err += scale * (group_err + 8.0 * EPS * group) + (-cutoff).exp();
    }
    Ok(CSTerms {
        leading: lead.value,
        tower,
        bessel_tail,
        err,
    })
}

/// `Xi_n(s; a)` assembled from the Chowla-Selberg expansion.
///
/// Rejects `s` within [`GENERIC_GUARD`] of a half-integer `m/2` with
/// `m <= n`, where individual gamma or zeta factors have poles.
pub fn xi_chowla_selberg(
    n: usize,
    s: f64,
    scales: &ScaleVector,
    cfg: &EvalConfig,
) -> Result<XiValue> {
    let terms = cs_terms(n, s, scales, cfg)?;
    let v = scales.volume();
    let total = terms.total();
    let magnitude =
        terms.leading.abs() + terms.tower.iter().map(|t| t.abs()).sum::<f64>() + terms.bessel_tail;
    Ok(XiValue {
        value: v * total,
        err: v * (terms.err + 4.0 * EPS * magnitude),
        n,
        s,
    })
}
