use super::theta::log_theta_second_derivative;
use crate::specfun::theta_log_derivatives;
use crate::{Approximation, Error, Result};
use serde::Serialize;

const EPS: f64 = f64::EPSILON;

/// Diagonal `z` and rank-one factor `w` of the symmetric matrix
/// `J_n = diag(z - w^2) + w w^T` (diagonal `z_i`, off-diagonal `w_i w_j`).
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct JnInput {
    pub z: Vec<f64>,
    pub w: Vec<f64>,
}

impl JnInput {
    pub fn new(z: Vec<f64>, w: Vec<f64>) -> Result<Self> {
        if z.len() != w.len() {
            return Err(Error::Dimension {
                expected: z.len(),
                got: w.len(),
            });
        }
        Ok(Self { z, w })
    }

    pub fn len(&self) -> usize {
        self.z.len()
    }

    pub fn is_empty(&self) -> bool {
        self.z.is_empty()
    }
}

/// `det J_n = prod (z_i - w_i^2) + sum_i w_i^2 prod_{j != i} (z_j - w_j^2)`.
pub fn det_jn(input: &JnInput) -> f64 {
    let d: Vec<f64> = input.z.iter().zip(&input.w).map(|(z, w)| z - w * w).collect();
    let n = d.len();
    // prefix[i] = d_0..d_{i-1}, suffix[i] = d_i..d_{n-1}
    let mut prefix = vec![1.0; n + 1];
    for i in 0..n {
        prefix[i + 1] = prefix[i] * d[i];
    }
    let mut suffix = vec![1.0; n + 1];
    for i in (0..n).rev() {
        suffix[i] = suffix[i + 1] * d[i];
    }
    let cross: f64 = (0..n).map(|i| input.w[i].powi(2) * prefix[i] * suffix[i + 1]).sum();
    prefix[n] + cross
}

/// `J_n(alpha) = (alpha_1 - 1) J_{n-1}(alpha_2..) + (-1)^(n-1) prod_{i>=2} (1 - alpha_i)`,
/// `J_1 = alpha_1`.
pub fn jn_recursion(alphas: &[f64]) -> Result<f64> {
    let Some((&last, _)) = alphas.split_last() else {
        return Err(Error::Dimension { expected: 1, got: 0 });
    };
    let mut j = last;
    let mut tail_prod = 1.0 - last;
    for (m, &a) in alphas.iter().rev().skip(1).enumerate() {
        // the suffix after `a` has m + 1 entries
        let sign = if (m + 1) % 2 == 0 { 1.0 } else { -1.0 };
        j = (a - 1.0) * j + sign * tail_prod;
        tail_prod *= 1.0 - a;
    }
    Ok(j)
}

/// `prod (alpha_i - 1) + sum_i prod_{j != i} (alpha_j - 1)`.
pub fn jn_closed_form(alphas: &[f64]) -> f64 {
    let ones = vec![1.0; alphas.len()];
    let z: Vec<f64> = alphas.to_vec();
    det_jn(&JnInput { z, w: ones })
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct SylvesterReport {
    /// Leading principal minors of `H_n / Theta_n`, `k = 1..n`.
    pub minors: Vec<Approximation>,
    pub all_nonnegative: bool,
}

/// Leading principal minors of the Hessian of `Theta_n(x) = prod theta(e^(x_i))`,
/// divided by `Theta_n^k`, which leaves the sign unchanged.
///
/// With `z_i = f''/f` and `w_i = f'/f` for `f(x) = theta(e^x)` the scaled Hessian is
/// `J_n`, and `z_i - w_i^2 = (log f)''(x_i)`.
pub fn sylvester_check(xs: &[f64]) -> Result<SylvesterReport> {
    let mut d = Vec::with_capacity(xs.len());
    let mut w = Vec::with_capacity(xs.len());
    for &x in xs {
        d.push(log_theta_second_derivative(x.abs())?);
        let t = x.exp();
        let g = theta_log_derivatives(t)?;
        w.push(g.g1.scale(t));
    }
    let mut minors = Vec::with_capacity(xs.len());
    for k in 1..=xs.len() {
        let input = JnInput {
            z: (0..k).map(|i| d[i].value + w[i].value.powi(2)).collect(),
            w: w[..k].iter().map(|a| a.value).collect(),
        };
        let value = det_jn(&input);
        // every term of the closed form is a product of positive factors d_i, w_i^2
        let rel: f64 = (0..k)
            .map(|i| d[i].err / d[i].value.abs() + 2.0 * w[i].err / w[i].value.abs().max(f64::MIN_POSITIVE))
            .sum();
        let err = value.abs() * (rel + 4.0 * (k as f64 + 1.0) * EPS);
        minors.push(Approximation::new(value, err));
    }
    let all_nonnegative = minors.iter().all(|m| m.upper() >= 0.0 && m.value >= 0.0);
    Ok(SylvesterReport { minors, all_nonnegative })
}
