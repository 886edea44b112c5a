//! Truncated sums of a kernel over the punctured lattice `Z^n \ 0` with
//! anisotropic weights.

use crate::sum::CompensatedSum;
use crate::{Approximation, Error, Result};
use rayon::prelude::*;
use std::f64::consts::PI;

const EPS: f64 = f64::EPSILON;
const DELTA_GRID: usize = 40;
/// Largest shell index handled by the representation-count path.
const MAX_SHELLS: usize = 200_000;

/// `sum_{k != 0} f(pi Q(k))` with `Q(k) = sum_i w_i k_i^2`.
///
/// `f` must be dominated by `x -> int_1^inf t^(tail_beta - 1) e^(-x t) dt`;
/// the sum is truncated at `pi Q <= T` with `T` chosen so that the tail is at
/// most `tail_target`.
pub(crate) fn lattice_sum<F>(
    weights: &[f64],
    tail_beta: f64,
    tail_target: f64,
    max_radius: u32,
    f: F,
) -> Result<Approximation>
where
    F: Fn(f64) -> Result<Approximation> + Sync,
{
    let t = truncation(weights, tail_beta, tail_target);
    let w_min = weights.iter().cloned().fold(f64::INFINITY, f64::min);
    let radius = (t / (PI * w_min)).sqrt();
    if radius > max_radius as f64 {
        let cap = PI * w_min * (max_radius as f64).powi(2);
        return Err(Error::Precision {
            requested: tail_target,
            achieved: tail_bound(weights, tail_beta, cap),
        });
    }
    let tail = tail_bound(weights, tail_beta, t);
    let budget = t / PI * (1.0 + 1e-12);
    let (sum, kernel_err) = block_sum(weights, budget, &f)?;
    Ok(Approximation::new(
        sum.value(),
        tail + kernel_err + 4.0 * EPS * sum.magnitude(),
    ))
}

/// Representation counts `r_n(m) = #{k in Z^n : |k|^2 = m}` for `m <= max`.
pub(crate) fn representation_counts(n: usize, max: usize) -> Vec<f64> {
    let mut counts = vec![0.0; max + 1];
    counts[0] = 1.0;
    for _ in 0..n {
        let mut next = vec![0.0; max + 1];
        for (m, &c) in counts.iter().enumerate() {
            if c == 0.0 {
                continue;
            }
            next[m] += c;
            let mut j = 1usize;
            while m + j * j <= max {
                next[m + j * j] += 2.0 * c;
                j += 1;
            }
        }
        counts = next;
    }
    counts
}

/// Coordinates sharing one weight. Blocks of two or more axes are walked by
/// shells `|k|^2 = m` with representation counts; single axes by `k >= 0`
/// with multiplicity 2 off zero.
struct Block {
    w: f64,
    counts: Option<Vec<f64>>,
}

impl Block {
    fn for_each<V>(&self, rem: f64, mut visit: V) -> Result<()>
    where
        V: FnMut(f64, f64) -> Result<()>,
    {
        let rem = rem.max(0.0);
        match &self.counts {
            None => {
                let kmax = (rem / self.w).sqrt().floor() as u64;
                for k in 0..=kmax {
                    let mult = if k == 0 { 1.0 } else { 2.0 };
                    visit(self.w * (k * k) as f64, mult)?;
                }
            }
            Some(counts) => {
                let mmax = ((rem / self.w).floor() as usize).min(counts.len() - 1);
                for (m, &c) in counts.iter().enumerate().take(mmax + 1) {
                    if c > 0.0 {
                        visit(self.w * m as f64, c)?;
                    }
                }
            }
        }
        Ok(())
    }
}

fn blocks(weights: &[f64], budget: f64) -> Vec<Block> {
    let mut ws = weights.to_vec();
    ws.sort_by(|a, b| a.total_cmp(b));
    let mut out = Vec::new();
    let mut i = 0;
    while i < ws.len() {
        let w = ws[i];
        let len = ws[i..].iter().take_while(|&&x| x == w).count();
        let shells = (budget / w).floor();
        if len >= 2 && shells <= MAX_SHELLS as f64 {
            out.push(Block {
                w,
                counts: Some(representation_counts(len, shells as usize)),
            });
        } else {
            out.extend((0..len).map(|_| Block { w, counts: None }));
        }
        i += len;
    }
    out
}

/// `sum f(pi Q)` over `0 < Q <= budget`, partitioned over the entries of the
/// first (smallest-weight) block and reduced in index order.
fn block_sum<F>(weights: &[f64], budget: f64, f: &F) -> Result<(CompensatedSum, f64)>
where
    F: Fn(f64) -> Result<Approximation> + Sync,
{
    let blocks = blocks(weights, budget);
    let (first, rest) = blocks.split_first().expect("nonempty weights");
    let mut heads = Vec::new();
    first.for_each(budget, |q, m| {
        heads.push((q, m));
        Ok(())
    })?;
    let parts: Vec<(CompensatedSum, f64)> = heads
        .into_par_iter()
        .map(|(q0, m0)| {
            let mut sum = CompensatedSum::new();
            let mut err = 0.0;
            walk(rest, budget, q0, m0, &mut |q, m| {
                let k = f(PI * q)?;
                sum.add(m * k.value);
                err += m * k.err;
                Ok(())
            })?;
            Ok((sum, err))
        })
        .collect::<Result<_>>()?;
    let mut total = CompensatedSum::new();
    let mut err = 0.0;
    for (s, e) in &parts {
        total.merge(s);
        err += e;
    }
    Ok((total, err))
}

fn walk<V>(blocks: &[Block], budget: f64, q: f64, mult: f64, visit: &mut V) -> Result<()>
where
    V: FnMut(f64, f64) -> Result<()>,
{
    let Some((block, rest)) = blocks.split_first() else {
        return if q > 0.0 { visit(q, mult) } else { Ok(()) };
    };
    block.for_each(budget - q, |dq, m| walk(rest, budget, q + dq, mult * m, visit))
}

/// `ln` of an upper bound for `theta(t)`: `coth(pi t / 2)` for `t >= 1`,
/// and the reflected form below.
fn ln_theta_upper(t: f64) -> f64 {
    if t >= 1.0 {
        (1.0 / (0.5 * PI * t).tanh()).ln()
    } else {
        -0.5 * t.ln() + (1.0 / (0.5 * PI / t).tanh()).ln()
    }
}

fn delta_grid() -> impl Iterator<Item = f64> {
    let (lo, hi) = (1e-3f64.ln(), 0.95f64.ln());
    (0..DELTA_GRID).map(move |i| (lo + (hi - lo) * i as f64 / (DELTA_GRID - 1) as f64).exp())
}

fn tail_constant(beta: f64, t: f64) -> f64 {
    if beta <= 1.0 {
        1.0
    } else if t > beta - 1.0 {
        t / (t - beta + 1.0)
    } else {
        f64::INFINITY
    }
}

/// Upper bound for `sum_{pi Q(k) > t} int_1^inf u^(beta-1) e^(-pi Q(k) u) du`.
///
/// Each term is at most `c e^(-x) / x`; then
/// `e^(-pi Q) <= e^(-(1-d) t) e^(-d pi Q)` and the full sum of `e^(-d pi Q)`
/// is `prod theta(d w_i)`. The bound is minimized over a grid of `d`.
pub(crate) fn tail_bound(weights: &[f64], beta: f64, t: f64) -> f64 {
    let c = tail_constant(beta, t);
    delta_grid()
        .map(|d| {
            let l: f64 = weights.iter().map(|w| ln_theta_upper(d * w)).sum();
            c / t * (l - (1.0 - d) * t).exp()
        })
        .fold(f64::INFINITY, f64::min)
}

/// Smallest `T` (over the `d` grid) with `tail_bound(T) <= target`.
pub(crate) fn truncation(weights: &[f64], beta: f64, target: f64) -> f64 {
    let floor = beta.max(0.0) + 1.0;
    let ln_target = target.ln();
    let mut best = f64::INFINITY;
    for d in delta_grid() {
        let l: f64 = weights.iter().map(|w| ln_theta_upper(d * w)).sum();
        let mut t = ((l - ln_target) / (1.0 - d)).max(floor);
        for _ in 0..12 {
            let c = tail_constant(beta, t);
            t = ((l + c.ln() - t.ln() - ln_target) / (1.0 - d)).max(floor);
        }
        best = best.min(t);
    }
    while tail_bound(weights, beta, best) > target {
        best *= 1.01;
    }
    best
}
