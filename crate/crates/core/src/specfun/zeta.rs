use super::gamma::{gamma, sin_pi, GAMMA_REL_ERR};
use crate::{Approximation, Error, EvalConfig, Result};
use std::f64::consts::{LN_2, PI};

const EPS: f64 = f64::EPSILON;
const BORWEIN_TERMS: usize = 40;
const EM_CUTOFF: usize = 12;

/// `B_{2j} / (2j)!` for j = 1..8.
const BERNOULLI_OVER_FACT: [f64; 8] = [
    1.0 / 12.0,
    -1.0 / 720.0,
    1.0 / 30_240.0,
    -1.0 / 1_209_600.0,
    1.0 / 47_900_160.0,
    -691.0 / 1_307_674_368_000.0,
    7.0 / 523_069_747_200.0,
    -3617.0 / 10_670_622_842_880_000.0,
];

/// The Riemann zeta function for real `s != 1`.
///
/// Borwein's accelerated alternating series on `0 < s <= 2`, the direct series
/// with an Euler-Maclaurin tail above, and the functional equation for `s < 0`.
pub fn riemann_zeta(s: f64, _cfg: &EvalConfig) -> Result<Approximation> {
    if !s.is_finite() {
        return Err(Error::Domain {
            what: "riemann zeta",
            value: s,
        });
    }
    if s == 1.0 {
        return Err(Error::Pole { s });
    }
    if s == 0.0 {
        return Ok(Approximation::exact(-0.5));
    }
    if s > 2.0 {
        return Ok(euler_maclaurin(s));
    }
    if s > 0.0 {
        return Ok(borwein(s));
    }
    reflected(s)
}

fn borwein(s: f64) -> Approximation {
    let n = BORWEIN_TERMS;
    let nf = n as f64;
    // d_k = n sum_{i<=k} (n+i-1)! 4^i / ((n-i)! (2i)!)
    let mut d = Vec::with_capacity(n + 1);
    let mut t = 1.0 / nf;
    let mut acc = t;
    d.push(nf * acc);
    for i in 1..=n {
        let fi = i as f64;
        t *= 4.0 * (nf + fi - 1.0) * (nf - fi + 1.0) / ((2.0 * fi) * (2.0 * fi - 1.0));
        acc += t;
        d.push(nf * acc);
    }
    let dn = d[n];
    let mut sum = 0.0;
    let mut mag = 0.0;
    for (k, dk) in d.iter().take(n).enumerate() {
        let term = (dk - dn) * (-s * ((k + 1) as f64).ln()).exp();
        let signed = if k % 2 == 0 { term } else { -term };
        sum += signed;
        mag += term.abs();
    }
    let eta = -sum / dn;
    // truncation: |err| <= 3 (1 + 2|t|) / (3 + sqrt 8)^n for real s
    let trunc = 3.0 / (3.0 + 8f64.sqrt()).powi(n as i32);
    let eta_err = trunc + 2.0 * nf * EPS * mag / dn;
    let denom = -((1.0 - s) * LN_2).exp_m1();
    let value = eta / denom;
    Approximation::new(value, eta_err / denom.abs() + 4.0 * EPS * value.abs())
}

fn euler_maclaurin(s: f64) -> Approximation {
    let n = EM_CUTOFF as f64;
    let mut head = 0.0;
    for k in (1..EM_CUTOFF).rev() {
        head += (k as f64).powf(-s);
    }
    let ns = n.powf(-s);
    let mut tail = n * ns / (s - 1.0) + 0.5 * ns;
    // rising factorial s (s+1) ... (s+2j-2) times n^(-s-2j+1)
    let mut rising = s;
    let mut power = ns / n;
    let mut last = 0.0;
    for (j, c) in BERNOULLI_OVER_FACT.iter().enumerate() {
        if j > 0 {
            let m = (2 * j) as f64;
            rising *= (s + m - 1.0) * (s + m);
            power /= n * n;
        }
        last = c * rising * power;
        if j + 1 < BERNOULLI_OVER_FACT.len() {
            tail += last;
        }
    }
    let value = head + tail;
    Approximation::new(value, 2.0 * last.abs() + 8.0 * EPS * value.abs())
}

fn reflected(s: f64) -> Result<Approximation> {
    // zeta(s) = 2^s pi^(s-1) sin(pi s / 2) Gamma(1-s) zeta(1-s)
    let sp = sin_pi(0.5 * s);
    if sp == 0.0 {
        return Ok(Approximation::exact(0.0));
    }
    let inner = riemann_zeta(1.0 - s, &EvalConfig::default())?;
    let factor = (s * LN_2 + (s - 1.0) * PI.ln()).exp() * sp * gamma(1.0 - s);
    let value = factor * inner.value;
    let err = factor.abs() * inner.err + (GAMMA_REL_ERR + 16.0 * EPS * (1.0 + s.abs())) * value.abs();
    Ok(Approximation::new(value, err))
}

#[cfg(test)]
mod tests {
    use super::*;

    fn zeta(s: f64) -> Approximation {
        riemann_zeta(s, &EvalConfig::default()).unwrap()
    }

    #[test]
    fn even_values_match_bernoulli_formula() {
        let b = [1.0 / 6.0, 1.0 / 30.0, 1.0 / 42.0, 1.0 / 30.0];
        let mut fact = 1.0;
        for k in 1..=4 {
            let m = 2 * k;
            fact *= ((m - 1) * m) as f64;
            let expected = (2.0 * PI).powi(m as i32) * b[k - 1] / (2.0 * fact);
            let z = zeta(m as f64);
            assert!((z.value - expected).abs() < 1e-13, "k = {k}");
            assert!(z.err < 1e-12);
        }
    }

    #[test]
    fn branches_agree_near_two() {
        let a = borwein(2.0);
        let b = euler_maclaurin(2.0);
        assert!((a.value - b.value).abs() <= a.err + b.err + 1e-15);
        assert!(borwein(2.7).agrees_with(&euler_maclaurin(2.7), 1e-15));
    }

    #[test]
    fn critical_strip_values() {
        let z = zeta(0.5);
        assert!((z.value + 1.460_354_508_809_586_8).abs() < 1e-13);
        for s in [0.1, 0.5, 0.9] {
            assert!(zeta(s).upper() < 0.0);
        }
    }

    #[test]
    fn negative_arguments() {
        assert_eq!(zeta(-2.0).value, 0.0);
        assert_eq!(zeta(-4.0).err, 0.0);
        assert!((zeta(-1.0).value + 1.0 / 12.0).abs() < 1e-14);
        assert!((zeta(-3.0).value - 1.0 / 120.0).abs() < 1e-14);
        assert!((zeta(-0.5).value + 0.207_886_224_977_354_57).abs() < 1e-13);
        assert_eq!(zeta(0.0).value, -0.5);
    }

    #[test]
    fn pole_and_large_argument() {
        assert!(matches!(riemann_zeta(1.0, &EvalConfig::default()), Err(Error::Pole { .. })));
        let z = zeta(60.0);
        assert!((z.value - 1.0).abs() < 1e-17);
        assert!((zeta(3.0).value - 1.202_056_903_159_594_3).abs() < 1e-14);
    }
}
