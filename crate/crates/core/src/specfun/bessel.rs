use super::quad::GaussLegendre;
use crate::{Approximation, Error, Result};
use std::f64::consts::PI;

const EPS: f64 = f64::EPSILON;
const ASYMPTOTIC_THRESHOLD: f64 = 30.0;
const PANELS: usize = 8;

/// Modified Bessel function of the second kind `K_nu(z)` for real order and `z > 0`.
///
/// Uses `K_nu(z) = int_0^inf exp(-z cosh u) cosh(nu u) du` on composite 64-point
/// Gauss-Legendre panels, or the large-argument asymptotic series for `z > 30`.
/// The order enters only through `|nu|`, so `K_nu = K_-nu` holds exactly.
pub fn bessel_k(nu: f64, z: f64) -> Result<Approximation> {
    if !(z > 0.0) || !z.is_finite() {
        return Err(Error::Domain {
            what: "bessel_k",
            value: z,
        });
    }
    let nu = nu.abs();
    if z > ASYMPTOTIC_THRESHOLD {
        if let Some(a) = asymptotic(nu, z) {
            return Ok(a);
        }
    }
    Ok(integral(nu, z))
}

/// `sqrt(pi/2z) e^-z sum_k a_k(nu) z^-k`, truncated at the smallest term.
fn asymptotic(nu: f64, z: f64) -> Option<Approximation> {
    let mu = 4.0 * nu * nu;
    let mut term = 1.0f64;
    let mut sum = 1.0f64;
    for k in 1..200 {
        let kf = k as f64;
        let next = term * (mu - (2.0 * kf - 1.0).powi(2)) / (8.0 * kf * z);
        if next.abs() >= term.abs() && kf > nu {
            break;
        }
        // error of the truncated series is bounded by the first omitted term
        // once k exceeds nu - 1/2
        if next.abs() <= EPS * sum.abs() && kf > nu - 0.5 {
            let pre = (PI / (2.0 * z)).sqrt() * (-z).exp();
            let value = pre * (sum + next);
            return Some(Approximation::new(value, pre * next.abs() + 8.0 * EPS * value.abs()));
        }
        sum += next;
        term = next;
    }
    None
}

fn integral(nu: f64, z: f64) -> Approximation {
    // Scaled integrand exp(-z (cosh u - 1)) cosh(nu u); K = e^-z * integral.
    let cutoff = (1.0 / EPS).ln() + 40.0;
    let mut upper = (1.0 + cutoff / z).acosh();
    for _ in 0..50 {
        let next = (1.0 + (cutoff + nu * upper) / z).acosh();
        if (next - upper).abs() < 1e-12 {
            upper = next;
            break;
        }
        upper = next;
    }
    let f = |u: f64| (-z * (u.cosh() - 1.0)).exp() * (nu * u).cosh();
    let rule = GaussLegendre::sixty_four();
    let fine = rule.integrate_panels(f, 0.0, upper, PANELS);
    let coarse = rule.integrate_panels(f, 0.0, upper, PANELS / 2);
    let scale = (-z).exp();
    let value = scale * fine;
    // Tail beyond `upper` is below e^-cutoff relative to the peak integrand.
    let tail = scale * (-cutoff).exp() * (1.0 + 1.0 / z);
    let err = scale * (fine - coarse).abs() + tail + 16.0 * EPS * value.abs();
    Approximation::new(value, err)
}
