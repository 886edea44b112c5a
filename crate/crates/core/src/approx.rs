use serde::Serialize;
use std::ops::{Add, Mul, Neg, Sub};

/// A computed value together with an absolute error bound.
///
/// `err` bounds `|value - exact|` under the truncation analysis of the routine
/// that produced it. Arithmetic on approximations propagates bounds to first
/// order (no directed rounding).
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct Approximation {
    pub value: f64,
    pub err: f64,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum Sign {
    Positive,
    Negative,
}

impl Sign {
    pub fn symbol(self) -> char {
        match self {
            Sign::Positive => '+',
            Sign::Negative => '-',
        }
    }
}

impl Approximation {
    pub fn new(value: f64, err: f64) -> Self {
        debug_assert!(err >= 0.0 || err.is_nan(), "negative error bound {err}");
        Self { value, err }
    }

    pub fn exact(value: f64) -> Self {
        Self { value, err: 0.0 }
    }

    /// The sign of the value, if the error bound excludes zero.
    pub fn sign(&self) -> Option<Sign> {
        if self.value.abs() > self.err {
            Some(if self.value > 0.0 {
                Sign::Positive
            } else {
                Sign::Negative
            })
        } else {
            None
        }
    }

    pub fn excludes_zero(&self) -> bool {
        self.sign().is_some()
    }

    pub fn lower(&self) -> f64 {
        self.value - self.err
    }

    pub fn upper(&self) -> f64 {
        self.value + self.err
    }

    /// Scale by an exact factor.
    pub fn scale(self, factor: f64) -> Self {
        Self::new(self.value * factor, self.err * factor.abs())
    }

    /// Add a relative rounding allowance of `ulps` machine epsilons.
    pub fn with_rounding(self, ulps: f64) -> Self {
        Self::new(self.value, self.err + ulps * f64::EPSILON * self.value.abs())
    }

    /// `|self - other| <= self.err + other.err + slack`.
    pub fn agrees_with(&self, other: &Approximation, slack: f64) -> bool {
        (self.value - other.value).abs() <= self.err + other.err + slack
    }
}

impl Add for Approximation {
    type Output = Approximation;
    fn add(self, rhs: Self) -> Self {
        Approximation::new(self.value + rhs.value, self.err + rhs.err)
    }
}

impl Sub for Approximation {
    type Output = Approximation;
    fn sub(self, rhs: Self) -> Self {
        Approximation::new(self.value - rhs.value, self.err + rhs.err)
    }
}

impl Neg for Approximation {
    type Output = Approximation;
    fn neg(self) -> Self {
        Approximation::new(-self.value, self.err)
    }
}

impl Mul for Approximation {
    type Output = Approximation;
    fn mul(self, rhs: Self) -> Self {
        Approximation::new(
            self.value * rhs.value,
            self.value.abs() * rhs.err + rhs.value.abs() * self.err + self.err * rhs.err,
        )
    }
}
