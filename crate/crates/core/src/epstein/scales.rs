use crate::{Error, Result};
use serde::Serialize;

/// Positive scales `a_1..a_n` of a diagonal quadratic form with the cached
/// volume factor `V = sqrt(prod a_i)`.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct ScaleVector {
    a: Vec<f64>,
    volume: f64,
}

impl ScaleVector {
    pub fn new(a: Vec<f64>) -> Result<Self> {
        if a.is_empty() {
            return Err(Error::Dimension {
                expected: 1,
                got: 0,
            });
        }
        if let Some(&bad) = a.iter().find(|x| !(**x > 0.0) || !x.is_finite()) {
            return Err(Error::Domain {
                what: "scale",
                value: bad,
            });
        }
        let prod: f64 = a.iter().product();
        let volume = if prod.is_normal() {
            prod.sqrt()
        } else {
            (0.5 * a.iter().map(|x| x.ln()).sum::<f64>()).exp()
        };
        Ok(Self { a, volume })
    }

    pub fn unit(n: usize) -> Self {
        Self {
            a: vec![1.0; n],
            volume: 1.0,
        }
    }

    /// Scales `exp(l_i)` from log-coordinates.
    pub fn from_logs(logs: &[f64]) -> Result<Self> {
        Self::new(logs.iter().map(|l| l.exp()).collect())
    }

    pub fn reciprocal(&self) -> Self {
        Self {
            a: self.a.iter().map(|x| 1.0 / x).collect(),
            volume: 1.0 / self.volume,
        }
    }

    pub fn scaled(&self, lambda: f64) -> Result<Self> {
        Self::new(self.a.iter().map(|x| lambda * x).collect())
    }

    pub fn as_slice(&self) -> &[f64] {
        &self.a
    }

    pub fn len(&self) -> usize {
        self.a.len()
    }

    pub fn is_empty(&self) -> bool {
        self.a.is_empty()
    }

    pub fn volume(&self) -> f64 {
        self.volume
    }

}
