use crate::{Error, Result, ScaleVector};
use serde::Serialize;

/// Affine chart `b -> log a = A b + v` onto a hyperplane `prod a_i = const`.
///
/// `A` is `n x j` with vanishing column sums, stored row-major.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct HyperplaneChart {
    pub a: Vec<Vec<f64>>,
    pub v: Vec<f64>,
    pub labels: Vec<String>,
}

impl HyperplaneChart {
    pub fn new(a: Vec<Vec<f64>>, v: Vec<f64>) -> Result<Self> {
        let j = a.first().map_or(0, |r| r.len());
        let labels = (1..=j).map(|l| format!("b{l}")).collect();
        Self::with_labels(a, v, labels)
    }

    pub fn with_labels(a: Vec<Vec<f64>>, v: Vec<f64>, labels: Vec<String>) -> Result<Self> {
        let n = a.len();
        let j = a.first().map_or(0, |r| r.len());
        if n < 2 || j == 0 || j > n - 1 {
            return Err(Error::Config(format!("chart must be n x j with 1 <= j <= n - 1, got {n} x {j}")));
        }
        if let Some(row) = a.iter().find(|r| r.len() != j) {
            return Err(Error::Dimension {
                expected: j,
                got: row.len(),
            });
        }
        if v.len() != n {
            return Err(Error::Dimension {
                expected: n,
                got: v.len(),
            });
        }
        if labels.len() != j {
            return Err(Error::Dimension {
                expected: j,
                got: labels.len(),
            });
        }
        for l in 0..j {
            let sum: f64 = a.iter().map(|r| r[l]).sum();
            let scale: f64 = a.iter().map(|r| r[l].abs()).sum();
            if sum.abs() > 1e-12 * scale.max(1.0) {
                return Err(Error::Domain {
                    what: "chart column sum",
                    value: sum,
                });
            }
        }
        Ok(Self { a, v, labels })
    }

    /// Identity on the first `n - 1` coordinates, last row all `-1`.
    pub fn standard(n: usize) -> Result<Self> {
        let a = (0..n)
            .map(|i| {
                (0..n - 1)
                    .map(|l| if i == n - 1 { -1.0 } else if i == l { 1.0 } else { 0.0 })
                    .collect()
            })
            .collect();
        Self::with_labels(a, vec![0.0; n], (1..n).map(|l| format!("c{l}")).collect())
    }

    /// Ratio coordinates `a_1 : a_2 : .. : a_n = 1 : k_2 : .. : k_n` with
    /// `prod a_i = 1`; the free variables are `log k_2 .. log k_n`.
    pub fn kratio(n: usize) -> Result<Self> {
        let inv = 1.0 / n as f64;
        let a = (0..n)
            .map(|i| {
                (0..n - 1)
                    .map(|l| if i == l + 1 { 1.0 - inv } else { -inv })
                    .collect()
            })
            .collect();
        Self::with_labels(a, vec![0.0; n], (2..=n).map(|l| format!("log_k{l}")).collect())
    }

    /// The chart restricted to the given free coordinates (the others fixed at 0).
    pub fn restrict(&self, columns: &[usize]) -> Result<Self> {
        if let Some(&bad) = columns.iter().find(|&&c| c >= self.j()) {
            return Err(Error::Dimension {
                expected: self.j(),
                got: bad + 1,
            });
        }
        let a = self.a.iter().map(|r| columns.iter().map(|&c| r[c]).collect()).collect();
        let labels = columns.iter().map(|&c| self.labels[c].clone()).collect();
        Self::with_labels(a, self.v.clone(), labels)
    }

    pub fn with_offset(&self, v: Vec<f64>) -> Result<Self> {
        Self::with_labels(self.a.clone(), v, self.labels.clone())
    }

    pub fn n(&self) -> usize {
        self.a.len()
    }

    pub fn j(&self) -> usize {
        self.a[0].len()
    }

    pub fn logs_at(&self, b: &[f64]) -> Result<Vec<f64>> {
        if b.len() != self.j() {
            return Err(Error::Dimension {
                expected: self.j(),
                got: b.len(),
            });
        }
        Ok(self
            .a
            .iter()
            .zip(&self.v)
            .map(|(row, vi)| vi + row.iter().zip(b).map(|(x, y)| x * y).sum::<f64>())
            .collect())
    }

    pub fn scales_at(&self, b: &[f64]) -> Result<ScaleVector> {
        ScaleVector::from_logs(&self.logs_at(b)?)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn builtin_charts_keep_product_fixed() {
        for chart in [HyperplaneChart::standard(4).unwrap(), HyperplaneChart::kratio(4).unwrap()] {
            let logs = chart.logs_at(&[0.3, -1.2, 0.7]).unwrap();
            assert!(logs.iter().sum::<f64>().abs() < 1e-15);
        }
    }

    #[test]
    fn kratio_reproduces_ratios() {
        let chart = HyperplaneChart::kratio(3).unwrap();
        let (l2, l3) = (0.4f64, -0.9f64);
        let a = chart.scales_at(&[l2, l3]).unwrap();
        let a = a.as_slice();
        assert!((a[1] / a[0] - l2.exp()).abs() < 1e-14);
        assert!((a[2] / a[0] - l3.exp()).abs() < 1e-14);
    }

    #[test]
    fn rejects_bad_column_sums_and_shapes() {
        assert!(HyperplaneChart::new(vec![vec![1.0], vec![0.5]], vec![0.0, 0.0]).is_err());
        assert!(HyperplaneChart::new(vec![vec![1.0, 1.0], vec![-1.0, -1.0]], vec![0.0; 2]).is_err());
        assert!(HyperplaneChart::new(vec![vec![1.0], vec![-1.0]], vec![0.0]).is_err());
        let k = HyperplaneChart::kratio(5).unwrap().restrict(&[0, 2]).unwrap();
        assert_eq!(k.labels, vec!["log_k2", "log_k4"]);
        assert!(HyperplaneChart::kratio(5).unwrap().restrict(&[4]).is_err());
    }
}
