use crate::analysis::certified_sign;
use crate::convexity::HyperplaneChart;
use crate::epstein::xi;
use crate::{Error, EvalConfig, Result, Sign};
use rayon::prelude::*;
use serde::{Serialize, Serializer};
use std::io::Write;

pub const DEFAULT_STEPS: usize = 41;
pub const MAX_FREE_DIMENSIONS: usize = 3;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Label {
    Positive,
    Negative,
    Indeterminate,
}

impl Label {
    pub fn symbol(self) -> &'static str {
        match self {
            Label::Positive => "+",
            Label::Negative => "-",
            Label::Indeterminate => "?",
        }
    }

    /// Negative or undecided.
    pub(crate) fn admits_negative(self) -> bool {
        self != Label::Positive
    }
}

impl Serialize for Label {
    fn serialize<S: Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        s.serialize_str(self.symbol())
    }
}

/// Sign labels on the nodes of a rectangular grid, last axis fastest.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct RegionGrid {
    pub n: usize,
    pub s: f64,
    pub chart: Option<HyperplaneChart>,
    pub bounds: Vec<(f64, f64)>,
    pub steps: Vec<usize>,
    pub labels: Vec<Label>,
    pub values: Vec<f64>,
    pub errs: Vec<f64>,
}

fn check_shape(bounds: &[(f64, f64)], steps: &[usize]) -> Result<()> {
    if bounds.len() != steps.len() {
        return Err(Error::Dimension {
            expected: bounds.len(),
            got: steps.len(),
        });
    }
    if steps.is_empty() || steps.len() > MAX_FREE_DIMENSIONS {
        return Err(Error::Config(format!(
            "grids need 1 to {MAX_FREE_DIMENSIONS} axes, got {}",
            steps.len()
        )));
    }
    if steps.contains(&0) {
        return Err(Error::Config("every axis needs at least one step".into()));
    }
    if bounds.iter().any(|(lo, hi)| !(lo <= hi) || !lo.is_finite() || !hi.is_finite()) {
        return Err(Error::Config("axis bounds must be finite with lo <= hi".into()));
    }
    Ok(())
}

impl RegionGrid {
    /// A labelled grid without a chart, on unit spacing `0..steps`.
    pub fn synthetic(steps: Vec<usize>, labels: Vec<Label>) -> Result<Self> {
        let bounds: Vec<(f64, f64)> = steps.iter().map(|&m| (0.0, (m - 1) as f64)).collect();
        check_shape(&bounds, &steps)?;
        let cells: usize = steps.iter().product();
        if labels.len() != cells {
            return Err(Error::Dimension {
                expected: cells,
                got: labels.len(),
            });
        }
        Ok(Self {
            n: 0,
            s: f64::NAN,
            chart: None,
            bounds,
            steps,
            values: vec![f64::NAN; cells],
            errs: vec![f64::NAN; cells],
            labels,
        })
    }

    pub fn len(&self) -> usize {
        self.labels.len()
    }

    pub fn is_empty(&self) -> bool {
        self.labels.is_empty()
    }

    pub fn dims(&self) -> usize {
        self.steps.len()
    }

    pub fn multi_index(&self, mut index: usize) -> Vec<usize> {
        let mut out = vec![0; self.dims()];
        for d in (0..self.dims()).rev() {
            out[d] = index % self.steps[d];
            index /= self.steps[d];
        }
        out
    }

    pub fn flat_index(&self, multi: &[usize]) -> usize {
        multi.iter().zip(&self.steps).fold(0, |acc, (&i, &m)| acc * m + i)
    }

    fn axis_coord(&self, d: usize, i: usize) -> f64 {
        let (lo, hi) = self.bounds[d];
        match self.steps[d] {
            1 => 0.5 * (lo + hi),
            m => lo + (hi - lo) * i as f64 / (m - 1) as f64,
        }
    }

    pub fn coords(&self, index: usize) -> Vec<f64> {
        self.multi_index(index)
            .iter()
            .enumerate()
            .map(|(d, &i)| self.axis_coord(d, i))
            .collect()
    }

    /// The node nearest to `point`, if the point lies inside the bounds.
    pub fn nearest(&self, point: &[f64]) -> Option<usize> {
        if point.len() != self.dims() {
            return None;
        }
        let mut multi = Vec::with_capacity(self.dims());
        for (d, &x) in point.iter().enumerate() {
            let (lo, hi) = self.bounds[d];
            if x < lo - 1e-12 || x > hi + 1e-12 {
                return None;
            }
            let m = self.steps[d];
            let i = if m == 1 { 0 } else { ((x - lo) / (hi - lo) * (m - 1) as f64).round() as usize };
            multi.push(i.min(m - 1));
        }
        Some(self.flat_index(&multi))
    }

    pub fn count(&self, label: Label) -> usize {
        self.labels.iter().filter(|&&l| l == label).count()
    }

    pub fn indeterminate_fraction(&self) -> f64 {
        self.count(Label::Indeterminate) as f64 / self.len() as f64
    }

    fn axis_names(&self) -> Vec<String> {
        match &self.chart {
            Some(c) => c.labels.clone(),
            None => (1..=self.dims()).map(|d| format!("x{d}")).collect(),
        }
    }

    /// CSV with one row per node: coordinates, sign, value, err.
    pub fn write_csv<W: Write>(&self, out: W) -> Result<()> {
        let mut w = csv::Writer::from_writer(out);
        let mut header = self.axis_names();
        header.extend(["sign", "value", "err"].map(String::from));
        w.write_record(&header).map_err(|e| Error::Output(e.to_string()))?;
        for i in 0..self.len() {
            let mut row: Vec<String> = self.coords(i).iter().map(|x| format!("{x:.16e}")).collect();
            row.push(self.labels[i].symbol().to_string());
            row.push(format!("{:.16e}", self.values[i]));
            row.push(format!("{:.16e}", self.errs[i]));
            w.write_record(&row).map_err(|e| Error::Output(e.to_string()))?;
        }
        w.flush().map_err(|e| Error::Output(e.to_string()))
    }

    pub fn to_json(&self) -> serde_json::Value {
        serde_json::json!({
            "n": self.n,
            "s": self.s,
            "chart": self.chart,
            "bounds": self.bounds,
            "steps": self.steps,
            "labels": self.labels,
            "values": self.values,
            "errs": self.errs,
        })
    }
}

/// Labels every node of the grid by the certified sign of `Xi_n(s; chart(b))`.
pub fn scan(
    n: usize,
    s: f64,
    chart: &HyperplaneChart,
    bounds: &[(f64, f64)],
    steps: &[usize],
    cfg: &EvalConfig,
) -> Result<RegionGrid> {
    if chart.n() != n {
        return Err(Error::Dimension {
            expected: n,
            got: chart.n(),
        });
    }
    if bounds.len() != chart.j() {
        return Err(Error::Dimension {
            expected: chart.j(),
            got: bounds.len(),
        });
    }
    check_shape(bounds, steps)?;
    if !(s > 0.0 && s < 0.5 * n as f64) {
        return Err(Error::Domain { what: "s", value: s });
    }
    let cells: usize = steps.iter().product();
    let mut grid = RegionGrid {
        n,
        s,
        chart: Some(chart.clone()),
        bounds: bounds.to_vec(),
        steps: steps.to_vec(),
        labels: vec![Label::Indeterminate; cells],
        values: vec![0.0; cells],
        errs: vec![0.0; cells],
    };
    let nodes: Vec<(Label, f64, f64)> = (0..cells)
        .into_par_iter()
        .map(|i| {
            let scales = chart.scales_at(&grid.coords(i))?;
            match certified_sign(cfg, |c| Ok(xi(n, s, &scales, c)?.approximation())) {
                Ok((Sign::Positive, a)) => Ok((Label::Positive, a.value, a.err)),
                Ok((Sign::Negative, a)) => Ok((Label::Negative, a.value, a.err)),
                Err(Error::Indeterminate { value, err }) => Ok((Label::Indeterminate, value, err)),
                Err(e) => Err(e),
            }
        })
        .collect::<Result<_>>()?;
    for (i, (label, value, err)) in nodes.into_iter().enumerate() {
        grid.labels[i] = label;
        grid.values[i] = value;
        grid.errs[i] = err;
    }
    Ok(grid)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn indexing_round_trips() {
        let g = RegionGrid::synthetic(vec![3, 4, 2], vec![Label::Positive; 24]).unwrap();
        for i in 0..24 {
            assert_eq!(g.flat_index(&g.multi_index(i)), i);
        }
        assert_eq!(g.coords(23), vec![2.0, 3.0, 1.0]);
        assert_eq!(g.nearest(&[1.2, 2.6, 0.0]), Some(g.flat_index(&[1, 3, 0])));
        assert_eq!(g.nearest(&[5.0, 0.0, 0.0]), None);
    }

    #[test]
    fn csv_has_header_and_rows() {
        let g = RegionGrid::synthetic(vec![2, 2], vec![Label::Negative, Label::Positive, Label::Indeterminate, Label::Negative]).unwrap();
        let mut buf = Vec::new();
        g.write_csv(&mut buf).unwrap();
        let text = String::from_utf8(buf).unwrap();
        let lines: Vec<&str> = text.lines().collect();
        assert_eq!(lines[0], "x1,x2,sign,value,err");
        assert_eq!(lines.len(), 5);
        assert!(lines[3].starts_with("1.0000000000000000e0,0.0000000000000000e0,?,"));
    }

    #[test]
    fn shape_validation() {
        assert!(RegionGrid::synthetic(vec![2, 2], vec![Label::Negative; 3]).is_err());
        assert!(RegionGrid::synthetic(vec![2, 2, 2, 2], vec![Label::Negative; 16]).is_err());
        let chart = HyperplaneChart::kratio(3).unwrap();
        let cfg = EvalConfig::default();
        assert!(scan(3, 0.7, &chart, &[(-1.0, 1.0)], &[3], &cfg).is_err());
        assert!(scan(3, 2.0, &chart, &[(-1.0, 1.0); 2], &[3, 3], &cfg).is_err());
    }
}
