use super::grid::{Label, RegionGrid};
use crate::convexity::HyperplaneChart;
use minilp::{ComparisonOp, OptimizationDirection, Problem};
use nalgebra::{DMatrix, DVector};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::Serialize;
use std::cmp::Ordering;

/// Pair budget above which convexity is checked on a random sample.
pub const DEFAULT_MAX_PAIRS: usize = 10_000;
const CENTER_RESIDUAL: f64 = 1e-8;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum ConnectivityStatus {
    Empty,
    Connected,
    Disconnected,
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct ConnectivityReport {
    pub negative_cells: usize,
    pub components: usize,
    pub status: ConnectivityStatus,
}

struct UnionFind {
    parent: Vec<usize>,
    rank: Vec<u8>,
}

impl UnionFind {
    fn new(n: usize) -> Self {
        Self {
            parent: (0..n).collect(),
            rank: vec![0; n],
        }
    }

    fn find(&mut self, mut x: usize) -> usize {
        while self.parent[x] != x {
            self.parent[x] = self.parent[self.parent[x]];
            x = self.parent[x];
        }
        x
    }

    fn union(&mut self, a: usize, b: usize) {
        let (ra, rb) = (self.find(a), self.find(b));
        if ra == rb {
            return;
        }
        match self.rank[ra].cmp(&self.rank[rb]) {
            Ordering::Less => self.parent[ra] = rb,
            Ordering::Greater => self.parent[rb] = ra,
            Ordering::Equal => {
                self.parent[rb] = ra;
                self.rank[ra] += 1;
            }
        }
    }
}

/// Components of the negative cells under axis-neighbour adjacency, with
/// indeterminate cells acting as wildcards that may join neighbours.
pub fn certify_connected(grid: &RegionGrid) -> ConnectivityReport {
    let mut uf = UnionFind::new(grid.len());
    for i in 0..grid.len() {
        if !grid.labels[i].admits_negative() {
            continue;
        }
        let multi = grid.multi_index(i);
        for d in 0..grid.dims() {
            if multi[d] + 1 < grid.steps[d] {
                let mut next = multi.clone();
                next[d] += 1;
                let j = grid.flat_index(&next);
                if grid.labels[j].admits_negative() {
                    uf.union(i, j);
                }
            }
        }
    }
    let mut roots: Vec<usize> = (0..grid.len())
        .filter(|&i| grid.labels[i] == Label::Negative)
        .map(|i| uf.find(i))
        .collect();
    let negative_cells = roots.len();
    roots.sort_unstable();
    roots.dedup();
    let components = roots.len();
    let status = match components {
        0 => ConnectivityStatus::Empty,
        1 => ConnectivityStatus::Connected,
        _ => ConnectivityStatus::Disconnected,
    };
    ConnectivityReport {
        negative_cells,
        components,
        status,
    }
}

/// `a/b` with positive `b`, compared exactly by cross-multiplication.
#[derive(Clone, Copy)]
struct Ratio(i64, i64);

impl Ratio {
    fn cmp(self, other: Ratio) -> Ordering {
        (self.0 as i128 * other.1 as i128).cmp(&(other.0 as i128 * self.1 as i128))
    }
}

/// Every unit cell (centred on integer nodes) met by the closed segment
/// from `p` to `q`, in traversal order. Where the segment passes exactly
/// through a cell corner or edge, all cells sharing it are included.
pub fn supercover(p: &[i64], q: &[i64]) -> Vec<Vec<i64>> {
    let dims = p.len();
    let delta: Vec<i64> = p.iter().zip(q).map(|(a, b)| b - a).collect();
    let mut crossed = vec![0i64; dims];
    let mut current = p.to_vec();
    let mut out = vec![current.clone()];
    loop {
        // next boundary crossing on each axis happens at t = (2k+1) / (2|delta|)
        let mut next: Option<Ratio> = None;
        let mut axes = Vec::new();
        for d in 0..dims {
            let len = delta[d].abs();
            if crossed[d] >= len {
                continue;
            }
            let t = Ratio(2 * crossed[d] + 1, 2 * len);
            match next.map(|n| t.cmp(n)) {
                None | Some(Ordering::Less) => {
                    next = Some(t);
                    axes = vec![d];
                }
                Some(Ordering::Equal) => axes.push(d),
                Some(Ordering::Greater) => {}
            }
        }
        if axes.is_empty() {
            return out;
        }
        // proper nonempty subsets of simultaneous crossings touch the corner cells
        let k = axes.len();
        for mask in 1..(1u32 << k) - 1 {
            let mut cell = current.clone();
            for (bit, &d) in axes.iter().enumerate() {
                if mask & (1 << bit) != 0 {
                    cell[d] += delta[d].signum();
                }
            }
            out.push(cell);
        }
        for &d in &axes {
            current[d] += delta[d].signum();
            crossed[d] += 1;
        }
        out.push(current.clone());
    }
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct ConvexityCheck {
    pub negative_cells: usize,
    pub pairs_checked: usize,
    pub exhaustive: bool,
    /// A pair of negative cells and a positive cell on the segment between them.
    pub witness: Option<(Vec<f64>, Vec<f64>, Vec<f64>)>,
}

impl ConvexityCheck {
    pub fn passed(&self) -> bool {
        self.witness.is_none()
    }
}

/// Pairwise digital convexity. For each pair of negative cells the segment
/// between them is walked by supercover; a positive cell met on the way is a
/// violation when its node lies in the convex hull of the negative nodes met by
/// the same walk. A positive node merely grazed by the segment does not
/// contradict convexity of the underlying region, so it is not reported.
/// All pairs are checked when there are at most `max_pairs`, otherwise
/// `max_pairs` pairs drawn with the given seed.
pub fn certify_discrete_convex(grid: &RegionGrid, max_pairs: usize, seed: u64) -> ConvexityCheck {
    let negatives: Vec<usize> = (0..grid.len()).filter(|&i| grid.labels[i] == Label::Negative).collect();
    let m = negatives.len();
    let total = m * m.saturating_sub(1) / 2;
    let exhaustive = total <= max_pairs;
    let pairs: Vec<(usize, usize)> = if exhaustive {
        (0..m).flat_map(|a| (a + 1..m).map(move |b| (a, b))).collect()
    } else {
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        (0..max_pairs)
            .map(|_| {
                let a = rng.gen_range(0..m);
                let mut b = rng.gen_range(0..m - 1);
                if b >= a {
                    b += 1;
                }
                (a, b)
            })
            .collect()
    };
    let as_i64 = |i: usize| -> Vec<i64> { grid.multi_index(i).iter().map(|&x| x as i64).collect() };
    let mut witness = None;
    for &(a, b) in &pairs {
        let (ia, ib) = (negatives[a], negatives[b]);
        let (p, q) = (as_i64(ia), as_i64(ib));
        let mut corridor = Vec::new();
        let mut candidates = Vec::new();
        for cell in supercover(&p, &q) {
            let multi: Vec<usize> = cell.iter().map(|&x| x as usize).collect();
            match grid.labels[grid.flat_index(&multi)] {
                Label::Negative => corridor.push(cell),
                Label::Positive => candidates.push(cell),
                Label::Indeterminate => {}
            }
        }
        let blocked = candidates
            .into_iter()
            .find(|c| on_segment(c, &p, &q) || in_hull(c, &corridor));
        if let Some(cell) = blocked {
            let multi: Vec<usize> = cell.iter().map(|&x| x as usize).collect();
            witness = Some((grid.coords(ia), grid.coords(ib), grid.coords(grid.flat_index(&multi))));
            break;
        }
    }
    ConvexityCheck {
        negative_cells: m,
        pairs_checked: pairs.len(),
        exhaustive,
        witness,
    }
}

fn on_segment(c: &[i64], p: &[i64], q: &[i64]) -> bool {
    let d: Vec<i64> = p.iter().zip(q).map(|(a, b)| b - a).collect();
    let e: Vec<i64> = p.iter().zip(c).map(|(a, b)| b - a).collect();
    let collinear = (0..d.len()).all(|i| (0..d.len()).all(|j| d[i] * e[j] == d[j] * e[i]));
    let dot: i64 = d.iter().zip(&e).map(|(x, y)| x * y).sum();
    let len2: i64 = d.iter().map(|x| x * x).sum();
    collinear && (0..=len2).contains(&dot)
}

/// Feasibility of `sum l_i p_i = c`, `sum l_i = 1`, `l >= 0`.
fn in_hull(c: &[i64], points: &[Vec<i64>]) -> bool {
    if points.is_empty() {
        return false;
    }
    let mut lp = Problem::new(OptimizationDirection::Minimize);
    let vars: Vec<_> = points.iter().map(|_| lp.add_var(0.0, (0.0, f64::INFINITY))).collect();
    for k in 0..c.len() {
        let row: Vec<_> = vars.iter().zip(points).map(|(&v, pt)| (v, pt[k] as f64)).collect();
        lp.add_constraint(row.as_slice(), ComparisonOp::Eq, c[k] as f64);
    }
    let ones: Vec<_> = vars.iter().map(|&v| (v, 1.0)).collect();
    lp.add_constraint(ones.as_slice(), ComparisonOp::Eq, 1.0);
    lp.solve().is_ok()
}

/// Least-squares solution `b` of `A b + v = mean(v) 1`, or `None` when the
/// system is inconsistent (residual above `1e-8`).
pub fn center_solution(chart: &HyperplaneChart) -> Option<Vec<f64>> {
    let (n, j) = (chart.n(), chart.j());
    let a = DMatrix::from_fn(n, j, |i, l| chart.a[i][l]);
    let mean = chart.v.iter().sum::<f64>() / n as f64;
    let rhs = DVector::from_iterator(n, chart.v.iter().map(|vi| mean - vi));
    let svd = a.clone().svd(true, true);
    let b = svd.solve(&rhs, 1e-12).ok()?;
    let residual = (&a * &b - &rhs).norm();
    (residual <= CENTER_RESIDUAL).then(|| b.iter().copied().collect())
}
