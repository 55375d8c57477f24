//! Embeddings of graph metrics into the integer line.
//!
//! The decision procedure glues together windows of `2h + 1` consecutive
//! cells, `h = d + 1` for unweighted graphs and `h = dW + 1` for maximum
//! edge weight `W`. See [`window`] for the per-window conditions and
//! [`search`] for the linear-time forward search.

pub mod search;
pub mod window;

use crate::error::{Error, Result};
use crate::metric::Metric;
use crate::{check_pairs, Rational, Verdict};

pub use search::{embed_line, embed_line_weighted, SearchStats};
pub use window::{
    compute_sides, count_feasible, enumerate_feasible, is_feasible, succeeds, successor_candidates, FeasibilitySides,
    SuccessionDigraph, WindowEmbedding, WindowParams,
};

/// A map from every vertex to an integer coordinate.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct LineEmbedding {
    positions: Vec<i64>,
}

impl LineEmbedding {
    pub fn new(positions: Vec<i64>) -> Self {
        Self { positions }
    }

    pub fn len(&self) -> usize {
        self.positions.len()
    }

    pub fn is_empty(&self) -> bool {
        self.positions.is_empty()
    }

    pub fn position(&self, v: usize) -> i64 {
        self.positions[v]
    }

    pub fn positions(&self) -> &[i64] {
        &self.positions
    }

    /// Vertices sorted by position, ties broken by id.
    pub fn order(&self) -> Vec<usize> {
        let mut order: Vec<usize> = (0..self.positions.len()).collect();
        order.sort_by_key(|&v| (self.positions[v], v));
        order
    }

    pub fn is_injective(&self) -> bool {
        let mut p = self.positions.clone();
        p.sort_unstable();
        p.windows(2).all(|w| w[0] != w[1])
    }

    /// Translated so that the smallest coordinate is 0.
    pub fn normalized(&self) -> Self {
        let min = self.positions.iter().copied().min().unwrap_or(0);
        Self::new(self.positions.iter().map(|p| p - min).collect())
    }

    /// Largest ratio `|f(u) - f(v)| / D(u, v)`; 1 for fewer than two points.
    pub fn expansion(&self, m: &Metric) -> Rational {
        let mut best = Rational::from_integer(1);
        for u in 0..self.len() {
            for v in u + 1..self.len() {
                let r = Rational::new(self.gap(u, v) as i64, m.get(u, v) as i64);
                if r > best {
                    best = r;
                }
            }
        }
        best
    }

    pub fn gap(&self, u: usize, v: usize) -> u64 {
        self.positions[u].abs_diff(self.positions[v])
    }

    /// `vertex position` lines, sorted by position.
    pub fn to_text(&self) -> String {
        self.order()
            .into_iter()
            .map(|v| format!("{v} {}\n", self.positions[v]))
            .collect()
    }

    /// Parses `vertex position` lines; every vertex in `0..n` must appear
    /// exactly once.
    pub fn parse(text: &str, n: usize) -> Result<Self> {
        let mut positions = vec![None; n];
        for (i, line) in text.lines().enumerate() {
            let line = line.trim();
            if line.is_empty() || line.starts_with('#') {
                continue;
            }
            let err = |msg: String| Error::Parse { line: i + 1, msg };
            let tok: Vec<&str> = line.split_whitespace().collect();
            let [v, p] = tok.as_slice() else {
                return Err(err("expected `vertex position`".into()));
            };
            let v: usize = v.parse().map_err(|_| err(format!("bad vertex `{v}`")))?;
            let p: i64 = p.parse().map_err(|_| err(format!("bad position `{p}`")))?;
            if v >= n {
                return Err(err(format!("vertex {v} out of range")));
            }
            if positions[v].replace(p).is_some() {
                return Err(err(format!("vertex {v} listed twice")));
            }
        }
        positions
            .into_iter()
            .enumerate()
            .map(|(v, p)| {
                p.ok_or(Error::Parse {
                    line: 0,
                    msg: format!("vertex {v} missing"),
                })
            })
            .collect::<Result<Vec<_>>>()
            .map(Self::new)
    }
}

/// Exact check of non-contraction and expansion `<= d`.
pub fn check_line_embedding(m: &Metric, e: &LineEmbedding, d: &Rational) -> Verdict {
    assert_eq!(m.size(), e.len(), "embedding must cover the metric");
    check_pairs(m, d, |u, v| e.gap(u, v))
}

/// `u` pushes `v` when their line distance equals their metric distance.
pub fn pushes(m: &Metric, e: &LineEmbedding, u: usize, v: usize) -> bool {
    e.gap(u, v) == m.get(u, v)
}

/// True if every pair of consecutively placed vertices is at line distance
/// equal to its metric distance.
pub fn is_pushing(m: &Metric, e: &LineEmbedding) -> bool {
    e.order().windows(2).all(|w| pushes(m, e, w[0], w[1]))
}

/// Collapses every gap between consecutive vertices to their metric
/// distance, keeping the leftmost vertex in place. The result is pushing
/// and its expansion does not exceed the input's.
pub fn pushing_normalize(m: &Metric, e: &LineEmbedding) -> Result<LineEmbedding> {
    if let Verdict::Contracts { u, v, .. } = check_pairs(m, &Rational::from_integer(i64::MAX), |u, v| e.gap(u, v)) {
        return Err(Error::NotNonContracting(u, v));
    }
    let order = e.order();
    let start = order.first().map_or(0, |&v| e.position(v));
    Ok(pushing_layout(m, &order, start))
}

/// Places `order[0]` at `start` and every later vertex at the previous
/// position plus the metric distance to its predecessor.
pub fn pushing_layout(m: &Metric, order: &[usize], start: i64) -> LineEmbedding {
    let gaps: Vec<u64> = order.windows(2).map(|w| m.get(w[0], w[1])).collect();
    pushing_layout_from_gaps(order, &gaps, start)
}

/// Same as [`pushing_layout`] with the consecutive distances given, so the
/// full metric is not needed. `order` must list every vertex once.
pub fn pushing_layout_from_gaps(order: &[usize], gaps: &[u64], start: i64) -> LineEmbedding {
    assert_eq!(gaps.len() + 1, order.len().max(1), "one gap per consecutive pair");
    let mut positions = vec![0i64; order.len()];
    let mut pos = start;
    for (i, &v) in order.iter().enumerate() {
        if i > 0 {
            pos += gaps[i - 1] as i64;
        }
        positions[v] = pos;
    }
    LineEmbedding::new(positions)
}
