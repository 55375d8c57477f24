//! Shortest-path metrics: dense all-pairs tables for small graphs and lazily
//! computed bounded-radius balls for the linear-time line search.

use std::cell::OnceCell;
use std::cmp::Reverse;
use std::collections::{BinaryHeap, HashMap, HashSet, VecDeque};

use crate::error::{Error, Result};
use crate::graph::WeightedGraph;
use crate::Rational;

/// Read access to (possibly truncated) graph distances.
pub trait Distances {
    fn size(&self) -> usize;

    /// Exact distance, or `None` when it is not known to this oracle (for
    /// truncated oracles: the distance exceeds the radius).
    fn dist(&self, u: usize, v: usize) -> Option<u64>;

    /// Vertices `x != v` with `dist(v, x) <= r`, sorted by id. `r` must not
    /// exceed the oracle's radius.
    fn ball_of(&self, v: usize, r: u64) -> Vec<(usize, u64)>;
}

/// Dense all-pairs distance table of a connected weighted graph.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Metric {
    n: usize,
    dist: Vec<u64>,
}

impl Metric {
    /// Builds a metric from a raw row-major table. Intended for tests and
    /// hand-built examples; no metric axioms are checked.
    pub fn from_table(n: usize, dist: Vec<u64>) -> Self {
        assert_eq!(dist.len(), n * n);
        Self { n, dist }
    }

    pub fn size(&self) -> usize {
        self.n
    }

    #[inline]
    pub fn get(&self, u: usize, v: usize) -> u64 {
        self.dist[u * self.n + v]
    }

    pub fn row(&self, u: usize) -> &[u64] {
        &self.dist[u * self.n..(u + 1) * self.n]
    }

    pub fn diameter(&self) -> u64 {
        self.dist.iter().copied().max().unwrap_or(0)
    }

    /// Checks symmetry, zero diagonal and the triangle inequality.
    pub fn is_metric(&self) -> bool {
        let n = self.n;
        for u in 0..n {
            if self.get(u, u) != 0 {
                return false;
            }
            for v in 0..n {
                if self.get(u, v) != self.get(v, u) || (u != v && self.get(u, v) == 0) {
                    return false;
                }
                for w in 0..n {
                    if self.get(u, w) > self.get(u, v) + self.get(v, w) {
                        return false;
                    }
                }
            }
        }
        true
    }

    /// The submetric on `vertices`, reindexed in the given order.
    pub fn restrict(&self, vertices: &[usize]) -> Metric {
        let k = vertices.len();
        let mut dist = Vec::with_capacity(k * k);
        for &u in vertices {
            for &v in vertices {
                dist.push(self.get(u, v));
            }
        }
        Metric { n: k, dist }
    }
}

impl Distances for Metric {
    fn size(&self) -> usize {
        self.n
    }

    fn dist(&self, u: usize, v: usize) -> Option<u64> {
        Some(self.get(u, v))
    }

    fn ball_of(&self, v: usize, r: u64) -> Vec<(usize, u64)> {
        (0..self.n)
            .filter(|&x| x != v && self.get(v, x) <= r)
            .map(|x| (x, self.get(v, x)))
            .collect()
    }
}

/// Exact all-pairs shortest-path distances. Uses BFS for unit weights and
/// Dijkstra otherwise.
pub fn shortest_path_metric(g: &WeightedGraph) -> Result<Metric> {
    let n = g.vertex_count();
    let mut dist = vec![0u64; n * n];
    let unit = g.is_unit_weight();
    for s in 0..n {
        let row = if unit {
            bfs_distances(g, s, None)
        } else {
            dijkstra_distances(g, s, None)
        };
        for (v, d) in row.into_iter().enumerate() {
            dist[s * n + v] = d.ok_or(Error::DisconnectedGraph)?;
        }
    }
    Ok(Metric { n, dist })
}

/// Single-source shortest paths, optionally truncated at `radius`.
/// Unreached (or farther than `radius`) vertices map to `None`.
pub fn dijkstra_distances(g: &WeightedGraph, source: usize, radius: Option<u64>) -> Vec<Option<u64>> {
    let n = g.vertex_count();
    let mut dist = vec![u64::MAX; n];
    let mut heap = BinaryHeap::new();
    dist[source] = 0;
    heap.push(Reverse((0u64, source)));
    while let Some(Reverse((d, x))) = heap.pop() {
        if d > dist[x] {
            continue;
        }
        for &(y, w) in g.neighbors(x) {
            let nd = d + w;
            if nd < dist[y] && radius.is_none_or(|r| nd <= r) {
                dist[y] = nd;
                heap.push(Reverse((nd, y)));
            }
        }
    }
    dist.into_iter().map(|d| (d != u64::MAX).then_some(d)).collect()
}

fn bfs_distances(g: &WeightedGraph, source: usize, radius: Option<u64>) -> Vec<Option<u64>> {
    let mut dist = vec![None; g.vertex_count()];
    dist[source] = Some(0);
    let mut queue = VecDeque::from([source]);
    while let Some(x) = queue.pop_front() {
        let dx = dist[x].unwrap();
        if radius.is_some_and(|r| dx >= r) {
            continue;
        }
        for &(y, _) in g.neighbors(x) {
            if dist[y].is_none() {
                dist[y] = Some(dx + 1);
                queue.push_back(y);
            }
        }
    }
    dist
}

/// `{ u : dist(v, u) <= r }`, in increasing vertex order.
pub fn ball(m: &Metric, v: usize, r: u64) -> Vec<usize> {
    (0..m.size()).filter(|&u| m.get(v, u) <= r).collect()
}

/// Local density `max_{v, r > 0} (|B(v, r)| - 1) / 2r`, with `r` ranging over
/// `1..=diameter`. Zero for metrics with fewer than two points.
pub fn local_density(m: &Metric) -> Rational {
    let n = m.size();
    let diam = m.diameter();
    let mut best = Rational::from_integer(0);
    for v in 0..n {
        let mut row: Vec<u64> = m.row(v).to_vec();
        row.sort_unstable();
        let mut inside = 0usize;
        for r in 1..=diam {
            while inside < n && row[inside] <= r {
                inside += 1;
            }
            let cand = Rational::new((inside - 1) as i64, 2 * r as i64);
            if cand > best {
                best = cand;
            }
            if inside == n {
                break;
            }
        }
    }
    best
}

/// Lazily computed balls of a fixed radius around every vertex. Distances
/// beyond the radius are reported as unknown.
pub struct BoundedBalls<'g> {
    graph: &'g WeightedGraph,
    radius: u64,
    balls: Vec<OnceCell<Vec<(usize, u64)>>>,
}

impl<'g> BoundedBalls<'g> {
    pub fn new(graph: &'g WeightedGraph, radius: u64) -> Self {
        Self {
            graph,
            radius,
            balls: (0..graph.vertex_count()).map(|_| OnceCell::new()).collect(),
        }
    }

    pub fn radius(&self) -> u64 {
        self.radius
    }

    /// Vertices within the radius of `v` with their distances, sorted by id.
    pub fn ball(&self, v: usize) -> &[(usize, u64)] {
        self.balls[v].get_or_init(|| {
            let mut out = bounded_search(self.graph, v, self.radius);
            out.sort_unstable();
            out
        })
    }

    /// True if some ball of radius `r <= self.radius` holds more than
    /// `2 d r + 1` vertices, which rules out a line embedding with
    /// distortion `d`.
    pub fn density_exceeds(&self, d: u64) -> bool {
        (0..self.graph.vertex_count()).any(|v| {
            let mut ds: Vec<u64> = self.ball(v).iter().map(|&(_, x)| x).collect();
            ds.sort_unstable();
            let mut inside = 0;
            (1..=self.radius).any(|r| {
                while inside < ds.len() && ds[inside] <= r {
                    inside += 1;
                }
                inside as u64 > 2 * d * r + 1
            })
        })
    }
}

impl Distances for BoundedBalls<'_> {
    fn size(&self) -> usize {
        self.graph.vertex_count()
    }

    fn dist(&self, u: usize, v: usize) -> Option<u64> {
        let ball = self.ball(u);
        ball.binary_search_by_key(&v, |&(x, _)| x).ok().map(|i| ball[i].1)
    }

    fn ball_of(&self, v: usize, r: u64) -> Vec<(usize, u64)> {
        debug_assert!(r <= self.radius);
        self.ball(v)
            .iter()
            .copied()
            .filter(|&(x, d)| x != v && d <= r)
            .collect()
    }
}

/// Truncated Dijkstra that only touches the explored region.
fn bounded_search(g: &WeightedGraph, source: usize, radius: u64) -> Vec<(usize, u64)> {
    let mut found: Vec<(usize, u64)> = Vec::new();
    let mut settled: HashSet<usize> = HashSet::new();
    let mut best: HashMap<usize, u64> = HashMap::new();
    let mut heap = BinaryHeap::new();
    best.insert(source, 0);
    heap.push(Reverse((0u64, source)));
    while let Some(Reverse((d, x))) = heap.pop() {
        if !settled.insert(x) {
            continue;
        }
        found.push((x, d));
        for &(y, w) in g.neighbors(x) {
            let nd = d + w;
            if nd <= radius && best.get(&y).is_none_or(|&b| nd < b) {
                best.insert(y, nd);
                heap.push(Reverse((nd, y)));
            }
        }
    }
    found
}
