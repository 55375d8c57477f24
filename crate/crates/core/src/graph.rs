//! Simple undirected graphs with positive integer edge weights, plus the
//! shared plain-text edge-list format.
//!
//! The format is a header line `n m` followed by `m` edge lines `u v w`
//! (0-based ids, `w >= 1`). A two-token edge line `u v` has weight 1.
//! Blank lines and lines starting with `#` are ignored.

use std::collections::VecDeque;
use std::fmt::Write as _;

use crate::error::{Error, Result};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub struct Edge {
    pub u: usize,
    pub v: usize,
    pub w: u64,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct WeightedGraph {
    n: usize,
    edges: Vec<Edge>,
    adj: Vec<Vec<(usize, u64)>>,
}

impl WeightedGraph {
    pub fn new(n: usize) -> Self {
        Self {
            n,
            edges: Vec::new(),
            adj: vec![Vec::new(); n],
        }
    }

    pub fn from_edges(n: usize, edges: impl IntoIterator<Item = (usize, usize, u64)>) -> Result<Self> {
        let mut g = Self::new(n);
        for (u, v, w) in edges {
            g.add_edge(u, v, w)?;
        }
        Ok(g)
    }

    pub fn unweighted(n: usize, edges: impl IntoIterator<Item = (usize, usize)>) -> Result<Self> {
        Self::from_edges(n, edges.into_iter().map(|(u, v)| (u, v, 1)))
    }

    /// Adds an edge, rejecting self-loops, parallel edges, zero weights and
    /// out-of-range endpoints.
    pub fn add_edge(&mut self, u: usize, v: usize, w: u64) -> Result<()> {
        if u >= self.n || v >= self.n {
            return Err(Error::InvalidArgument(format!(
                "edge ({u}, {v}) out of range for {} vertices",
                self.n
            )));
        }
        if u == v {
            return Err(Error::InvalidArgument(format!("self-loop at {u}")));
        }
        if w == 0 {
            return Err(Error::InvalidArgument(format!("edge ({u}, {v}) has weight 0")));
        }
        if self.adj[u].iter().any(|&(x, _)| x == v) {
            return Err(Error::InvalidArgument(format!("parallel edge ({u}, {v})")));
        }
        self.edges.push(Edge { u, v, w });
        self.adj[u].push((v, w));
        self.adj[v].push((u, w));
        Ok(())
    }

    /// Same as [`add_edge`](Self::add_edge) without the parallel-edge scan.
    /// Callers must guarantee the edge is new.
    pub(crate) fn push_edge_unchecked(&mut self, u: usize, v: usize, w: u64) {
        debug_assert!(u != v && w >= 1);
        self.edges.push(Edge { u, v, w });
        self.adj[u].push((v, w));
        self.adj[v].push((u, w));
    }

    pub fn vertex_count(&self) -> usize {
        self.n
    }

    pub fn edge_count(&self) -> usize {
        self.edges.len()
    }

    /// Edges in insertion order.
    pub fn edges(&self) -> &[Edge] {
        &self.edges
    }

    pub fn neighbors(&self, v: usize) -> &[(usize, u64)] {
        &self.adj[v]
    }

    pub fn degree(&self, v: usize) -> usize {
        self.adj[v].len()
    }

    pub fn max_degree(&self) -> usize {
        self.adj.iter().map(Vec::len).max().unwrap_or(0)
    }

    pub fn weight(&self, u: usize, v: usize) -> Option<u64> {
        self.adj[u].iter().find(|&&(x, _)| x == v).map(|&(_, w)| w)
    }

    pub fn has_edge(&self, u: usize, v: usize) -> bool {
        self.weight(u, v).is_some()
    }

    /// Largest edge weight, 1 for an edgeless graph.
    pub fn max_weight(&self) -> u64 {
        self.edges.iter().map(|e| e.w).max().unwrap_or(1)
    }

    pub fn is_unit_weight(&self) -> bool {
        self.edges.iter().all(|e| e.w == 1)
    }

    /// True iff the graph has a single connected component. Graphs with at
    /// most one vertex are connected.
    pub fn is_connected(&self) -> bool {
        if self.n <= 1 {
            return true;
        }
        let mut seen = vec![false; self.n];
        let mut queue = VecDeque::from([0]);
        seen[0] = true;
        let mut count = 1;
        while let Some(x) = queue.pop_front() {
            for &(y, _) in &self.adj[x] {
                if !seen[y] {
                    seen[y] = true;
                    count += 1;
                    queue.push_back(y);
                }
            }
        }
        count == self.n
    }

    /// True iff the graph is connected and has exactly `n - 1` edges.
    pub fn is_tree(&self) -> bool {
        self.n >= 1 && self.edges.len() + 1 == self.n && self.is_connected()
    }

    /// Returns the graph with vertex `v` renamed to `perm[v]`.
    pub fn relabel(&self, perm: &[usize]) -> Self {
        let mut g = Self::new(self.n);
        for e in &self.edges {
            g.push_edge_unchecked(perm[e.u], perm[e.v], e.w);
        }
        g
    }

    pub fn parse(text: &str) -> Result<Self> {
        let mut lines = text
            .lines()
            .enumerate()
            .map(|(i, l)| (i + 1, l.trim()))
            .filter(|(_, l)| !l.is_empty() && !l.starts_with('#'));
        let (hline, header) = lines.next().ok_or(Error::Parse {
            line: 0,
            msg: "missing header".into(),
        })?;
        let head: Vec<&str> = header.split_whitespace().collect();
        if head.len() != 2 {
            return Err(Error::Parse {
                line: hline,
                msg: "header must be `n m`".into(),
            });
        }
        let n = parse_num::<usize>(head[0], hline)?;
        let m = parse_num::<usize>(head[1], hline)?;
        let mut g = Self::new(n);
        let mut seen = 0;
        for (line, body) in lines {
            let tok: Vec<&str> = body.split_whitespace().collect();
            let (u, v, w) = match tok.as_slice() {
                [u, v] => (parse_num(u, line)?, parse_num(v, line)?, 1),
                [u, v, w] => (parse_num(u, line)?, parse_num(v, line)?, parse_num(w, line)?),
                _ => {
                    return Err(Error::Parse {
                        line,
                        msg: "edge line must be `u v` or `u v w`".into(),
                    })
                }
            };
            g.add_edge(u, v, w).map_err(|e| Error::Parse {
                line,
                msg: e.to_string(),
            })?;
            seen += 1;
        }
        if seen != m {
            return Err(Error::Parse {
                line: hline,
                msg: format!("header declares {m} edges, found {seen}"),
            });
        }
        Ok(g)
    }

    pub fn to_text(&self) -> String {
        let mut out = format!("{} {}\n", self.n, self.edges.len());
        for e in &self.edges {
            let _ = writeln!(out, "{} {} {}", e.u, e.v, e.w);
        }
        out
    }

    pub fn path(n: usize) -> Self {
        Self::unweighted(n, (1..n).map(|i| (i - 1, i))).expect("valid path")
    }

    pub fn cycle(n: usize) -> Self {
        assert!(n >= 3, "cycle needs at least 3 vertices");
        Self::unweighted(n, (0..n).map(|i| (i, (i + 1) % n))).expect("valid cycle")
    }

    /// Star with center 0 and `leaves` leaves.
    pub fn star(leaves: usize) -> Self {
        Self::unweighted(leaves + 1, (1..=leaves).map(|i| (0, i))).expect("valid star")
    }

    pub fn complete(n: usize) -> Self {
        let mut edges = Vec::new();
        for u in 0..n {
            for v in u + 1..n {
                edges.push((u, v));
            }
        }
        Self::unweighted(n, edges).expect("valid clique")
    }
}

fn parse_num<T: std::str::FromStr>(tok: &str, line: usize) -> Result<T> {
    tok.parse().map_err(|_| Error::Parse {
        line,
        msg: format!("expected a non-negative integer, got `{tok}`"),
    })
}
