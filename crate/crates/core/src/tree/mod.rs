//! Embeddings of unweighted graph metrics into the shortest-path metric of a
//! rooted tree of bounded degree.
//!
//! The decision procedure is a table over `u`-states: for every tree vertex
//! `u`, a partial embedding into the ball `B(u, d + 1)` together with one
//! typelist per tree neighbor. See [`dp`] for how the table is filled.

pub mod dp;
pub mod partial;
pub mod state;
pub mod types;

use std::collections::VecDeque;

use crate::error::{Error, Result};
use crate::graph::WeightedGraph;
use crate::metric::{shortest_path_metric, Metric};
use crate::{check_pairs, Rational, Verdict};

pub use dp::{embed_tree, embed_tree_with, TreeDpConfig, TreeDpStats};
pub use partial::{components_toward, is_feasible_upartial, upartial_succeeds, UPartialEmbedding};
pub use state::{is_feasible_state, realized_states, state_succeeds, UState};
pub use types::{beta, typelist_compatible, typelists_agree, types_agree, TypeFn, TypeValue, Typelist};

/// A unit-weight tree with a designated root.
#[derive(Debug, Clone)]
pub struct RootedTree {
    graph: WeightedGraph,
    root: usize,
    parent: Vec<Option<usize>>,
    children: Vec<Vec<usize>>,
    /// Breadth-first order from the root.
    order: Vec<usize>,
    dist: Metric,
}

impl RootedTree {
    pub fn new(graph: WeightedGraph, root: usize) -> Result<Self> {
        if !graph.is_tree() {
            return Err(Error::NotATree);
        }
        if !graph.is_unit_weight() {
            return Err(Error::NonUnitWeights);
        }
        let n = graph.vertex_count();
        if root >= n {
            return Err(Error::InvalidArgument(format!(
                "root {root} out of range for {n} vertices"
            )));
        }
        let mut parent = vec![None; n];
        let mut children = vec![Vec::new(); n];
        let mut order = Vec::with_capacity(n);
        let mut seen = vec![false; n];
        seen[root] = true;
        let mut queue = VecDeque::from([root]);
        while let Some(x) = queue.pop_front() {
            order.push(x);
            let mut next: Vec<usize> = graph
                .neighbors(x)
                .iter()
                .map(|&(y, _)| y)
                .filter(|&y| !seen[y])
                .collect();
            next.sort_unstable();
            for y in next {
                seen[y] = true;
                parent[y] = Some(x);
                children[x].push(y);
                queue.push_back(y);
            }
        }
        let dist = shortest_path_metric(&graph)?;
        Ok(Self {
            graph,
            root,
            parent,
            children,
            order,
            dist,
        })
    }

    pub fn size(&self) -> usize {
        self.graph.vertex_count()
    }

    pub fn root(&self) -> usize {
        self.root
    }

    pub fn graph(&self) -> &WeightedGraph {
        &self.graph
    }

    pub fn parent(&self, v: usize) -> Option<usize> {
        self.parent[v]
    }

    pub fn children(&self, v: usize) -> &[usize] {
        &self.children[v]
    }

    /// Parent first (if any), then children in increasing id.
    pub fn neighbors(&self, v: usize) -> Vec<usize> {
        self.parent[v]
            .into_iter()
            .chain(self.children[v].iter().copied())
            .collect()
    }

    pub fn max_degree(&self) -> usize {
        self.graph.max_degree()
    }

    pub fn dist(&self, a: usize, b: usize) -> u64 {
        self.dist.get(a, b)
    }

    pub fn metric(&self) -> &Metric {
        &self.dist
    }

    /// Tree vertices within distance `r` of `u`, in increasing id.
    pub fn ball(&self, u: usize, r: u64) -> Vec<usize> {
        (0..self.size()).filter(|&x| self.dist(u, x) <= r).collect()
    }

    /// True if `x` lies in the component of `T - uv` containing `v`.
    pub fn toward(&self, u: usize, v: usize, x: usize) -> bool {
        self.dist(x, v) < self.dist(x, u)
    }

    /// Root-first breadth-first order.
    pub fn preorder(&self) -> &[usize] {
        &self.order
    }

    /// Children before parents.
    pub fn postorder(&self) -> Vec<usize> {
        self.order.iter().rev().copied().collect()
    }
}

/// An injective map from graph vertices to tree vertices.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct TreeEmbedding {
    map: Vec<usize>,
}

impl TreeEmbedding {
    pub fn new(map: Vec<usize>) -> Self {
        Self { map }
    }

    pub fn len(&self) -> usize {
        self.map.len()
    }

    pub fn is_empty(&self) -> bool {
        self.map.is_empty()
    }

    pub fn image(&self, x: usize) -> usize {
        self.map[x]
    }

    pub fn mapping(&self) -> &[usize] {
        &self.map
    }

    pub fn is_injective(&self) -> bool {
        let mut m = self.map.clone();
        m.sort_unstable();
        m.windows(2).all(|w| w[0] != w[1])
    }

    /// `vertex tree-vertex` lines in increasing vertex order.
    pub fn to_text(&self) -> String {
        self.map.iter().enumerate().map(|(x, t)| format!("{x} {t}\n")).collect()
    }

    /// Parses `vertex tree-vertex` lines; every vertex in `0..n` must appear
    /// once and every image must be below `tree_size`.
    pub fn parse(text: &str, n: usize, tree_size: usize) -> Result<Self> {
        let mut map = vec![None; n];
        for (i, line) in text.lines().enumerate() {
            let line = line.trim();
            if line.is_empty() || line.starts_with('#') {
                continue;
            }
            let err = |msg: String| Error::Parse { line: i + 1, msg };
            let tok: Vec<&str> = line.split_whitespace().collect();
            let [x, t] = tok.as_slice() else {
                return Err(err("expected `vertex tree-vertex`".into()));
            };
            let x: usize = x.parse().map_err(|_| err(format!("bad vertex `{x}`")))?;
            let t: usize = t.parse().map_err(|_| err(format!("bad tree vertex `{t}`")))?;
            if x >= n || t >= tree_size {
                return Err(err(format!("pair ({x}, {t}) out of range")));
            }
            if map[x].replace(t).is_some() {
                return Err(err(format!("vertex {x} listed twice")));
            }
        }
        map.into_iter()
            .enumerate()
            .map(|(x, t)| {
                t.ok_or(Error::Parse {
                    line: 0,
                    msg: format!("vertex {x} missing"),
                })
            })
            .collect::<Result<Vec<_>>>()
            .map(Self::new)
    }
}

/// Exact check of non-contraction and expansion `<= d` against the tree
/// metric. Non-injective maps show up as contractions.
pub fn check_tree_embedding(m: &Metric, tree: &RootedTree, e: &TreeEmbedding, d: &Rational) -> Verdict {
    assert_eq!(m.size(), e.len(), "embedding must cover the metric");
    check_pairs(m, d, |u, v| tree.dist(e.image(u), e.image(v)))
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn rooting() {
        let t = RootedTree::new(WeightedGraph::path(4), 1).unwrap();
        assert_eq!(t.children(1), &[0, 2]);
        assert_eq!(t.parent(3), Some(2));
        assert_eq!(t.neighbors(2), vec![1, 3]);
        assert_eq!(t.preorder(), &[1, 0, 2, 3]);
        assert!(t.toward(1, 2, 3));
        assert!(!t.toward(1, 2, 0));
        assert_eq!(t.ball(0, 2), vec![0, 1, 2]);
    }

    #[test]
    fn rejects_non_trees() {
        assert_eq!(
            RootedTree::new(WeightedGraph::cycle(3), 0).unwrap_err(),
            Error::NotATree
        );
        let w = WeightedGraph::from_edges(2, [(0, 1, 2)]).unwrap();
        assert_eq!(RootedTree::new(w, 0).unwrap_err(), Error::NonUnitWeights);
        assert!(RootedTree::new(WeightedGraph::path(2), 5).is_err());
    }

    #[test]
    fn checker_examples() {
        let star = WeightedGraph::star(3);
        let m = shortest_path_metric(&star).unwrap();
        let same = RootedTree::new(star, 0).unwrap();
        let id = TreeEmbedding::new(vec![0, 1, 2, 3]);
        assert!(check_tree_embedding(&m, &same, &id, &Rational::from_integer(1)).is_ok());

        // leaf, center, leaf, leaf at path positions 0, 1, 2, 4
        let p7 = RootedTree::new(WeightedGraph::path(7), 0).unwrap();
        let e = TreeEmbedding::new(vec![1, 0, 2, 4]);
        assert!(check_tree_embedding(&m, &p7, &e, &Rational::from_integer(3)).is_ok());
        assert!(matches!(
            check_tree_embedding(&m, &p7, &e, &Rational::from_integer(2)),
            Verdict::Expands { .. }
        ));
    }

    #[test]
    fn text_round_trip() {
        let e = TreeEmbedding::new(vec![2, 0, 1]);
        assert_eq!(e.to_text(), "0 2\n1 0\n2 1\n");
        assert_eq!(TreeEmbedding::parse(&e.to_text(), 3, 3).unwrap(), e);
        assert!(TreeEmbedding::parse("0 3\n", 1, 3).is_err());
        assert!(TreeEmbedding::parse("0 1\n", 2, 3).is_err());
    }
}
