//! Exhaustive searches used as ground truth for the dynamic programs.
//!
//! Line embeddings only need to be searched over vertex orderings: laying an
//! ordering out with every consecutive gap equal to the metric distance is
//! non-contracting, and it never expands more than any other
//! non-contracting layout of the same ordering. Every search visits
//! orderings (or maps) in lexicographic order and returns the first hit, so
//! results are deterministic.

use std::cell::Cell;

use crate::error::{Error, Result};
use crate::line::{pushing_layout, LineEmbedding};
use crate::metric::Metric;
use crate::tree::{RootedTree, TreeEmbedding};
use crate::Rational;

/// Largest instances the searches accept.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct OracleCaps {
    pub line: usize,
    pub tree_graph: usize,
    pub tree_host: usize,
}

impl Default for OracleCaps {
    fn default() -> Self {
        Self {
            line: 9,
            tree_graph: 6,
            tree_host: 10,
        }
    }
}

fn check_cap(size: usize, cap: usize) -> Result<()> {
    if size > cap {
        return Err(Error::InstanceTooLarge { size, cap });
    }
    Ok(())
}

/// `gap / dist` as an exact fraction, compared by cross multiplication.
#[derive(Debug, Clone, Copy)]
struct Ratio {
    gap: u64,
    dist: u64,
}

impl Ratio {
    fn exceeds(self, other: Ratio) -> bool {
        self.gap as u128 * other.dist as u128 > other.gap as u128 * self.dist as u128
    }

    fn at_least(self, other: Ratio) -> bool {
        !other.exceeds(self)
    }
}

/// Depth-first search over orderings. `prune(r)` is called with the largest
/// expansion of the current prefix; `leaf` sees complete orderings with
/// their expansion and returns true to stop.
struct Orderings<'a> {
    m: &'a Metric,
    order: Vec<usize>,
    pos: Vec<u64>,
    used: Vec<bool>,
}

impl<'a> Orderings<'a> {
    fn new(m: &'a Metric) -> Self {
        let n = m.size();
        Self {
            m,
            order: Vec::with_capacity(n),
            pos: vec![0; n],
            used: vec![false; n],
        }
    }

    fn run(
        &mut self,
        worst: Ratio,
        prune: &mut dyn FnMut(Ratio) -> bool,
        leaf: &mut dyn FnMut(&[usize], Ratio) -> bool,
    ) -> bool {
        let n = self.m.size();
        if self.order.len() == n {
            return leaf(&self.order, worst);
        }
        for v in 0..n {
            if self.used[v] {
                continue;
            }
            let p = match self.order.last() {
                Some(&u) => self.pos[u] + self.m.get(u, v),
                None => 0,
            };
            let mut w = worst;
            for &x in &self.order {
                let r = Ratio {
                    gap: p - self.pos[x],
                    dist: self.m.get(x, v),
                };
                if r.exceeds(w) {
                    w = r;
                }
            }
            if prune(w) {
                continue;
            }
            self.used[v] = true;
            self.pos[v] = p;
            self.order.push(v);
            let stop = self.run(w, prune, leaf);
            self.order.pop();
            self.used[v] = false;
            if stop {
                return true;
            }
        }
        false
    }
}

const ONE: Ratio = Ratio { gap: 1, dist: 1 };

/// Some non-contracting line embedding with distortion at most `d`, found by
/// trying every ordering.
pub fn brute_force_line(m: &Metric, d: &Rational) -> Result<Option<LineEmbedding>> {
    brute_force_line_capped(m, d, OracleCaps::default().line)
}

pub fn brute_force_line_capped(m: &Metric, d: &Rational, cap: usize) -> Result<Option<LineEmbedding>> {
    check_cap(m.size(), cap)?;
    if *d < Rational::from_integer(1) {
        return Ok(None);
    }
    let bound = Ratio {
        gap: *d.numer() as u64,
        dist: *d.denom() as u64,
    };
    let mut found = None;
    Orderings::new(m).run(ONE, &mut |w| w.exceeds(bound), &mut |order, _| {
        found = Some(order.to_vec());
        true
    });
    Ok(found.map(|order| pushing_layout(m, &order, 0)))
}

/// The least distortion of any non-contracting line embedding; 1 for fewer
/// than two points.
pub fn min_distortion_line(m: &Metric) -> Result<Rational> {
    min_distortion_line_capped(m, OracleCaps::default().line)
}

pub fn min_distortion_line_capped(m: &Metric, cap: usize) -> Result<Rational> {
    check_cap(m.size(), cap)?;
    let best: Cell<Option<Ratio>> = Cell::new(None);
    Orderings::new(m).run(ONE, &mut |w| best.get().is_some_and(|b| w.at_least(b)), &mut |_, w| {
        best.set(Some(w));
        false
    });
    let b = best.get().unwrap_or(ONE);
    Ok(Rational::new(b.gap as i64, b.dist as i64))
}

/// Some injective map into the tree that is non-contracting with expansion
/// at most `d`.
pub fn brute_force_tree(mg: &Metric, tree: &RootedTree, d: u64) -> Result<Option<TreeEmbedding>> {
    brute_force_tree_capped(mg, tree, d, &OracleCaps::default())
}

pub fn brute_force_tree_capped(
    mg: &Metric,
    tree: &RootedTree,
    d: u64,
    caps: &OracleCaps,
) -> Result<Option<TreeEmbedding>> {
    check_cap(mg.size(), caps.tree_graph)?;
    check_cap(tree.size(), caps.tree_host)?;
    let mut map = Vec::with_capacity(mg.size());
    let mut used = vec![false; tree.size()];
    Ok(extend_tree(mg, tree, d, &mut map, &mut used).then(|| TreeEmbedding::new(map)))
}

fn extend_tree(mg: &Metric, tree: &RootedTree, d: u64, map: &mut Vec<usize>, used: &mut [bool]) -> bool {
    let x = map.len();
    if x == mg.size() {
        return true;
    }
    for t in 0..tree.size() {
        if used[t] {
            continue;
        }
        let ok = map.iter().enumerate().all(|(y, &ty)| {
            let (dg, dt) = (mg.get(x, y), tree.dist(t, ty));
            dt >= dg && dt <= d * dg
        });
        if !ok {
            continue;
        }
        used[t] = true;
        map.push(t);
        if extend_tree(mg, tree, d, map, used) {
            return true;
        }
        map.pop();
        used[t] = false;
    }
    false
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::graph::WeightedGraph;
    use crate::line::check_line_embedding;
    use crate::metric::shortest_path_metric;
    use crate::tree::check_tree_embedding;

    fn metric(g: &WeightedGraph) -> Metric {
        shortest_path_metric(g).unwrap()
    }

    fn int(k: i64) -> Rational {
        Rational::from_integer(k)
    }

    #[test]
    fn line_examples() {
        let p4 = metric(&WeightedGraph::path(4));
        assert!(brute_force_line(&p4, &int(1)).unwrap().is_some());
        let c4 = metric(&WeightedGraph::cycle(4));
        assert!(brute_force_line(&c4, &int(2)).unwrap().is_none());
        let e = brute_force_line(&c4, &int(3)).unwrap().unwrap();
        assert!(check_line_embedding(&c4, &e, &int(3)).is_ok());
        let k4 = metric(&WeightedGraph::complete(4));
        assert!(brute_force_line(&k4, &int(2)).unwrap().is_none());
        assert_eq!(
            brute_force_line(&k4, &int(3)).unwrap().unwrap().positions(),
            &[0, 1, 2, 3]
        );
    }

    #[test]
    fn minimum_distortions() {
        assert_eq!(min_distortion_line(&metric(&WeightedGraph::star(3))).unwrap(), int(3));
        for n in 3..=7 {
            assert_eq!(
                min_distortion_line(&metric(&WeightedGraph::cycle(n))).unwrap(),
                int(n as i64 - 1)
            );
        }
        for n in 1..=6 {
            assert_eq!(min_distortion_line(&metric(&WeightedGraph::path(n))).unwrap(), int(1));
        }
        // a weighted triangle can land strictly between integers
        let w = WeightedGraph::from_edges(3, [(0, 1, 2), (1, 2, 2), (0, 2, 3)]).unwrap();
        assert_eq!(min_distortion_line(&metric(&w)).unwrap(), Rational::new(4, 3));
    }

    #[test]
    fn caps() {
        let big = metric(&WeightedGraph::path(10));
        assert_eq!(
            min_distortion_line(&big).unwrap_err(),
            Error::InstanceTooLarge { size: 10, cap: 9 }
        );
        let tree = RootedTree::new(WeightedGraph::path(11), 0).unwrap();
        let g = metric(&WeightedGraph::path(3));
        assert!(matches!(
            brute_force_tree(&g, &tree, 1),
            Err(Error::InstanceTooLarge { .. })
        ));
    }

    #[test]
    fn tree_examples() {
        let star = WeightedGraph::star(3);
        let ms = metric(&star);
        let same = RootedTree::new(star, 0).unwrap();
        assert!(brute_force_tree(&ms, &same, 1).unwrap().is_some());
        let c4 = metric(&WeightedGraph::cycle(4));
        assert!(brute_force_tree(&c4, &same, 1).unwrap().is_none());
        let p7 = RootedTree::new(WeightedGraph::path(7), 0).unwrap();
        assert!(brute_force_tree(&ms, &p7, 2).unwrap().is_none());
        let e = brute_force_tree(&ms, &p7, 3).unwrap().unwrap();
        assert!(check_tree_embedding(&ms, &p7, &e, &int(3)).is_ok());
    }
}
