//! Graph families shared by the integration tests.
#![allow(dead_code)]

use lowdist::WeightedGraph;
use rand::rngs::StdRng;
use rand::seq::SliceRandom;
use rand::{Rng, SeedableRng};

pub fn rng(seed: u64) -> StdRng {
    StdRng::seed_from_u64(seed)
}

fn pairs(n: usize) -> Vec<(usize, usize)> {
    (0..n).flat_map(|u| (u + 1..n).map(move |v| (u, v))).collect()
}

fn from_mask(n: usize, mask: u64, pairs: &[(usize, usize)]) -> WeightedGraph {
    WeightedGraph::unweighted(
        n,
        pairs
            .iter()
            .enumerate()
            .filter(|(i, _)| mask >> i & 1 == 1)
            .map(|(_, &e)| e),
    )
    .unwrap()
}

fn permutations(n: usize) -> Vec<Vec<usize>> {
    if n == 0 {
        return vec![Vec::new()];
    }
    let mut out = Vec::new();
    for p in permutations(n - 1) {
        for i in 0..n {
            let mut q = p.clone();
            q.insert(i, n - 1);
            out.push(q);
        }
    }
    out
}

/// One representative per isomorphism class of connected graphs on `n`
/// vertices (`n <= 6`).
pub fn connected_graphs(n: usize) -> Vec<WeightedGraph> {
    assert!(n <= 6);
    let pairs = pairs(n);
    let index = |u: usize, v: usize| pairs.iter().position(|&e| e == (u.min(v), u.max(v))).unwrap();
    let perms = permutations(n);
    let images: Vec<Vec<usize>> = perms
        .iter()
        .map(|p| pairs.iter().map(|&(u, v)| index(p[u], p[v])).collect())
        .collect();
    let mut seen = std::collections::HashSet::new();
    let mut out = Vec::new();
    for mask in 0u64..1 << pairs.len() {
        let canon = images
            .iter()
            .map(|img| {
                img.iter()
                    .enumerate()
                    .filter(|(i, _)| mask >> i & 1 == 1)
                    .map(|(_, &j)| 1u64 << j)
                    .sum::<u64>()
            })
            .min()
            .unwrap();
        if !seen.insert(canon) {
            continue;
        }
        let g = from_mask(n, mask, &pairs);
        if g.is_connected() {
            out.push(g);
        }
    }
    out
}

/// A random connected graph: a random spanning tree plus each other pair
/// with probability `p`, weights uniform in `1..=max_weight`, randomly
/// relabeled.
pub fn random_connected(rng: &mut StdRng, n: usize, p: f64, max_weight: u64) -> WeightedGraph {
    let mut perm: Vec<usize> = (0..n).collect();
    perm.shuffle(rng);
    let mut g = WeightedGraph::new(n);
    for v in 1..n {
        let u = rng.gen_range(0..v);
        g.add_edge(perm[u], perm[v], rng.gen_range(1..=max_weight)).unwrap();
    }
    for (u, v) in pairs(n) {
        if !g.has_edge(u, v) && rng.gen_bool(p) {
            g.add_edge(u, v, rng.gen_range(1..=max_weight)).unwrap();
        }
    }
    g
}

/// A random unit-weight tree on `n` vertices with maximum degree at most
/// `max_degree`.
pub fn random_tree(rng: &mut StdRng, n: usize, max_degree: usize) -> WeightedGraph {
    let mut g = WeightedGraph::new(n);
    for v in 1..n {
        let open: Vec<usize> = (0..v).filter(|&u| g.degree(u) < max_degree).collect();
        let u = *open.choose(rng).unwrap();
        g.add_edge(u, v, 1).unwrap();
    }
    g
}

/// Paths, cycles, stars, complete graphs and a few named graphs.
pub fn named_graphs() -> Vec<(String, WeightedGraph)> {
    let mut out = Vec::new();
    for n in 1..=7 {
        out.push((format!("P{n}"), WeightedGraph::path(n)));
    }
    for n in 3..=7 {
        out.push((format!("C{n}"), WeightedGraph::cycle(n)));
    }
    for k in 2..=5 {
        out.push((format!("K1,{k}"), WeightedGraph::star(k)));
    }
    for n in 2..=5 {
        out.push((format!("K{n}"), WeightedGraph::complete(n)));
    }
    let bull = WeightedGraph::unweighted(5, [(0, 1), (1, 2), (0, 2), (1, 3), (2, 4)]).unwrap();
    out.push(("bull".into(), bull));
    out
}
