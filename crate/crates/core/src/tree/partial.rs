//! `u`-partial embeddings: maps of a vertex subset into the radius-`(d + 1)`
//! ball around a tree vertex `u`.

use crate::graph::WeightedGraph;
use crate::metric::Metric;

use super::RootedTree;

#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct UPartialEmbedding {
    anchor: usize,
    /// `(graph vertex, tree vertex)` sorted by graph vertex.
    map: Vec<(usize, usize)>,
}

impl UPartialEmbedding {
    pub fn new(anchor: usize, pairs: impl IntoIterator<Item = (usize, usize)>) -> Self {
        let mut map: Vec<(usize, usize)> = pairs.into_iter().collect();
        map.sort_unstable();
        Self { anchor, map }
    }

    pub fn anchor(&self) -> usize {
        self.anchor
    }

    pub fn pairs(&self) -> &[(usize, usize)] {
        &self.map
    }

    /// The domain `S`, sorted.
    pub fn domain(&self) -> Vec<usize> {
        self.map.iter().map(|&(x, _)| x).collect()
    }

    pub fn len(&self) -> usize {
        self.map.len()
    }

    pub fn is_empty(&self) -> bool {
        self.map.is_empty()
    }

    pub fn image(&self, x: usize) -> Option<usize> {
        self.map
            .binary_search_by_key(&x, |&(y, _)| y)
            .ok()
            .map(|i| self.map[i].1)
    }

    pub fn contains(&self, x: usize) -> bool {
        self.image(x).is_some()
    }

    /// Tree distance from the anchor to the image of `x`.
    pub fn depth(&self, tree: &RootedTree, x: usize) -> u64 {
        tree.dist(self.anchor, self.image(x).expect("x in domain"))
    }

    /// `S[v, f_u]`: domain vertices mapped into the side of `v`.
    pub fn side(&self, tree: &RootedTree, v: usize) -> Vec<usize> {
        self.map
            .iter()
            .filter(|&&(_, t)| tree.toward(self.anchor, v, t))
            .map(|&(x, _)| x)
            .collect()
    }

    /// `S^[lo, hi]`: domain vertices whose image is at distance `lo..=hi`
    /// from the anchor.
    pub fn layer(&self, tree: &RootedTree, lo: u64, hi: u64) -> Vec<usize> {
        self.map
            .iter()
            .filter(|&&(_, t)| (lo..=hi).contains(&tree.dist(self.anchor, t)))
            .map(|&(x, _)| x)
            .collect()
    }

    /// `S^k[v, f_u]`.
    pub fn layer_toward(&self, tree: &RootedTree, v: usize, k: u64) -> Vec<usize> {
        self.map
            .iter()
            .filter(|&&(_, t)| tree.dist(self.anchor, t) == k && tree.toward(self.anchor, v, t))
            .map(|&(x, _)| x)
            .collect()
    }
}

/// Component id of every vertex outside `S`; `usize::MAX` inside.
fn outside_components(g: &WeightedGraph, f: &UPartialEmbedding) -> Vec<usize> {
    let n = g.vertex_count();
    let mut comp = vec![usize::MAX; n];
    let mut next = 0;
    for s in 0..n {
        if f.contains(s) || comp[s] != usize::MAX {
            continue;
        }
        comp[s] = next;
        let mut stack = vec![s];
        while let Some(x) = stack.pop() {
            for &(y, _) in g.neighbors(x) {
                if comp[y] == usize::MAX && !f.contains(y) {
                    comp[y] = next;
                    stack.push(y);
                }
            }
        }
        next += 1;
    }
    comp
}

fn union_of_components_near(g: &WeightedGraph, comp: &[usize], near: &[usize]) -> Vec<usize> {
    let mut ids: Vec<usize> = near
        .iter()
        .flat_map(|&x| g.neighbors(x).iter().map(|&(y, _)| comp[y]))
        .filter(|&c| c != usize::MAX)
        .collect();
    ids.sort_unstable();
    ids.dedup();
    (0..comp.len())
        .filter(|&x| comp[x] != usize::MAX && ids.binary_search(&comp[x]).is_ok())
        .collect()
}

/// `M[v, f_u]`: vertices of the components of `G - S` with a neighbor in
/// `S[v, f_u]`, sorted.
pub fn components_toward(g: &WeightedGraph, tree: &RootedTree, f: &UPartialEmbedding, v: usize) -> Vec<usize> {
    let comp = outside_components(g, f);
    union_of_components_near(g, &comp, &f.side(tree, v))
}

/// Per-neighbor sides and attached components of one partial embedding,
/// computed once and shared by the feasibility and succession checks.
#[derive(Debug, Clone)]
pub(crate) struct Analysis {
    pub neighbors: Vec<usize>,
    pub sides: Vec<Vec<usize>>,
    pub attached: Vec<Vec<usize>>,
}

impl Analysis {
    pub fn new(g: &WeightedGraph, tree: &RootedTree, f: &UPartialEmbedding) -> Self {
        let neighbors = tree.neighbors(f.anchor);
        let comp = outside_components(g, f);
        let sides: Vec<Vec<usize>> = neighbors.iter().map(|&v| f.side(tree, v)).collect();
        let attached = sides.iter().map(|s| union_of_components_near(g, &comp, s)).collect();
        Self {
            neighbors,
            sides,
            attached,
        }
    }

    fn index(&self, v: usize) -> usize {
        self.neighbors.iter().position(|&x| x == v).expect("tree neighbor")
    }

    pub fn side(&self, v: usize) -> &[usize] {
        &self.sides[self.index(v)]
    }

    pub fn attached(&self, v: usize) -> &[usize] {
        &self.attached[self.index(v)]
    }
}

fn sorted_disjoint(a: &[usize], b: &[usize]) -> bool {
    a.iter().all(|x| b.binary_search(x).is_err())
}

/// Distortion conditions only: images inside `B(u, d + 1)`, and
/// `D_G <= D_T <= d D_G` on every pair of the domain.
pub(crate) fn is_local_embedding(mg: &Metric, tree: &RootedTree, f: &UPartialEmbedding, d: u64) -> bool {
    let pairs = f.pairs();
    pairs.iter().all(|&(_, t)| tree.dist(f.anchor, t) <= d + 1)
        && pairs.iter().enumerate().all(|(i, &(x, tx))| {
            pairs[i + 1..].iter().all(|&(y, ty)| {
                let (dg, dt) = (mg.get(x, y), tree.dist(tx, ty));
                dt >= dg && dt <= d * dg
            })
        })
}

/// The three feasibility conditions: distortion within the ball, attached
/// components of distinct neighbors disjoint, and every graph neighbor of a
/// vertex mapped onto the anchor itself in the domain.
pub fn is_feasible_upartial(g: &WeightedGraph, mg: &Metric, tree: &RootedTree, f: &UPartialEmbedding, d: u64) -> bool {
    is_local_embedding(mg, tree, f, d) && is_feasible_given(g, tree, f, &Analysis::new(g, tree, f))
}

pub(crate) fn is_feasible_given(g: &WeightedGraph, tree: &RootedTree, f: &UPartialEmbedding, a: &Analysis) -> bool {
    for i in 0..a.attached.len() {
        for j in i + 1..a.attached.len() {
            if !sorted_disjoint(&a.attached[i], &a.attached[j]) {
                return false;
            }
        }
    }
    f.layer(tree, 0, 0)
        .into_iter()
        .all(|x| g.neighbors(x).iter().all(|&(y, _)| f.contains(y)))
}

/// Whether `f_v` succeeds `f_u` for a child `v` of `u`:
///
/// 1. the shared domain is exactly what each side holds within distance `d`
///    of its anchor plus its outer layer facing the other anchor;
/// 2. shared vertices have the same image;
/// 3. the components `f_u` sees toward `v` split, disjointly, into what
///    `f_v` sees toward each of its other neighbors plus `f_v`'s outer layer
///    there;
/// 4. symmetrically for the components `f_v` sees toward `u`.
pub fn upartial_succeeds(
    g: &WeightedGraph,
    tree: &RootedTree,
    f_v: &UPartialEmbedding,
    f_u: &UPartialEmbedding,
    d: u64,
) -> bool {
    let au = Analysis::new(g, tree, f_u);
    let av = Analysis::new(g, tree, f_v);
    succeeds_given(tree, f_v, &av, f_u, &au, d)
}

/// Restriction of `f` (anchored at `u`) to what it must share with the
/// partial embedding anchored at the neighbor `v`.
pub(crate) fn overlap_key(tree: &RootedTree, f: &UPartialEmbedding, v: usize, d: u64) -> Vec<(usize, usize)> {
    let u = f.anchor;
    f.pairs()
        .iter()
        .copied()
        .filter(|&(_, t)| {
            let k = tree.dist(u, t);
            k <= d || (k == d + 1 && tree.toward(u, v, t))
        })
        .collect()
}

pub(crate) fn succeeds_given(
    tree: &RootedTree,
    f_v: &UPartialEmbedding,
    av: &Analysis,
    f_u: &UPartialEmbedding,
    au: &Analysis,
    d: u64,
) -> bool {
    let (u, v) = (f_u.anchor, f_v.anchor);
    debug_assert_eq!(tree.parent(v), Some(u));
    // conditions 1 and 2
    let key_u = overlap_key(tree, f_u, v, d);
    if key_u != overlap_key(tree, f_v, u, d) {
        return false;
    }
    let shared = f_u.domain().into_iter().filter(|&x| f_v.contains(x)).count();
    if shared != key_u.len() {
        return false;
    }
    split_matches(tree, au.attached(v), f_v, av, u, d) && split_matches(tree, av.attached(u), f_u, au, v, d)
}

/// `whole == ⊎_{x in N(anchor) - skip} (M[x, f] ⊎ S^{d+1}[x, f])`.
fn split_matches(tree: &RootedTree, whole: &[usize], f: &UPartialEmbedding, a: &Analysis, skip: usize, d: u64) -> bool {
    let mut parts: Vec<usize> = Vec::new();
    for (i, &x) in a.neighbors.iter().enumerate() {
        if x == skip {
            continue;
        }
        parts.extend_from_slice(&a.attached[i]);
        parts.extend(f.layer_toward(tree, x, d + 1));
    }
    parts.sort_unstable();
    parts.windows(2).all(|w| w[0] != w[1]) && parts == whole
}
