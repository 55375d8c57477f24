//! The table over `u`-states.
//!
//! A state assignment with arbitrary typelists can always be shrunk to the
//! least lists that satisfy compatibility and the propagation conditions of
//! succession: agreement only gets easier on smaller lists. So the table only
//! holds states whose lists are least, and it is filled in two sweeps:
//!
//! 1. Bottom-up, every tree vertex `u` gets its *up-states*: a feasible
//!    partial embedding `f_u` plus the least lists toward each child, each
//!    list made of the self types on that side and the shifted lists of some
//!    succeeding child up-state. Lists toward different children must agree.
//!    Child up-states yielding the same list are kept together as witnesses.
//! 2. Top-down from the root, the list toward the parent is now determined
//!    (self types plus the shifted lists of the parent's other sides), and a
//!    state is accepted once it agrees with its child lists and some witness
//!    of every child is accepted in turn. Results are memoized on
//!    `(tree vertex, up-state, parent list)`; accepted entries remember the
//!    witness chosen for each child, which drives reconstruction.

use std::collections::{BTreeMap, HashMap};

use crate::error::{Error, Result};
use crate::graph::WeightedGraph;
use crate::metric::{shortest_path_metric, Metric};

use super::partial::{is_feasible_given, is_local_embedding, overlap_key, succeeds_given, Analysis, UPartialEmbedding};
use super::types::{self_types, shift_type, typelists_agree, Typelist};
use super::{RootedTree, TreeEmbedding};

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct TreeDpConfig {
    /// Upper bound on candidate partial embeddings plus up-states.
    pub state_budget: usize,
}

impl Default for TreeDpConfig {
    fn default() -> Self {
        Self {
            state_budget: 2_000_000,
        }
    }
}

#[derive(Debug, Clone, Copy, Default, PartialEq, Eq)]
pub struct TreeDpStats {
    /// Feasible partial embeddings over all tree vertices.
    pub partial_embeddings: usize,
    pub up_states: usize,
    /// Distinct `(tree vertex, up-state, parent list)` entries evaluated.
    pub validated: usize,
    /// Rejected up front: some graph degree exceeds `Δ^d`.
    pub degree_pruned: bool,
}

/// Decides whether the unit-weight graph `g` embeds into `tree` with
/// distortion at most `d`.
pub fn embed_tree(g: &WeightedGraph, tree: &RootedTree, d: u64) -> Result<Option<TreeEmbedding>> {
    embed_tree_with(g, tree, d, &TreeDpConfig::default()).map(|(e, _)| e)
}

pub fn embed_tree_with(
    g: &WeightedGraph,
    tree: &RootedTree,
    d: u64,
    config: &TreeDpConfig,
) -> Result<(Option<TreeEmbedding>, TreeDpStats)> {
    if d == 0 {
        return Err(Error::InvalidArgument("distortion must be at least 1".into()));
    }
    if !g.is_connected() {
        return Err(Error::DisconnectedGraph);
    }
    if !g.is_unit_weight() {
        return Err(Error::NonUnitWeights);
    }
    let mut stats = TreeDpStats::default();
    let n = g.vertex_count();
    if n == 0 {
        return Ok((Some(TreeEmbedding::new(Vec::new())), stats));
    }
    if n > tree.size() {
        return Ok((None, stats));
    }
    // neighbors of x land within distance d of F(x)
    let delta = tree.max_degree() as u128;
    if (g.max_degree() as u128) > delta.saturating_pow(d.min(u32::MAX as u64) as u32) {
        stats.degree_pruned = true;
        return Ok((None, stats));
    }
    let mg = shortest_path_metric(g)?;
    let mut table = Table::new(g, &mg, tree, d, config.state_budget);
    let found = table.run()?;
    stats.partial_embeddings = table.parts.iter().map(Vec::len).sum();
    stats.up_states = table.ups.iter().map(Vec::len).sum();
    stats.validated = table.memo.len();
    Ok((found, stats))
}

struct Part {
    f: UPartialEmbedding,
    analysis: Analysis,
}

struct UpState {
    part: usize,
    /// Least list toward each child, in `tree.children` order.
    child_lists: Vec<Typelist>,
    /// Child up-states producing each list.
    witnesses: Vec<Vec<usize>>,
    /// Some partial embedding in this subtree, as chosen, is nonempty.
    occupied: bool,
}

type MemoKey = (usize, usize, Option<Typelist>);

/// A child's contribution to an up-state: the list it induces and whether
/// its subtree is occupied.
type ChildOption = (Typelist, bool);

struct Table<'a> {
    g: &'a WeightedGraph,
    mg: &'a Metric,
    tree: &'a RootedTree,
    d: u64,
    budget: usize,
    used: usize,
    parts: Vec<Vec<Part>>,
    /// `succ[v][i]`: parts of child `v` succeeding part `i` of its parent.
    succ: Vec<Vec<Vec<usize>>>,
    ups: Vec<Vec<UpState>>,
    ups_by_part: Vec<Vec<Vec<usize>>>,
    /// Accepted entries map to the chosen `(witness, its parent list)` per
    /// child; rejected ones to `None`.
    memo: HashMap<MemoKey, Option<Vec<(usize, Typelist)>>>,
}

impl<'a> Table<'a> {
    fn new(g: &'a WeightedGraph, mg: &'a Metric, tree: &'a RootedTree, d: u64, budget: usize) -> Self {
        let t = tree.size();
        Self {
            g,
            mg,
            tree,
            d,
            budget,
            used: 0,
            parts: Vec::new(),
            succ: vec![Vec::new(); t],
            ups: (0..t).map(|_| Vec::new()).collect(),
            ups_by_part: vec![Vec::new(); t],
            memo: HashMap::new(),
        }
    }

    fn charge(&mut self, k: usize) -> Result<()> {
        self.used += k;
        if self.used > self.budget {
            return Err(Error::ResourceBudgetExceeded(self.budget));
        }
        Ok(())
    }

    fn run(&mut self) -> Result<Option<TreeEmbedding>> {
        for u in 0..self.tree.size() {
            let parts = self.enumerate_parts(u)?;
            self.parts.push(parts);
        }
        for &v in self.tree.preorder() {
            if let Some(u) = self.tree.parent(v) {
                self.succ[v] = self.link(u, v);
            }
        }
        for u in self.tree.postorder() {
            self.build_up_states(u)?;
        }
        let root = self.tree.root();
        // all-empty assignments satisfy every local condition; a connected
        // graph is covered as soon as one partial embedding is nonempty
        for x in 0..self.ups[root].len() {
            if self.ups[root][x].occupied && self.validate(root, x, None) {
                return Ok(Some(self.reconstruct(root, x)));
            }
        }
        Ok(None)
    }

    /// Every feasible partial embedding anchored at `u`, in lexicographic
    /// order of the images of vertices `0, 1, ...` (leaving a vertex out
    /// last), so smaller maps are tried first.
    fn enumerate_parts(&mut self, u: usize) -> Result<Vec<Part>> {
        let ball = self.tree.ball(u, self.d + 1);
        let n = self.g.vertex_count();
        let mut out = Vec::new();
        let mut chosen: Vec<(usize, usize)> = Vec::new();
        let mut used = vec![false; self.tree.size()];
        self.extend_part(u, 0, n, &ball, &mut chosen, &mut used, &mut out)?;
        Ok(out)
    }

    #[allow(clippy::too_many_arguments)]
    fn extend_part(
        &mut self,
        u: usize,
        x: usize,
        n: usize,
        ball: &[usize],
        chosen: &mut Vec<(usize, usize)>,
        used: &mut [bool],
        out: &mut Vec<Part>,
    ) -> Result<()> {
        if x == n {
            self.charge(1)?;
            let f = UPartialEmbedding::new(u, chosen.iter().copied());
            let analysis = Analysis::new(self.g, self.tree, &f);
            if is_feasible_given(self.g, self.tree, &f, &analysis) {
                debug_assert!(is_local_embedding(self.mg, self.tree, &f, self.d));
                out.push(Part { f, analysis });
            }
            return Ok(());
        }
        for &t in ball {
            if used[t] {
                continue;
            }
            let ok = chosen.iter().all(|&(y, ty)| {
                let (dg, dt) = (self.mg.get(x, y), self.tree.dist(t, ty));
                dt >= dg && dt <= self.d * dg
            });
            if !ok {
                continue;
            }
            used[t] = true;
            chosen.push((x, t));
            let r = self.extend_part(u, x + 1, n, ball, chosen, used, out);
            chosen.pop();
            used[t] = false;
            r?;
        }
        self.extend_part(u, x + 1, n, ball, chosen, used, out)
    }

    fn link(&self, u: usize, v: usize) -> Vec<Vec<usize>> {
        let mut index: HashMap<Vec<(usize, usize)>, Vec<usize>> = HashMap::new();
        for (j, p) in self.parts[v].iter().enumerate() {
            index
                .entry(overlap_key(self.tree, &p.f, u, self.d))
                .or_default()
                .push(j);
        }
        self.parts[u]
            .iter()
            .map(|pu| {
                index
                    .get(&overlap_key(self.tree, &pu.f, v, self.d))
                    .map(|cands| {
                        cands
                            .iter()
                            .copied()
                            .filter(|&j| {
                                let pv = &self.parts[v][j];
                                succeeds_given(self.tree, &pv.f, &pv.analysis, &pu.f, &pu.analysis, self.d)
                            })
                            .collect()
                    })
                    .unwrap_or_default()
            })
            .collect()
    }

    /// The least list `f` (anchored at the parent of `v`) needs toward `v`,
    /// given the child up-state `y` of `v`.
    fn list_from_child(&self, f: &Part, v: usize, y: &UpState) -> Typelist {
        let side = f.analysis.side(v);
        if side.is_empty() {
            return Typelist::new();
        }
        let mut list = self_types(self.mg, self.tree, &f.f, side);
        for l in &y.child_lists {
            list.extend(l.iter().filter_map(|t| shift_type(t, side, self.mg, self.d)));
        }
        list
    }

    fn build_up_states(&mut self, u: usize) -> Result<()> {
        let children = self.tree.children(u).to_vec();
        let mut by_part = vec![Vec::new(); self.parts[u].len()];
        let mut ups = Vec::new();
        for (i, pu) in self.parts[u].iter().enumerate() {
            let mut options: Vec<Vec<(ChildOption, Vec<usize>)>> = Vec::with_capacity(children.len());
            for &v in &children {
                let mut grouped: BTreeMap<ChildOption, Vec<usize>> = BTreeMap::new();
                for &j in &self.succ[v][i] {
                    for &y in &self.ups_by_part[v][j] {
                        let up = &self.ups[v][y];
                        let list = self.list_from_child(pu, v, up);
                        grouped.entry((list, up.occupied)).or_default().push(y);
                    }
                }
                if grouped.is_empty() {
                    break;
                }
                options.push(grouped.into_iter().collect());
            }
            if options.len() < children.len() {
                continue;
            }
            let mut pick = Vec::with_capacity(children.len());
            let mut combos = Vec::new();
            self.combine(&options, &mut pick, &mut combos);
            for pick in combos {
                by_part[i].push(ups.len());
                ups.push(UpState {
                    part: i,
                    child_lists: pick
                        .iter()
                        .enumerate()
                        .map(|(c, &k)| options[c][k].0 .0.clone())
                        .collect(),
                    witnesses: pick.iter().enumerate().map(|(c, &k)| options[c][k].1.clone()).collect(),
                    occupied: !pu.f.is_empty() || pick.iter().enumerate().any(|(c, &k)| options[c][k].0 .1),
                });
            }
        }
        self.charge(ups.len())?;
        self.ups[u] = ups;
        self.ups_by_part[u] = by_part;
        Ok(())
    }

    /// All choices of one list per child that pairwise agree.
    fn combine(&self, options: &[Vec<(ChildOption, Vec<usize>)>], pick: &mut Vec<usize>, out: &mut Vec<Vec<usize>>) {
        let c = pick.len();
        if c == options.len() {
            out.push(pick.clone());
            return;
        }
        for (k, ((list, _), _)) in options[c].iter().enumerate() {
            let agrees = pick
                .iter()
                .enumerate()
                .all(|(c2, &k2)| typelists_agree(&options[c2][k2].0 .0, list, self.mg));
            if agrees {
                pick.push(k);
                self.combine(options, pick, out);
                pick.pop();
            }
        }
    }

    /// The least list child part `fw` needs toward its parent `u`, given the
    /// parent's up-state `x` and its own parent list.
    fn list_from_parent(&self, u: usize, x: &UpState, parent_list: Option<&Typelist>, w: usize, fw: &Part) -> Typelist {
        let side = fw.analysis.side(u);
        if side.is_empty() {
            return Typelist::new();
        }
        let mut list = self_types(self.mg, self.tree, &fw.f, side);
        let siblings = self
            .tree
            .children(u)
            .iter()
            .zip(&x.child_lists)
            .filter(|(&z, _)| z != w)
            .map(|(_, l)| l);
        for l in siblings.chain(parent_list) {
            list.extend(l.iter().filter_map(|t| shift_type(t, side, self.mg, self.d)));
        }
        list
    }

    fn validate(&mut self, u: usize, x: usize, parent_list: Option<Typelist>) -> bool {
        let key = (u, x, parent_list);
        if let Some(r) = self.memo.get(&key) {
            return r.is_some();
        }
        let (_, _, parent_list) = &key;
        let up = &self.ups[u][x];
        let agrees = parent_list
            .as_ref()
            .is_none_or(|p| up.child_lists.iter().all(|l| typelists_agree(p, l, self.mg)));
        let mut chosen = Some(Vec::new());
        if agrees {
            let children = self.tree.children(u).to_vec();
            for (c, &w) in children.iter().enumerate() {
                let mut hit = None;
                for k in 0..self.ups[u][x].witnesses[c].len() {
                    let y = self.ups[u][x].witnesses[c][k];
                    let fw = &self.parts[w][self.ups[w][y].part];
                    let list = self.list_from_parent(u, &self.ups[u][x], parent_list.as_ref(), w, fw);
                    if self.validate(w, y, Some(list.clone())) {
                        hit = Some((y, list));
                        break;
                    }
                }
                match hit {
                    Some(h) => chosen.as_mut().unwrap().push(h),
                    None => {
                        chosen = None;
                        break;
                    }
                }
            }
        } else {
            chosen = None;
        }
        let ok = chosen.is_some();
        self.memo.insert(key, chosen);
        ok
    }

    /// Reads `F` off the accepted states: every graph vertex lies in the
    /// domain of some chosen state, and all of them agree on its image.
    fn reconstruct(&self, root: usize, x: usize) -> TreeEmbedding {
        let n = self.g.vertex_count();
        let mut image: Vec<Option<usize>> = vec![None; n];
        let mut stack = vec![(root, x, None::<Typelist>)];
        while let Some((u, x, parent_list)) = stack.pop() {
            let up = &self.ups[u][x];
            for &(v, t) in self.parts[u][up.part].f.pairs() {
                let prev = image[v].replace(t);
                assert!(prev.is_none_or(|p| p == t), "states disagree on the image of {v}");
            }
            let chosen = self.memo[&(u, x, parent_list)].as_ref().expect("accepted entry");
            for (&w, (y, list)) in self.tree.children(u).iter().zip(chosen) {
                stack.push((w, *y, Some(list.clone())));
            }
        }
        TreeEmbedding::new(
            image
                .into_iter()
                .enumerate()
                .map(|(v, t)| t.unwrap_or_else(|| panic!("vertex {v} not covered by any state")))
                .collect(),
        )
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::tree::check_tree_embedding;
    use crate::Rational;

    fn decide(g: &WeightedGraph, t: &WeightedGraph, d: u64) -> bool {
        let tree = RootedTree::new(t.clone(), 0).unwrap();
        let out = embed_tree(g, &tree, d).unwrap();
        if let Some(e) = &out {
            let mg = shortest_path_metric(g).unwrap();
            assert!(check_tree_embedding(&mg, &tree, e, &Rational::from_integer(d as i64)).is_ok());
        }
        out.is_some()
    }

    #[test]
    fn identity_embeddings() {
        assert!(decide(&WeightedGraph::path(5), &WeightedGraph::path(5), 1));
        assert!(decide(&WeightedGraph::star(3), &WeightedGraph::star(3), 1));
    }

    #[test]
    fn star_into_long_path() {
        let star = WeightedGraph::star(3);
        let p7 = WeightedGraph::path(7);
        assert!(!decide(&star, &p7, 2));
        assert!(decide(&star, &p7, 3));
    }

    #[test]
    fn cycle_into_star() {
        assert!(!decide(&WeightedGraph::cycle(4), &WeightedGraph::star(3), 1));
    }

    #[test]
    fn too_many_vertices() {
        assert!(!decide(&WeightedGraph::path(4), &WeightedGraph::path(3), 3));
    }

    #[test]
    fn degree_prune() {
        let tree = RootedTree::new(WeightedGraph::path(9), 0).unwrap();
        let (out, stats) = embed_tree_with(&WeightedGraph::star(3), &tree, 1, &TreeDpConfig::default()).unwrap();
        assert!(out.is_none());
        assert!(stats.degree_pruned);
    }

    #[test]
    fn budget_guard() {
        let tree = RootedTree::new(WeightedGraph::path(6), 0).unwrap();
        let tight = TreeDpConfig { state_budget: 10 };
        assert_eq!(
            embed_tree_with(&WeightedGraph::path(5), &tree, 2, &tight).unwrap_err(),
            Error::ResourceBudgetExceeded(10)
        );
    }

    #[test]
    fn single_vertices() {
        assert!(decide(&WeightedGraph::new(1), &WeightedGraph::new(1), 1));
        assert!(decide(&WeightedGraph::new(1), &WeightedGraph::path(3), 1));
    }
}
