//! `u`-states: a feasible `u`-partial embedding plus one typelist per tree
//! neighbor of `u`.
//!
//! Convention for empty boundaries: when `S[v, f_u]` is empty the only type
//! over it is the empty function, which agrees with everything and summarizes
//! nothing. Such lists are kept empty, and a requirement that the empty type
//! be present in a list over an empty boundary is treated as met.

use crate::graph::WeightedGraph;
use crate::metric::Metric;

use super::partial::{components_toward, is_feasible_upartial, upartial_succeeds, UPartialEmbedding};
use super::types::{beta, shift_type, typelist_compatible, typelists_agree, TypeFn, TypeValue, Typelist};
use super::{RootedTree, TreeEmbedding};

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct UState {
    pub embedding: UPartialEmbedding,
    /// `(neighbor, typelist)` for every tree neighbor of the anchor.
    pub typelists: Vec<(usize, Typelist)>,
}

impl UState {
    pub fn anchor(&self) -> usize {
        self.embedding.anchor()
    }

    pub fn list(&self, v: usize) -> &Typelist {
        &self
            .typelists
            .iter()
            .find(|(w, _)| *w == v)
            .expect("typelist for every tree neighbor")
            .1
    }
}

/// Feasible embedding, every list compatible with its side, and every two
/// lists agreeing.
pub fn is_feasible_state(g: &WeightedGraph, mg: &Metric, tree: &RootedTree, x: &UState, d: u64) -> bool {
    let f = &x.embedding;
    if !is_feasible_upartial(g, mg, tree, f, d) {
        return false;
    }
    let nbrs = tree.neighbors(f.anchor());
    if x.typelists.len() != nbrs.len() || nbrs.iter().any(|v| !x.typelists.iter().any(|(w, _)| w == v)) {
        return false;
    }
    if !x.typelists.iter().all(|(v, l)| typelist_compatible(l, f, *v, mg, tree)) {
        return false;
    }
    x.typelists
        .iter()
        .enumerate()
        .all(|(i, (_, a))| x.typelists[i + 1..].iter().all(|(_, b)| typelists_agree(a, b, mg)))
}

/// Whether `X_v` succeeds `X_u` for a child `v` of `u`: the embeddings
/// succeed, every type `X_v` holds away from `u` reappears, shifted, in
/// `X_u`'s list toward `v`, and every type `X_u` holds away from `v`
/// reappears, shifted, in `X_v`'s list toward `u`.
pub fn state_succeeds(g: &WeightedGraph, mg: &Metric, tree: &RootedTree, xv: &UState, xu: &UState, d: u64) -> bool {
    let (u, v) = (xu.anchor(), xv.anchor());
    if !upartial_succeeds(g, tree, &xv.embedding, &xu.embedding, d) {
        return false;
    }
    propagated(mg, tree, xv, u, xu, d) && propagated(mg, tree, xu, v, xv, d)
}

/// Every type of `from` on a side other than `skip` has its shift in `to`'s
/// list toward `from`'s anchor.
fn propagated(mg: &Metric, tree: &RootedTree, from: &UState, skip: usize, to: &UState, d: u64) -> bool {
    let target = to.embedding.side(tree, from.anchor());
    let list = to.list(from.anchor());
    from.typelists
        .iter()
        .filter(|(w, _)| *w != skip)
        .flat_map(|(_, l)| l.iter())
        .all(|t1| match shift_type(t1, &target, mg, d) {
            None => true,
            Some(_) if target.is_empty() => true,
            Some(t2) => list.contains(&t2),
        })
}

/// The states read off an actual embedding `F`: `f_u` is `F` restricted to
/// the preimage of `B(u, d + 1)`, and the list toward `v` holds the type of
/// every vertex on that side of the boundary or beyond it.
pub fn realized_states(g: &WeightedGraph, mg: &Metric, tree: &RootedTree, e: &TreeEmbedding, d: u64) -> Vec<UState> {
    (0..tree.size())
        .map(|u| {
            let embedding = UPartialEmbedding::new(
                u,
                (0..e.len())
                    .filter(|&x| tree.dist(u, e.image(x)) <= d + 1)
                    .map(|x| (x, e.image(x))),
            );
            let typelists = tree
                .neighbors(u)
                .into_iter()
                .map(|v| {
                    let side = embedding.side(tree, v);
                    let mut beyond = side.clone();
                    beyond.extend(components_toward(g, tree, &embedding, v));
                    let list: Typelist = beyond
                        .iter()
                        .map(|&x| {
                            let depth = tree.dist(e.image(x), u) as i64;
                            TypeFn::new(
                                side.iter()
                                    .map(|&y| (y, beta(TypeValue::Finite(depth - mg.get(x, y) as i64), d))),
                            )
                        })
                        .filter(|t| !t.is_empty())
                        .collect();
                    (v, list)
                })
                .collect();
            UState { embedding, typelists }
        })
        .collect()
}
