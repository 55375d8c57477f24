//! Vertex types: what a vertex beyond the ball looks like from the boundary
//! vertices on one side of a tree vertex.

use std::collections::BTreeSet;

use crate::metric::Metric;

use super::partial::UPartialEmbedding;
use super::RootedTree;

/// An integer in `[-(d + 1), 3d + 2]` or infinity. `Finite < Infinite`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum TypeValue {
    Finite(i64),
    Infinite,
}

impl TypeValue {
    fn plus(self, k: i64) -> Self {
        match self {
            TypeValue::Finite(a) => TypeValue::Finite(a + k),
            TypeValue::Infinite => TypeValue::Infinite,
        }
    }
}

/// `β(k) = k` for `k <= 3d + 2`, infinity otherwise.
pub fn beta(k: TypeValue, d: u64) -> TypeValue {
    match k {
        TypeValue::Finite(a) if a <= 3 * d as i64 + 2 => k,
        _ => TypeValue::Infinite,
    }
}

/// A type over a boundary set: `(vertex, value)` sorted by vertex.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct TypeFn {
    values: Vec<(usize, TypeValue)>,
}

impl TypeFn {
    pub fn new(values: impl IntoIterator<Item = (usize, TypeValue)>) -> Self {
        let mut values: Vec<(usize, TypeValue)> = values.into_iter().collect();
        values.sort_unstable();
        Self { values }
    }

    pub fn values(&self) -> &[(usize, TypeValue)] {
        &self.values
    }

    pub fn get(&self, x: usize) -> Option<TypeValue> {
        self.values
            .binary_search_by_key(&x, |&(y, _)| y)
            .ok()
            .map(|i| self.values[i].1)
    }

    pub fn is_empty(&self) -> bool {
        self.values.is_empty()
    }
}

pub type Typelist = BTreeSet<TypeFn>;

/// Some `x` in the domain of `t1` and `y` in the domain of `t2` have
/// `t1(x) + t2(y) >= D_G(x, y)`. Types over an empty boundary agree with
/// everything.
pub fn types_agree(t1: &TypeFn, t2: &TypeFn, mg: &Metric) -> bool {
    if t1.is_empty() || t2.is_empty() {
        return true;
    }
    t1.values.iter().any(|&(x, a)| {
        t2.values.iter().any(|&(y, b)| match (a, b) {
            (TypeValue::Finite(a), TypeValue::Finite(b)) => a + b >= mg.get(x, y) as i64,
            _ => true,
        })
    })
}

/// Every pair across the two lists agrees.
pub fn typelists_agree(l1: &Typelist, l2: &Typelist, mg: &Metric) -> bool {
    l1.iter().all(|t1| l2.iter().all(|t2| types_agree(t1, t2, mg)))
}

/// The type `x` induces on `side`: `y -> D_T(f_u(x), u) - D_G(x, y)`.
pub(crate) fn self_type(mg: &Metric, tree: &RootedTree, f: &UPartialEmbedding, x: usize, side: &[usize]) -> TypeFn {
    let depth = f.depth(tree, x) as i64;
    TypeFn::new(
        side.iter()
            .map(|&y| (y, TypeValue::Finite(depth - mg.get(x, y) as i64))),
    )
}

/// The self types of every vertex of `side`.
pub(crate) fn self_types(mg: &Metric, tree: &RootedTree, f: &UPartialEmbedding, side: &[usize]) -> Typelist {
    side.iter().map(|&x| self_type(mg, tree, f, x, side)).collect()
}

/// Compatibility of `list` with `S[v, f_u]`: the list holds the self type
/// of every boundary vertex.
pub fn typelist_compatible(list: &Typelist, f: &UPartialEmbedding, v: usize, mg: &Metric, tree: &RootedTree) -> bool {
    let side = f.side(tree, v);
    side.iter().all(|&x| list.contains(&self_type(mg, tree, f, x, &side)))
}

/// Moves a type one tree edge further from the vertices it summarizes:
/// shared boundary vertices get `β(t(x) + 1)`, new ones
/// `β(max_y t(y) + 1 - D_G(x, y))`. `None` for a type over an empty
/// boundary, which carries no information.
pub(crate) fn shift_type(t: &TypeFn, target: &[usize], mg: &Metric, d: u64) -> Option<TypeFn> {
    if t.is_empty() {
        return None;
    }
    Some(TypeFn::new(target.iter().map(|&x| {
        let v = match t.get(x) {
            Some(a) => a.plus(1),
            None => t
                .values
                .iter()
                .map(|&(y, a)| a.plus(1 - mg.get(x, y) as i64))
                .max()
                .expect("non-empty type"),
        };
        (x, beta(v, d))
    })))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::graph::WeightedGraph;
    use crate::metric::shortest_path_metric;
    use TypeValue::{Finite, Infinite};

    #[test]
    fn beta_clamps() {
        let d = 2;
        assert_eq!(beta(Finite(8), d), Finite(8));
        assert_eq!(beta(Finite(9), d), Infinite);
        assert_eq!(beta(Finite(0), d), Finite(0));
        assert_eq!(beta(Infinite, d), Infinite);
        assert!(Finite(100) < Infinite);
    }

    #[test]
    fn agreement() {
        let mg = shortest_path_metric(&WeightedGraph::path(3)).unwrap();
        let inf = TypeFn::new([(0, Infinite)]);
        let low = TypeFn::new([(2, Finite(-2))]);
        assert!(types_agree(&inf, &low, &mg));
        let low0 = TypeFn::new([(0, Finite(-2))]);
        assert!(!types_agree(&low0, &low, &mg));
        assert!(types_agree(&TypeFn::new([]), &low, &mg));
        let l1: Typelist = [low0.clone()].into();
        let l2: Typelist = [low.clone(), inf.clone()].into();
        assert!(!typelists_agree(&l1, &l2, &mg));
        assert!(typelists_agree(&[inf].into(), &l2, &mg));
    }

    #[test]
    fn compatibility() {
        let g = WeightedGraph::path(3);
        let mg = shortest_path_metric(&g).unwrap();
        let tree = RootedTree::new(WeightedGraph::path(3), 0).unwrap();
        let f = UPartialEmbedding::new(1, [(0, 0), (1, 1), (2, 2)]);
        // S[0, f] = {0}: self type 0 -> 1 - 0
        assert!(!typelist_compatible(&Typelist::new(), &f, 0, &mg, &tree));
        let l: Typelist = [TypeFn::new([(0, Finite(1))])].into();
        assert!(typelist_compatible(&l, &f, 0, &mg, &tree));
        let empty_side = UPartialEmbedding::new(1, [(1, 1)]);
        assert!(typelist_compatible(&Typelist::new(), &empty_side, 0, &mg, &tree));
    }

    #[test]
    fn shifting() {
        let mg = shortest_path_metric(&WeightedGraph::path(4)).unwrap();
        let t = TypeFn::new([(2, Finite(1)), (3, Finite(0))]);
        let s = shift_type(&t, &[1, 2], &mg, 1).unwrap();
        // 2 is shared: 1 + 1; 1 is new: max(1 + 1 - 1, 0 + 1 - 2)
        assert_eq!(s, TypeFn::new([(1, Finite(1)), (2, Finite(2))]));
        let big = TypeFn::new([(2, Finite(5))]);
        assert_eq!(shift_type(&big, &[2], &mg, 1).unwrap(), TypeFn::new([(2, Infinite)]));
        assert!(shift_type(&TypeFn::new([]), &[1], &mg, 1).is_none());
    }
}
