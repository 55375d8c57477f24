//! Feasible partial embeddings ("windows") and the succession relation
//! between them.
//!
//! A window maps a vertex subset `S` into the cells `-h..=h`. It is stored
//! canonically as its occupied cells in increasing position; since
//! consecutive occupants of a feasible window sit exactly their metric
//! distance apart, this is the same information as the pair (offset of the
//! leftmost occupant, vertex sequence).

use std::collections::{HashMap, VecDeque};

use crate::graph::WeightedGraph;
use crate::metric::{Distances, Metric};

use super::LineEmbedding;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub struct WindowParams {
    /// Integer distortion bound.
    pub d: u64,
    /// Cells run over `-half..=half`.
    pub half: i64,
}

impl WindowParams {
    pub fn unweighted(d: u64) -> Self {
        Self { d, half: d as i64 + 1 }
    }

    /// Window for maximum edge weight `max_weight`: `half = d * W + 1`.
    pub fn weighted(d: u64, max_weight: u64) -> Self {
        Self {
            d,
            half: (d * max_weight) as i64 + 1,
        }
    }

    /// Largest metric gap allowed between consecutive occupants.
    pub fn max_gap(&self) -> u64 {
        (self.half - 1) as u64
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct WindowEmbedding {
    cells: Vec<(i64, usize)>,
}

impl WindowEmbedding {
    /// Builds a window from `(vertex, position)` pairs in any order.
    pub fn from_pairs(pairs: impl IntoIterator<Item = (usize, i64)>) -> Self {
        let mut cells: Vec<(i64, usize)> = pairs.into_iter().map(|(v, p)| (p, v)).collect();
        cells.sort_unstable();
        Self { cells }
    }

    pub(crate) fn from_sorted_cells(cells: Vec<(i64, usize)>) -> Self {
        debug_assert!(cells.windows(2).all(|w| w[0].0 < w[1].0));
        Self { cells }
    }

    /// The pushing window whose leftmost occupant `sequence[0]` sits at
    /// `-half + offset`. `None` if some position leaves the window or a
    /// distance is unknown.
    pub fn from_sequence(dist: &impl Distances, params: WindowParams, offset: i64, sequence: &[usize]) -> Option<Self> {
        let mut pos = -params.half + offset;
        let mut cells = Vec::with_capacity(sequence.len());
        for (i, &v) in sequence.iter().enumerate() {
            if i > 0 {
                pos += dist.dist(sequence[i - 1], v)? as i64;
            }
            if pos.abs() > params.half {
                return None;
            }
            cells.push((pos, v));
        }
        Some(Self { cells })
    }

    /// `(position, vertex)` in increasing position.
    pub fn cells(&self) -> &[(i64, usize)] {
        &self.cells
    }

    pub fn len(&self) -> usize {
        self.cells.len()
    }

    pub fn is_empty(&self) -> bool {
        self.cells.is_empty()
    }

    /// Offset `t` with `f(v_0) = -half + t`.
    pub fn offset(&self, params: WindowParams) -> Option<i64> {
        self.cells.first().map(|&(p, _)| p + params.half)
    }

    pub fn sequence(&self) -> Vec<usize> {
        self.cells.iter().map(|&(_, v)| v).collect()
    }

    pub fn contains(&self, v: usize) -> bool {
        self.cells.iter().any(|&(_, x)| x == v)
    }

    pub fn position_of(&self, v: usize) -> Option<i64> {
        self.cells.iter().find(|&&(_, x)| x == v).map(|&(p, _)| p)
    }

    pub fn at(&self, pos: i64) -> Option<usize> {
        self.cells.iter().find(|&&(p, _)| p == pos).map(|&(_, v)| v)
    }

    /// Vertices placed in `lo..=hi`, sorted by id.
    pub fn vertices_in(&self, lo: i64, hi: i64) -> Vec<usize> {
        let mut out: Vec<usize> = self
            .cells
            .iter()
            .filter(|&&(p, _)| lo <= p && p <= hi)
            .map(|&(_, v)| v)
            .collect();
        out.sort_unstable();
        out
    }

    /// Domain, sorted by id.
    pub fn domain(&self) -> Vec<usize> {
        let mut d = self.sequence();
        d.sort_unstable();
        d
    }

    /// Every position decreased by one; the occupant of `-half` is dropped.
    pub fn shifted(&self, params: WindowParams) -> (Self, Option<usize>) {
        let dropped = self.at(-params.half);
        let cells = self
            .cells
            .iter()
            .filter(|&&(p, _)| p > -params.half)
            .map(|&(p, v)| (p - 1, v))
            .collect();
        (Self { cells }, dropped)
    }

    pub(crate) fn with_cell(&self, pos: i64, v: usize) -> Self {
        let mut cells = self.cells.clone();
        cells.push((pos, v));
        Self { cells }
    }
}

/// `L(f)` and `R(f)`: vertices of the components of `G - S` attached to the
/// left half (`[-h, -1]`) resp. the right half (`[1, h]`) of the window.
#[derive(Debug, Clone, PartialEq, Eq, Default)]
pub struct FeasibilitySides {
    pub left: Vec<usize>,
    pub right: Vec<usize>,
}

impl FeasibilitySides {
    pub fn disjoint(&self) -> bool {
        sorted_disjoint(&self.left, &self.right)
    }
}

fn sorted_disjoint(a: &[usize], b: &[usize]) -> bool {
    let (mut i, mut j) = (0, 0);
    while i < a.len() && j < b.len() {
        match a[i].cmp(&b[j]) {
            std::cmp::Ordering::Less => i += 1,
            std::cmp::Ordering::Greater => j += 1,
            std::cmp::Ordering::Equal => return false,
        }
    }
    true
}

pub fn compute_sides(g: &WeightedGraph, w: &WindowEmbedding) -> FeasibilitySides {
    let n = g.vertex_count();
    let mut pos: Vec<Option<i64>> = vec![None; n];
    for &(p, v) in w.cells() {
        pos[v] = Some(p);
    }
    let mut comp = vec![usize::MAX; n];
    let mut sides = FeasibilitySides::default();
    let mut next = 0;
    for s in 0..n {
        if pos[s].is_some() || comp[s] != usize::MAX {
            continue;
        }
        let (mut members, mut left, mut right) = (Vec::new(), false, false);
        comp[s] = next;
        let mut queue = VecDeque::from([s]);
        while let Some(x) = queue.pop_front() {
            members.push(x);
            for &(y, _) in g.neighbors(x) {
                match pos[y] {
                    Some(p) if p < 0 => left = true,
                    Some(p) if p > 0 => right = true,
                    Some(_) => {}
                    None if comp[y] == usize::MAX => {
                        comp[y] = next;
                        queue.push_back(y);
                    }
                    None => {}
                }
            }
        }
        if left {
            sides.left.extend_from_slice(&members);
        }
        if right {
            sides.right.extend(members);
        }
        next += 1;
    }
    sides.left.sort_unstable();
    sides.right.sort_unstable();
    sides
}

/// Conditions on the window contents alone: cells inside the window,
/// injective, pairwise non-contracting with expansion at most `d`, and
/// consecutive occupants pushing each other.
pub(crate) fn window_is_consistent(dist: &impl Distances, w: &WindowEmbedding, params: WindowParams) -> bool {
    let cells = w.cells();
    if cells.iter().any(|&(p, _)| p.abs() > params.half) {
        return false;
    }
    for (i, &(p, u)) in cells.iter().enumerate() {
        for &(q, v) in &cells[i + 1..] {
            if p == q || u == v {
                return false;
            }
            let Some(dv) = dist.dist(u, v) else {
                return false;
            };
            let gap = p.abs_diff(q);
            if gap < dv || gap > params.d * dv {
                return false;
            }
        }
    }
    cells
        .windows(2)
        .all(|c| c[1].0 - c[0].0 <= 1 || dist.dist(c[0].1, c[1].1) == Some((c[1].0 - c[0].0) as u64))
}

/// Every graph neighbor of the occupant of cell 0 lies in the window.
pub(crate) fn center_closed(g: &WeightedGraph, w: &WindowEmbedding) -> bool {
    match w.at(0) {
        Some(c) => g.neighbors(c).iter().all(|&(y, _)| w.contains(y)),
        None => true,
    }
}

/// All six window conditions.
pub fn is_feasible(m: &Metric, g: &WeightedGraph, w: &WindowEmbedding, params: WindowParams) -> bool {
    if !window_is_consistent(m, w, params) || !center_closed(g, w) {
        return false;
    }
    let sides = compute_sides(g, w);
    if !sides.disjoint() {
        return false;
    }
    if sides.right.is_empty() && w.at(params.half).is_none() {
        return false;
    }
    if sides.left.is_empty() && w.at(-params.half).is_none() {
        return false;
    }
    true
}

/// Whether `next` succeeds `f`: `next` is `f` shifted one cell left (the
/// occupant of `-h` leaving), possibly with a new occupant of `h` taken from
/// `R(f)`, and `f`'s departing vertex lands in `L(next)`.
pub fn succeeds(g: &WeightedGraph, f: &WindowEmbedding, next: &WindowEmbedding, params: WindowParams) -> bool {
    let h = params.half;
    let shared_f = f.vertices_in(-h + 1, h);
    let shared_g = next.vertices_in(-h, h - 1);
    let fd = f.domain();
    let intersection: Vec<usize> = next
        .domain()
        .into_iter()
        .filter(|v| fd.binary_search(v).is_ok())
        .collect();
    if shared_f != shared_g || shared_f != intersection {
        return false;
    }
    if intersection
        .iter()
        .any(|&v| f.position_of(v) != next.position_of(v).map(|p| p + 1))
    {
        return false;
    }
    if let Some(x) = next.at(h) {
        if compute_sides(g, f).right.binary_search(&x).is_err() {
            return false;
        }
    }
    if let Some(a) = f.at(-h) {
        if compute_sides(g, next).left.binary_search(&a).is_err() {
            return false;
        }
    }
    true
}

/// Shifted copies of `f`, extended by every vertex that can occupy the new
/// rightmost cell (sorted by id), followed by the plain shift. A new occupant
/// must be outside `f`, at metric distance exactly its gap to the rightmost
/// remaining occupant, with that gap at most `h - 1`.
pub fn successor_candidates(dist: &impl Distances, f: &WindowEmbedding, params: WindowParams) -> Vec<WindowEmbedding> {
    let (shifted, _) = f.shifted(params);
    let Some(&(last_pos, last)) = shifted.cells().last() else {
        return Vec::new();
    };
    let gap = (params.half - last_pos) as u64;
    let mut out = Vec::new();
    if gap >= 1 && gap <= params.max_gap() {
        for (x, dx) in dist.ball_of(last, gap) {
            if dx == gap && !f.contains(x) {
                out.push(shifted.with_cell(params.half, x));
            }
        }
    }
    out.push(shifted);
    out
}

/// Visits every pushing window (leftmost occupant in `-h..=-1`, consecutive
/// gaps at most `h - 1`) in order of first vertex, offset, then sequence.
pub(crate) fn for_each_pushing_window(
    dist: &impl Distances,
    n: usize,
    params: WindowParams,
    starts: std::ops::RangeInclusive<i64>,
    mut visit: impl FnMut(&WindowEmbedding) -> bool,
) -> bool {
    fn extend(
        dist: &impl Distances,
        params: WindowParams,
        cells: &mut Vec<(i64, usize)>,
        visit: &mut impl FnMut(&WindowEmbedding) -> bool,
    ) -> bool {
        let w = WindowEmbedding::from_sorted_cells(cells.clone());
        if visit(&w) {
            return true;
        }
        let &(pos, last) = cells.last().unwrap();
        let room = (params.half - pos) as u64;
        for (x, dx) in dist.ball_of(last, room.min(params.max_gap())) {
            if cells.iter().any(|&(_, y)| y == x) {
                continue;
            }
            cells.push((pos + dx as i64, x));
            let stop = extend(dist, params, cells, visit);
            cells.pop();
            if stop {
                return true;
            }
        }
        false
    }
    for v0 in 0..n {
        for start in starts.clone() {
            let mut cells = vec![(start, v0)];
            if extend(dist, params, &mut cells, &mut visit) {
                return true;
            }
        }
    }
    false
}

/// Every feasible window, in enumeration order.
pub fn enumerate_feasible(m: &Metric, g: &WeightedGraph, params: WindowParams) -> Vec<WindowEmbedding> {
    let mut out = Vec::new();
    for_each_pushing_window(m, g.vertex_count(), params, -params.half..=-1, |w| {
        if is_feasible(m, g, w, params) {
            out.push(w.clone());
        }
        false
    });
    out
}

pub fn count_feasible(m: &Metric, g: &WeightedGraph, params: WindowParams) -> usize {
    enumerate_feasible(m, g, params).len()
}

/// The explicit succession digraph over all feasible windows. Only meant
/// for small graphs; [`super::search`] explores the same relation lazily.
#[derive(Debug, Clone)]
pub struct SuccessionDigraph {
    pub params: WindowParams,
    pub nodes: Vec<WindowEmbedding>,
    pub sides: Vec<FeasibilitySides>,
    pub edges: Vec<Vec<usize>>,
}

impl SuccessionDigraph {
    pub fn build(m: &Metric, g: &WeightedGraph, params: WindowParams) -> Self {
        let nodes = enumerate_feasible(m, g, params);
        let index: HashMap<&WindowEmbedding, usize> = nodes.iter().enumerate().map(|(i, w)| (w, i)).collect();
        let sides = nodes.iter().map(|w| compute_sides(g, w)).collect();
        let edges = nodes
            .iter()
            .map(|f| {
                successor_candidates(m, f, params)
                    .iter()
                    .filter_map(|next| index.get(next).copied())
                    .filter(|&j| succeeds(g, f, &nodes[j], params))
                    .collect()
            })
            .collect();
        Self {
            params,
            nodes,
            sides,
            edges,
        }
    }

    pub fn edge_count(&self) -> usize {
        self.edges.iter().map(Vec::len).sum()
    }

    /// Searches for a path from a window with empty left side to one with
    /// empty right side and glues it into a line embedding. A window that
    /// already holds every vertex is accepted on its own.
    pub fn decide(&self, m: &Metric, g: &WeightedGraph) -> Option<LineEmbedding> {
        let n = g.vertex_count();
        if n == 1 {
            return Some(LineEmbedding::new(vec![0]));
        }
        if let Some(e) = single_window_embedding(m, g, self.params) {
            return Some(e);
        }
        let mut parent = vec![usize::MAX; self.nodes.len()];
        let mut queue = VecDeque::new();
        for (i, s) in self.sides.iter().enumerate() {
            if s.left.is_empty() {
                parent[i] = i;
                queue.push_back(i);
            }
        }
        while let Some(i) = queue.pop_front() {
            if self.sides[i].right.is_empty() {
                let mut path = vec![i];
                while parent[*path.last().unwrap()] != *path.last().unwrap() {
                    path.push(parent[*path.last().unwrap()]);
                }
                path.reverse();
                let windows: Vec<&WindowEmbedding> = path.iter().map(|&k| &self.nodes[k]).collect();
                return Some(glue(n, &windows));
            }
            for &j in &self.edges[i] {
                if parent[j] == usize::MAX {
                    parent[j] = i;
                    queue.push_back(j);
                }
            }
        }
        None
    }
}

/// A pushing layout of all vertices that fits inside one window, if any.
/// Covers embeddings too short to have both extreme cells occupied.
pub(crate) fn single_window_embedding(
    dist: &impl Distances,
    g: &WeightedGraph,
    params: WindowParams,
) -> Option<LineEmbedding> {
    let n = g.vertex_count();
    let mut found = None;
    for_each_pushing_window(dist, n, params, -params.half..=-params.half, |w| {
        if w.len() == n && window_is_consistent(dist, w, params) {
            found = Some(glue(n, &[w]));
            return true;
        }
        false
    });
    found
}

/// `f(v) = f_i(v) + i` over a succession path, translated to start at 0.
pub(crate) fn glue(n: usize, windows: &[&WindowEmbedding]) -> LineEmbedding {
    let mut positions = vec![None; n];
    for (i, w) in windows.iter().enumerate() {
        for &(p, v) in w.cells() {
            let glued = p + i as i64;
            debug_assert!(positions[v].is_none_or(|q| q == glued));
            positions[v] = Some(glued);
        }
    }
    let positions: Vec<i64> = positions
        .into_iter()
        .map(|p| p.expect("succession path covers every vertex"))
        .collect();
    LineEmbedding::new(positions).normalized()
}
