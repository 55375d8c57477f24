//! Forward search over the succession relation.
//!
//! Along any succession path the left side of a window is exactly the set of
//! vertices that have already left it, and the right side is everything not
//! yet placed. With that invariant every feasibility condition becomes local
//! to the window:
//!
//! * a vertex only reaches the left half by passing through cell 0, and the
//!   occupant of cell 0 must have all its neighbors inside the window, so no
//!   placed-and-gone vertex ever touches an unplaced one;
//! * a new occupant of the rightmost cell is drawn from the unplaced vertices
//!   and checked against the current occupants only, since an edge can never
//!   span more than a window.
//!
//! A window therefore determines the set of placed vertices, so windows can
//! be memoized globally and each one is expanded at most once. Since the
//! expansion of a graph metric is attained on an edge, and every edge is
//! checked inside some window, a search that places every vertex has found a
//! valid embedding; it is accepted even when the last window does not reach
//! the rightmost cell.

use std::collections::HashSet;

use crate::error::{Error, Result};
use crate::graph::WeightedGraph;
use crate::metric::{BoundedBalls, Distances};

use super::window::{successor_candidates, WindowEmbedding, WindowParams};
use super::LineEmbedding;

/// Counters reported by a search run.
#[derive(Debug, Clone, Copy, Default, PartialEq, Eq)]
pub struct SearchStats {
    /// Source windows (empty left side) that were searched from.
    pub sources: usize,
    /// Windows expanded, sources included.
    pub expanded: usize,
    /// Set when the instance was rejected without searching.
    pub pruned: bool,
}

/// Decides whether the unit-weight graph `g` embeds into the line with
/// distortion at most `d`, returning an embedding normalized to start at 0.
pub fn embed_line(g: &WeightedGraph, d: u64) -> Result<Option<LineEmbedding>> {
    if !g.is_unit_weight() {
        return Err(Error::NonUnitWeights);
    }
    Ok(search(g, d, WindowParams::unweighted(d))?.0)
}

/// Weighted variant: the window half-width grows to `d W + 1`.
pub fn embed_line_weighted(g: &WeightedGraph, d: u64) -> Result<Option<LineEmbedding>> {
    Ok(search(g, d, WindowParams::weighted(d, g.max_weight()))?.0)
}

/// The search behind [`embed_line`] and [`embed_line_weighted`], exposing
/// its counters.
pub fn search(g: &WeightedGraph, d: u64, params: WindowParams) -> Result<(Option<LineEmbedding>, SearchStats)> {
    if d == 0 {
        return Err(Error::InvalidArgument("distortion must be at least 1".into()));
    }
    if !g.is_connected() {
        return Err(Error::DisconnectedGraph);
    }
    let n = g.vertex_count();
    let mut stats = SearchStats::default();
    if n <= 1 {
        return Ok((Some(LineEmbedding::new(vec![0; n])), stats));
    }
    // Every vertex has at most d W neighbors to its right, the last one none.
    let max_right = params.max_gap() as u128;
    if g.edge_count() as u128 >= n as u128 * max_right {
        stats.pruned = true;
        return Ok((None, stats));
    }
    let balls = BoundedBalls::new(g, 2 * params.half as u64);
    if balls.density_exceeds(d) {
        stats.pruned = true;
        return Ok((None, stats));
    }
    let mut search = Search {
        g,
        dist: &balls,
        params,
        placed: vec![false; n],
        placed_count: 0,
        position: vec![0; n],
        visited: HashSet::new(),
        stats,
    };
    let found = search.run();
    let stats = search.stats;
    Ok((found.then(|| LineEmbedding::new(search.position).normalized()), stats))
}

struct Search<'a, D> {
    g: &'a WeightedGraph,
    dist: &'a D,
    params: WindowParams,
    placed: Vec<bool>,
    placed_count: usize,
    /// Global coordinate of each vertex on the current path.
    position: Vec<i64>,
    visited: HashSet<WindowEmbedding>,
    stats: SearchStats,
}

struct Frame {
    window: WindowEmbedding,
    depth: i64,
    candidates: Vec<WindowEmbedding>,
    next: usize,
    added: Option<usize>,
}

impl<D: Distances> Search<'_, D> {
    fn run(&mut self) -> bool {
        let n = self.g.vertex_count();
        let mut sources = Vec::new();
        for v0 in 0..n {
            collect_sources(self.g, self.dist, self.params, v0, &mut sources);
            for src in sources.drain(..) {
                if !self.visited.insert(src.clone()) {
                    continue;
                }
                self.stats.sources += 1;
                if self.explore_from(src) {
                    return true;
                }
            }
        }
        false
    }

    fn place(&mut self, v: usize, pos: i64) {
        debug_assert!(!self.placed[v]);
        self.placed[v] = true;
        self.placed_count += 1;
        self.position[v] = pos;
    }

    fn unplace(&mut self, v: usize) {
        self.placed[v] = false;
        self.placed_count -= 1;
    }

    fn explore_from(&mut self, src: WindowEmbedding) -> bool {
        for &(p, v) in src.cells() {
            self.place(v, p);
        }
        let mut stack = vec![self.open(src, 0, None)];
        while let Some(top) = stack.last_mut() {
            if self.placed_count == self.g.vertex_count() {
                return true;
            }
            if top.next == top.candidates.len() {
                let frame = stack.pop().unwrap();
                if let Some(x) = frame.added {
                    self.unplace(x);
                }
                if stack.is_empty() {
                    for &(_, v) in frame.window.cells() {
                        self.unplace(v);
                    }
                }
                continue;
            }
            let cand = std::mem::replace(&mut top.candidates[top.next], WindowEmbedding::from_pairs([]));
            top.next += 1;
            let depth = top.depth + 1;
            // the shifted cells end left of `half`; anything there is new
            let added = cand.at(self.params.half);
            if !self.admissible(&cand, added) || !self.visited.insert(cand.clone()) {
                continue;
            }
            if let Some(x) = added {
                self.place(x, self.params.half + depth);
            }
            let frame = self.open(cand, depth, added);
            stack.push(frame);
        }
        false
    }

    fn open(&mut self, window: WindowEmbedding, depth: i64, added: Option<usize>) -> Frame {
        self.stats.expanded += 1;
        let candidates = if self.placed_count == self.g.vertex_count() {
            Vec::new()
        } else {
            successor_candidates(self.dist, &window, self.params)
        };
        Frame {
            window,
            depth,
            candidates,
            next: 0,
            added,
        }
    }

    /// Local feasibility of a successor window: the new occupant (if any) is
    /// unplaced and consistent with the rest, and the center is closed.
    fn admissible(&self, w: &WindowEmbedding, added: Option<usize>) -> bool {
        if w.is_empty() {
            return false;
        }
        if let Some(x) = added {
            if self.placed[x] || !consistent_with(self.dist, w, x, self.params) {
                return false;
            }
        }
        match w.at(0) {
            Some(c) => self.g.neighbors(c).iter().all(|&(y, _)| w.contains(y)),
            None => true,
        }
    }
}

/// Pairwise conditions between `x` (at its cell in `w`) and every other
/// occupant of `w`.
fn consistent_with(dist: &impl Distances, w: &WindowEmbedding, x: usize, params: WindowParams) -> bool {
    let px = w.position_of(x).unwrap();
    w.cells().iter().filter(|&&(_, v)| v != x).all(|&(p, v)| {
        let gap = p.abs_diff(px);
        dist.dist(v, x).is_some_and(|dv| gap >= dv && gap <= params.d * dv)
    })
}

/// Source windows starting with `v0` at the leftmost cell: pairwise
/// consistent, center closed, and every left-half occupant with all its
/// neighbors inside the window (so the left side is empty).
fn collect_sources(
    g: &WeightedGraph,
    dist: &impl Distances,
    params: WindowParams,
    v0: usize,
    out: &mut Vec<WindowEmbedding>,
) {
    fn extend(
        g: &WeightedGraph,
        dist: &impl Distances,
        params: WindowParams,
        cells: &mut Vec<(i64, usize)>,
        out: &mut Vec<WindowEmbedding>,
    ) {
        let w = WindowEmbedding::from_sorted_cells(cells.clone());
        if closed(g, &w) {
            out.push(w);
        }
        let &(pos, last) = cells.last().unwrap();
        let room = ((params.half - pos) as u64).min(params.max_gap());
        for (x, dx) in dist.ball_of(last, room) {
            if cells.iter().any(|&(_, y)| y == x) {
                continue;
            }
            let px = pos + dx as i64;
            let ok = cells.iter().all(|&(p, v)| {
                let gap = p.abs_diff(px);
                dist.dist(v, x).is_some_and(|dv| gap >= dv && gap <= params.d * dv)
            });
            if !ok {
                continue;
            }
            // once the cells up to 0 are final, the left half and the
            // center must already be closed
            cells.push((px, x));
            if prefix_viable(g, cells, params) {
                extend(g, dist, params, cells, out);
            }
            cells.pop();
        }
    }
    let mut cells = vec![(-params.half, v0)];
    if prefix_viable(g, &cells, params) {
        extend(g, dist, params, &mut cells, out);
    }
}

/// A closed vertex has every neighbor among the cells.
fn all_neighbors_in(g: &WeightedGraph, v: usize, cells: &[(i64, usize)]) -> bool {
    g.neighbors(v).iter().all(|&(y, _)| cells.iter().any(|&(_, z)| z == y))
}

/// Cells at or left of 0 that can no longer gain neighbors must be closed.
fn prefix_viable(g: &WeightedGraph, cells: &[(i64, usize)], params: WindowParams) -> bool {
    let &(last_pos, _) = cells.last().unwrap();
    // a later occupant lands at least one cell right of `last_pos`, so
    // vertices whose every neighbor is already known can be judged now;
    // neighbors still to come must sit within `max_gap` of them
    cells
        .iter()
        .filter(|&&(p, _)| p <= 0 && p + params.max_gap() as i64 <= last_pos)
        .all(|&(_, v)| all_neighbors_in(g, v, cells))
}

fn closed(g: &WeightedGraph, w: &WindowEmbedding) -> bool {
    w.cells()
        .iter()
        .filter(|&&(p, _)| p <= 0)
        .all(|&(_, v)| all_neighbors_in(g, v, w.cells()))
}
