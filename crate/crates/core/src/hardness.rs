//! Weighted instances that encode 3-coloring as a line embedding problem with
//! fixed rational distortion `d = a/b >= 2`.
//!
//! From a graph `G` with `n` vertices and edges `e_1..e_m`, the instance has
//! two cliques `C_1`, `C_2` of size `t`, `q = m(2n + 1)` triangle gadgets
//! (gadget `j` encodes edge `e_((j - 1) mod m + 1)`), `q - 1` separators
//! between consecutive gadgets, and a bridge `c_t c'_1`. Vertex ids:
//!
//! * `c_i` is `i - 1`, `c'_i` is `t + i - 1`;
//! * `s_j` is `2t + j - 1`;
//! * gadget `j` occupies `2t + q - 1 + 3(j - 1) ..` as endpoint-u,
//!   endpoint-v, edge.

use std::fmt::Write as _;

use crate::error::{Error, Result};
use crate::graph::WeightedGraph;
use crate::line::{pushing_layout_from_gaps, LineEmbedding};
use crate::metric::{dijkstra_distances, Metric};
use crate::Rational;

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct HardnessParams {
    pub a: u64,
    pub b: u64,
    pub n: u64,
    pub m: u64,
    pub g: u64,
    pub r: u64,
    pub q: u64,
    pub l: u64,
    pub t: u64,
}

impl HardnessParams {
    /// `g = 5a - 1`, `r = 10b`, `q = m(2n + 1)`, `L = 10qb`, `t = abL + 1`,
    /// with `a` and `b` used as given (not reduced).
    pub fn new(a: u64, b: u64, n: u64, m: u64) -> Result<Self> {
        if b == 0 || a < 2 * b {
            return Err(Error::DistortionBelowTwo(format!("{a}/{b}")));
        }
        let q = m * (2 * n + 1);
        let l = 10 * q * b;
        Ok(Self {
            a,
            b,
            n,
            m,
            g: 5 * a - 1,
            r: 10 * b,
            q,
            l,
            t: a * b * l + 1,
        })
    }

    pub fn d(&self) -> Rational {
        Rational::new(self.a as i64, self.b as i64)
    }

    /// `2t + (q - 1) + 3q`.
    pub fn vertex_count(&self) -> usize {
        (2 * self.t + self.q - 1 + 3 * self.q) as usize
    }

    /// `⌈k / d⌉ = ⌈bk / a⌉`.
    pub fn clique_weight(&self, k: u64) -> u64 {
        (self.b * k).div_ceil(self.a)
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum GadgetVertex {
    /// The first endpoint of the encoded edge (a vertex of `G`).
    EndpointU(usize),
    EndpointV(usize),
    /// The encoded edge itself, by 0-based edge index.
    Edge(usize),
}

/// Indices are 1-based, as in the construction.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Role {
    Clique1(usize),
    Clique2(usize),
    Separator(usize),
    Gadget(usize, GadgetVertex),
}

#[derive(Debug, Clone)]
pub struct HardnessInstance {
    pub params: HardnessParams,
    pub graph: WeightedGraph,
    pub roles: Vec<Role>,
    source: WeightedGraph,
}

/// Outcome of checking that every edge is a shortest path.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum EdgeVerdict {
    Ok,
    /// `D(u, v) < w(uv)`.
    Shortcut {
        u: usize,
        v: usize,
        weight: u64,
        dist: u64,
    },
}

impl std::fmt::Display for EdgeVerdict {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        match self {
            EdgeVerdict::Ok => write!(f, "OK"),
            EdgeVerdict::Shortcut { u, v, weight, dist } => write!(f, "SHORTCUT {u} {v} w={weight} D={dist}"),
        }
    }
}

/// Builds the instance for `source` (unit weights, at least one edge) and
/// `d = a/b`.
pub fn generate(source: &WeightedGraph, a: u64, b: u64) -> Result<HardnessInstance> {
    let (n, m) = (source.vertex_count(), source.edge_count());
    let params = HardnessParams::new(a, b, n as u64, m as u64)?;
    if !source.is_unit_weight() {
        return Err(Error::NonUnitWeights);
    }
    if m == 0 {
        return Err(Error::InvalidArgument("graph has no edges".into()));
    }
    let (t, q) = (params.t as usize, params.q as usize);
    let mut roles = Vec::with_capacity(params.vertex_count());
    roles.extend((1..=t).map(Role::Clique1));
    roles.extend((1..=t).map(Role::Clique2));
    roles.extend((1..q).map(Role::Separator));
    for j in 1..=q {
        let i = (j - 1) % m;
        let e = source.edges()[i];
        roles.extend([
            Role::Gadget(j, GadgetVertex::EndpointU(e.u)),
            Role::Gadget(j, GadgetVertex::EndpointV(e.v)),
            Role::Gadget(j, GadgetVertex::Edge(i)),
        ]);
    }
    let mut inst = HardnessInstance {
        params,
        graph: WeightedGraph::new(roles.len()),
        roles,
        source: source.clone(),
    };
    let g = &mut inst.graph;
    for i in 0..t {
        for j in i + 1..t {
            let w = params.clique_weight((j - i) as u64);
            g.push_edge_unchecked(i, j, w);
            g.push_edge_unchecked(t + i, t + j, w);
        }
    }
    for j in 1..=q {
        let left = if j == 1 { t - 1 } else { 2 * t + j - 2 };
        let right = if j == q { t } else { 2 * t + j - 1 };
        let base = 2 * t + q - 1 + 3 * (j - 1);
        for x in base..base + 3 {
            g.push_edge_unchecked(left, x, params.g);
            g.push_edge_unchecked(x, right, params.g);
        }
        g.push_edge_unchecked(base, base + 1, 1);
        g.push_edge_unchecked(base, base + 2, 1);
        g.push_edge_unchecked(base + 1, base + 2, 1);
    }
    // same vertex or edge of G in two gadgets
    let identity = |role: Role| match role {
        Role::Gadget(_, GadgetVertex::EndpointU(v) | GadgetVertex::EndpointV(v)) => Some((0, v)),
        Role::Gadget(_, GadgetVertex::Edge(e)) => Some((1, e)),
        _ => None,
    };
    let first = 2 * t + q - 1;
    for x in first..inst.roles.len() {
        for y in x + 1..inst.roles.len() {
            let (Role::Gadget(i, _), Role::Gadget(j, _)) = (inst.roles[x], inst.roles[y]) else {
                unreachable!()
            };
            if i != j && identity(inst.roles[x]) == identity(inst.roles[y]) {
                inst.graph.push_edge_unchecked(x, y, params.r * (j - i) as u64);
            }
        }
    }
    inst.graph.push_edge_unchecked(t - 1, t, params.l);
    Ok(inst)
}

impl HardnessInstance {
    pub fn source(&self) -> &WeightedGraph {
        &self.source
    }

    /// Vertex `c_i`, `1 <= i <= t`.
    pub fn clique1(&self, i: usize) -> usize {
        i - 1
    }

    /// Vertex `c'_i`, `1 <= i <= t`.
    pub fn clique2(&self, i: usize) -> usize {
        self.params.t as usize + i - 1
    }

    /// Vertex `s_j`, `1 <= j < q`.
    pub fn separator(&self, j: usize) -> usize {
        2 * self.params.t as usize + j - 1
    }

    /// The three vertices of gadget `j`, `1 <= j <= q`.
    pub fn gadget(&self, j: usize) -> [usize; 3] {
        let base = 2 * self.params.t as usize + self.params.q as usize - 1 + 3 * (j - 1);
        [base, base + 1, base + 2]
    }

    /// `vertex role detail` lines, one per vertex.
    pub fn roles_text(&self) -> String {
        let mut out = String::new();
        for (x, role) in self.roles.iter().enumerate() {
            let _ = match *role {
                Role::Clique1(i) => writeln!(out, "{x} clique1 {i}"),
                Role::Clique2(i) => writeln!(out, "{x} clique2 {i}"),
                Role::Separator(j) => writeln!(out, "{x} separator {j}"),
                Role::Gadget(j, GadgetVertex::EndpointU(v)) => writeln!(out, "{x} gadget {j}:endpoint-u:{v}"),
                Role::Gadget(j, GadgetVertex::EndpointV(v)) => writeln!(out, "{x} gadget {j}:endpoint-v:{v}"),
                Role::Gadget(j, GadgetVertex::Edge(e)) => writeln!(out, "{x} gadget {j}:edge:{e}"),
            };
        }
        out
    }

    /// The layout `C_1, T_1, s_1, ..., T_q, C_2` with each gadget sorted by
    /// color (the edge vertex takes the color its endpoints miss), pushed so
    /// that consecutive vertices sit at their metric distance.
    pub fn witness_embedding(&self, psi: &[u8]) -> Result<LineEmbedding> {
        check_coloring(&self.source, psi)?;
        let (t, q) = (self.params.t as usize, self.params.q as usize);
        let mut order: Vec<usize> = (1..=t).map(|i| self.clique1(i)).collect();
        for j in 1..=q {
            let mut gadget = self.gadget(j);
            gadget.sort_by_key(|&x| match self.roles[x] {
                Role::Gadget(_, GadgetVertex::EndpointU(v) | GadgetVertex::EndpointV(v)) => psi[v],
                Role::Gadget(_, GadgetVertex::Edge(e)) => {
                    let edge = self.source.edges()[e];
                    6 - psi[edge.u] - psi[edge.v]
                }
                _ => unreachable!(),
            });
            order.extend(gadget);
            if j < q {
                order.push(self.separator(j));
            }
        }
        order.extend((1..=t).map(|i| self.clique2(i)));
        let gaps = order
            .windows(2)
            .map(|w| {
                let bound = self
                    .graph
                    .weight(w[0], w[1])
                    .expect("consecutive vertices are adjacent");
                dijkstra_distances(&self.graph, w[0], Some(bound))[w[1]].expect("within edge weight")
            })
            .collect::<Vec<_>>();
        Ok(pushing_layout_from_gaps(&order, &gaps, 0))
    }

    /// Checks `D(u, v) = w(uv)` for every edge against the metric `m` of the
    /// instance graph.
    pub fn verify_metric_edges_in(&self, m: &Metric) -> EdgeVerdict {
        for e in self.graph.edges() {
            let dist = m.get(e.u, e.v);
            if dist != e.w {
                return EdgeVerdict::Shortcut {
                    u: e.u,
                    v: e.v,
                    weight: e.w,
                    dist,
                };
            }
        }
        EdgeVerdict::Ok
    }

    /// Same as [`verify_metric_edges_in`](Self::verify_metric_edges_in),
    /// running Dijkstra from every vertex.
    pub fn verify_metric_edges(&self) -> EdgeVerdict {
        let n = self.graph.vertex_count();
        for s in 0..n {
            let row = dijkstra_distances(&self.graph, s, None);
            for &(v, w) in self.graph.neighbors(s) {
                let dist = row[v].expect("instance is connected");
                if v > s && dist != w {
                    return EdgeVerdict::Shortcut {
                        u: s,
                        v,
                        weight: w,
                        dist,
                    };
                }
            }
        }
        EdgeVerdict::Ok
    }
}

fn check_coloring(g: &WeightedGraph, psi: &[u8]) -> Result<()> {
    if psi.len() != g.vertex_count() {
        return Err(Error::NotAProperColoring(format!(
            "{} colors for {} vertices",
            psi.len(),
            g.vertex_count()
        )));
    }
    if let Some(v) = psi.iter().position(|c| !(1..=3).contains(c)) {
        return Err(Error::NotAProperColoring(format!("vertex {v} has color {}", psi[v])));
    }
    if let Some(e) = g.edges().iter().find(|e| psi[e.u] == psi[e.v]) {
        return Err(Error::NotAProperColoring(format!(
            "edge ({}, {}) is monochromatic",
            e.u, e.v
        )));
    }
    Ok(())
}

/// Parses a coloring: either one color per line in vertex order, or
/// `vertex color` lines. Colors are 1, 2 or 3.
pub fn parse_coloring(text: &str, n: usize) -> Result<Vec<u8>> {
    let mut psi = vec![0u8; n];
    let mut next = 0;
    for (i, line) in text.lines().enumerate() {
        let line = line.trim();
        if line.is_empty() || line.starts_with('#') {
            continue;
        }
        let err = |msg: String| Error::Parse { line: i + 1, msg };
        let tok: Vec<&str> = line.split_whitespace().collect();
        let (v, c) = match tok.as_slice() {
            [c] => (next, *c),
            [v, c] => (v.parse::<usize>().map_err(|_| err(format!("bad vertex `{v}`")))?, *c),
            _ => return Err(err("expected `color` or `vertex color`".into())),
        };
        let c: u8 = c.parse().map_err(|_| err(format!("bad color `{c}`")))?;
        if v >= n {
            return Err(err(format!("vertex {v} out of range")));
        }
        psi[v] = c;
        next = v + 1;
    }
    if let Some(v) = psi.iter().position(|&c| c == 0) {
        return Err(Error::NotAProperColoring(format!("vertex {v} has no color")));
    }
    Ok(psi)
}
