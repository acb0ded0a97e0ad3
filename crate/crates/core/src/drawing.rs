//! Circular drawings: all vertices on a circle, edges as chords, each chord
//! crossed at most once. Two chords cross exactly when their endpoint pairs
//! interleave around the circle, so a drawing is just a cyclic vertex order
//! and crossings are a combinatorial property of it.

use crate::graph::{Edge, Graph};
use thiserror::Error;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum DrawingError {
    #[error("order has length {got}, expected {expected}")]
    WrongLength { got: usize, expected: usize },
    #[error("order is not a permutation: vertex {0} repeated or out of range")]
    NotAPermutation(usize),
    #[error("edge {edge} is crossed {} times, by {crossed_by:?}", crossed_by.len())]
    EdgeCrossedTwice { edge: Edge, crossed_by: Vec<Edge> },
}

/// A graph together with a cyclic outer order of its vertices.
#[derive(Debug, Clone)]
pub struct Drawing {
    graph: Graph,
    order: Vec<usize>,
    pos: Vec<usize>,
}

impl Drawing {
    pub fn new(graph: Graph, order: Vec<usize>) -> Result<Self, DrawingError> {
        if order.len() != graph.n() {
            return Err(DrawingError::WrongLength {
                got: order.len(),
                expected: graph.n(),
            });
        }
        let mut pos = vec![usize::MAX; graph.n()];
        for (p, &v) in order.iter().enumerate() {
            if v >= graph.n() || pos[v] != usize::MAX {
                return Err(DrawingError::NotAPermutation(v));
            }
            pos[v] = p;
        }
        Ok(Drawing { graph, order, pos })
    }

    pub fn graph(&self) -> &Graph {
        &self.graph
    }

    pub fn order(&self) -> &[usize] {
        &self.order
    }

    pub fn position(&self, v: usize) -> usize {
        self.pos[v]
    }

    /// Whether the chords of `e` and `f` cross: disjoint endpoints whose
    /// positions interleave around the circle.
    pub fn edges_cross(&self, e: Edge, f: Edge) -> bool {
        if e.shares_endpoint(&f) {
            return false;
        }
        let (a, b) = span(self.pos[e.u()], self.pos[e.v()]);
        let (c, d) = span(self.pos[f.u()], self.pos[f.v()]);
        (a < c && c < b && b < d) || (c < a && a < d && d < b)
    }

    /// All crossing pairs, each once, ordered by (smaller edge, larger edge).
    pub fn crossing_pairs(&self) -> Vec<(Edge, Edge)> {
        let edges = self.graph.edges();
        let mut out = Vec::new();
        for i in 0..edges.len() {
            for j in i + 1..edges.len() {
                if self.edges_cross(edges[i], edges[j]) {
                    out.push((edges[i], edges[j]));
                }
            }
        }
        out
    }

    pub fn crossings_of(&self, e: Edge) -> Vec<Edge> {
        self.graph
            .edges()
            .iter()
            .copied()
            .filter(|&f| self.edges_cross(e, f))
            .collect()
    }

    pub fn crossing_count(&self) -> usize {
        self.crossing_pairs().len()
    }

    /// Checks the one-crossing-per-edge rule, reporting the first edge in
    /// edge order that is crossed twice or more.
    pub fn check_outer1(&self) -> Result<(), DrawingError> {
        for &e in self.graph.edges() {
            let crossed_by = self.crossings_of(e);
            if crossed_by.len() > 1 {
                return Err(DrawingError::EdgeCrossedTwice {
                    edge: e,
                    crossed_by,
                });
            }
        }
        Ok(())
    }

    pub fn is_valid_outer1(&self) -> bool {
        self.check_outer1().is_ok()
    }

    /// The sub-drawing induced on `vs`: the induced subgraph with the outer
    /// order restricted to it. Returns the drawing and the new-to-old map.
    pub fn restricted(&self, vs: &[usize]) -> (Drawing, Vec<usize>) {
        let (sub, new_to_old) = self.graph.induced_subgraph(vs);
        let mut order_new: Vec<usize> = (0..sub.n()).collect();
        order_new.sort_by_key(|&nv| self.pos[new_to_old[nv]]);
        let d = Drawing::new(sub, order_new).expect("restriction of a permutation");
        (d, new_to_old)
    }
}

fn span(p: usize, q: usize) -> (usize, usize) {
    if p < q {
        (p, q)
    } else {
        (q, p)
    }
}

/// Default node budget for [`find_embedding`].
pub const DEFAULT_EMBED_BUDGET: u64 = 10_000_000;

/// Result of the embedding search.
#[derive(Debug, Clone)]
pub struct EmbedResult {
    /// A valid drawing with the fewest crossings found, if any.
    pub drawing: Option<Drawing>,
    /// Crossing count of `drawing` (meaningful only when it is present).
    pub crossings: usize,
    /// True when the search ran to completion, so the outcome is exact:
    /// either `drawing` is crossing-minimal or no valid drawing exists.
    pub optimal: bool,
    /// Vertex placements explored.
    pub explored: u64,
}

struct EmbedSearch<'a> {
    g: &'a Graph,
    n: usize,
    order: Vec<usize>,
    pos: Vec<usize>,
    placed_edges: Vec<usize>,
    cross_count: Vec<u32>,
    total: usize,
    best: Option<(usize, Vec<usize>)>,
    explored: u64,
    budget: u64,
    aborted: bool,
}

impl EmbedSearch<'_> {
    fn run(&mut self, depth: usize) {
        if self.aborted {
            return;
        }
        if depth == self.n {
            let count = self.total;
            if self.best.as_ref().is_none_or(|(b, _)| count < *b) {
                self.best = Some((count, self.order[..depth].to_vec()));
            }
            return;
        }
        for v in 0..self.n {
            if self.pos[v] != usize::MAX {
                continue;
            }
            // Reflection symmetry: insist the second entry is smaller than
            // the last.
            if self.n >= 3 && depth == self.n - 1 && v < self.order[1] {
                continue;
            }
            self.explored += 1;
            if self.explored > self.budget {
                self.aborted = true;
                return;
            }
            if self.place(v, depth) {
                self.run(depth + 1);
            }
            self.unplace(v, depth);
            if self.aborted {
                return;
            }
        }
    }

    /// Puts `v` at position `depth`; returns false (leaving state consistent
    /// for `unplace`) when a crossing bound is violated.
    fn place(&mut self, v: usize, depth: usize) -> bool {
        self.pos[v] = depth;
        self.order[depth] = v;
        let mark = self.placed_edges.len();
        let mut ok = true;
        for &w in self.g.neighbors(v) {
            if self.pos[w] == usize::MAX {
                continue;
            }
            let ei = self.edge_index(v, w);
            // Count every crossing of the new chord even past the bound, so
            // `unplace` can mirror the bookkeeping exactly.
            for idx in 0..mark {
                let fi = self.placed_edges[idx];
                if self.chords_cross(ei, fi) {
                    self.cross_count[ei] += 1;
                    self.cross_count[fi] += 1;
                    self.total += 1;
                    if self.cross_count[ei] > 1 || self.cross_count[fi] > 1 {
                        ok = false;
                    }
                }
            }
            self.placed_edges.push(ei);
            if let Some((b, _)) = &self.best {
                if self.total >= *b {
                    ok = false;
                }
            }
            if !ok {
                break;
            }
        }
        ok
    }

    fn unplace(&mut self, v: usize, depth: usize) {
        while let Some(&ei) = self.placed_edges.last() {
            let e = self.g.edges()[ei];
            if self.pos[e.u()] != depth && self.pos[e.v()] != depth {
                break;
            }
            self.placed_edges.pop();
            for idx in 0..self.placed_edges.len() {
                let fi = self.placed_edges[idx];
                if self.chords_cross(ei, fi) {
                    self.cross_count[ei] -= 1;
                    self.cross_count[fi] -= 1;
                    self.total -= 1;
                }
            }
            self.cross_count[ei] = 0;
        }
        self.pos[v] = usize::MAX;
    }

    fn edge_index(&self, a: usize, b: usize) -> usize {
        self.g
            .edges()
            .binary_search(&Edge::new(a, b))
            .expect("edge of the graph")
    }

    fn chords_cross(&self, ei: usize, fi: usize) -> bool {
        let e = self.g.edges()[ei];
        let f = self.g.edges()[fi];
        if e.shares_endpoint(&f) {
            return false;
        }
        let (a, b) = span(self.pos[e.u()], self.pos[e.v()]);
        let (c, d) = span(self.pos[f.u()], self.pos[f.v()]);
        (a < c && c < b && b < d) || (c < a && a < d && d < b)
    }
}

/// Branch-and-bound search for a valid drawing with the fewest crossings.
///
/// Vertex 0 is pinned to position 0 and reflections are broken, so the
/// search covers each circular order once; candidate vertices are tried in
/// ascending order, which makes the reported optimum the lexicographically
/// smallest one. A partial order is abandoned as soon as any edge is crossed
/// twice or the running crossing count reaches the best complete drawing.
pub fn find_embedding(g: &Graph, budget: u64) -> EmbedResult {
    let n = g.n();
    if n == 0 {
        return EmbedResult {
            drawing: Some(Drawing::new(g.clone(), Vec::new()).unwrap()),
            crossings: 0,
            optimal: true,
            explored: 0,
        };
    }
    let mut search = EmbedSearch {
        g,
        n,
        order: vec![0; n],
        pos: vec![usize::MAX; n],
        placed_edges: Vec::new(),
        cross_count: vec![0; g.m()],
        total: 0,
        best: None,
        explored: 0,
        budget,
        aborted: false,
    };
    search.pos[0] = 0;
    search.order[0] = 0;
    search.run(1);
    let optimal = !search.aborted;
    let explored = search.explored;
    match search.best {
        Some((crossings, order)) => EmbedResult {
            drawing: Some(Drawing::new(g.clone(), order).unwrap()),
            crossings,
            optimal,
            explored,
        },
        None => EmbedResult {
            drawing: None,
            crossings: 0,
            optimal,
            explored,
        },
    }
}

/// Convenience wrapper: crossing-minimal drawing under the default budget,
/// `None` when the graph has no valid drawing or the budget ran out.
pub fn embed(g: &Graph) -> Option<Drawing> {
    find_embedding(g, DEFAULT_EMBED_BUDGET).drawing
}

/// Random connected graph with a valid drawing, built on a random circular
/// order: the outer cycle plus chords inserted greedily in random order,
/// each accepted with probability `chord_prob` when it keeps every edge
/// crossed at most once and every degree at most `degree_cap`. Needs
/// `n >= 3` and `degree_cap >= 2`.
pub fn random_outer1(
    n: usize,
    degree_cap: usize,
    chord_prob: f64,
    rng: &mut impl rand::Rng,
) -> Drawing {
    use rand::seq::SliceRandom;
    assert!(n >= 3 && degree_cap >= 2);
    let mut order: Vec<usize> = (0..n).collect();
    order.shuffle(rng);
    let mut pos = vec![0usize; n];
    for (p, &v) in order.iter().enumerate() {
        pos[v] = p;
    }
    let mut pairs: Vec<(usize, usize)> = (0..n).map(|p| (order[p], order[(p + 1) % n])).collect();
    let mut degree = vec![2usize; n];
    let mut crossed: Vec<Edge> = Vec::new();
    let interleave = |e: Edge, f: Edge| {
        if e.shares_endpoint(&f) {
            return false;
        }
        let (a, b) = span(pos[e.u()], pos[e.v()]);
        let (c, d) = span(pos[f.u()], pos[f.v()]);
        (a < c && c < b && b < d) || (c < a && a < d && d < b)
    };
    let mut candidates: Vec<(usize, usize)> = (0..n)
        .flat_map(|u| ((u + 1)..n).map(move |v| (u, v)))
        .filter(|&(u, v)| {
            let gap = pos[u].abs_diff(pos[v]);
            gap != 1 && gap != n - 1
        })
        .collect();
    candidates.shuffle(rng);
    let mut chords: Vec<Edge> = Vec::new();
    for (u, v) in candidates {
        if degree[u] >= degree_cap || degree[v] >= degree_cap || !rng.gen_bool(chord_prob) {
            continue;
        }
        let e = Edge::new(u, v);
        let hits: Vec<Edge> = chords
            .iter()
            .copied()
            .filter(|&f| interleave(e, f))
            .collect();
        if hits.len() > 1 || hits.iter().any(|f| crossed.contains(f)) {
            continue;
        }
        if let Some(&f) = hits.first() {
            crossed.push(e);
            crossed.push(f);
        }
        chords.push(e);
        degree[u] += 1;
        degree[v] += 1;
        pairs.push((u, v));
    }
    let g = Graph::new(n, &pairs).expect("generated pairs are simple");
    let d = Drawing::new(g, order).expect("order is a permutation");
    debug_assert!(d.is_valid_outer1());
    d
}

/// Verdict for the outer-segment shape check between two vertices.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum SegmentVerdict {
    /// The closed segment from `vi` to `vj` induces the path along the circle.
    Path,
    /// The segment is the two vertices themselves with no edge between them.
    NonEdge,
    /// A precondition failed; the check says nothing in this case.
    Inapplicable(&'static str),
    /// Preconditions held but the segment is neither a path nor a non-edge.
    Violation,
}

/// Checks the segment-shape property: in a valid drawing of a 2-connected
/// graph, if no chord with both endpoints inside the closed segment
/// `[vi, vj]` is crossed and no edge joins the open segment `(vi, vj)` to
/// the open complement `(vj, vi)`, then the closed segment is either an
/// outer path or exactly `{vi, vj}` with no edge.
pub fn check_segment_shape(d: &Drawing, vi: usize, vj: usize) -> SegmentVerdict {
    let g = d.graph();
    let n = g.n();
    if vi >= n || vj >= n || vi == vj {
        return SegmentVerdict::Inapplicable("need two distinct vertices");
    }
    if !d.is_valid_outer1() {
        return SegmentVerdict::Inapplicable("drawing is not valid");
    }
    if !g.is_two_connected() || n < 3 {
        return SegmentVerdict::Inapplicable("graph is not 2-connected");
    }
    let pi = d.position(vi);
    let pj = d.position(vj);
    let len = (pj + n - pi) % n;
    let segment: Vec<usize> = (0..=len).map(|o| d.order()[(pi + o) % n]).collect();
    let inside: Vec<usize> = segment[1..len].to_vec();

    let in_closed = |v: usize| segment.contains(&v);
    let in_open = |v: usize| inside.contains(&v);

    for &e in g.edges() {
        if in_closed(e.u()) && in_closed(e.v()) && !d.crossings_of(e).is_empty() {
            return SegmentVerdict::Inapplicable("a chord of the segment is crossed");
        }
        let (a, b) = e.endpoints();
        if (in_open(a) && !in_closed(b)) || (in_open(b) && !in_closed(a)) {
            return SegmentVerdict::Inapplicable("an edge leaves the open segment");
        }
    }

    if len == 1 && !g.has_edge(vi, vj) {
        return SegmentVerdict::NonEdge;
    }
    let is_path = (0..len).all(|o| {
        let a = d.order()[(pi + o) % n];
        let b = d.order()[(pi + o + 1) % n];
        g.has_edge(a, b)
    });
    if is_path {
        SegmentVerdict::Path
    } else {
        SegmentVerdict::Violation
    }
}
