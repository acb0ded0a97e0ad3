//! Ground truth at desk scale: exact chromatic index by backtracking,
//! exhaustive enumeration of proper colorings, connected-graph enumeration
//! up to isomorphism, and canonical forms.
//!
//! Nothing here knows about outer-1-planarity; the rest of the crate is
//! tested against these routines, so they stay independent of it.

use crate::graph::{ColorAssignment, Edge, Graph};
use rand::seq::SliceRandom;
use rand::Rng;
use std::collections::HashSet;
use thiserror::Error;

/// Largest edge count accepted by the exact solvers.
pub const BRUTE_EDGE_LIMIT: usize = 30;
/// Largest edge count accepted by [`all_colorings`].
pub const ALL_COLORINGS_EDGE_LIMIT: usize = 20;
/// Largest vertex count accepted by [`canonical_form`].
pub const CANONICAL_VERTEX_LIMIT: usize = 32;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum OracleError {
    #[error("graph has {edges} edges, above the limit of {limit}")]
    TooLarge { edges: usize, limit: usize },
}

/// Outcome of a bounded backtracking search for a proper k-edge-coloring.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Search {
    Found(ColorAssignment),
    Impossible,
    OutOfBudget,
}

struct Solver<'a> {
    g: &'a Graph,
    k: usize,
    full: u32,
    used: Vec<u32>,
    assign: Vec<usize>,
    color_order: Vec<usize>,
    nodes: u64,
    budget: u64,
    exhausted: bool,
}

impl<'a> Solver<'a> {
    fn new(g: &'a Graph, k: usize, budget: u64) -> Self {
        Solver {
            g,
            k,
            full: if k >= 32 { u32::MAX } else { (1u32 << k) - 1 },
            used: vec![0; g.n()],
            assign: vec![0; g.m()],
            color_order: (1..=k).collect(),
            nodes: 0,
            budget,
            exhausted: false,
        }
    }

    /// Most-constrained uncolored edge: fewest available colors, ties by index.
    fn pick(&self) -> Option<(usize, u32)> {
        let mut best: Option<(usize, u32, u32)> = None;
        for (i, e) in self.g.edges().iter().enumerate() {
            if self.assign[i] != 0 {
                continue;
            }
            let avail = self.full & !(self.used[e.u()] | self.used[e.v()]);
            let count = avail.count_ones();
            if best.is_none_or(|(_, _, c)| count < c) {
                best = Some((i, avail, count));
                if count == 0 {
                    break;
                }
            }
        }
        best.map(|(i, avail, _)| (i, avail))
    }

    fn solve(&mut self, colored: usize) -> bool {
        if colored == self.g.m() {
            return true;
        }
        let (idx, avail) = self.pick().expect("uncolored edge exists");
        let e = self.g.edges()[idx];
        for oi in 0..self.k {
            let color = self.color_order[oi];
            let bit = 1u32 << (color - 1);
            if avail & bit == 0 {
                continue;
            }
            self.nodes += 1;
            if self.nodes > self.budget {
                self.exhausted = true;
                return false;
            }
            self.assign[idx] = color;
            self.used[e.u()] |= bit;
            self.used[e.v()] |= bit;
            if self.solve(colored + 1) {
                return true;
            }
            self.assign[idx] = 0;
            self.used[e.u()] &= !bit;
            self.used[e.v()] &= !bit;
            if self.exhausted {
                return false;
            }
        }
        false
    }

    fn into_assignment(self) -> ColorAssignment {
        let mut c = ColorAssignment::new(self.k);
        for (i, e) in self.g.edges().iter().enumerate() {
            c.set(*e, self.assign[i]);
        }
        c
    }
}

/// Searches for a proper k-edge-coloring, giving up after `budget` color
/// placements.
pub fn color_with_budget(g: &Graph, k: usize, budget: u64) -> Search {
    if g.m() == 0 {
        return Search::Found(ColorAssignment::new(k));
    }
    if k < g.max_degree() {
        // A vertex of maximum degree already needs that many colors.
        return Search::Impossible;
    }
    let mut s = Solver::new(g, k, budget);
    if s.solve(0) {
        Search::Found(s.into_assignment())
    } else if s.exhausted {
        Search::OutOfBudget
    } else {
        Search::Impossible
    }
}

/// Unbounded proper k-edge-coloring search (still subject to [`BRUTE_EDGE_LIMIT`]
/// in the callers that expose it).
pub fn color_with(g: &Graph, k: usize) -> Option<ColorAssignment> {
    match color_with_budget(g, k, u64::MAX) {
        Search::Found(c) => Some(c),
        _ => None,
    }
}

/// A uniformly-random-ish proper k-edge-coloring found by backtracking with
/// shuffled color order; deterministic for a fixed RNG state.
pub fn random_coloring(g: &Graph, k: usize, rng: &mut impl Rng) -> Option<ColorAssignment> {
    if g.m() == 0 {
        return Some(ColorAssignment::new(k));
    }
    if k < g.max_degree() {
        return None;
    }
    let mut s = Solver::new(g, k, u64::MAX);
    s.color_order.shuffle(rng);
    if s.solve(0) {
        Some(s.into_assignment())
    } else {
        None
    }
}

/// Exact chromatic index by backtracking: tries `Delta` colors, falling back
/// to `Delta + 1` (always sufficient for simple graphs).
pub fn brute_chi(g: &Graph) -> Result<usize, OracleError> {
    Ok(brute_chromatic_witness(g)?.0)
}

/// Exact chromatic index together with an optimal coloring.
pub fn brute_chromatic_witness(g: &Graph) -> Result<(usize, ColorAssignment), OracleError> {
    if g.m() > BRUTE_EDGE_LIMIT {
        return Err(OracleError::TooLarge {
            edges: g.m(),
            limit: BRUTE_EDGE_LIMIT,
        });
    }
    if g.m() == 0 {
        return Ok((0, ColorAssignment::new(0)));
    }
    let delta = g.max_degree();
    if let Some(c) = color_with(g, delta) {
        return Ok((delta, c));
    }
    let c = color_with(g, delta + 1).expect("Delta + 1 colors always suffice");
    Ok((delta + 1, c))
}

/// Streams every proper k-edge-coloring in lexicographic order over the
/// sorted edge list with colors ascending.
pub fn all_colorings(g: &Graph, k: usize) -> Result<AllColorings<'_>, OracleError> {
    if g.m() > ALL_COLORINGS_EDGE_LIMIT {
        return Err(OracleError::TooLarge {
            edges: g.m(),
            limit: ALL_COLORINGS_EDGE_LIMIT,
        });
    }
    Ok(AllColorings {
        g,
        k,
        assign: vec![0; g.m()],
        used: vec![0; g.n()],
        full: if k >= 32 {
            u32::MAX
        } else {
            (1u32 << k.max(1)) - 1
        },
        started: false,
        done: k == 0 && g.m() > 0,
    })
}

pub struct AllColorings<'a> {
    g: &'a Graph,
    k: usize,
    assign: Vec<usize>,
    used: Vec<u32>,
    full: u32,
    started: bool,
    done: bool,
}

impl AllColorings<'_> {
    fn place(&mut self, idx: usize, color: usize) {
        let e = self.g.edges()[idx];
        let bit = 1u32 << (color - 1);
        self.assign[idx] = color;
        self.used[e.u()] |= bit;
        self.used[e.v()] |= bit;
    }

    fn unplace(&mut self, idx: usize) -> usize {
        let e = self.g.edges()[idx];
        let color = self.assign[idx];
        let bit = 1u32 << (color - 1);
        self.assign[idx] = 0;
        self.used[e.u()] &= !bit;
        self.used[e.v()] &= !bit;
        color
    }

    fn fits(&self, idx: usize, color: usize) -> bool {
        let e = self.g.edges()[idx];
        let bit = 1u32 << (color - 1);
        bit & self.full != 0 && (self.used[e.u()] | self.used[e.v()]) & bit == 0
    }

    fn snapshot(&self) -> ColorAssignment {
        let mut c = ColorAssignment::new(self.k);
        for (i, e) in self.g.edges().iter().enumerate() {
            c.set(*e, self.assign[i]);
        }
        c
    }
}

impl Iterator for AllColorings<'_> {
    type Item = ColorAssignment;

    fn next(&mut self) -> Option<ColorAssignment> {
        if self.done {
            return None;
        }
        let m = self.g.m();
        if m == 0 {
            self.done = true;
            return Some(ColorAssignment::new(self.k));
        }
        let mut cursor;
        let mut from_color;
        if !self.started {
            self.started = true;
            cursor = 0;
            from_color = 1;
        } else {
            cursor = m - 1;
            from_color = self.unplace(m - 1) + 1;
        }
        loop {
            let mut placed = false;
            for color in from_color..=self.k {
                if self.fits(cursor, color) {
                    self.place(cursor, color);
                    placed = true;
                    break;
                }
            }
            if placed {
                cursor += 1;
                from_color = 1;
                if cursor == m {
                    return Some(self.snapshot());
                }
            } else {
                if cursor == 0 {
                    self.done = true;
                    return None;
                }
                cursor -= 1;
                from_color = self.unplace(cursor) + 1;
            }
        }
    }
}

/// `(n, sorted edge list under the canonical labeling)`; equal keys mean
/// isomorphic graphs.
pub type CanonKey = (usize, Vec<Edge>);

fn masks_of(g: &Graph) -> Vec<u32> {
    let mut rows = vec![0u32; g.n()];
    for e in g.edges() {
        rows[e.u()] |= 1 << e.v();
        rows[e.v()] |= 1 << e.u();
    }
    rows
}

/// Canonical labeling (old id -> new id) by individualization-refinement:
/// initial partition by degree, refinement by neighbor counts per cell,
/// branching on the first non-singleton cell, minimum edge list over leaves.
pub fn canonical_labeling(g: &Graph) -> Vec<usize> {
    assert!(
        g.n() <= CANONICAL_VERTEX_LIMIT,
        "canonical form supports up to {CANONICAL_VERTEX_LIMIT} vertices"
    );
    let n = g.n();
    if n == 0 {
        return Vec::new();
    }
    let rows = masks_of(g);

    fn refine(cells: &mut Vec<Vec<usize>>, rows: &[u32]) {
        loop {
            let masks: Vec<u32> = cells
                .iter()
                .map(|c| c.iter().fold(0u32, |m, &v| m | (1 << v)))
                .collect();
            let mut split_at = None;
            for (ci, cell) in cells.iter().enumerate() {
                if cell.len() < 2 {
                    continue;
                }
                let sig = |v: usize| -> Vec<u32> {
                    masks.iter().map(|m| (rows[v] & m).count_ones()).collect()
                };
                let first = sig(cell[0]);
                if cell.iter().any(|&v| sig(v) != first) {
                    split_at = Some(ci);
                    break;
                }
            }
            let Some(ci) = split_at else { break };
            let cell = cells[ci].clone();
            let mut groups: Vec<(Vec<u32>, Vec<usize>)> = Vec::new();
            for &v in &cell {
                let s: Vec<u32> = masks.iter().map(|m| (rows[v] & m).count_ones()).collect();
                match groups.iter_mut().find(|(gs, _)| *gs == s) {
                    Some((_, members)) => members.push(v),
                    None => groups.push((s, vec![v])),
                }
            }
            groups.sort_by(|a, b| a.0.cmp(&b.0));
            cells.splice(ci..=ci, groups.into_iter().map(|(_, members)| members));
        }
    }

    struct Best {
        key: Option<Vec<(usize, usize)>>,
        labeling: Vec<usize>,
    }

    fn dfs(mut cells: Vec<Vec<usize>>, rows: &[u32], n: usize, best: &mut Best) {
        refine(&mut cells, rows);
        if let Some(ci) = cells.iter().position(|c| c.len() > 1) {
            let cell = cells[ci].clone();
            for &v in &cell {
                let mut child = cells.clone();
                let rest: Vec<usize> = cell.iter().copied().filter(|&w| w != v).collect();
                child.splice(ci..=ci, [vec![v], rest]);
                dfs(child, rows, n, best);
            }
            return;
        }
        let mut label = vec![0usize; n];
        for (new, cell) in cells.iter().enumerate() {
            label[cell[0]] = new;
        }
        let mut key = Vec::new();
        for v in 0..n {
            let mut mask = rows[v];
            while mask != 0 {
                let w = mask.trailing_zeros() as usize;
                mask &= mask - 1;
                if label[v] < label[w] {
                    key.push((label[v], label[w]));
                }
            }
        }
        key.sort_unstable();
        if best.key.as_ref().is_none_or(|b| key < *b) {
            best.key = Some(key);
            best.labeling = label;
        }
    }

    let mut by_degree: Vec<Vec<usize>> = Vec::new();
    for d in 0..n {
        let cell: Vec<usize> = (0..n).filter(|&v| g.degree(v) == d).collect();
        if !cell.is_empty() {
            by_degree.push(cell);
        }
    }
    let mut best = Best {
        key: None,
        labeling: Vec::new(),
    };
    dfs(by_degree, &rows, n, &mut best);
    best.labeling
}

pub fn canonical_form(g: &Graph) -> CanonKey {
    let label = canonical_labeling(g);
    let mut edges: Vec<Edge> = g
        .edges()
        .iter()
        .map(|e| Edge::new(label[e.u()], label[e.v()]))
        .collect();
    edges.sort_unstable();
    (g.n(), edges)
}

pub fn is_isomorphic(a: &Graph, b: &Graph) -> bool {
    if a.n() != b.n() || a.m() != b.m() {
        return false;
    }
    let mut da: Vec<usize> = (0..a.n()).map(|v| a.degree(v)).collect();
    let mut db: Vec<usize> = (0..b.n()).map(|v| b.degree(v)).collect();
    da.sort_unstable();
    db.sort_unstable();
    if da != db {
        return false;
    }
    canonical_form(a) == canonical_form(b)
}

/// Connected graphs on exactly `n` vertices with maximum degree at most
/// `degree_cap`, one representative per isomorphism class, built by vertex
/// augmentation. Output is sorted by canonical edge list.
pub fn connected_graphs(n: usize, degree_cap: usize) -> Vec<Graph> {
    if n == 0 {
        return Vec::new();
    }
    let mut level: Vec<CanonKey> = vec![(1, Vec::new())];
    for size in 2..=n {
        let mut seen: HashSet<CanonKey> = HashSet::new();
        for (pn, pedges) in &level {
            let parent = Graph::new(
                *pn,
                &pedges.iter().map(|e| e.endpoints()).collect::<Vec<_>>(),
            )
            .unwrap();
            let eligible: Vec<usize> = (0..parent.n())
                .filter(|&v| parent.degree(v) < degree_cap)
                .collect();
            let e = eligible.len();
            for subset in 1u32..(1 << e) {
                if subset.count_ones() as usize > degree_cap {
                    continue;
                }
                let mut pairs: Vec<(usize, usize)> = pedges.iter().map(|e| e.endpoints()).collect();
                for (i, &v) in eligible.iter().enumerate() {
                    if subset & (1 << i) != 0 {
                        pairs.push((v, size - 1));
                    }
                }
                let child = Graph::new(size, &pairs).unwrap();
                seen.insert(canonical_form(&child));
            }
        }
        let mut next: Vec<CanonKey> = seen.into_iter().collect();
        next.sort();
        level = next;
    }
    level
        .into_iter()
        .map(|(sz, edges)| {
            Graph::new(sz, &edges.iter().map(|e| e.endpoints()).collect::<Vec<_>>()).unwrap()
        })
        .collect()
}

/// Connected graphs up to isomorphism for every order `1..=n_max`.
pub fn enumerate_small(n_max: usize, degree_cap: usize) -> Vec<Graph> {
    assert!(n_max <= 9, "enumeration is intended for n <= 9");
    (1..=n_max)
        .flat_map(|n| connected_graphs(n, degree_cap))
        .collect()
}
