//! Exact chromatic index for outer-1-planar graphs with witness colorings.
//!
//! The decision runs block by block. Blocks that are single edges or cycles
//! are colored directly. A block of maximum degree 3 is 3-edge-colorable
//! unless it belongs to the pasting family of class-2 blocks; the test runs
//! by matching a configuration in a crossing-minimal drawing, shrinking it
//! out, recursing, and lifting the coloring back through the extension
//! tables. Blocks of maximum degree 4 or more are always class 1; their
//! witness comes from a budgeted exact search with a Vizing-style fallback
//! that may spend one extra color without affecting the reported index.

use crate::drawing::{find_embedding, Drawing, DEFAULT_EMBED_BUDGET};
use crate::graph::{blocks, validate_coloring, ColorAssignment, Edge, Graph};
use crate::oracle::{self, Search};
use crate::patterns::{configurations, ConfigKind};
use crate::reduce::{extend_coloring, reduce, ReduceError};
use std::collections::BTreeMap;
use thiserror::Error;

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct ChromaOptions {
    /// Placement budget for each crossing-minimal embedding search.
    pub embed_budget: u64,
    /// Largest edge count the exact backtracking oracle may be asked to
    /// rescue when the structural recursion cannot proceed.
    pub oracle_edge_limit: usize,
    /// Placement budget for the optimal-witness search on blocks of maximum
    /// degree 4 or more before falling back to the Vizing colorer.
    pub delta_witness_budget: u64,
}

impl Default for ChromaOptions {
    fn default() -> Self {
        ChromaOptions {
            embed_budget: DEFAULT_EMBED_BUDGET,
            oracle_edge_limit: oracle::BRUTE_EDGE_LIMIT,
            delta_witness_budget: 2_000_000,
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Classification {
    /// Chromatic index equals the maximum degree.
    ClassOne,
    /// Chromatic index is one more than the maximum degree.
    ClassTwo,
}

/// Why the graph needs an extra color.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Class2Reason {
    /// A component is an odd cycle (maximum degree 2).
    OddCycle { vertices: Vec<usize> },
    /// A block of maximum degree 3 admits no proper 3-edge-coloring.
    UncolorableBlock { vertices: Vec<usize> },
}

/// Recursion log: one entry per structural decision, in the order taken.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum TraceEvent {
    /// A block small enough for the exact oracle base case.
    SmallBlockOracle { n: usize, m: usize },
    /// A configuration was shrunk out and the recursion continued.
    Shrunk { kind: ConfigKind },
    /// The block is a ladder closed onto a single attachment vertex, hence
    /// not 3-edge-colorable.
    ClosedLadder { rungs: usize },
    /// A match whose surgery would need coinciding attachment points was
    /// skipped.
    SkippedClosedGadget { kind: ConfigKind },
    /// No configuration matched the drawing of this block.
    NoConfiguration { n: usize, m: usize },
    /// The shrunken graph had no proper 3-edge-coloring, so neither does the
    /// block. For deletion kinds this follows from subgraph monotonicity,
    /// for the merging kinds from the colors the configuration forces.
    UncolorablePropagated { kind: ConfigKind },
    /// The exact oracle answered where the structural recursion could not.
    OracleRescue { n: usize, m: usize },
    /// A block witness came from the Vizing colorer after the budgeted
    /// optimal search gave up.
    VizingWitness { n: usize, m: usize },
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ChromaResult {
    /// The exact chromatic index.
    pub chi: usize,
    pub classification: Classification,
    /// Present exactly when the graph is class 2.
    pub class2_reason: Option<Class2Reason>,
    /// A proper edge coloring; it uses exactly `chi` colors when
    /// `witness_optimal` holds, and at most one more otherwise.
    pub coloring: ColorAssignment,
    pub witness_optimal: bool,
    pub trace: Vec<TraceEvent>,
    /// True when some answer relied on the exact oracle instead of the
    /// structural recursion.
    pub fallback_used: bool,
}

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum ChromaError {
    #[error("component {component:?} is not outer-1-planar")]
    NotOuter1Planar { component: Vec<usize> },
    #[error("embedding search ran out of budget before deciding outer-1-planarity")]
    UndecidedEmbeddability,
    #[error("supplied vertex order is not a valid outer-1-planar drawing: {0}")]
    InvalidDrawing(String),
    #[error(
        "structure analysis stalled on a block with {n} vertices and {m} edges, \
         beyond the {limit}-edge exact-search limit"
    )]
    AnalysisIncomplete { n: usize, m: usize, limit: usize },
}

/// Chromatic index with default options.
pub fn chromatic_index(g: &Graph) -> Result<ChromaResult, ChromaError> {
    chromatic_index_with(g, &ChromaOptions::default())
}

/// Chromatic index; outer-1-planarity of every component is verified by the
/// embedding search before any coloring runs.
pub fn chromatic_index_with(g: &Graph, opts: &ChromaOptions) -> Result<ChromaResult, ChromaError> {
    for comp in g.components() {
        let (sub, _) = g.induced_subgraph(&comp);
        let emb = find_embedding(&sub, opts.embed_budget);
        if emb.drawing.is_none() {
            return Err(if emb.optimal {
                ChromaError::NotOuter1Planar { component: comp }
            } else {
                ChromaError::UndecidedEmbeddability
            });
        }
    }
    let mut ctx = Ctx::new(*opts);
    solve(g, &mut ctx)
}

/// Chromatic index for a graph whose outer-1-planarity is witnessed by the
/// given cyclic vertex order; no embedding search runs up front.
pub fn chromatic_index_with_order(
    g: &Graph,
    order: &[usize],
    opts: &ChromaOptions,
) -> Result<ChromaResult, ChromaError> {
    let d = Drawing::new(g.clone(), order.to_vec())
        .map_err(|e| ChromaError::InvalidDrawing(e.to_string()))?;
    d.check_outer1()
        .map_err(|e| ChromaError::InvalidDrawing(e.to_string()))?;
    let mut ctx = Ctx::new(*opts);
    solve(g, &mut ctx)
}

/// A proper 3-edge-coloring if one exists. Always `None` when the maximum
/// degree exceeds 3; errors only if the structural machinery stalls.
pub fn three_edge_coloring(g: &Graph) -> Result<Option<ColorAssignment>, ChromaError> {
    if g.max_degree() > 3 {
        return Ok(None);
    }
    let mut ctx = Ctx::new(ChromaOptions::default());
    ctx.three_color(g)
}

struct Ctx {
    opts: ChromaOptions,
    trace: Vec<TraceEvent>,
    fallback_used: bool,
}

struct BlockOutcome {
    chi: usize,
    coloring: ColorAssignment,
    class2: Option<Class2Reason>,
}

fn solve(g: &Graph, ctx: &mut Ctx) -> Result<ChromaResult, ChromaError> {
    let delta = g.max_degree();
    let decomp = blocks(g);
    let mut chi = delta;
    let mut parts: Vec<(Vec<usize>, ColorAssignment)> = Vec::new();
    let mut outcomes: Vec<(usize, BlockOutcome)> = Vec::new();
    for (bi, block) in decomp.blocks.iter().enumerate() {
        let (sub, to_old) = g.induced_subgraph(&block.vertices);
        let out = ctx.color_block(&sub)?;
        chi = chi.max(out.chi);
        parts.push((block.vertices.clone(), relabel(&out.coloring, &to_old)));
        outcomes.push((bi, out));
    }
    let classification = if chi == delta {
        Classification::ClassOne
    } else {
        Classification::ClassTwo
    };
    let class2_reason = if classification == Classification::ClassTwo {
        outcomes
            .iter()
            .find(|(_, out)| out.chi == chi && out.class2.is_some())
            .map(|(bi, out)| {
                let vertices = decomp.blocks[*bi].vertices.clone();
                match out.class2.as_ref().unwrap() {
                    Class2Reason::OddCycle { .. } => Class2Reason::OddCycle { vertices },
                    Class2Reason::UncolorableBlock { .. } => {
                        Class2Reason::UncolorableBlock { vertices }
                    }
                }
            })
    } else {
        None
    };
    let k = chi.max(
        parts
            .iter()
            .map(|(_, c)| c.max_color_used())
            .max()
            .unwrap_or(0),
    );
    let coloring = merge_block_colorings(g.n(), &parts, k);
    debug_assert_eq!(validate_coloring(g, &coloring), Ok(()));
    Ok(ChromaResult {
        chi,
        classification,
        class2_reason,
        coloring,
        witness_optimal: k == chi,
        trace: std::mem::take(&mut ctx.trace),
        fallback_used: ctx.fallback_used,
    })
}

/// Rewrites a coloring through a vertex relabeling.
fn relabel(c: &ColorAssignment, to_old: &[usize]) -> ColorAssignment {
    let mut out = ColorAssignment::new(c.k());
    for (e, color) in c.iter() {
        out.set(Edge::new(to_old[e.u()], to_old[e.v()]), color);
    }
    out
}

impl Ctx {
    fn new(opts: ChromaOptions) -> Self {
        Ctx {
            opts,
            trace: Vec::new(),
            fallback_used: false,
        }
    }

    /// Exact chromatic index and witness for one 2-connected block (or
    /// bridge).
    fn color_block(&mut self, b: &Graph) -> Result<BlockOutcome, ChromaError> {
        let delta = b.max_degree();
        if b.m() == 1 {
            let mut coloring = ColorAssignment::new(1);
            coloring.set(b.edges()[0], 1);
            return Ok(BlockOutcome {
                chi: 1,
                coloring,
                class2: None,
            });
        }
        if delta == 2 {
            let (chi, coloring) = color_cycle(b);
            let class2 = (chi == 3).then(|| Class2Reason::OddCycle {
                vertices: (0..b.n()).collect(),
            });
            return Ok(BlockOutcome {
                chi,
                coloring,
                class2,
            });
        }
        if delta == 3 {
            return Ok(match self.three_color(b)? {
                Some(coloring) => BlockOutcome {
                    chi: 3,
                    coloring,
                    class2: None,
                },
                None => BlockOutcome {
                    chi: 4,
                    coloring: vizing_color(b),
                    class2: Some(Class2Reason::UncolorableBlock {
                        vertices: (0..b.n()).collect(),
                    }),
                },
            });
        }
        // Maximum degree 4 or more: the block is class 1; only the witness
        // search can be expensive.
        match oracle::color_with_budget(b, delta, self.opts.delta_witness_budget) {
            Search::Found(coloring) => Ok(BlockOutcome {
                chi: delta,
                coloring,
                class2: None,
            }),
            Search::OutOfBudget => {
                self.trace
                    .push(TraceEvent::VizingWitness { n: b.n(), m: b.m() });
                Ok(BlockOutcome {
                    chi: delta,
                    coloring: vizing_color(b),
                    class2: None,
                })
            }
            // Unreachable for outer-1-planar blocks; report the truth if the
            // search ever proves the witness impossible.
            Search::Impossible => Ok(BlockOutcome {
                chi: delta + 1,
                coloring: vizing_color(b),
                class2: Some(Class2Reason::UncolorableBlock {
                    vertices: (0..b.n()).collect(),
                }),
            }),
        }
    }

    /// A proper 3-edge-coloring of an arbitrary graph of maximum degree at
    /// most 3, or None if there is none.
    fn three_color(&mut self, g: &Graph) -> Result<Option<ColorAssignment>, ChromaError> {
        assert!(g.max_degree() <= 3);
        if g.m() == 0 {
            return Ok(Some(ColorAssignment::new(3)));
        }
        let decomp = blocks(g);
        let mut parts: Vec<(Vec<usize>, ColorAssignment)> = Vec::new();
        for block in &decomp.blocks {
            let (sub, to_old) = g.induced_subgraph(&block.vertices);
            let c = if sub.m() == 1 {
                let mut c = ColorAssignment::new(3);
                c.set(sub.edges()[0], 1);
                c
            } else if sub.max_degree() == 2 {
                let (_, cyc) = color_cycle(&sub);
                cyc.map_colors(3, |c| c)
            } else {
                match self.block3(&sub)? {
                    Some(c) => c,
                    None => return Ok(None),
                }
            };
            parts.push((block.vertices.clone(), relabel(&c, &to_old)));
        }
        let merged = merge_block_colorings(g.n(), &parts, 3);
        debug_assert_eq!(validate_coloring(g, &merged), Ok(()));
        Ok(Some(merged))
    }

    /// Core recursion: 2-connected, maximum degree exactly 3.
    fn block3(&mut self, b: &Graph) -> Result<Option<ColorAssignment>, ChromaError> {
        if b.n() <= 6 {
            self.trace
                .push(TraceEvent::SmallBlockOracle { n: b.n(), m: b.m() });
            return Ok(oracle::color_with(b, 3));
        }
        let emb = find_embedding(b, self.opts.embed_budget);
        let Some(d) = emb.drawing else {
            // Blocks reached here are outer-1-planar, so a missing drawing
            // means the budget ran dry; the oracle may still answer.
            return self.rescue(b);
        };
        for cfg in configurations(&d) {
            match reduce(b, &cfg) {
                Ok(step) => {
                    self.trace.push(TraceEvent::Shrunk { kind: cfg.kind });
                    return match self.three_color(&step.reduced)? {
                        Some(inner) => Ok(Some(
                            extend_coloring(&step, &inner)
                                .expect("extension tables are total on proper colorings"),
                        )),
                        None => {
                            self.trace
                                .push(TraceEvent::UncolorablePropagated { kind: cfg.kind });
                            Ok(None)
                        }
                    };
                }
                Err(ReduceError::AnchorsCoincide(ConfigKind::H(t))) => {
                    self.trace.push(TraceEvent::ClosedLadder { rungs: t });
                    return Ok(None);
                }
                Err(ReduceError::AnchorsCoincide(kind)) => {
                    self.trace.push(TraceEvent::SkippedClosedGadget { kind });
                    continue;
                }
                Err(ReduceError::AnchorsAdjacent) => continue,
                Err(e) => unreachable!("matched configuration failed to shrink: {e}"),
            }
        }
        self.trace
            .push(TraceEvent::NoConfiguration { n: b.n(), m: b.m() });
        self.rescue(b)
    }

    fn rescue(&mut self, b: &Graph) -> Result<Option<ColorAssignment>, ChromaError> {
        if b.m() <= self.opts.oracle_edge_limit {
            self.fallback_used = true;
            self.trace
                .push(TraceEvent::OracleRescue { n: b.n(), m: b.m() });
            Ok(oracle::color_with(b, 3))
        } else {
            Err(ChromaError::AnalysisIncomplete {
                n: b.n(),
                m: b.m(),
                limit: self.opts.oracle_edge_limit,
            })
        }
    }
}

/// Colors a graph of maximum degree at most 2: paths and even cycles
/// alternate two colors, odd cycles close with a third.
pub fn color_cycle_path(g: &Graph) -> ColorAssignment {
    assert!(g.max_degree() <= 2, "only paths and cycles");
    let mut pairs: Vec<(Edge, usize)> = Vec::new();
    let mut seen = vec![false; g.n()];
    for start in 0..g.n() {
        if seen[start] || g.degree(start) == 2 {
            continue;
        }
        // Path component, walked from an endpoint.
        let (mut prev, mut cur, mut i) = (usize::MAX, start, 0);
        seen[cur] = true;
        while let Some(&next) = g.neighbors(cur).iter().find(|&&w| w != prev) {
            pairs.push((Edge::new(cur, next), 1 + i % 2));
            seen[next] = true;
            prev = cur;
            cur = next;
            i += 1;
        }
    }
    for start in 0..g.n() {
        if seen[start] {
            continue;
        }
        // Everything left is a cycle.
        let (mut prev, mut cur) = (usize::MAX, start);
        let mut walk = Vec::new();
        loop {
            seen[cur] = true;
            let next = *g
                .neighbors(cur)
                .iter()
                .find(|&&w| w != prev)
                .expect("cycle vertex has a forward neighbor");
            walk.push(Edge::new(cur, next));
            prev = cur;
            cur = next;
            if cur == start {
                break;
            }
        }
        let odd = walk.len() % 2 == 1;
        for (i, &e) in walk.iter().enumerate() {
            let color = if odd && i == walk.len() - 1 {
                3
            } else {
                1 + i % 2
            };
            pairs.push((e, color));
        }
    }
    let k = pairs.iter().map(|&(_, c)| c).max().unwrap_or(0);
    let mut out = ColorAssignment::new(k);
    for (e, c) in pairs {
        out.set(e, c);
    }
    out
}

/// Colors a cycle: alternating colors, a third on the closing edge when the
/// length is odd. Returns (chromatic index, coloring).
fn color_cycle(b: &Graph) -> (usize, ColorAssignment) {
    assert!(b.max_degree() == 2 && b.m() >= 3 && b.is_two_connected());
    let mut walk = Vec::with_capacity(b.m());
    let (mut prev, mut cur) = (usize::MAX, 0);
    loop {
        let next = *b
            .neighbors(cur)
            .iter()
            .find(|&&w| w != prev)
            .expect("cycle vertex has a forward neighbor");
        walk.push(Edge::new(cur, next));
        prev = cur;
        cur = next;
        if cur == 0 {
            break;
        }
    }
    let odd = walk.len() % 2 == 1;
    let chi = if odd { 3 } else { 2 };
    let mut coloring = ColorAssignment::new(chi);
    for (i, &e) in walk.iter().enumerate() {
        let color = if odd && i == walk.len() - 1 {
            3
        } else {
            1 + i % 2
        };
        coloring.set(e, color);
    }
    (chi, coloring)
}

/// Merges proper colorings of the blocks of an n-vertex graph into one
/// proper coloring with k colors. Parts are (block vertices, coloring keyed
/// by original edge ids); blocks meet only in cut vertices, and k must be at
/// least the maximum degree.
pub fn merge_block_colorings(
    n: usize,
    parts: &[(Vec<usize>, ColorAssignment)],
    k: usize,
) -> ColorAssignment {
    assert!(k <= 32, "palette merging supports up to 32 colors");
    let mut merged = ColorAssignment::new(k);
    let mut used_at = vec![0u32; n];
    let mut placed = vec![false; n];
    let mut remaining: Vec<usize> = (0..parts.len()).collect();
    while !remaining.is_empty() {
        // Prefer a part touching the already-colored region so each part
        // attaches through exactly one cut vertex.
        let pick = remaining
            .iter()
            .position(|&i| parts[i].0.iter().any(|&v| placed[v]))
            .unwrap_or(0);
        let pi = remaining.remove(pick);
        let (vertices, coloring) = &parts[pi];
        let shared: Vec<usize> = vertices.iter().copied().filter(|&v| placed[v]).collect();
        assert!(shared.len() <= 1, "blocks meet in at most one vertex");
        let perm = match shared.first() {
            None => (0..=k).collect::<Vec<usize>>(),
            Some(&v) => {
                let mut perm = vec![0usize; k + 1];
                let mut assigned = 0u32;
                let mut at_v: Vec<usize> = coloring
                    .iter()
                    .filter(|(e, _)| e.touches(v))
                    .map(|(_, c)| c)
                    .collect();
                at_v.sort_unstable();
                at_v.dedup();
                // Colors incident to the cut vertex must move off the colors
                // the merged region already uses there; the rest only need
                // to keep the map a bijection.
                for &c in &at_v {
                    let t = (1..=k)
                        .find(|t| (used_at[v] | assigned) & (1 << t) == 0)
                        .expect("enough colors at the cut vertex");
                    perm[c] = t;
                    assigned |= 1 << t;
                }
                let spare: Vec<usize> = (1..=k).filter(|t| assigned & (1 << t) == 0).collect();
                let mut spare = spare.into_iter();
                for slot in perm.iter_mut().skip(1) {
                    if *slot == 0 {
                        *slot = spare.next().expect("palette map is a bijection");
                    }
                }
                perm
            }
        };
        for (e, c) in coloring.iter() {
            let t = perm[c];
            merged.set(e, t);
            used_at[e.u()] |= 1 << t;
            used_at[e.v()] |= 1 << t;
        }
        for &v in vertices {
            placed[v] = true;
        }
    }
    merged
}

/// Proper edge coloring with at most `max_degree + 1` colors by fan
/// rotations and alternating-path inversions.
pub fn vizing_color(g: &Graph) -> ColorAssignment {
    let k = g.max_degree() + 1;
    assert!(k <= 32, "fan recoloring supports up to 32 colors");
    let mut colors: BTreeMap<Edge, usize> = BTreeMap::new();
    let mut used = vec![0u32; g.n()];

    let free_at = |used: &[u32], v: usize| -> usize {
        (1..=k)
            .find(|c| used[v] & (1 << c) == 0)
            .expect("a vertex of degree below k always has a free color")
    };
    fn set(colors: &mut BTreeMap<Edge, usize>, used: &mut [u32], e: Edge, c: usize) {
        colors.insert(e, c);
        used[e.u()] |= 1 << c;
        used[e.v()] |= 1 << c;
    }
    fn unset(colors: &mut BTreeMap<Edge, usize>, used: &mut [u32], e: Edge) -> usize {
        let c = colors.remove(&e).expect("edge is colored");
        used[e.u()] &= !(1 << c);
        used[e.v()] &= !(1 << c);
        c
    }

    for &start in g.edges() {
        let (u, v) = start.endpoints();
        // Maximal fan at u starting from v: each next spoke's color is free
        // at the previous fan vertex.
        let mut fan = vec![v];
        loop {
            let last = *fan.last().unwrap();
            let next = g.neighbors(u).iter().copied().find(|&w| {
                !fan.contains(&w)
                    && colors
                        .get(&Edge::new(u, w))
                        .is_some_and(|&c| used[last] & (1 << c) == 0)
            });
            match next {
                Some(w) => fan.push(w),
                None => break,
            }
        }
        let c = free_at(&used, u);
        let d = free_at(&used, *fan.last().unwrap());
        if c != d {
            // Invert the maximal path from u alternating d, c.
            let mut path = Vec::new();
            let (mut cur, mut want) = (u, d);
            loop {
                let step = g
                    .neighbors(cur)
                    .iter()
                    .copied()
                    .find(|&w| colors.get(&Edge::new(cur, w)) == Some(&want));
                match step {
                    Some(w) => {
                        path.push(Edge::new(cur, w));
                        cur = w;
                        want = c + d - want;
                    }
                    None => break,
                }
            }
            // Swap in two passes: clearing one edge at a time would wipe a
            // mask bit its path neighbor has just started using.
            let olds: Vec<usize> = path
                .iter()
                .map(|&e| unset(&mut colors, &mut used, e))
                .collect();
            for (&e, &old) in path.iter().zip(&olds) {
                set(&mut colors, &mut used, e, c + d - old);
            }
        }
        debug_assert!(used[u] & (1 << d) == 0, "d is free at the fan center");
        // Shortest fan prefix that stays a fan under the current colors and
        // ends at a vertex where d is free.
        let mut rotate_to = None;
        for (i, &w) in fan.iter().enumerate() {
            if i > 0 {
                let cw = colors[&Edge::new(u, fan[i])];
                if used[fan[i - 1]] & (1 << cw) != 0 {
                    break;
                }
            }
            if used[w] & (1 << d) == 0 {
                rotate_to = Some(i);
                break;
            }
        }
        let j = rotate_to.expect("fan rotation target exists");
        for i in 0..j {
            let cn = unset(&mut colors, &mut used, Edge::new(u, fan[i + 1]));
            set(&mut colors, &mut used, Edge::new(u, fan[i]), cn);
        }
        set(&mut colors, &mut used, Edge::new(u, fan[j]), d);
    }

    let mut out = ColorAssignment::new(k);
    for (e, c) in colors {
        out.set(e, c);
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::oracle::{brute_chi, connected_graphs};
    use proptest::prelude::*;

    fn cycle(n: usize) -> Graph {
        let pairs: Vec<(usize, usize)> = (0..n).map(|i| (i, (i + 1) % n)).collect();
        Graph::new(n, &pairs).unwrap()
    }

    fn base_block() -> Graph {
        Graph::new(5, &[(0, 2), (0, 3), (1, 2), (1, 3), (2, 3), (0, 4), (1, 4)]).unwrap()
    }

    #[test]
    fn empty_graph_has_index_zero() {
        let g = Graph::new(0, &[]).unwrap();
        let r = chromatic_index(&g).unwrap();
        assert_eq!(r.chi, 0);
        assert_eq!(r.classification, Classification::ClassOne);
        assert!(r.coloring.is_empty());
    }

    #[test]
    fn isolated_vertices_need_no_colors() {
        let g = Graph::new(3, &[(0, 1)]).unwrap();
        let r = chromatic_index(&g).unwrap();
        assert_eq!((r.chi, r.classification), (1, Classification::ClassOne));
        assert_eq!(validate_coloring(&g, &r.coloring), Ok(()));
        let k1 = Graph::new(1, &[]).unwrap();
        assert_eq!(chromatic_index(&k1).unwrap().chi, 0);
    }

    #[test]
    fn paths_and_even_cycles_are_class_one() {
        let p4 = Graph::new(4, &[(0, 1), (1, 2), (2, 3)]).unwrap();
        let r = chromatic_index(&p4).unwrap();
        assert_eq!((r.chi, r.classification), (2, Classification::ClassOne));
        assert!(r.witness_optimal);

        let r = chromatic_index(&cycle(6)).unwrap();
        assert_eq!((r.chi, r.classification), (2, Classification::ClassOne));
        assert_eq!(validate_coloring(&cycle(6), &r.coloring), Ok(()));
    }

    #[test]
    fn odd_cycles_are_class_two() {
        let r = chromatic_index(&cycle(5)).unwrap();
        assert_eq!(r.chi, 3);
        assert_eq!(r.classification, Classification::ClassTwo);
        assert_eq!(
            r.class2_reason,
            Some(Class2Reason::OddCycle {
                vertices: vec![0, 1, 2, 3, 4]
            })
        );
        assert_eq!(validate_coloring(&cycle(5), &r.coloring), Ok(()));
        assert!(r.witness_optimal);
    }

    #[test]
    fn k4_is_class_one() {
        let k4 = Graph::new(4, &[(0, 1), (0, 2), (0, 3), (1, 2), (1, 3), (2, 3)]).unwrap();
        let r = chromatic_index(&k4).unwrap();
        assert_eq!((r.chi, r.classification), (3, Classification::ClassOne));
        assert_eq!(validate_coloring(&k4, &r.coloring), Ok(()));
        assert!(r.witness_optimal);
    }

    #[test]
    fn subdivided_k4_is_class_two_with_block_reason() {
        let b = base_block();
        let r = chromatic_index(&b).unwrap();
        assert_eq!(r.chi, 4);
        assert_eq!(r.classification, Classification::ClassTwo);
        assert_eq!(
            r.class2_reason,
            Some(Class2Reason::UncolorableBlock {
                vertices: vec![0, 1, 2, 3, 4]
            })
        );
        assert_eq!(validate_coloring(&b, &r.coloring), Ok(()));
        assert!(r.witness_optimal, "4 colors is optimal for this block");
        assert!(!r.fallback_used);
    }

    #[test]
    fn pendant_edge_lifts_the_block_obstruction() {
        // Raising the maximum degree to 4 makes the graph class 1 even
        // though it still contains the uncolorable block.
        let mut pairs = vec![(0, 2), (0, 3), (1, 2), (1, 3), (2, 3), (0, 4), (1, 4)];
        pairs.push((2, 5));
        let g = Graph::new(6, &pairs).unwrap();
        assert_eq!(g.max_degree(), 4);
        let r = chromatic_index(&g).unwrap();
        assert_eq!((r.chi, r.classification), (4, Classification::ClassOne));
        assert_eq!(r.class2_reason, None);
        assert_eq!(validate_coloring(&g, &r.coloring), Ok(()));
    }

    #[test]
    fn two_uncolorable_blocks_merge_into_a_class_one_graph() {
        // Two subdivided K4 blocks glued at their degree-2 vertices: the cut
        // vertex has degree 4, the graph is class 1 with chi 4.
        let mut pairs = vec![(0, 2), (0, 3), (1, 2), (1, 3), (2, 3), (0, 4), (1, 4)];
        for &(a, b) in &[(5, 7), (5, 8), (6, 7), (6, 8), (7, 8)] {
            pairs.push((a, b));
        }
        pairs.push((5, 4));
        pairs.push((6, 4));
        let g = Graph::new(9, &pairs).unwrap();
        assert_eq!(g.max_degree(), 4);
        let r = chromatic_index(&g).unwrap();
        assert_eq!((r.chi, r.classification), (4, Classification::ClassOne));
        assert_eq!(validate_coloring(&g, &r.coloring), Ok(()));
        assert!(r.witness_optimal);
    }

    #[test]
    fn disjoint_class_two_block_decides_the_graph() {
        let mut pairs = vec![(0, 2), (0, 3), (1, 2), (1, 3), (2, 3), (0, 4), (1, 4)];
        pairs.extend([(5, 6), (6, 7), (5, 7)]);
        let g = Graph::new(8, &pairs).unwrap();
        let r = chromatic_index(&g).unwrap();
        assert_eq!(r.chi, 4);
        assert_eq!(r.classification, Classification::ClassTwo);
        assert!(matches!(
            r.class2_reason,
            Some(Class2Reason::UncolorableBlock { .. })
        ));
    }

    #[test]
    fn non_outer_1_planar_input_is_refused() {
        let k33 = Graph::new(
            6,
            &[
                (0, 3),
                (0, 4),
                (0, 5),
                (1, 3),
                (1, 4),
                (1, 5),
                (2, 3),
                (2, 4),
                (2, 5),
            ],
        )
        .unwrap();
        assert!(matches!(
            chromatic_index(&k33),
            Err(ChromaError::NotOuter1Planar { .. })
        ));
    }

    #[test]
    fn supplied_orders_are_validated() {
        let g = cycle(4);
        let opts = ChromaOptions::default();
        let r = chromatic_index_with_order(&g, &[0, 1, 2, 3], &opts).unwrap();
        assert_eq!(r.chi, 2);
        assert!(chromatic_index_with_order(&g, &[0, 1, 2], &opts).is_err());
        assert!(chromatic_index_with_order(&g, &[0, 0, 1, 2], &opts).is_err());
        // An order that makes one edge cross twice is rejected.
        let h = Graph::new(6, &[(0, 3), (1, 4), (2, 5), (0, 1), (1, 2)]).unwrap();
        assert!(matches!(
            chromatic_index_with_order(&h, &[0, 1, 2, 3, 4, 5], &opts),
            Err(ChromaError::InvalidDrawing(_))
        ));
    }

    #[test]
    fn recursion_shrinks_larger_blocks() {
        // Closed 8-vertex instance: one shrink, then the rest decomposes.
        let g = Graph::new(
            8,
            &[
                (0, 1),
                (1, 2),
                (2, 3),
                (3, 4),
                (4, 5),
                (0, 3),
                (2, 5),
                (0, 6),
                (5, 7),
                (6, 7),
            ],
        )
        .unwrap();
        let r = chromatic_index(&g).unwrap();
        assert_eq!((r.chi, r.classification), (3, Classification::ClassOne));
        assert_eq!(validate_coloring(&g, &r.coloring), Ok(()));
        assert!(
            r.trace
                .iter()
                .any(|t| matches!(t, TraceEvent::Shrunk { .. })),
            "trace: {:?}",
            r.trace
        );
        assert!(!r.fallback_used);
    }

    #[test]
    fn three_coloring_wrapper_matches_block_semantics() {
        assert!(three_edge_coloring(&base_block()).unwrap().is_none());
        let k4 = Graph::new(4, &[(0, 1), (0, 2), (0, 3), (1, 2), (1, 3), (2, 3)]).unwrap();
        let c = three_edge_coloring(&k4).unwrap().unwrap();
        assert_eq!(validate_coloring(&k4, &c), Ok(()));
        let star = Graph::new(5, &[(0, 1), (0, 2), (0, 3), (0, 4)]).unwrap();
        assert_eq!(three_edge_coloring(&star).unwrap(), None);
    }

    #[test]
    fn degree_two_graphs_color_directly() {
        let p4 = Graph::new(4, &[(0, 1), (1, 2), (2, 3)]).unwrap();
        let c = color_cycle_path(&p4);
        assert_eq!(validate_coloring(&p4, &c), Ok(()));
        assert_eq!(c.max_color_used(), 2);
        let c = color_cycle_path(&cycle(5));
        assert_eq!(validate_coloring(&cycle(5), &c), Ok(()));
        assert_eq!(c.max_color_used(), 3);
        // Disjoint path and even cycle.
        let g = Graph::new(7, &[(0, 1), (1, 2), (3, 4), (4, 5), (5, 6), (6, 3)]).unwrap();
        let c = color_cycle_path(&g);
        assert_eq!(validate_coloring(&g, &c), Ok(()));
        assert_eq!(c.max_color_used(), 2);
    }

    #[test]
    fn uncolorable_verdicts_propagate_through_shrinks() {
        // A 7-vertex ladder closed onto one vertex: every proper 3-coloring
        // would force its two anchor edges, which share that vertex, to take
        // the same color.
        let g = Graph::new(
            7,
            &[
                (0, 1),
                (1, 2),
                (0, 3),
                (0, 2),
                (1, 3),
                (2, 4),
                (3, 5),
                (4, 5),
                (4, 6),
                (5, 6),
            ],
        )
        .unwrap();
        assert!(g.is_two_connected());
        let r = chromatic_index(&g).unwrap();
        assert_eq!(r.chi, 4);
        assert_eq!(r.classification, Classification::ClassTwo);
        assert_eq!(validate_coloring(&g, &r.coloring), Ok(()));
        assert!(r.witness_optimal);
        assert!(
            r.trace.iter().any(|t| matches!(
                t,
                TraceEvent::UncolorablePropagated { .. } | TraceEvent::ClosedLadder { .. }
            )),
            "trace: {:?}",
            r.trace
        );
    }

    #[test]
    fn merge_handles_many_blocks_at_one_cut() {
        // Star of three triangles sharing vertex 0, each part colored 1..3;
        // degree at the cut is 6, so 6 colors are needed and suffice.
        let mut parts = Vec::new();
        for t in 0..3 {
            let (a, b) = (1 + 2 * t, 2 + 2 * t);
            let mut c = ColorAssignment::new(6);
            c.set(Edge::new(0, a), 1);
            c.set(Edge::new(0, b), 2);
            c.set(Edge::new(a, b), 3);
            parts.push((vec![0, a, b], c));
        }
        let g = Graph::new(
            7,
            &[
                (0, 1),
                (0, 2),
                (1, 2),
                (0, 3),
                (0, 4),
                (3, 4),
                (0, 5),
                (0, 6),
                (5, 6),
            ],
        )
        .unwrap();
        let merged = merge_block_colorings(7, &parts, 6);
        assert_eq!(validate_coloring(&g, &merged), Ok(()));
    }

    #[test]
    fn agreement_with_the_oracle_on_all_small_graphs() {
        for n in 2..=6 {
            for g in connected_graphs(n, n.saturating_sub(1)) {
                if g.m() == 0 {
                    continue;
                }
                let emb = find_embedding(&g, DEFAULT_EMBED_BUDGET);
                let Some(_) = emb.drawing else { continue };
                let expected = brute_chi(&g).unwrap();
                let r = chromatic_index(&g).unwrap();
                assert_eq!(r.chi, expected, "graph {g:?}");
                assert_eq!(validate_coloring(&g, &r.coloring), Ok(()), "graph {g:?}");
                if r.witness_optimal {
                    assert!(r.coloring.max_color_used() <= r.chi, "graph {g:?}");
                }
                let delta = g.max_degree();
                match r.classification {
                    Classification::ClassOne => assert_eq!(r.chi, delta),
                    Classification::ClassTwo => {
                        assert_eq!(r.chi, delta + 1);
                        assert!(r.class2_reason.is_some());
                    }
                }
            }
        }
    }

    #[test]
    fn fan_recoloring_is_proper_on_all_small_graphs() {
        for n in 2..=6 {
            for g in connected_graphs(n, n.saturating_sub(1)) {
                if g.m() == 0 {
                    continue;
                }
                let c = vizing_color(&g);
                assert_eq!(validate_coloring(&g, &c), Ok(()), "graph {g:?}");
                assert!(c.max_color_used() <= g.max_degree() + 1, "graph {g:?}");
            }
        }
    }

    proptest! {
        #![proptest_config(ProptestConfig::with_cases(64))]
        #[test]
        fn random_outer_1_planar_graphs_agree_with_the_oracle(
            n in 3usize..=7,
            edge_bits in proptest::collection::vec(any::<bool>(), 21),
        ) {
            let mut pairs = Vec::new();
            let mut idx = 0;
            for u in 0..n {
                for v in (u + 1)..n {
                    if edge_bits[idx % edge_bits.len()] {
                        pairs.push((u, v));
                    }
                    idx += 1;
                }
            }
            let g = Graph::new(n, &pairs).unwrap();
            prop_assume!(g.m() > 0);
            prop_assume!((0..g.n()).all(|v| g.degree(v) > 0));
            prop_assume!(find_embedding(&g, DEFAULT_EMBED_BUDGET).drawing.is_some());
            let r = chromatic_index(&g).unwrap();
            prop_assert_eq!(r.chi, brute_chi(&g).unwrap());
            prop_assert_eq!(validate_coloring(&g, &r.coloring), Ok(()));
        }
    }
}
