//! Simple undirected graphs with dense vertex ids `0..n`, block
//! decomposition, and proper-edge-coloring validation.

use std::collections::BTreeMap;
use std::fmt;
use thiserror::Error;

/// An undirected edge; endpoints are stored sorted so `Edge(a, b) == Edge(b, a)`.
#[derive(Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct Edge(usize, usize);

impl Edge {
    pub fn new(a: usize, b: usize) -> Self {
        if a <= b {
            Edge(a, b)
        } else {
            Edge(b, a)
        }
    }

    pub fn u(&self) -> usize {
        self.0
    }

    pub fn v(&self) -> usize {
        self.1
    }

    pub fn endpoints(&self) -> (usize, usize) {
        (self.0, self.1)
    }

    pub fn touches(&self, v: usize) -> bool {
        self.0 == v || self.1 == v
    }

    /// The endpoint that is not `v`. Panics if `v` is not an endpoint.
    pub fn other(&self, v: usize) -> usize {
        if self.0 == v {
            self.1
        } else {
            assert_eq!(self.1, v, "vertex {v} is not an endpoint of {self}");
            self.0
        }
    }

    pub fn shares_endpoint(&self, other: &Edge) -> bool {
        self.touches(other.0) || self.touches(other.1)
    }
}

impl fmt::Debug for Edge {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "({}, {})", self.0, self.1)
    }
}

impl fmt::Display for Edge {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "({}, {})", self.0, self.1)
    }
}

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum GraphError {
    #[error("self-loop at vertex {0}")]
    SelfLoop(usize),
    #[error("duplicate edge ({0}, {1})")]
    DuplicateEdge(usize, usize),
    #[error("vertex {id} out of range for n = {n}")]
    VertexOutOfRange { id: usize, n: usize },
}

/// A simple undirected graph. Edge and adjacency lists are kept sorted, so
/// iteration order is deterministic.
#[derive(Clone, PartialEq, Eq)]
pub struct Graph {
    n: usize,
    edges: Vec<Edge>,
    adj: Vec<Vec<usize>>,
}

impl Graph {
    pub fn new(n: usize, pairs: &[(usize, usize)]) -> Result<Self, GraphError> {
        let mut edges = Vec::with_capacity(pairs.len());
        for &(a, b) in pairs {
            if a == b {
                return Err(GraphError::SelfLoop(a));
            }
            for &id in [a, b].iter() {
                if id >= n {
                    return Err(GraphError::VertexOutOfRange { id, n });
                }
            }
            edges.push(Edge::new(a, b));
        }
        edges.sort_unstable();
        if let Some(w) = edges.windows(2).find(|w| w[0] == w[1]) {
            return Err(GraphError::DuplicateEdge(w[0].0, w[0].1));
        }
        let mut adj = vec![Vec::new(); n];
        for e in &edges {
            adj[e.0].push(e.1);
            adj[e.1].push(e.0);
        }
        for list in &mut adj {
            list.sort_unstable();
        }
        Ok(Graph { n, edges, adj })
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn m(&self) -> usize {
        self.edges.len()
    }

    pub fn edges(&self) -> &[Edge] {
        &self.edges
    }

    pub fn neighbors(&self, v: usize) -> &[usize] {
        &self.adj[v]
    }

    pub fn degree(&self, v: usize) -> usize {
        self.adj[v].len()
    }

    pub fn max_degree(&self) -> usize {
        self.adj.iter().map(Vec::len).max().unwrap_or(0)
    }

    pub fn min_degree(&self) -> usize {
        self.adj.iter().map(Vec::len).min().unwrap_or(0)
    }

    pub fn has_edge(&self, a: usize, b: usize) -> bool {
        self.adj[a].binary_search(&b).is_ok()
    }

    /// Vertex sets of the connected components, each sorted, ordered by
    /// smallest member.
    pub fn components(&self) -> Vec<Vec<usize>> {
        let mut seen = vec![false; self.n];
        let mut out = Vec::new();
        for start in 0..self.n {
            if seen[start] {
                continue;
            }
            let mut comp = vec![start];
            seen[start] = true;
            let mut stack = vec![start];
            while let Some(v) = stack.pop() {
                for &w in &self.adj[v] {
                    if !seen[w] {
                        seen[w] = true;
                        comp.push(w);
                        stack.push(w);
                    }
                }
            }
            comp.sort_unstable();
            out.push(comp);
        }
        out
    }

    pub fn is_connected(&self) -> bool {
        self.components().len() <= 1
    }

    /// Connected with no cut vertex. Single vertices and single edges count
    /// as two-connected here; callers that need `n >= 3` check it themselves.
    pub fn is_two_connected(&self) -> bool {
        self.is_connected() && blocks(self).cut_vertices.is_empty()
    }

    /// The subgraph induced on `vs` (need not be sorted), relabeled densely.
    /// Returns the subgraph and the map from new ids to old ids.
    pub fn induced_subgraph(&self, vs: &[usize]) -> (Graph, Vec<usize>) {
        let mut new_to_old: Vec<usize> = vs.to_vec();
        new_to_old.sort_unstable();
        new_to_old.dedup();
        let mut old_to_new = vec![usize::MAX; self.n];
        for (new, &old) in new_to_old.iter().enumerate() {
            old_to_new[old] = new;
        }
        let pairs: Vec<(usize, usize)> = self
            .edges
            .iter()
            .filter(|e| old_to_new[e.0] != usize::MAX && old_to_new[e.1] != usize::MAX)
            .map(|e| (old_to_new[e.0], old_to_new[e.1]))
            .collect();
        let g = Graph::new(new_to_old.len(), &pairs).expect("induced subgraph of a simple graph");
        (g, new_to_old)
    }

    pub fn without_edge(&self, e: Edge) -> Graph {
        let pairs: Vec<(usize, usize)> = self
            .edges
            .iter()
            .filter(|f| **f != e)
            .map(|f| f.endpoints())
            .collect();
        Graph::new(self.n, &pairs).expect("removing an edge keeps the graph simple")
    }
}

impl fmt::Debug for Graph {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "Graph(n={}, edges={:?})", self.n, self.edges)
    }
}

/// One block: a maximal 2-connected subgraph or a bridge with its endpoints.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Block {
    pub vertices: Vec<usize>,
    pub edges: Vec<Edge>,
}

/// The block decomposition of a graph. Every edge lies in exactly one block;
/// isolated vertices appear in no block.
#[derive(Debug, Clone)]
pub struct BlockDecomposition {
    pub blocks: Vec<Block>,
    pub cut_vertices: Vec<usize>,
    /// For each cut vertex, the indices of the blocks containing it.
    pub blocks_at_cut: BTreeMap<usize, Vec<usize>>,
}

/// Block decomposition by depth-first search with an edge stack. Blocks are
/// sorted by vertex list, cut vertices ascending.
pub fn blocks(g: &Graph) -> BlockDecomposition {
    struct Dfs<'a> {
        g: &'a Graph,
        num: Vec<usize>,
        low: Vec<usize>,
        next: usize,
        stack: Vec<Edge>,
        raw_blocks: Vec<Vec<Edge>>,
        cuts: Vec<bool>,
    }

    impl Dfs<'_> {
        fn visit(&mut self, v: usize, parent: Option<usize>) {
            self.num[v] = self.next;
            self.low[v] = self.next;
            self.next += 1;
            let mut children = 0;
            for i in 0..self.g.neighbors(v).len() {
                let w = self.g.neighbors(v)[i];
                if Some(w) == parent {
                    continue;
                }
                if self.num[w] == usize::MAX {
                    children += 1;
                    self.stack.push(Edge::new(v, w));
                    self.visit(w, Some(v));
                    self.low[v] = self.low[v].min(self.low[w]);
                    if self.low[w] >= self.num[v] {
                        if parent.is_some() || children > 1 {
                            self.cuts[v] = true;
                        }
                        let mut blk = Vec::new();
                        loop {
                            let top = self.stack.pop().expect("tree edge is on the stack");
                            blk.push(top);
                            if top == Edge::new(v, w) {
                                break;
                            }
                        }
                        self.raw_blocks.push(blk);
                    }
                } else if self.num[w] < self.num[v] {
                    self.stack.push(Edge::new(v, w));
                    self.low[v] = self.low[v].min(self.num[w]);
                }
            }
        }
    }

    let mut dfs = Dfs {
        g,
        num: vec![usize::MAX; g.n()],
        low: vec![0; g.n()],
        next: 0,
        stack: Vec::new(),
        raw_blocks: Vec::new(),
        cuts: vec![false; g.n()],
    };
    for v in 0..g.n() {
        if dfs.num[v] == usize::MAX && g.degree(v) > 0 {
            dfs.visit(v, None);
        }
    }

    let mut blocks: Vec<Block> = dfs
        .raw_blocks
        .into_iter()
        .map(|mut edges| {
            edges.sort_unstable();
            let mut vertices: Vec<usize> = edges.iter().flat_map(|e| [e.0, e.1]).collect();
            vertices.sort_unstable();
            vertices.dedup();
            Block { vertices, edges }
        })
        .collect();
    blocks.sort_by(|a, b| a.vertices.cmp(&b.vertices));

    let cut_vertices: Vec<usize> = (0..g.n()).filter(|&v| dfs.cuts[v]).collect();
    let mut blocks_at_cut: BTreeMap<usize, Vec<usize>> = BTreeMap::new();
    for &c in &cut_vertices {
        let ids = blocks
            .iter()
            .enumerate()
            .filter(|(_, b)| b.vertices.binary_search(&c).is_ok())
            .map(|(i, _)| i)
            .collect();
        blocks_at_cut.insert(c, ids);
    }
    BlockDecomposition {
        blocks,
        cut_vertices,
        blocks_at_cut,
    }
}

/// A partial or total assignment of colors `1..=k` to edges.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ColorAssignment {
    k: usize,
    colors: BTreeMap<Edge, usize>,
}

impl ColorAssignment {
    pub fn new(k: usize) -> Self {
        ColorAssignment {
            k,
            colors: BTreeMap::new(),
        }
    }

    pub fn k(&self) -> usize {
        self.k
    }

    pub fn set(&mut self, e: Edge, color: usize) {
        assert!(
            color >= 1 && color <= self.k,
            "color {color} out of range 1..={}",
            self.k
        );
        self.colors.insert(e, color);
    }

    pub fn get(&self, e: Edge) -> Option<usize> {
        self.colors.get(&e).copied()
    }

    pub fn len(&self) -> usize {
        self.colors.len()
    }

    pub fn is_empty(&self) -> bool {
        self.colors.is_empty()
    }

    /// Edge/color pairs in edge order.
    pub fn iter(&self) -> impl Iterator<Item = (Edge, usize)> + '_ {
        self.colors.iter().map(|(e, c)| (*e, *c))
    }

    pub fn max_color_used(&self) -> usize {
        self.colors.values().copied().max().unwrap_or(0)
    }

    /// Applies a palette relabeling; `f` must be injective on `1..=k`.
    pub fn map_colors(&self, k: usize, f: impl Fn(usize) -> usize) -> ColorAssignment {
        let mut out = ColorAssignment::new(k);
        for (e, c) in self.iter() {
            out.set(e, f(c));
        }
        out
    }
}

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum ColoringViolation {
    #[error("edge {0} of the graph has no color")]
    MissingEdge(Edge),
    #[error("colored edge {0} is not in the graph")]
    UnknownEdge(Edge),
    #[error("edge {edge} has color {color}, outside 1..={k}")]
    ColorOutOfRange { edge: Edge, color: usize, k: usize },
    #[error("edges {first} and {second} share a vertex but both have color {color}")]
    AdjacentSameColor {
        first: Edge,
        second: Edge,
        color: usize,
    },
}

/// Checks that `c` is a total proper edge coloring of `g`. The first
/// violation in edge order is reported.
pub fn validate_coloring(g: &Graph, c: &ColorAssignment) -> Result<(), ColoringViolation> {
    for (e, color) in c.iter() {
        if e.1 >= g.n() || !g.has_edge(e.0, e.1) {
            return Err(ColoringViolation::UnknownEdge(e));
        }
        if color < 1 || color > c.k() {
            return Err(ColoringViolation::ColorOutOfRange {
                edge: e,
                color,
                k: c.k(),
            });
        }
    }
    for &e in g.edges() {
        if c.get(e).is_none() {
            return Err(ColoringViolation::MissingEdge(e));
        }
    }
    for v in 0..g.n() {
        let nbrs = g.neighbors(v);
        for i in 0..nbrs.len() {
            for j in i + 1..nbrs.len() {
                let e1 = Edge::new(v, nbrs[i]);
                let e2 = Edge::new(v, nbrs[j]);
                let (c1, c2) = (c.get(e1).unwrap(), c.get(e2).unwrap());
                if c1 == c2 {
                    return Err(ColoringViolation::AdjacentSameColor {
                        first: e1.min(e2),
                        second: e1.max(e2),
                        color: c1,
                    });
                }
            }
        }
    }
    Ok(())
}
