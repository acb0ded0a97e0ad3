//! The reducible configurations.
//!
//! Every 2-connected outer-1-planar graph with maximum degree 3 contains one
//! of eight fixed configurations G1..G8 or a member of the laddered family
//! H(t) in any crossing-minimal drawing. Each configuration is a template:
//! a set of roles, required edges between them, exact degree demands on the
//! interior roles, and pairs of edges that must cross in the drawing. The
//! two boundary roles `x` and `y` are the attachment points; they may carry
//! extra edges and may coincide.

use crate::drawing::Drawing;
use crate::graph::{Edge, Graph};
use std::fmt;
use thiserror::Error;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum ConfigKind {
    G1,
    G2,
    G3,
    G4,
    G5,
    G6,
    G7,
    G8,
    /// Ladder of `t + 1` rungs over a crossed core; `t >= 1`.
    H(usize),
}

impl fmt::Display for ConfigKind {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            ConfigKind::H(t) => write!(f, "H({t})"),
            other => write!(f, "{other:?}"),
        }
    }
}

/// A configuration template. `edges`, `crossings` and `exact_degree` are
/// indexed by role; `anchors` names the two roles that may coincide and may
/// have edges beyond the template.
#[derive(Debug, Clone)]
pub struct Template {
    pub kind: ConfigKind,
    pub role_names: Vec<String>,
    pub edges: Vec<(usize, usize)>,
    /// Pairs of indices into `edges` that must cross in the drawing.
    pub crossings: Vec<(usize, usize)>,
    pub exact_degree: Vec<Option<usize>>,
    pub anchors: (usize, usize),
}

impl Template {
    pub fn role_index(&self, name: &str) -> Option<usize> {
        self.role_names.iter().position(|r| r == name)
    }

    pub fn role_count(&self) -> usize {
        self.role_names.len()
    }
}

fn named(names: &[&str]) -> Vec<String> {
    names.iter().map(|s| s.to_string()).collect()
}

/// The template for a configuration kind. Panics on `H(0)`.
pub fn template(kind: ConfigKind) -> Template {
    use ConfigKind::*;
    match kind {
        G1 => Template {
            kind,
            role_names: named(&["u", "v", "x", "y"]),
            edges: vec![(0, 1), (0, 2), (1, 3)],
            crossings: vec![],
            exact_degree: vec![Some(2), Some(2), None, None],
            anchors: (2, 3),
        },
        G2 => Template {
            kind,
            role_names: named(&["u", "v", "w", "x", "y"]),
            edges: vec![(0, 1), (0, 2), (1, 2), (1, 3), (2, 4)],
            crossings: vec![],
            exact_degree: vec![Some(2), Some(3), Some(3), None, None],
            anchors: (3, 4),
        },
        G3 => Template {
            kind,
            role_names: named(&["u", "x", "v", "y"]),
            edges: vec![(0, 1), (1, 2), (2, 3), (3, 0)],
            crossings: vec![(0, 2)],
            exact_degree: vec![Some(2), None, Some(2), None],
            anchors: (1, 3),
        },
        G4 => Template {
            kind,
            role_names: named(&["u1", "u0", "w", "v0", "v1", "x", "y"]),
            edges: vec![
                (0, 1),
                (1, 2),
                (2, 3),
                (3, 4),
                (1, 4),
                (0, 3),
                (0, 5),
                (4, 6),
            ],
            crossings: vec![(4, 5)],
            exact_degree: vec![Some(3), Some(3), Some(2), Some(3), Some(3), None, None],
            anchors: (5, 6),
        },
        G5 => Template {
            kind,
            role_names: named(&["u2", "u1", "u0", "v0", "v1", "v2", "x", "y"]),
            edges: vec![
                (0, 1),
                (1, 2),
                (2, 3),
                (3, 4),
                (4, 5),
                (0, 3),
                (2, 5),
                (0, 6),
                (5, 7),
            ],
            crossings: vec![(5, 6)],
            exact_degree: vec![
                Some(3),
                Some(2),
                Some(3),
                Some(3),
                Some(2),
                Some(3),
                None,
                None,
            ],
            anchors: (6, 7),
        },
        G6 => Template {
            kind,
            role_names: named(&["u2", "u1", "u0", "w", "v0", "v1", "x", "y"]),
            edges: vec![
                (0, 1),
                (1, 2),
                (2, 3),
                (3, 4),
                (4, 5),
                (0, 4),
                (2, 5),
                (0, 6),
                (5, 7),
            ],
            crossings: vec![(5, 6)],
            exact_degree: vec![
                Some(3),
                Some(2),
                Some(3),
                Some(2),
                Some(3),
                Some(3),
                None,
                None,
            ],
            anchors: (6, 7),
        },
        G7 => Template {
            kind,
            role_names: named(&["u2", "u1", "u0", "w", "v0", "v1", "v2", "x", "y"]),
            edges: vec![
                (0, 1),
                (1, 2),
                (2, 3),
                (3, 4),
                (4, 5),
                (5, 6),
                (0, 4),
                (2, 6),
                (0, 7),
                (6, 8),
            ],
            crossings: vec![(6, 7)],
            exact_degree: vec![
                Some(3),
                Some(2),
                Some(3),
                Some(2),
                Some(3),
                Some(2),
                Some(3),
                None,
                None,
            ],
            anchors: (7, 8),
        },
        G8 => Template {
            kind,
            role_names: named(&["u2", "u1", "u0", "v0", "v1", "x", "y"]),
            edges: vec![
                (0, 1),
                (1, 2),
                (2, 3),
                (3, 4),
                (0, 3),
                (2, 4),
                (0, 5),
                (4, 6),
            ],
            crossings: vec![(4, 5)],
            exact_degree: vec![Some(3), Some(2), Some(3), Some(3), Some(3), None, None],
            anchors: (5, 6),
        },
        H(t) => {
            assert!(t >= 1, "H(t) requires t >= 1");
            // Roles: u_i at 2i, v_i at 2i + 1, then x, y.
            let ui = |i: usize| 2 * i;
            let vi = |i: usize| 2 * i + 1;
            let x = 2 * t + 2;
            let y = 2 * t + 3;
            let mut role_names = Vec::new();
            for i in 0..=t {
                role_names.push(format!("u{i}"));
                role_names.push(format!("v{i}"));
            }
            role_names.push("x".into());
            role_names.push("y".into());
            let mut edges = vec![(ui(0), vi(0)), (ui(1), vi(0)), (ui(0), vi(1))];
            let crossings = vec![(1, 2)];
            for i in 0..t {
                edges.push((ui(i), ui(i + 1)));
                edges.push((vi(i), vi(i + 1)));
            }
            for i in 2..=t {
                edges.push((ui(i), vi(i)));
            }
            edges.push((ui(t), x));
            edges.push((vi(t), y));
            let mut exact_degree = vec![Some(3); 2 * t + 2];
            exact_degree.push(None);
            exact_degree.push(None);
            Template {
                kind,
                role_names,
                edges,
                crossings,
                exact_degree,
                anchors: (x, y),
            }
        }
    }
}

/// A matched configuration: the kind plus the vertex filling each role.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Configuration {
    pub kind: ConfigKind,
    pub vertices: Vec<usize>,
}

impl Configuration {
    /// Role lookup by name; panics on a name the template does not have.
    pub fn role(&self, name: &str) -> usize {
        let tpl = template(self.kind);
        self.vertices[tpl
            .role_index(name)
            .unwrap_or_else(|| panic!("{} has no role named {name}", self.kind))]
    }

    pub fn roles(&self) -> Vec<(String, usize)> {
        template(self.kind)
            .role_names
            .into_iter()
            .zip(self.vertices.iter().copied())
            .collect()
    }

    pub fn x(&self) -> usize {
        let tpl = template(self.kind);
        self.vertices[tpl.anchors.0]
    }

    pub fn y(&self) -> usize {
        let tpl = template(self.kind);
        self.vertices[tpl.anchors.1]
    }

    pub fn anchors_coincide(&self) -> bool {
        self.x() == self.y()
    }
}

impl fmt::Display for Configuration {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}[", self.kind)?;
        for (i, (name, v)) in self.roles().iter().enumerate() {
            if i > 0 {
                write!(f, ", ")?;
            }
            write!(f, "{name}={v}")?;
        }
        write!(f, "]")
    }
}

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum MatchFailure {
    #[error("expected {expected} roles, got {got}")]
    WrongRoleCount { expected: usize, got: usize },
    #[error("vertex {vertex} out of range")]
    VertexOutOfRange { vertex: usize },
    #[error("roles {role_a} and {role_b} both map to vertex {vertex}")]
    RepeatedVertex {
        role_a: String,
        role_b: String,
        vertex: usize,
    },
    #[error("required edge {role_a}-{role_b} ({a}, {b}) is missing")]
    MissingEdge {
        role_a: String,
        role_b: String,
        a: usize,
        b: usize,
    },
    #[error("edges {e1} and {e2} must cross in the drawing but do not")]
    NotCrossed { e1: Edge, e2: Edge },
    #[error("role {role} (vertex {vertex}) must have degree {expected}, has {got}")]
    WrongDegree {
        role: String,
        vertex: usize,
        expected: usize,
        got: usize,
    },
}

fn check_assignment(
    g: &Graph,
    d: Option<&Drawing>,
    tpl: &Template,
    assignment: &[usize],
) -> Result<(), MatchFailure> {
    if assignment.len() != tpl.role_count() {
        return Err(MatchFailure::WrongRoleCount {
            expected: tpl.role_count(),
            got: assignment.len(),
        });
    }
    for &v in assignment {
        if v >= g.n() {
            return Err(MatchFailure::VertexOutOfRange { vertex: v });
        }
    }
    let anchor_pair = |a: usize, b: usize| (a, b) == tpl.anchors || (b, a) == tpl.anchors;
    for i in 0..assignment.len() {
        for j in i + 1..assignment.len() {
            if assignment[i] == assignment[j] && !anchor_pair(i, j) {
                return Err(MatchFailure::RepeatedVertex {
                    role_a: tpl.role_names[i].clone(),
                    role_b: tpl.role_names[j].clone(),
                    vertex: assignment[i],
                });
            }
        }
    }
    for &(ri, rj) in &tpl.edges {
        let (a, b) = (assignment[ri], assignment[rj]);
        if !g.has_edge(a, b) {
            return Err(MatchFailure::MissingEdge {
                role_a: tpl.role_names[ri].clone(),
                role_b: tpl.role_names[rj].clone(),
                a,
                b,
            });
        }
    }
    for (role, want) in tpl.exact_degree.iter().enumerate() {
        if let Some(want) = want {
            let v = assignment[role];
            if g.degree(v) != *want {
                return Err(MatchFailure::WrongDegree {
                    role: tpl.role_names[role].clone(),
                    vertex: v,
                    expected: *want,
                    got: g.degree(v),
                });
            }
        }
    }
    if let Some(d) = d {
        for &(ea, eb) in &tpl.crossings {
            let (a1, a2) = tpl.edges[ea];
            let (b1, b2) = tpl.edges[eb];
            let e1 = Edge::new(assignment[a1], assignment[a2]);
            let e2 = Edge::new(assignment[b1], assignment[b2]);
            if !d.edges_cross(e1, e2) {
                return Err(MatchFailure::NotCrossed { e1, e2 });
            }
        }
    }
    Ok(())
}

/// Verifies a full role assignment against the drawing: template edges,
/// exact degrees, role distinctness, and the required crossings.
pub fn match_template(
    d: &Drawing,
    kind: ConfigKind,
    assignment: &[usize],
) -> Result<(), MatchFailure> {
    check_assignment(d.graph(), Some(d), &template(kind), assignment)
}

/// Like [`match_template`] but ignoring the drawing, so only the graph-level
/// constraints are checked. This is what pasting recognition uses.
pub fn match_template_graph(
    g: &Graph,
    kind: ConfigKind,
    assignment: &[usize],
) -> Result<(), MatchFailure> {
    check_assignment(g, None, &template(kind), assignment)
}

struct Matcher<'a> {
    g: &'a Graph,
    d: Option<&'a Drawing>,
    tpl: &'a Template,
    assignment: Vec<usize>,
    found: Vec<Vec<usize>>,
    stop_at_first: bool,
}

impl Matcher<'_> {
    fn role_ok(&self, role: usize, v: usize) -> bool {
        if let Some(want) = self.tpl.exact_degree[role] {
            if self.g.degree(v) != want {
                return false;
            }
        }
        for (other, &w) in self.assignment.iter().enumerate().take(role) {
            if w == v {
                let anchors = self.tpl.anchors;
                if !((other, role) == anchors || (role, other) == anchors) {
                    return false;
                }
            }
        }
        for &(ri, rj) in &self.tpl.edges {
            let (hi, lo) = if ri > rj { (ri, rj) } else { (rj, ri) };
            if hi != role || lo >= role {
                continue;
            }
            let (a, b) = (
                if ri == role { v } else { self.assignment[ri] },
                if rj == role { v } else { self.assignment[rj] },
            );
            if !self.g.has_edge(a, b) {
                return false;
            }
        }
        if let Some(d) = self.d {
            for &(ea, eb) in &self.tpl.crossings {
                let roles = [
                    self.tpl.edges[ea].0,
                    self.tpl.edges[ea].1,
                    self.tpl.edges[eb].0,
                    self.tpl.edges[eb].1,
                ];
                if roles.iter().max() != Some(&role) {
                    continue;
                }
                let at = |r: usize| if r == role { v } else { self.assignment[r] };
                let e1 = Edge::new(at(roles[0]), at(roles[1]));
                let e2 = Edge::new(at(roles[2]), at(roles[3]));
                if !d.edges_cross(e1, e2) {
                    return false;
                }
            }
        }
        true
    }

    fn search(&mut self, role: usize) -> bool {
        if role == self.tpl.role_count() {
            self.found.push(self.assignment.clone());
            return self.stop_at_first;
        }
        for v in 0..self.g.n() {
            if self.role_ok(role, v) {
                self.assignment[role] = v;
                if self.search(role + 1) {
                    return true;
                }
            }
        }
        false
    }
}

fn matches_of(
    g: &Graph,
    d: Option<&Drawing>,
    kind: ConfigKind,
    stop_at_first: bool,
) -> Vec<Configuration> {
    let tpl = template(kind);
    let mut m = Matcher {
        g,
        d,
        tpl: &tpl,
        assignment: vec![usize::MAX; tpl.role_count()],
        found: Vec::new(),
        stop_at_first,
    };
    m.search(0);
    m.found
        .into_iter()
        .map(|vertices| Configuration { kind, vertices })
        .collect()
}

/// The kinds applicable to an n-vertex graph, in detection order:
/// G1..G8, then H(t) for increasing t.
pub fn kinds_for(n: usize) -> Vec<ConfigKind> {
    use ConfigKind::*;
    let mut kinds = vec![G1, G2, G3, G4, G5, G6, G7, G8];
    let mut t = 1;
    while 2 * t + 3 <= n {
        kinds.push(H(t));
        t += 1;
    }
    kinds
}

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum StructureError {
    #[error("maximum degree {0} exceeds 3")]
    DegreeTooLarge(usize),
    #[error("no configuration matches the drawing (n = {n}, order {order:?})")]
    NoConfiguration { n: usize, order: Vec<usize> },
}

/// The first configuration in detection order whose template matches the
/// drawing; within a kind the lexicographically smallest role assignment
/// wins. Matches realizing their crossings in the drawing are preferred; if
/// none exists the search is repeated on the graph alone, since a
/// configuration may sit in a drawing with its crossed edge cut by an edge
/// outside the matched subgraph. For a 2-connected outer-1-planar graph with
/// maximum degree 3 on a crossing-minimal drawing the only graph this fails
/// on is K4.
pub fn find_configuration(d: &Drawing) -> Result<Configuration, StructureError> {
    let g = d.graph();
    if g.max_degree() > 3 {
        return Err(StructureError::DegreeTooLarge(g.max_degree()));
    }
    for kind in kinds_for(g.n()) {
        if let Some(cfg) = matches_of(g, Some(d), kind, true).into_iter().next() {
            return Ok(cfg);
        }
    }
    for kind in kinds_for(g.n()) {
        if let Some(cfg) = matches_of(g, None, kind, true).into_iter().next() {
            return Ok(cfg);
        }
    }
    Err(StructureError::NoConfiguration {
        n: g.n(),
        order: d.order().to_vec(),
    })
}

/// Every configuration match in the drawing, in detection order: first the
/// matches whose crossings are realized in the drawing, then the remaining
/// graph-only matches.
pub fn configurations(d: &Drawing) -> Vec<Configuration> {
    let g = d.graph();
    let mut out: Vec<Configuration> = kinds_for(g.n())
        .into_iter()
        .flat_map(|kind| matches_of(g, Some(d), kind, false))
        .collect();
    let strict: std::collections::BTreeSet<(ConfigKind, Vec<usize>)> =
        out.iter().map(|c| (c.kind, c.vertices.clone())).collect();
    for kind in kinds_for(g.n()) {
        for cfg in matches_of(g, None, kind, false) {
            if !strict.contains(&(cfg.kind, cfg.vertices.clone())) {
                out.push(cfg);
            }
        }
    }
    out
}

/// Every drawing-free match of one kind, in lexicographic assignment order.
pub fn graph_configurations(g: &Graph, kind: ConfigKind) -> Vec<Configuration> {
    matches_of(g, None, kind, false)
}
