//! Graph documents: the JSON input format, a whitespace edge-list fallback,
//! coloring files, and DOT export.

use o1p::graph::{validate_coloring, ColoringViolation, Graph, GraphError};
use o1p::{ColorAssignment, Edge};
use serde::{Deserialize, Serialize};
use thiserror::Error;

/// A graph on disk: vertex count, edge list, optional outer order, and
/// free-form metadata.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct GraphDocument {
    pub n: usize,
    pub edges: Vec<(usize, usize)>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub order: Option<Vec<usize>>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub name: Option<String>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub comment: Option<String>,
}

#[derive(Debug, Error)]
pub enum DocError {
    #[error("invalid JSON document: {0}")]
    Json(#[from] serde_json::Error),
    #[error("edge list: {0}")]
    EdgeList(String),
    #[error(transparent)]
    Graph(#[from] GraphError),
    #[error("order must be a permutation of 0..{n}, got {order:?}")]
    BadOrder { n: usize, order: Vec<usize> },
    #[error("invalid coloring file: {0}")]
    ColoringFormat(String),
    #[error(transparent)]
    Coloring(#[from] ColoringViolation),
}

impl GraphDocument {
    pub fn new(g: &Graph) -> Self {
        GraphDocument {
            n: g.n(),
            edges: g.edges().iter().map(|e| e.endpoints()).collect(),
            order: None,
            name: None,
            comment: None,
        }
    }

    /// JSON when the text starts with `{`, otherwise the "n m" edge list.
    pub fn parse(text: &str) -> Result<Self, DocError> {
        let doc = if text.trim_start().starts_with('{') {
            serde_json::from_str(text)?
        } else {
            Self::parse_edge_list(text)?
        };
        doc.validate()?;
        Ok(doc)
    }

    fn parse_edge_list(text: &str) -> Result<Self, DocError> {
        let mut nums = Vec::new();
        for line in text.lines() {
            let line = line.split('#').next().unwrap_or("");
            for tok in line.split_whitespace() {
                let v: usize = tok
                    .parse()
                    .map_err(|_| DocError::EdgeList(format!("bad token {tok:?}")))?;
                nums.push(v);
            }
        }
        let (&n, &m) = match &nums[..] {
            [n, m, ..] => (n, m),
            _ => return Err(DocError::EdgeList("expected an \"n m\" header".to_string())),
        };
        if nums.len() != 2 + 2 * m {
            return Err(DocError::EdgeList(format!(
                "expected {} endpoints after the header, got {}",
                2 * m,
                nums.len() - 2
            )));
        }
        let edges = nums[2..].chunks(2).map(|p| (p[0], p[1])).collect();
        Ok(GraphDocument {
            n,
            edges,
            order: None,
            name: None,
            comment: None,
        })
    }

    fn validate(&self) -> Result<(), DocError> {
        self.graph()?;
        if let Some(order) = &self.order {
            let mut seen = vec![false; self.n];
            let ok = order.len() == self.n
                && order
                    .iter()
                    .all(|&v| v < self.n && !std::mem::replace(&mut seen[v], true));
            if !ok {
                return Err(DocError::BadOrder {
                    n: self.n,
                    order: order.clone(),
                });
            }
        }
        Ok(())
    }

    pub fn graph(&self) -> Result<Graph, GraphError> {
        Graph::new(self.n, &self.edges)
    }

    pub fn emit(&self) -> String {
        let mut s = serde_json::to_string(self).expect("document serializes");
        s.push('\n');
        s
    }
}

/// Sorted `[u, v, color]` triples.
pub fn coloring_triples(c: &ColorAssignment) -> Vec<[usize; 3]> {
    let mut triples: Vec<[usize; 3]> = c.iter().map(|(e, color)| [e.u(), e.v(), color]).collect();
    triples.sort();
    triples
}

/// The triples as one JSON array.
pub fn emit_coloring(c: &ColorAssignment) -> String {
    let mut s = serde_json::to_string(&coloring_triples(c)).expect("triples serialize");
    s.push('\n');
    s
}

/// Reads a coloring file and checks it is proper for `g`.
pub fn parse_coloring(g: &Graph, text: &str) -> Result<ColorAssignment, DocError> {
    let triples: Vec<[usize; 3]> =
        serde_json::from_str(text).map_err(|e| DocError::ColoringFormat(e.to_string()))?;
    let k = triples.iter().map(|t| t[2]).max().unwrap_or(0);
    let mut c = ColorAssignment::new(k.max(1));
    for [u, v, color] in triples {
        if color == 0 {
            return Err(DocError::ColoringFormat(format!(
                "edge ({u}, {v}) has color 0, colors are 1-based"
            )));
        }
        c.set(Edge::new(u, v), color);
    }
    validate_coloring(g, &c)?;
    Ok(c)
}

const DOT_COLORS: [&str; 8] = [
    "red",
    "blue",
    "forestgreen",
    "orange",
    "purple",
    "brown",
    "cyan",
    "magenta",
];

/// Undirected DOT output with edges labeled and colored by class.
pub fn emit_dot(g: &Graph, c: &ColorAssignment, name: &str) -> String {
    let mut s = format!("graph \"{name}\" {{\n");
    for v in 0..g.n() {
        s.push_str(&format!("  {v};\n"));
    }
    for &e in g.edges() {
        match c.get(e) {
            Some(color) => {
                let pen = DOT_COLORS[(color - 1) % DOT_COLORS.len()];
                s.push_str(&format!(
                    "  {} -- {} [label=\"{}\", color=\"{}\"];\n",
                    e.u(),
                    e.v(),
                    color,
                    pen
                ));
            }
            None => s.push_str(&format!("  {} -- {};\n", e.u(), e.v())),
        }
    }
    s.push_str("}\n");
    s
}
