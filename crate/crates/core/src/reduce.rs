//! Shrinking a matched configuration out of a graph and lifting a proper
//! 3-edge-coloring of the smaller graph back to the original.
//!
//! Each configuration kind comes with a surgery: G1 removes one edge, G3 and
//! G5..G7 delete the interior vertices, G2, G4 and G8 delete part of the
//! interior and identify the two rim vertices, and H(t) deletes the whole
//! ladder core and joins the two attachment points by a fresh edge. Every
//! surgery strictly decreases `|V| + |E|`, keeps the graph outer-1-planar,
//! and admits a deterministic color extension: given any proper 3-coloring
//! of the reduced graph, the removed edges can be recolored by a fixed table
//! driven by at most two boundary colors.

use crate::graph::{validate_coloring, ColorAssignment, ColoringViolation, Edge, Graph};
use crate::patterns::{match_template_graph, ConfigKind, Configuration, MatchFailure};
use std::collections::BTreeSet;
use thiserror::Error;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum ReduceError {
    #[error("maximum degree {0} exceeds 3")]
    DegreeTooLarge(usize),
    #[error("configuration does not match the graph: {0}")]
    BadConfiguration(MatchFailure),
    #[error("attachment points coincide, so the graph is a closed {0} and cannot shrink")]
    AnchorsCoincide(ConfigKind),
    #[error("ladder attachment points are already adjacent")]
    AnchorsAdjacent,
}

/// One reduction: the configuration that was removed, the surviving graph,
/// and enough bookkeeping to lift colorings back.
#[derive(Debug, Clone)]
pub struct ReductionStep {
    pub config: Configuration,
    pub original: Graph,
    pub reduced: Graph,
    /// Deleted vertices, ascending original ids.
    pub removed_vertices: Vec<usize>,
    /// Original edges with no counterpart in the reduced graph; these are
    /// exactly the edges the extension table recolors.
    pub removed_edges: Vec<Edge>,
    /// `((a, b), z)`: original vertices a and b merged into reduced vertex z.
    pub merged: Option<((usize, usize), usize)>,
    /// Fresh edge joining the attachment points (reduced ids, H only).
    pub added_edge: Option<Edge>,
    pub old_to_new: Vec<Option<usize>>,
}

impl ReductionStep {
    /// Image of an original edge in the reduced graph, or None if the edge
    /// was removed by the surgery.
    pub fn map_edge(&self, e: Edge) -> Option<Edge> {
        if self.removed_edges.contains(&e) {
            return None;
        }
        let p = self.old_to_new[e.u()]?;
        let q = self.old_to_new[e.v()]?;
        Some(Edge::new(p, q))
    }
}

/// Applies the surgery for `cfg` to `g`.
pub fn reduce(g: &Graph, cfg: &Configuration) -> Result<ReductionStep, ReduceError> {
    if g.max_degree() > 3 {
        return Err(ReduceError::DegreeTooLarge(g.max_degree()));
    }
    match_template_graph(g, cfg.kind, &cfg.vertices).map_err(ReduceError::BadConfiguration)?;

    use ConfigKind::*;
    let r = |name: &str| cfg.role(name);
    let coincide = cfg.anchors_coincide();
    // G1 and G5..G7 tolerate coinciding attachment points; the others would
    // need a self-loop or a doubled edge and signal the closed gadget.
    let mut removed: Vec<usize> = Vec::new();
    let mut pair: Option<(usize, usize)> = None;
    match cfg.kind {
        G1 => {}
        G2 => {
            if coincide {
                return Err(ReduceError::AnchorsCoincide(cfg.kind));
            }
            removed = vec![r("u")];
            pair = Some((r("v"), r("w")));
        }
        G3 => {
            if coincide {
                return Err(ReduceError::AnchorsCoincide(cfg.kind));
            }
            removed = vec![r("u"), r("v")];
        }
        G4 => {
            if coincide {
                return Err(ReduceError::AnchorsCoincide(cfg.kind));
            }
            removed = vec![r("u0"), r("w"), r("v0")];
            pair = Some((r("u1"), r("v1")));
        }
        G5 => removed = vec![r("u0"), r("u1"), r("v0"), r("v1")],
        G6 => removed = vec![r("u0"), r("u1"), r("w"), r("v0")],
        G7 => removed = vec![r("u0"), r("u1"), r("w"), r("v0"), r("v1")],
        G8 => {
            if coincide {
                return Err(ReduceError::AnchorsCoincide(cfg.kind));
            }
            removed = vec![r("u0"), r("u1"), r("v0")];
            pair = Some((r("u2"), r("v1")));
        }
        H(t) => {
            if coincide {
                return Err(ReduceError::AnchorsCoincide(cfg.kind));
            }
            if g.has_edge(cfg.x(), cfg.y()) {
                return Err(ReduceError::AnchorsAdjacent);
            }
            for i in 0..=t {
                removed.push(r(&format!("u{i}")));
                removed.push(r(&format!("v{i}")));
            }
        }
    }
    removed.sort_unstable();

    let removed_set: BTreeSet<usize> = removed.iter().copied().collect();
    let in_pair = |v: usize| pair.is_some_and(|(a, b)| v == a || v == b);
    let plain: Vec<usize> = (0..g.n())
        .filter(|&v| !removed_set.contains(&v) && !in_pair(v))
        .collect();
    let mut old_to_new = vec![None; g.n()];
    for (new, &old) in plain.iter().enumerate() {
        old_to_new[old] = Some(new);
    }
    let merged = pair.map(|(a, b)| {
        let z = plain.len();
        old_to_new[a] = Some(z);
        old_to_new[b] = Some(z);
        ((a, b), z)
    });
    let n_new = plain.len() + merged.is_some() as usize;

    let mut removed_edges = Vec::new();
    let mut new_edges = BTreeSet::new();
    let mut kept = 0usize;
    for &e in g.edges() {
        match (old_to_new[e.u()], old_to_new[e.v()]) {
            (Some(p), Some(q)) if p != q => {
                new_edges.insert(Edge::new(p, q));
                kept += 1;
            }
            _ => removed_edges.push(e),
        }
    }
    assert_eq!(new_edges.len(), kept, "surgery must not identify two edges");
    if cfg.kind == G1 {
        let uv = Edge::new(r("u"), r("v"));
        assert!(new_edges.remove(&Edge::new(
            old_to_new[uv.u()].unwrap(),
            old_to_new[uv.v()].unwrap(),
        )));
        removed_edges.push(uv);
    }
    let added_edge = if matches!(cfg.kind, H(_)) {
        let e = Edge::new(old_to_new[cfg.x()].unwrap(), old_to_new[cfg.y()].unwrap());
        assert!(new_edges.insert(e), "attachment points already adjacent");
        Some(e)
    } else {
        None
    };

    let pairs: Vec<(usize, usize)> = new_edges.iter().map(|e| e.endpoints()).collect();
    let reduced = Graph::new(n_new, &pairs).expect("surgery yields a simple graph");
    assert!(
        reduced.n() + reduced.m() < g.n() + g.m(),
        "surgery must strictly shrink"
    );
    removed_edges.sort_unstable();

    Ok(ReductionStep {
        config: cfg.clone(),
        original: g.clone(),
        reduced,
        removed_vertices: removed,
        removed_edges,
        merged,
        added_edge,
        old_to_new,
    })
}

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum ExtendError {
    #[error("inner coloring must use exactly 3 colors, got {0}")]
    WrongColorCount(usize),
    #[error("inner coloring is not proper on the reduced graph: {0}")]
    InnerNotProper(ColoringViolation),
}

/// The two non-`keep` colors in ascending order.
fn others(keep: usize) -> (usize, usize) {
    match keep {
        1 => (2, 3),
        2 => (1, 3),
        _ => (1, 2),
    }
}

/// Color map for an extension table: slot 0 is the first boundary color,
/// slots 1 and 2 are the remaining colors. With two distinct boundary colors
/// a and b the map is `[a, b, third]`; with one it is `[a, low, high]`.
fn table_palette(a: usize, b: Option<usize>) -> [usize; 3] {
    match b {
        Some(b) if b != a => [a, b, 6 - a - b],
        _ => {
            let (lo, hi) = others(a);
            [a, lo, hi]
        }
    }
}

/// Lifts a proper 3-coloring of the reduced graph to one of the original.
pub fn extend_coloring(
    step: &ReductionStep,
    inner: &ColorAssignment,
) -> Result<ColorAssignment, ExtendError> {
    if inner.k() != 3 {
        return Err(ExtendError::WrongColorCount(inner.k()));
    }
    validate_coloring(&step.reduced, inner).map_err(ExtendError::InnerNotProper)?;

    let mut out = ColorAssignment::new(3);
    for &e in step.original.edges() {
        if let Some(me) = step.map_edge(e) {
            out.set(e, inner.get(me).expect("reduced edge is colored"));
        }
    }

    let r = |name: &str| step.config.role(name);
    let edge = |a: &str, b: &str| Edge::new(r(a), r(b));
    let inner_color = |e: Edge| {
        let me = step
            .map_edge(e)
            .expect("boundary edge survives the surgery");
        inner.get(me).expect("reduced edge is colored")
    };
    // Color the boundary edge at a surviving vertex; with maximum degree 3
    // there is at most one such edge.
    let boundary_at = |old_v: usize| -> Option<usize> {
        let v = step.old_to_new[old_v].expect("attachment point survives");
        let mut colors = step
            .reduced
            .neighbors(v)
            .iter()
            .map(|&w| inner.get(Edge::new(v, w)).expect("reduced edge is colored"));
        let c = colors.next();
        assert!(colors.next().is_none(), "attachment point has extra edges");
        c
    };
    let merged_boundary = || {
        let ((_, _), z) = step.merged.expect("kind merges a pair");
        let a = inner
            .get(Edge::new(z, step.old_to_new[step.config.x()].unwrap()))
            .expect("merged vertex keeps its first anchor edge");
        let b = inner
            .get(Edge::new(z, step.old_to_new[step.config.y()].unwrap()))
            .expect("merged vertex keeps its second anchor edge");
        assert_ne!(a, b, "anchor edges share the merged vertex");
        table_palette(a, Some(b))
    };

    use ConfigKind::*;
    match step.config.kind {
        G1 => {
            let cu = inner_color(edge("u", "x"));
            let cv = inner_color(edge("v", "y"));
            let free = (1..=3).find(|c| *c != cu && *c != cv).unwrap();
            out.set(edge("u", "v"), free);
        }
        G2 => {
            let p = merged_boundary();
            out.set(edge("u", "w"), p[0]);
            out.set(edge("u", "v"), p[1]);
            out.set(edge("v", "w"), p[2]);
        }
        G3 => {
            let a = boundary_at(r("x"));
            let b = boundary_at(r("y"));
            let (first, second) = match (a, b) {
                (Some(a), Some(b)) => (a, Some(b)),
                (Some(a), None) | (None, Some(a)) => (a, None),
                (None, None) => (1, None),
            };
            let p = table_palette(first, second);
            if second.is_some_and(|b| b != first) {
                out.set(edge("v", "y"), p[0]);
                out.set(edge("u", "x"), p[1]);
                out.set(edge("x", "v"), p[2]);
                out.set(edge("y", "u"), p[2]);
            } else {
                out.set(edge("u", "x"), p[1]);
                out.set(edge("v", "y"), p[1]);
                out.set(edge("x", "v"), p[2]);
                out.set(edge("y", "u"), p[2]);
            }
        }
        G4 => {
            let p = merged_boundary();
            out.set(edge("u0", "w"), p[0]);
            out.set(edge("v0", "v1"), p[0]);
            out.set(edge("u0", "u1"), p[1]);
            out.set(edge("w", "v0"), p[1]);
            out.set(edge("u0", "v1"), p[2]);
            out.set(edge("u1", "v0"), p[2]);
        }
        G5 => {
            let a = inner_color(edge("u2", "x"));
            let b = inner_color(edge("v2", "y"));
            let p = table_palette(a, Some(b));
            if a == b {
                out.set(edge("u0", "u1"), p[0]);
                out.set(edge("v0", "v1"), p[0]);
                out.set(edge("u1", "u2"), p[1]);
                out.set(edge("v1", "v2"), p[1]);
                out.set(edge("u0", "v0"), p[1]);
                out.set(edge("u0", "v2"), p[2]);
                out.set(edge("u2", "v0"), p[2]);
            } else {
                out.set(edge("u0", "v2"), p[0]);
                out.set(edge("v0", "v1"), p[0]);
                out.set(edge("u0", "v0"), p[1]);
                out.set(edge("u1", "u2"), p[1]);
                out.set(edge("u0", "u1"), p[2]);
                out.set(edge("v1", "v2"), p[2]);
                out.set(edge("u2", "v0"), p[2]);
            }
        }
        G6 => {
            let a = inner_color(edge("u2", "x"));
            let b = inner_color(edge("v1", "y"));
            let p = table_palette(a, Some(b));
            if a == b {
                out.set(edge("u0", "u1"), p[0]);
                out.set(edge("w", "v0"), p[0]);
                out.set(edge("u1", "u2"), p[1]);
                out.set(edge("u0", "w"), p[1]);
                out.set(edge("v0", "v1"), p[1]);
                out.set(edge("u0", "v1"), p[2]);
                out.set(edge("u2", "v0"), p[2]);
            } else {
                out.set(edge("u0", "u1"), p[0]);
                out.set(edge("v0", "v1"), p[0]);
                out.set(edge("u0", "w"), p[1]);
                out.set(edge("u2", "v0"), p[1]);
                out.set(edge("w", "v0"), p[2]);
                out.set(edge("u1", "u2"), p[2]);
                out.set(edge("u0", "v1"), p[2]);
            }
        }
        G7 => {
            let a = inner_color(edge("u2", "x"));
            let b = inner_color(edge("v2", "y"));
            let p = table_palette(a, Some(b));
            if a == b {
                out.set(edge("u0", "u1"), p[0]);
                out.set(edge("v0", "v1"), p[0]);
                out.set(edge("u0", "w"), p[1]);
                out.set(edge("u2", "v0"), p[1]);
                out.set(edge("v1", "v2"), p[1]);
                out.set(edge("w", "v0"), p[2]);
                out.set(edge("u0", "v2"), p[2]);
                out.set(edge("u1", "u2"), p[2]);
            } else {
                out.set(edge("w", "v0"), p[0]);
                out.set(edge("u0", "v2"), p[0]);
                out.set(edge("u0", "w"), p[1]);
                out.set(edge("v0", "v1"), p[1]);
                out.set(edge("u1", "u2"), p[1]);
                out.set(edge("u0", "u1"), p[2]);
                out.set(edge("v1", "v2"), p[2]);
                out.set(edge("u2", "v0"), p[2]);
            }
        }
        G8 => {
            let p = merged_boundary();
            out.set(edge("u0", "u1"), p[0]);
            out.set(edge("v0", "v1"), p[0]);
            out.set(edge("u1", "u2"), p[1]);
            out.set(edge("u0", "v0"), p[1]);
            out.set(edge("u0", "v1"), p[2]);
            out.set(edge("u2", "v0"), p[2]);
        }
        H(t) => {
            let k = inner
                .get(step.added_edge.expect("ladder surgery adds an edge"))
                .expect("added edge is colored");
            let u = |i: usize| format!("u{i}");
            let v = |i: usize| format!("v{i}");
            out.set(Edge::new(r(&u(t)), r("x")), k);
            out.set(Edge::new(r(&v(t)), r("y")), k);
            // Walk the rungs inward; each ring sees the spine color from
            // outside and pushes the third color further in.
            let mut spine = k;
            for i in (2..=t).rev() {
                let rung = (1..=3).find(|c| *c != spine).unwrap();
                out.set(Edge::new(r(&u(i)), r(&v(i))), rung);
                let inward = 6 - spine - rung;
                out.set(Edge::new(r(&u(i - 1)), r(&u(i))), inward);
                out.set(Edge::new(r(&v(i - 1)), r(&v(i))), inward);
                spine = inward;
            }
            let (lo, hi) = others(spine);
            out.set(Edge::new(r(&u(0)), r(&v(0))), spine);
            out.set(Edge::new(r(&u(0)), r(&u(1))), lo);
            out.set(Edge::new(r(&v(0)), r(&v(1))), lo);
            out.set(Edge::new(r(&u(1)), r(&v(0))), hi);
            out.set(Edge::new(r(&u(0)), r(&v(1))), hi);
        }
    }

    for &e in &step.removed_edges {
        debug_assert!(out.get(e).is_some(), "removed edge {e} left uncolored");
    }
    debug_assert_eq!(validate_coloring(&step.original, &out), Ok(()));
    Ok(out)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::drawing::{find_embedding, DEFAULT_EMBED_BUDGET};
    use crate::oracle;
    use crate::patterns::{configurations, find_configuration, template};

    fn embed(g: &Graph) -> crate::drawing::Drawing {
        find_embedding(g, DEFAULT_EMBED_BUDGET).drawing.unwrap()
    }

    fn closed(kind: ConfigKind) -> Graph {
        let tpl = template(kind);
        let mut pairs = tpl.edges.clone();
        pairs.push(tpl.anchors);
        Graph::new(tpl.role_count(), &pairs).unwrap()
    }

    fn lift_through(g: &Graph, cfg: &Configuration) -> ColorAssignment {
        let step = reduce(g, cfg).unwrap();
        let inner =
            oracle::color_with(&step.reduced, 3).expect("reduced graph should be 3-colorable");
        extend_coloring(&step, &inner).unwrap()
    }

    #[test]
    fn cycle_reduces_by_removing_one_edge() {
        let g = Graph::new(4, &[(0, 1), (1, 2), (2, 3), (3, 0)]).unwrap();
        let cfg = find_configuration(&embed(&g)).unwrap();
        assert_eq!(cfg.kind, ConfigKind::G1);
        let step = reduce(&g, &cfg).unwrap();
        assert_eq!(step.reduced.n(), 4);
        assert_eq!(step.reduced.m(), 3);
        assert_eq!(step.removed_edges, vec![Edge::new(0, 1)]);
        let full = lift_through(&g, &cfg);
        assert_eq!(validate_coloring(&g, &full), Ok(()));
    }

    #[test]
    fn closed_gadgets_refuse_to_shrink() {
        // Diamond: G2 with coinciding attachment points.
        let diamond = Graph::new(4, &[(0, 2), (0, 3), (1, 2), (1, 3), (2, 3)]).unwrap();
        let cfg = find_configuration(&embed(&diamond)).unwrap();
        assert_eq!(cfg.kind, ConfigKind::G2);
        assert_eq!(
            reduce(&diamond, &cfg).unwrap_err(),
            ReduceError::AnchorsCoincide(ConfigKind::G2)
        );
        // Subdivided K4: closed ladder H(1).
        let b = Graph::new(5, &[(0, 2), (0, 3), (1, 2), (1, 3), (2, 3), (0, 4), (1, 4)]).unwrap();
        let cfg = find_configuration(&embed(&b)).unwrap();
        assert_eq!(cfg.kind, ConfigKind::H(1));
        assert_eq!(
            reduce(&b, &cfg).unwrap_err(),
            ReduceError::AnchorsCoincide(ConfigKind::H(1))
        );
    }

    #[test]
    fn adjacent_ladder_anchors_are_rejected() {
        let tpl = template(ConfigKind::H(1));
        let mut pairs = tpl.edges.clone();
        pairs.push(tpl.anchors);
        let g = Graph::new(6, &pairs).unwrap();
        let cfg = Configuration {
            kind: ConfigKind::H(1),
            vertices: (0..6).collect(),
        };
        assert_eq!(reduce(&g, &cfg).unwrap_err(), ReduceError::AnchorsAdjacent);
    }

    #[test]
    fn ladder_surgery_joins_the_anchors() {
        // Closed H(2) via a path x - p - y: removing the core leaves a
        // triangle x, y, p once the new x-y edge is added.
        let tpl = template(ConfigKind::H(2));
        let mut pairs = tpl.edges.clone();
        let (x, y) = tpl.anchors;
        let p = tpl.role_count();
        pairs.push((x, p));
        pairs.push((y, p));
        let g = Graph::new(p + 1, &pairs).unwrap();
        let cfg = Configuration {
            kind: ConfigKind::H(2),
            vertices: (0..tpl.role_count()).collect(),
        };
        let step = reduce(&g, &cfg).unwrap();
        assert_eq!(step.reduced.n(), 3);
        assert_eq!(step.reduced.m(), 3);
        assert!(step.added_edge.is_some());
        let full = lift_through(&g, &cfg);
        assert_eq!(validate_coloring(&g, &full), Ok(()));
        assert_eq!(full.len(), g.m());
    }

    #[test]
    fn merging_kinds_produce_the_expected_quotient() {
        let g = closed(ConfigKind::G8);
        let cfg = Configuration {
            kind: ConfigKind::G8,
            vertices: (0..7).collect(),
        };
        let step = reduce(&g, &cfg).unwrap();
        // Survivors: x, y, and the merged rim vertex.
        assert_eq!(step.reduced.n(), 3);
        assert_eq!(step.merged, Some(((0, 4), 2)));
        assert!(step.reduced.has_edge(2, 0) && step.reduced.has_edge(2, 1));
        let full = lift_through(&g, &cfg);
        assert_eq!(validate_coloring(&g, &full), Ok(()));
    }

    #[test]
    fn every_enumerated_host_extends_cleanly() {
        // All 2-connected subcubic outer-1-planar graphs up to 7 vertices:
        // each drawing-matched configuration either shrinks and lifts a
        // 3-coloring, or reports a legitimate obstruction.
        let mut reductions = 0;
        for n in 4..=7 {
            for g in oracle::connected_graphs(n, 3) {
                if !g.is_two_connected() {
                    continue;
                }
                let emb = find_embedding(&g, DEFAULT_EMBED_BUDGET);
                let d = match emb.drawing {
                    Some(d) => d,
                    None => continue,
                };
                for cfg in configurations(&d) {
                    let step = match reduce(&g, &cfg) {
                        Ok(step) => step,
                        Err(ReduceError::AnchorsCoincide(_))
                        | Err(ReduceError::AnchorsAdjacent) => continue,
                        Err(e) => panic!("unexpected failure on {cfg}: {e}"),
                    };
                    assert!(
                        find_embedding(&step.reduced, DEFAULT_EMBED_BUDGET)
                            .drawing
                            .is_some(),
                        "surgery left a non-outer-1-planar graph for {cfg}"
                    );
                    if let Some(inner) = oracle::color_with(&step.reduced, 3) {
                        let full = extend_coloring(&step, &inner).unwrap();
                        assert_eq!(
                            validate_coloring(&g, &full),
                            Ok(()),
                            "lift failed for {cfg}"
                        );
                        reductions += 1;
                    }
                }
            }
        }
        assert!(reductions > 50, "only {reductions} reductions exercised");
    }

    #[test]
    fn extension_rejects_bad_inner_colorings() {
        let g = Graph::new(4, &[(0, 1), (1, 2), (2, 3), (3, 0)]).unwrap();
        let cfg = find_configuration(&embed(&g)).unwrap();
        let step = reduce(&g, &cfg).unwrap();
        let mut bad = ColorAssignment::new(3);
        for &e in step.reduced.edges() {
            bad.set(e, 1);
        }
        assert!(matches!(
            extend_coloring(&step, &bad),
            Err(ExtendError::InnerNotProper(_))
        ));
        let wrong_k = ColorAssignment::new(4);
        assert_eq!(
            extend_coloring(&step, &wrong_k),
            Err(ExtendError::WrongColorCount(4))
        );
    }
}
