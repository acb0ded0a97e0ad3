//! The family of subcubic class-2 blocks.
//!
//! Members are built from one base graph (a subdivided K4) by repeatedly
//! pasting gadgets: splitting a degree-2 vertex into a G2, G4 or G8 core, or
//! replacing an edge by a ladder core H(t). Every member has maximum degree
//! 3 and chromatic index 4, and these are exactly the 2-connected blocks a
//! degree-3 graph may contain without being 3-edge-colorable.
//!
//! [`recognize_p`] decides membership by running the pastes backwards and
//! returns a replayable certificate on success.

use crate::graph::{Edge, Graph};
use crate::oracle::{canonical_form, canonical_labeling, is_isomorphic, CanonKey};
use crate::patterns::{graph_configurations, template, ConfigKind, Configuration};
use crate::reduce::{reduce, ReductionStep};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use std::collections::HashSet;
use thiserror::Error;

/// The smallest member: K4 with one edge subdivided. It is overfull (7 edges,
/// 5 vertices, maximum degree 3), hence not 3-edge-colorable.
pub fn base_graph() -> Graph {
    Graph::new(5, &[(0, 2), (0, 3), (1, 2), (1, 3), (2, 3), (0, 4), (1, 4)])
        .expect("base graph is well-formed")
}

/// One pasting operation, addressed in the ids of the graph it applies to.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum PasteOp {
    /// Split the degree-2 vertex into the core of `kind` (G2, G4 or G8).
    /// The core's two attachment edges go to the old neighbors of `vertex`,
    /// smaller neighbor first, or swapped when `flip` is set.
    AtVertex {
        vertex: usize,
        kind: ConfigKind,
        flip: bool,
    },
    /// Replace the edge (u, v) by a ladder core H(rungs), attaching the
    /// u-side chain to `u` and the v-side chain to `v`.
    OnEdge { u: usize, v: usize, rungs: usize },
}

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum PasteError {
    #[error("vertex {0} out of range")]
    VertexOutOfRange(usize),
    #[error("vertex {vertex} must have degree 2, has {degree}")]
    WrongAttachmentDegree { vertex: usize, degree: usize },
    #[error("{0} cannot be pasted at a vertex")]
    UnsupportedKind(ConfigKind),
    #[error("edge ({0}, {1}) is not in the graph")]
    MissingEdge(usize, usize),
    #[error("ladder needs at least one rung")]
    EmptyLadder,
}

/// Interior role count and the two roles carrying the attachment edges.
fn core_shape(kind: ConfigKind) -> (usize, usize, usize) {
    let tpl = template(kind);
    let core = tpl.role_count() - 2;
    let partner = |anchor: usize| {
        tpl.edges
            .iter()
            .find_map(|&(a, b)| {
                if a == anchor {
                    Some(b)
                } else if b == anchor {
                    Some(a)
                } else {
                    None
                }
            })
            .expect("anchor role has an attachment edge")
    };
    (core, partner(tpl.anchors.0), partner(tpl.anchors.1))
}

/// Applies one pasting operation.
pub fn paste(g: &Graph, op: &PasteOp) -> Result<Graph, PasteError> {
    match *op {
        PasteOp::AtVertex { vertex, kind, flip } => {
            if !matches!(kind, ConfigKind::G2 | ConfigKind::G4 | ConfigKind::G8) {
                return Err(PasteError::UnsupportedKind(kind));
            }
            if vertex >= g.n() {
                return Err(PasteError::VertexOutOfRange(vertex));
            }
            if g.degree(vertex) != 2 {
                return Err(PasteError::WrongAttachmentDegree {
                    vertex,
                    degree: g.degree(vertex),
                });
            }
            let nb = g.neighbors(vertex);
            let (xt, yt) = if flip { (nb[1], nb[0]) } else { (nb[0], nb[1]) };
            let shift = |v: usize| if v < vertex { v } else { v - 1 };
            let base = g.n() - 1;
            let tpl = template(kind);
            let (core, x_partner, y_partner) = core_shape(kind);
            let mut pairs: Vec<(usize, usize)> = g
                .edges()
                .iter()
                .filter(|e| !e.touches(vertex))
                .map(|e| (shift(e.u()), shift(e.v())))
                .collect();
            for &(a, b) in &tpl.edges {
                if a < core && b < core {
                    pairs.push((base + a, base + b));
                }
            }
            pairs.push((base + x_partner, shift(xt)));
            pairs.push((base + y_partner, shift(yt)));
            Ok(Graph::new(base + core, &pairs).expect("paste yields a simple graph"))
        }
        PasteOp::OnEdge { u, v, rungs } => {
            if rungs == 0 {
                return Err(PasteError::EmptyLadder);
            }
            if u >= g.n() {
                return Err(PasteError::VertexOutOfRange(u));
            }
            if v >= g.n() {
                return Err(PasteError::VertexOutOfRange(v));
            }
            if !g.has_edge(u, v) {
                return Err(PasteError::MissingEdge(u, v));
            }
            let kind = ConfigKind::H(rungs);
            let tpl = template(kind);
            let (core, x_partner, y_partner) = core_shape(kind);
            let base = g.n();
            let removed = Edge::new(u, v);
            let mut pairs: Vec<(usize, usize)> = g
                .edges()
                .iter()
                .filter(|&&e| e != removed)
                .map(|e| e.endpoints())
                .collect();
            for &(a, b) in &tpl.edges {
                if a < core && b < core {
                    pairs.push((base + a, base + b));
                }
            }
            pairs.push((base + x_partner, u));
            pairs.push((base + y_partner, v));
            Ok(Graph::new(base + core, &pairs).expect("paste yields a simple graph"))
        }
    }
}

/// Rebuilds a member from its certificate, starting at the base graph.
pub fn replay(ops: &[PasteOp]) -> Result<Graph, PasteError> {
    let mut g = base_graph();
    for op in ops {
        g = paste(&g, op)?;
    }
    Ok(g)
}

/// Seeded random member, applying up to `op_count` pastes while the vertex
/// count stays within `max_n`. Returns the graph and the ops that built it.
pub fn generate_p_bounded(seed: u64, op_count: usize, max_n: usize) -> (Graph, Vec<PasteOp>) {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut g = base_graph();
    let mut applied = Vec::new();
    for _ in 0..op_count {
        let mut candidates: Vec<PasteOp> = Vec::new();
        for z in 0..g.n() {
            if g.degree(z) != 2 {
                continue;
            }
            for kind in [ConfigKind::G2, ConfigKind::G4, ConfigKind::G8] {
                let grown = g.n() - 1 + core_shape(kind).0;
                if grown <= max_n {
                    candidates.push(PasteOp::AtVertex {
                        vertex: z,
                        kind,
                        flip: false,
                    });
                }
            }
        }
        for e in g.edges() {
            for rungs in 1..=3 {
                if g.n() + 2 * rungs + 2 <= max_n {
                    candidates.push(PasteOp::OnEdge {
                        u: e.u(),
                        v: e.v(),
                        rungs,
                    });
                }
            }
        }
        if candidates.is_empty() {
            break;
        }
        let mut op = candidates[rng.gen_range(0..candidates.len())];
        if let PasteOp::AtVertex { flip, .. } = &mut op {
            *flip = rng.gen_bool(0.5);
        }
        g = paste(&g, &op).expect("generated op is applicable");
        applied.push(op);
    }
    (g, applied)
}

/// Seeded random member with `op_count` pastes and no size bound.
pub fn generate_p(seed: u64, op_count: usize) -> (Graph, Vec<PasteOp>) {
    generate_p_bounded(seed, op_count, usize::MAX)
}

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum NotMemberReason {
    #[error("graph is not connected")]
    Disconnected,
    #[error("maximum degree is {0}, members have maximum degree 3")]
    MaxDegreeNot3(usize),
    #[error("minimum degree is {0}, members have minimum degree 2")]
    MinDegreeNot2(usize),
    #[error("graph is not 2-connected")]
    NotTwoConnected,
    #[error("graph has {0} vertices, members have at least 5")]
    TooSmall(usize),
    #[error("no sequence of reverse pastes reaches the base graph")]
    NoDecomposition,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Recognition {
    /// Certificate: `replay` of these ops rebuilds the graph up to
    /// isomorphism.
    Member(Vec<PasteOp>),
    NotMember(NotMemberReason),
}

impl Recognition {
    pub fn is_member(&self) -> bool {
        matches!(self, Recognition::Member(_))
    }
}

/// Decides membership in the pasting family. Members yield a certificate of
/// pastes that rebuilds an isomorphic copy of the input.
pub fn recognize_p(g: &Graph) -> Recognition {
    use NotMemberReason::*;
    if !g.is_connected() {
        return Recognition::NotMember(Disconnected);
    }
    if g.max_degree() != 3 {
        return Recognition::NotMember(MaxDegreeNot3(g.max_degree()));
    }
    if g.min_degree() != 2 {
        return Recognition::NotMember(MinDegreeNot2(g.min_degree()));
    }
    if !g.is_two_connected() {
        return Recognition::NotMember(NotTwoConnected);
    }
    let base = base_graph();
    if g.n() < base.n() {
        return Recognition::NotMember(TooSmall(g.n()));
    }
    let mut dead_ends: HashSet<CanonKey> = HashSet::new();
    match unbuild(g, &base, &mut dead_ends) {
        Some((ops, _)) => {
            let rebuilt = replay(&ops).expect("certificate replays");
            assert!(
                is_isomorphic(&rebuilt, g),
                "certificate must rebuild the input"
            );
            Recognition::Member(ops)
        }
        None => Recognition::NotMember(NoDecomposition),
    }
}

/// Isomorphism base -> g via the canonical labelings of both.
fn base_isomorphism(base: &Graph, g: &Graph) -> Vec<usize> {
    let mu_b = canonical_labeling(base);
    let mu_g = canonical_labeling(g);
    let mut inv_g = vec![0usize; g.n()];
    for (v, &c) in mu_g.iter().enumerate() {
        inv_g[c] = v;
    }
    (0..base.n()).map(|v| inv_g[mu_b[v]]).collect()
}

/// Reverse-paste search. Returns the ops building an isomorphic copy of `g`
/// from the base, together with the isomorphism replayed-copy -> g.
fn unbuild(
    g: &Graph,
    base: &Graph,
    dead_ends: &mut HashSet<CanonKey>,
) -> Option<(Vec<PasteOp>, Vec<usize>)> {
    if g.n() < base.n() {
        return None;
    }
    if is_isomorphic(g, base) {
        return Some((Vec::new(), base_isomorphism(base, g)));
    }
    let key = canonical_form(g);
    if dead_ends.contains(&key) {
        return None;
    }
    let mut kinds = vec![ConfigKind::G2, ConfigKind::G4, ConfigKind::G8];
    let mut t = 1;
    while 2 * t + 3 <= g.n() {
        kinds.push(ConfigKind::H(t));
        t += 1;
    }
    for kind in kinds {
        for cfg in graph_configurations(g, kind) {
            let step = match reduce(g, &cfg) {
                Ok(step) => step,
                Err(_) => continue,
            };
            let m = &step.reduced;
            if !m.is_connected() || m.max_degree() != 3 || m.min_degree() != 2 {
                continue;
            }
            if let Some((mut ops, phi)) = unbuild(m, base, dead_ends) {
                let (op, phi_g) = lift_op(&step, &cfg, &phi);
                ops.push(op);
                return Some((ops, phi_g));
            }
        }
    }
    dead_ends.insert(key);
    None
}

/// Translates the undone surgery into a paste op on the replayed copy of the
/// reduced graph, and extends the isomorphism over the pasted core.
fn lift_op(step: &ReductionStep, cfg: &Configuration, phi: &[usize]) -> (PasteOp, Vec<usize>) {
    let m = &step.reduced;
    // psi: reduced id -> replayed id.
    let mut psi = vec![0usize; m.n()];
    for (replayed, &mid) in phi.iter().enumerate() {
        psi[mid] = replayed;
    }
    // reduced id -> original id for the plain survivors.
    let merged_id = step.merged.map(|(_, z)| z);
    let mut m_to_g = vec![usize::MAX; m.n()];
    for (old, slot) in step.old_to_new.iter().enumerate() {
        if let Some(mid) = *slot {
            if Some(mid) != merged_id {
                m_to_g[mid] = old;
            }
        }
    }
    let x_m = step.old_to_new[cfg.x()].expect("attachment point survives");
    let y_m = step.old_to_new[cfg.y()].expect("attachment point survives");
    let core = core_shape(cfg.kind).0;

    match cfg.kind {
        ConfigKind::G2 | ConfigKind::G4 | ConfigKind::G8 => {
            let z = merged_id.expect("kind merges a pair");
            let z_replayed = psi[z];
            let smaller = m
                .neighbors(z)
                .iter()
                .map(|&w| psi[w])
                .min()
                .expect("merged vertex has neighbors");
            let op = PasteOp::AtVertex {
                vertex: z_replayed,
                kind: cfg.kind,
                flip: psi[x_m] != smaller,
            };
            let mut phi_g = vec![0usize; m.n() - 1 + core];
            for (replayed, &mid) in phi.iter().enumerate() {
                if mid == z {
                    continue;
                }
                let shifted = if replayed < z_replayed {
                    replayed
                } else {
                    replayed - 1
                };
                phi_g[shifted] = m_to_g[mid];
            }
            for j in 0..core {
                phi_g[m.n() - 1 + j] = cfg.vertices[j];
            }
            (op, phi_g)
        }
        ConfigKind::H(t) => {
            let op = PasteOp::OnEdge {
                u: psi[x_m],
                v: psi[y_m],
                rungs: t,
            };
            let mut phi_g = vec![0usize; m.n() + core];
            for (replayed, &mid) in phi.iter().enumerate() {
                phi_g[replayed] = m_to_g[mid];
            }
            for j in 0..core {
                phi_g[m.n() + j] = cfg.vertices[j];
            }
            (op, phi_g)
        }
        other => unreachable!("{other} is not a pasting kind"),
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::oracle::brute_chi;

    #[test]
    fn base_graph_is_overfull() {
        let b = base_graph();
        assert_eq!(b.n(), 5);
        assert_eq!(b.m(), 7);
        assert_eq!(b.max_degree(), 3);
        assert!(b.is_two_connected());
        // 7 edges but any color class is a matching of at most 2 edges.
        assert_eq!(brute_chi(&b).unwrap(), 4);
    }

    #[test]
    fn base_graph_recognizes_with_empty_certificate() {
        match recognize_p(&base_graph()) {
            Recognition::Member(ops) => assert!(ops.is_empty()),
            other => panic!("base graph must be a member, got {other:?}"),
        }
    }

    #[test]
    fn precondition_failures_are_reported() {
        let k4 = Graph::new(4, &[(0, 1), (0, 2), (0, 3), (1, 2), (1, 3), (2, 3)]).unwrap();
        assert_eq!(
            recognize_p(&k4),
            Recognition::NotMember(NotMemberReason::MinDegreeNot2(3))
        );
        let c5 = Graph::new(5, &[(0, 1), (1, 2), (2, 3), (3, 4), (4, 0)]).unwrap();
        assert_eq!(
            recognize_p(&c5),
            Recognition::NotMember(NotMemberReason::MaxDegreeNot3(2))
        );
        let two_triangles =
            Graph::new(6, &[(0, 1), (0, 2), (1, 2), (3, 4), (3, 5), (4, 5), (0, 3)]).unwrap();
        assert_eq!(
            recognize_p(&two_triangles),
            Recognition::NotMember(NotMemberReason::NotTwoConnected)
        );
        let split = Graph::new(5, &[(0, 1), (1, 2), (2, 0), (3, 4)]).unwrap();
        assert_eq!(
            recognize_p(&split),
            Recognition::NotMember(NotMemberReason::Disconnected)
        );
    }

    #[test]
    fn house_graph_is_not_a_member() {
        let house = Graph::new(5, &[(0, 1), (1, 2), (2, 3), (3, 4), (4, 0), (1, 4)]).unwrap();
        assert_eq!(
            recognize_p(&house),
            Recognition::NotMember(NotMemberReason::NoDecomposition)
        );
        assert_eq!(brute_chi(&house).unwrap(), 3);
    }

    #[test]
    fn single_pastes_round_trip() {
        for op in [
            PasteOp::AtVertex {
                vertex: 4,
                kind: ConfigKind::G2,
                flip: false,
            },
            PasteOp::AtVertex {
                vertex: 4,
                kind: ConfigKind::G4,
                flip: true,
            },
            PasteOp::AtVertex {
                vertex: 4,
                kind: ConfigKind::G8,
                flip: false,
            },
            PasteOp::OnEdge {
                u: 2,
                v: 3,
                rungs: 1,
            },
            PasteOp::OnEdge {
                u: 0,
                v: 4,
                rungs: 2,
            },
        ] {
            let g = paste(&base_graph(), &op).unwrap();
            assert_eq!(g.max_degree(), 3, "{op:?}");
            assert_eq!(g.min_degree(), 2, "{op:?}");
            assert!(g.is_two_connected(), "{op:?}");
            match recognize_p(&g) {
                Recognition::Member(ops) => {
                    let rebuilt = replay(&ops).unwrap();
                    assert!(is_isomorphic(&rebuilt, &g), "{op:?}");
                }
                other => panic!("paste of {op:?} must stay in the family, got {other:?}"),
            }
        }
    }

    #[test]
    fn paste_validates_its_target() {
        let b = base_graph();
        assert_eq!(
            paste(
                &b,
                &PasteOp::AtVertex {
                    vertex: 0,
                    kind: ConfigKind::G2,
                    flip: false
                }
            ),
            Err(PasteError::WrongAttachmentDegree {
                vertex: 0,
                degree: 3
            })
        );
        assert_eq!(
            paste(
                &b,
                &PasteOp::AtVertex {
                    vertex: 4,
                    kind: ConfigKind::G1,
                    flip: false
                }
            ),
            Err(PasteError::UnsupportedKind(ConfigKind::G1))
        );
        assert_eq!(
            paste(
                &b,
                &PasteOp::OnEdge {
                    u: 0,
                    v: 1,
                    rungs: 1
                }
            ),
            Err(PasteError::MissingEdge(0, 1))
        );
        assert_eq!(
            paste(
                &b,
                &PasteOp::OnEdge {
                    u: 0,
                    v: 2,
                    rungs: 0
                }
            ),
            Err(PasteError::EmptyLadder)
        );
    }

    #[test]
    fn generated_members_recognize_and_replay() {
        for seed in 0..6 {
            let (g, ops) = generate_p_bounded(seed, 3, 14);
            assert_eq!(g.max_degree(), 3, "seed {seed}");
            assert_eq!(g.min_degree(), 2, "seed {seed}");
            assert!(g.is_two_connected(), "seed {seed}");
            assert!(is_isomorphic(&replay(&ops).unwrap(), &g));
            match recognize_p(&g) {
                Recognition::Member(cert) => {
                    assert!(is_isomorphic(&replay(&cert).unwrap(), &g), "seed {seed}");
                }
                other => panic!("seed {seed}: generated member rejected: {other:?}"),
            }
        }
    }

    #[test]
    fn generated_members_are_class_two() {
        for seed in [1, 7] {
            let (g, _) = generate_p_bounded(seed, 2, 12);
            if g.m() <= 30 {
                assert_eq!(brute_chi(&g).unwrap(), 4, "seed {seed}");
            }
        }
    }

    #[test]
    fn generation_is_deterministic_per_seed() {
        let (g1, ops1) = generate_p(42, 4);
        let (g2, ops2) = generate_p(42, 4);
        assert_eq!(ops1, ops2);
        assert_eq!(g1, g2);
    }
}
