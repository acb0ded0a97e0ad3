//! Exact edge chromatic numbers for outer-1-planar graphs.
//!
//! An outer-1-planar graph admits a drawing with every vertex on the outer
//! face and every edge crossed at most once.  For such graphs the chromatic
//! index is decidable exactly: it equals the maximum degree except for odd
//! cycles and for a single recursively pasted family of max-degree-3 graphs,
//! where it is one more.  This crate decides the chromatic index, produces a
//! witness coloring, and exposes the structural machinery behind the
//! decision: circular drawings and crossing-minimal embedding search
//! ([`drawing`]), detection of the reducible configurations G1..G8 and H(t)
//! ([`patterns`]), the reductions and their inverse color extensions
//! ([`reduce`]), the exceptional class P ([`classp`]), and a brute-force
//! oracle used as ground truth in tests ([`oracle`]).

pub mod chroma;
pub mod classp;
pub mod drawing;
pub mod graph;
pub mod oracle;
pub mod patterns;
pub mod reduce;

pub use chroma::{chromatic_index, ChromaResult, Classification};
pub use drawing::{find_embedding, Drawing};
pub use graph::{ColorAssignment, Edge, Graph};
