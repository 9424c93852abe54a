//! Exact verification of BK-type correlation inequalities for the boundary
//! set `B(M) = V(M) Δ S` of random matchings in small bipartite graphs.
//!
//! The crate enumerates matchings, builds the exact (rational) law of
//! `B(M)` under the uniform, weighted, scaled, conditioned and
//! maximum-matching measures, and checks the inequalities together with
//! every step of the switching-cell argument behind them: pair
//! decomposition into cells, canonical path splits, endpoint labels, the
//! projection `τ`, event projections and the general disjoint-occurrence
//! inequality on each cell universe.

pub mod cells;
pub mod distribution;
pub mod error;
pub mod events;
pub mod family;
pub mod graph;
pub mod matching;
pub mod par;
pub mod rational;
pub mod suite;
pub mod verify;
pub mod vertex_set;

pub use error::{Error, Result};
pub use events::{Event, GroundSet, IncreasingEvent, SetFamily};
pub use graph::{parse_graph, BipartiteGraph};
pub use matching::Matching;
pub use vertex_set::VertexSet;
