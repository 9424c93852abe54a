//! Bipartite graphs with a fixed linear edge order.
//!
//! Vertices use the canonical S-first layout: indices `0..|S|` are the
//! S-side, `|S|..|S|+|T|` the T-side. The edge list order is the linear
//! order used by every canonical construction downstream (path splits,
//! path ordering, matching enumeration order).

use std::collections::{HashMap, HashSet};

use num_rational::{BigRational, Ratio};
use num_traits::One;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::rational::parse_positive;
use crate::vertex_set::{VertexSet, MAX_WIDTH};

/// Default cap on `|S| + |T|`, overridable through `BKMATCH_MAX_VERTICES`.
pub const DEFAULT_MAX_VERTICES: usize = 16;
/// Edge sets are `u64` masks over edge ranks.
pub const MAX_EDGES: usize = 64;
/// Default cap on `|S| * |T|` for [`enumerate_graphs`].
pub const DEFAULT_SWEEP_CAP: usize = 16;

/// The vertex cap in effect: `BKMATCH_MAX_VERTICES` if set and parseable,
/// clamped to [`MAX_WIDTH`], otherwise [`DEFAULT_MAX_VERTICES`].
pub fn vertex_cap() -> usize {
    std::env::var("BKMATCH_MAX_VERTICES")
        .ok()
        .and_then(|v| v.trim().parse::<usize>().ok())
        .map(|v| v.min(MAX_WIDTH))
        .unwrap_or(DEFAULT_MAX_VERTICES)
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub enum Side {
    S,
    T,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct VertexId {
    pub index: usize,
    pub side: Side,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Edge {
    pub s: VertexId,
    pub t: VertexId,
    pub weight: BigRational,
    pub rank: usize,
}

impl Edge {
    /// Both endpoints as a vertex set.
    #[inline]
    pub fn ends(&self) -> VertexSet {
        VertexSet::from_bits((1u64 << self.s.index) | (1u64 << self.t.index))
    }
}

/// An immutable bipartite graph `G = (S, T, E)` with positive rational
/// edge weights.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct BipartiteGraph {
    s_names: Vec<String>,
    t_names: Vec<String>,
    edges: Vec<Edge>,
    ends: Vec<VertexSet>,
}

impl BipartiteGraph {
    /// Builds and validates a graph. `edges` holds `(s, t, weight)` with `s`
    /// an index into `s_names` and `t` an index into `t_names`.
    pub fn new(
        s_names: Vec<String>,
        t_names: Vec<String>,
        edges: Vec<(usize, usize, BigRational)>,
    ) -> Result<Self> {
        let n = s_names.len() + t_names.len();
        let cap = vertex_cap();
        if n > cap {
            return Err(Error::GraphTooLarge(format!("{n} vertices (cap {cap})")));
        }
        if edges.len() > MAX_EDGES {
            return Err(Error::GraphTooLarge(format!("{} edges (cap {MAX_EDGES})", edges.len())));
        }
        let mut seen_names = HashSet::new();
        for name in s_names.iter().chain(&t_names) {
            if !seen_names.insert(name.as_str()) {
                return Err(Error::DuplicateVertex(name.clone()));
            }
        }
        let s_count = s_names.len();
        let mut seen = HashSet::new();
        let mut out = Vec::with_capacity(edges.len());
        for (rank, (s, t, weight)) in edges.into_iter().enumerate() {
            if s >= s_count || t >= t_names.len() {
                return Err(Error::MalformedEdge(format!("endpoint out of range ({s}, {t})")));
            }
            if !seen.insert((s, t)) {
                return Err(Error::DuplicateEdge(s_names[s].clone(), t_names[t].clone()));
            }
            if weight <= BigRational::from_integer(0.into()) {
                return Err(Error::InvalidWeight(weight.to_string()));
            }
            out.push(Edge {
                s: VertexId { index: s, side: Side::S },
                t: VertexId { index: s_count + t, side: Side::T },
                weight,
                rank,
            });
        }
        let ends = out.iter().map(Edge::ends).collect();
        Ok(BipartiteGraph { s_names, t_names, edges: out, ends })
    }

    /// Unit-weight graph with default names `s1.. / t1..`; pairs are
    /// `(s, t)` side-local indices in edge order.
    pub fn from_pairs(s_count: usize, t_count: usize, pairs: &[(usize, usize)]) -> Result<Self> {
        Self::new(
            default_names('s', s_count),
            default_names('t', t_count),
            pairs.iter().map(|&(s, t)| (s, t, BigRational::one())).collect(),
        )
    }

    pub fn s_count(&self) -> usize {
        self.s_names.len()
    }

    pub fn t_count(&self) -> usize {
        self.t_names.len()
    }

    pub fn vertex_count(&self) -> usize {
        self.s_names.len() + self.t_names.len()
    }

    pub fn edges(&self) -> &[Edge] {
        &self.edges
    }

    pub fn edge_count(&self) -> usize {
        self.edges.len()
    }

    /// Endpoint set of the edge with the given rank.
    #[inline]
    pub fn edge_ends(&self, rank: usize) -> VertexSet {
        self.ends[rank]
    }

    /// The S-side as a vertex set.
    #[inline]
    pub fn s_set(&self) -> VertexSet {
        VertexSet::full(self.s_count())
    }

    #[inline]
    pub fn vertex_set(&self) -> VertexSet {
        VertexSet::full(self.vertex_count())
    }

    pub fn side(&self, v: usize) -> Side {
        if v < self.s_count() {
            Side::S
        } else {
            Side::T
        }
    }

    pub fn vertex_id(&self, v: usize) -> VertexId {
        VertexId { index: v, side: self.side(v) }
    }

    pub fn vertex_name(&self, v: usize) -> &str {
        if v < self.s_count() {
            &self.s_names[v]
        } else {
            &self.t_names[v - self.s_count()]
        }
    }

    pub fn vertex_names(&self) -> Vec<String> {
        self.s_names.iter().chain(&self.t_names).cloned().collect()
    }

    pub fn vertex_index(&self, name: &str) -> Option<usize> {
        (0..self.vertex_count()).find(|&v| self.vertex_name(v) == name)
    }

    /// Resolves a list of vertex names to a set.
    pub fn vertex_set_of<S: AsRef<str>>(&self, names: &[S]) -> Result<VertexSet> {
        names
            .iter()
            .map(|n| self.vertex_index(n.as_ref()).ok_or_else(|| Error::UnknownVertex(n.as_ref().to_owned())))
            .collect()
    }

    pub fn names_of(&self, set: VertexSet) -> Vec<String> {
        set.iter().map(|v| self.vertex_name(v).to_owned()).collect()
    }

    /// Same graph with each weight replaced by `f(rank, weight)`.
    pub fn map_weights(&self, mut f: impl FnMut(usize, &BigRational) -> BigRational) -> Result<Self> {
        let s_count = self.s_count();
        Self::new(
            self.s_names.clone(),
            self.t_names.clone(),
            self.edges
                .iter()
                .map(|e| (e.s.index, e.t.index - s_count, f(e.rank, &e.weight)))
                .collect(),
        )
    }

    /// Same graph with every weight drawn uniformly from `palette`.
    pub fn with_random_weights(&self, palette: &[BigRational], seed: u64) -> Result<Self> {
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        self.map_weights(|_, _| palette[rng.random_range(0..palette.len())].clone())
    }

    pub fn is_unit_weighted(&self) -> bool {
        self.edges.iter().all(|e| e.weight.is_one())
    }

    /// Serializes to the graph document format. Unit weights are omitted.
    pub fn to_document(&self) -> String {
        let doc = GraphDocument {
            s: self.s_names.clone(),
            t: self.t_names.clone(),
            edges: self
                .edges
                .iter()
                .map(|e| {
                    let mut row = vec![
                        self.vertex_name(e.s.index).to_owned(),
                        self.vertex_name(e.t.index).to_owned(),
                    ];
                    if !e.weight.is_one() {
                        row.push(e.weight.to_string());
                    }
                    row
                })
                .collect(),
        };
        serde_json::to_string(&doc).expect("graph document serializes")
    }

    /// Short human-readable description, e.g. `S=2 T=1 E=[s1-t1,s2-t1]`.
    pub fn describe(&self) -> String {
        let edges: Vec<String> = self
            .edges
            .iter()
            .map(|e| {
                let base = format!("{}-{}", self.vertex_name(e.s.index), self.vertex_name(e.t.index));
                if e.weight.is_one() {
                    base
                } else {
                    format!("{base}:{}", e.weight)
                }
            })
            .collect();
        format!("S={} T={} E=[{}]", self.s_count(), self.t_count(), edges.join(","))
    }
}

fn default_names(prefix: char, count: usize) -> Vec<String> {
    (1..=count).map(|i| format!("{prefix}{i}")).collect()
}

#[derive(Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
struct GraphDocument {
    s: Vec<String>,
    t: Vec<String>,
    edges: Vec<Vec<String>>,
}

/// Parses a graph document:
/// `{"s": [..], "t": [..], "edges": [[s, t], [s, t, "p/q"], ..]}`.
pub fn parse_graph(text: &str) -> Result<BipartiteGraph> {
    let doc: GraphDocument = serde_json::from_str(text).map_err(|e| Error::Document(e.to_string()))?;
    let s_index: HashMap<&str, usize> = doc.s.iter().enumerate().map(|(i, n)| (n.as_str(), i)).collect();
    let t_index: HashMap<&str, usize> = doc.t.iter().enumerate().map(|(i, n)| (n.as_str(), i)).collect();
    let mut edges = Vec::with_capacity(doc.edges.len());
    for row in &doc.edges {
        let (s, t, weight) = match row.as_slice() {
            [s, t] => (s, t, None),
            [s, t, w] => (s, t, Some(w)),
            _ => return Err(Error::MalformedEdge(format!("expected 2 or 3 fields, got {row:?}"))),
        };
        let (Some(&si), Some(&ti)) = (s_index.get(s.as_str()), t_index.get(t.as_str())) else {
            return Err(Error::MalformedEdge(format!("{s}-{t} does not join S to T")));
        };
        let weight = match weight {
            None => BigRational::one(),
            Some(w) => parse_positive(w).ok_or_else(|| Error::InvalidWeight(w.clone()))?,
        };
        edges.push((si, ti, weight));
    }
    BipartiteGraph::new(doc.s, doc.t, edges)
}

/// Every labeled unit-weight bipartite graph on a fixed `(s, t)`
/// bipartition. Graph number `m` contains potential edge `(i, j)` (in
/// lexicographic order, S-major) iff bit `i * t + j` of `m` is set.
pub struct GraphSweep {
    s_count: usize,
    t_count: usize,
    next: u64,
    end: u64,
}

impl Iterator for GraphSweep {
    type Item = BipartiteGraph;

    fn next(&mut self) -> Option<BipartiteGraph> {
        if self.next >= self.end {
            return None;
        }
        let code = self.next;
        self.next += 1;
        Some(graph_from_code(self.s_count, self.t_count, code))
    }

    fn size_hint(&self) -> (usize, Option<usize>) {
        let n = (self.end - self.next) as usize;
        (n, Some(n))
    }
}

impl ExactSizeIterator for GraphSweep {}

fn graph_from_code(s_count: usize, t_count: usize, code: u64) -> BipartiteGraph {
    let pairs: Vec<(usize, usize)> = (0..s_count * t_count)
        .filter(|b| code >> b & 1 == 1)
        .map(|b| (b / t_count, b % t_count))
        .collect();
    BipartiteGraph::from_pairs(s_count, t_count, &pairs).expect("sweep graphs are valid")
}

pub fn enumerate_graphs(s_count: usize, t_count: usize) -> Result<GraphSweep> {
    enumerate_graphs_capped(s_count, t_count, DEFAULT_SWEEP_CAP)
}

pub fn enumerate_graphs_capped(s_count: usize, t_count: usize, cap: usize) -> Result<GraphSweep> {
    let slots = s_count * t_count;
    if slots > cap || slots >= 64 {
        return Err(Error::SweepTooLarge(format!("{s_count}x{t_count} has {slots} potential edges (cap {cap})")));
    }
    let n = s_count + t_count;
    if n > vertex_cap() {
        return Err(Error::SweepTooLarge(format!("{n} vertices (cap {})", vertex_cap())));
    }
    Ok(GraphSweep { s_count, t_count, next: 0, end: 1u64 << slots })
}

/// All labeled graphs with `|S| + |T| <= max_vertices`, ordered by total
/// size, then `|S|`, then edge code.
pub fn enumerate_graphs_up_to(max_vertices: usize) -> Result<Vec<BipartiteGraph>> {
    let mut out = Vec::new();
    for n in 0..=max_vertices {
        for s in 0..=n {
            out.extend(enumerate_graphs(s, n - s)?);
        }
    }
    Ok(out)
}

/// Includes each potential edge independently with probability `p`.
pub fn random_graph(s_count: usize, t_count: usize, p: Ratio<u64>, seed: u64) -> Result<BipartiteGraph> {
    if *p.denom() == 0 || p.numer() > p.denom() {
        return Err(Error::PreconditionFailed(format!("edge probability {p} not in [0, 1]")));
    }
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut pairs = Vec::new();
    for i in 0..s_count {
        for j in 0..t_count {
            if rng.random_range(0..*p.denom()) < *p.numer() {
                pairs.push((i, j));
            }
        }
    }
    BipartiteGraph::from_pairs(s_count, t_count, &pairs)
}
