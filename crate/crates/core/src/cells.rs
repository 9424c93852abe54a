//! The partition of `M × M` into switching cells.
//!
//! An ordered pair `(C, D)` of matchings overlays to a multigraph whose
//! components are cycles (shared edges count as 2-cycles) and paths. The
//! cycles give the vertex set `W` with the perfect matchings `K = C ∩ Q`,
//! `L = D ∩ Q`; the paths `P_1, .., P_k` (sorted by lowest edge rank) each
//! split into two alternating matchings. Swapping the halves on any subset
//! of paths enumerates the cell `X_i`, whose `2^k` pairs all share the
//! boundary pattern `B_i` and differ only at the path endpoints.

use std::hash::Hash;

use serde_json::{json, Value};

use crate::error::{Error, Result};
use crate::events::{Event, GroundSet, SetFamily};
use crate::family;
use crate::graph::BipartiteGraph;
use crate::matching::{boundary, Matching};
use crate::vertex_set::VertexSet;

/// Cells with more paths than this are refused by [`build_cell`].
pub const MAX_PATHS: usize = 20;

/// One path `P_j` of a cell with its canonical split and endpoint labels.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub struct PathComponent {
    /// Edge-rank mask of the path.
    pub edges: u64,
    /// `M_{j,0}`: the alternating class holding the lowest-ranked edge.
    pub split_zero: u64,
    /// `M_{j,1}`.
    pub split_one: u64,
    /// `v_{j,0}`: the endpoint in `B(C)` when `C` uses `split_zero` here.
    pub v0: usize,
    /// `v_{j,1}`.
    pub v1: usize,
}

impl PathComponent {
    pub fn lowest_rank(&self) -> usize {
        self.edges.trailing_zeros() as usize
    }

    pub fn vertices(&self, g: &BipartiteGraph) -> VertexSet {
        edge_vertices(self.edges, g)
    }

    pub fn endpoints(&self) -> VertexSet {
        VertexSet::from_iter([self.v0, self.v1])
    }

    /// `M_{j,b}`.
    #[inline]
    pub fn split(&self, one: bool) -> u64 {
        if one {
            self.split_one
        } else {
            self.split_zero
        }
    }
}

fn edge_vertices(edges: u64, g: &BipartiteGraph) -> VertexSet {
    VertexSet::from_bits(edges).iter().fold(VertexSet::EMPTY, |acc, r| acc.union(g.edge_ends(r)))
}

/// `ω ∈ {0,1}^k`; bit `j` of `bits` is `ω_j`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub struct SwitchVector {
    pub bits: u64,
    pub len: usize,
}

impl SwitchVector {
    pub fn get(&self, j: usize) -> bool {
        self.bits >> j & 1 == 1
    }

    pub fn complement(&self) -> SwitchVector {
        SwitchVector { bits: !self.bits & VertexSet::full(self.len).bits(), len: self.len }
    }
}

/// A cell index `i = (W, K, L, R)`.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct CellIndex {
    pub w: VertexSet,
    pub k: Matching,
    pub l: Matching,
    /// `R` as its path components, in increasing order of lowest edge.
    pub paths: Vec<PathComponent>,
}

impl CellIndex {
    pub fn path_count(&self) -> usize {
        self.paths.len()
    }

    /// `H_i`: all path endpoints.
    pub fn h(&self) -> VertexSet {
        self.paths.iter().fold(VertexSet::EMPTY, |acc, p| acc.union(p.endpoints()))
    }

    /// `U = { v_{j,1} }` as a vertex set.
    pub fn u(&self) -> VertexSet {
        self.paths.iter().map(|p| p.v1).collect()
    }

    /// `V(R)`.
    pub fn path_vertices(&self, g: &BipartiteGraph) -> VertexSet {
        edge_vertices(self.r_edges(), g)
    }

    /// All edges of `R`.
    pub fn r_edges(&self) -> u64 {
        self.paths.iter().fold(0, |acc, p| acc | p.edges)
    }

    /// `B_i = ((W ∪ V(R)) Δ S) \ H_i`.
    pub fn b_i(&self, g: &BipartiteGraph) -> VertexSet {
        self.w.union(self.path_vertices(g)).symmetric_difference(g.s_set()).difference(self.h())
    }

    /// Ground set for events over `U`: element `j` is `v_{j,1}`.
    pub fn universe(&self, g: &BipartiteGraph) -> Result<GroundSet> {
        GroundSet::new(self.paths.iter().map(|p| g.vertex_name(p.v1).to_owned()).collect())
    }

    /// `C_{i,ω} = K ∪ ⋃_j M_{j,ω_j}`.
    pub fn c(&self, g: &BipartiteGraph, omega: u64) -> Matching {
        let mut mask = self.k.edge_mask();
        for (j, p) in self.paths.iter().enumerate() {
            mask |= p.split(omega >> j & 1 == 1);
        }
        Matching::from_mask_unchecked(g, mask)
    }

    /// `D_{i,ω} = L ∪ ⋃_j M_{j,1-ω_j}`.
    pub fn d(&self, g: &BipartiteGraph, omega: u64) -> Matching {
        let mut mask = self.l.edge_mask();
        for (j, p) in self.paths.iter().enumerate() {
            mask |= p.split(omega >> j & 1 == 0);
        }
        Matching::from_mask_unchecked(g, mask)
    }

    /// Checks every structural requirement on an index.
    pub fn validate(&self, g: &BipartiteGraph) -> Result<()> {
        let bad = |msg: String| Err(Error::InvalidCell(msg));
        let v = g.vertex_set();
        if !self.w.is_subset(v) {
            return bad("W outside V".into());
        }
        for (name, m) in [("K", &self.k), ("L", &self.l)] {
            let Ok(again) = Matching::from_mask(g, m.edge_mask()) else {
                return bad(format!("{name} is not a matching"));
            };
            if again.covered() != self.w {
                return bad(format!("{name} is not a perfect matching of G[W]"));
            }
        }
        if self.paths.len() > MAX_PATHS {
            return bad(format!("{} paths (cap {MAX_PATHS})", self.paths.len()));
        }
        let mut used = self.w;
        let mut last_rank = None;
        for p in &self.paths {
            let (zero, one) = canonical_split(p.edges, g).map_err(|e| Error::InvalidCell(e.to_string()))?;
            if (zero, one) != (p.split_zero, p.split_one) {
                return bad("path split is not canonical".into());
            }
            if endpoint_labels(p.edges, p.split_zero, g)? != (p.v0, p.v1) {
                return bad("endpoint labels disagree with the labeling rule".into());
            }
            let vs = p.vertices(g);
            if !vs.is_disjoint(used) {
                return bad("paths overlap each other or W".into());
            }
            used = used.union(vs);
            if last_rank.is_some_and(|r| r >= p.lowest_rank()) {
                return bad("paths not sorted by lowest edge".into());
            }
            last_rank = Some(p.lowest_rank());
        }
        Ok(())
    }

    /// Membership in the conditioned index set `I'`:
    /// `V+ ⊆ B_i` and `V- ∩ (B_i ∪ H_i) = ∅`.
    pub fn in_conditioned_index(&self, g: &BipartiteGraph, v_plus: VertexSet, v_minus: VertexSet) -> bool {
        let b = self.b_i(g);
        v_plus.is_subset(b) && v_minus.is_disjoint(b.union(self.h()))
    }

    /// Name-level description of the cell and its pairs, for dumps.
    pub fn to_json(&self, g: &BipartiteGraph) -> Value {
        let edge_names = |mask: u64| -> Vec<String> {
            VertexSet::from_bits(mask)
                .iter()
                .map(|r| {
                    let e = &g.edges()[r];
                    format!("{}-{}", g.vertex_name(e.s.index), g.vertex_name(e.t.index))
                })
                .collect()
        };
        let paths: Vec<Value> = self
            .paths
            .iter()
            .map(|p| {
                json!({
                    "edges": edge_names(p.edges),
                    "split_zero": edge_names(p.split_zero),
                    "split_one": edge_names(p.split_one),
                    "v0": g.vertex_name(p.v0),
                    "v1": g.vertex_name(p.v1),
                })
            })
            .collect();
        let pairs: Vec<Value> = (0..1u64 << self.paths.len())
            .map(|omega| {
                json!({
                    "omega": (0..self.paths.len()).map(|j| if omega >> j & 1 == 1 { '1' } else { '0' }).collect::<String>(),
                    "c": edge_names(self.c(g, omega).edge_mask()),
                    "d": edge_names(self.d(g, omega).edge_mask()),
                })
            })
            .collect();
        json!({
            "w": g.names_of(self.w),
            "k": edge_names(self.k.edge_mask()),
            "l": edge_names(self.l.edge_mask()),
            "paths": paths,
            "h": g.names_of(self.h()),
            "b_i": g.names_of(self.b_i(g)),
            "u": g.names_of(self.u()),
            "x": pairs,
        })
    }
}

/// Walks a path given as an edge mask; returns its edges in walk order
/// starting from the lower-indexed endpoint.
fn walk_path(edges: u64, g: &BipartiteGraph) -> Result<Vec<usize>> {
    if edges == 0 {
        return Err(Error::NotAPath("no edges".into()));
    }
    let n = g.vertex_count();
    let mut incident: Vec<Vec<usize>> = vec![Vec::new(); n];
    for r in VertexSet::from_bits(edges).iter() {
        if r >= g.edge_count() {
            return Err(Error::NotAPath(format!("no edge with rank {r}")));
        }
        for v in g.edge_ends(r).iter() {
            incident[v].push(r);
        }
    }
    if incident.iter().any(|e| e.len() > 2) {
        return Err(Error::NotAPath("vertex of degree > 2".into()));
    }
    let ends: Vec<usize> = (0..n).filter(|&v| incident[v].len() == 1).collect();
    if ends.len() != 2 {
        return Err(Error::NotAPath("needs exactly two endpoints".into()));
    }
    let mut order = Vec::new();
    let mut at = ends[0];
    let mut prev = usize::MAX;
    while let Some(&next) = incident[at].iter().find(|&&r| r != prev) {
        order.push(next);
        prev = next;
        at = g.edge_ends(next).difference(VertexSet::singleton(at)).iter().next().expect("edge has two ends");
    }
    if order.len() != edges.count_ones() as usize {
        return Err(Error::NotAPath("not connected".into()));
    }
    Ok(order)
}

/// Splits a path into its two alternating matchings; the one holding the
/// lowest-ranked edge comes first.
pub fn canonical_split(edges: u64, g: &BipartiteGraph) -> Result<(u64, u64)> {
    let order = walk_path(edges, g)?;
    let (mut even, mut odd) = (0u64, 0u64);
    for (i, r) in order.iter().enumerate() {
        if i % 2 == 0 {
            even |= 1 << r;
        } else {
            odd |= 1 << r;
        }
    }
    let lowest = 1u64 << edges.trailing_zeros();
    Ok(if even & lowest != 0 { (even, odd) } else { (odd, even) })
}

/// `(v0, v1)`: `v0` is the endpoint `x` with `(x covered by split_zero)
/// XOR (x ∈ S)`, which is exactly the endpoint lying in `B(C)` when `C`
/// agrees with `split_zero` on this path.
pub fn endpoint_labels(edges: u64, split_zero: u64, g: &BipartiteGraph) -> Result<(usize, usize)> {
    walk_path(edges, g)?;
    // Odd-degree vertices of a path are its two endpoints.
    let mut ends = VertexSet::from_bits(edges)
        .iter()
        .fold(VertexSet::EMPTY, |acc, r| acc.symmetric_difference(g.edge_ends(r)))
        .iter();
    let (a, b) = (ends.next().expect("two endpoints"), ends.next().expect("two endpoints"));
    let covered = edge_vertices(split_zero, g);
    let s = g.s_set();
    let marked = |x: usize| covered.contains(x) ^ s.contains(x);
    match (marked(a), marked(b)) {
        (true, false) => Ok((a, b)),
        (false, true) => Ok((b, a)),
        _ => Err(Error::Invariant(format!("endpoint labels not unique for path {edges:#x}"))),
    }
}

/// Finds the unique cell `i` with `(c, d) ∈ X_i` and the `ω` with
/// `c = C_{i,ω}`.
pub fn decompose_pair(c: &Matching, d: &Matching, g: &BipartiteGraph) -> Result<(CellIndex, SwitchVector)> {
    for m in [c, d] {
        let again = Matching::from_mask(g, m.edge_mask())?;
        if again.covered() != m.covered() {
            return Err(Error::InvalidMatching("matching does not belong to this graph".into()));
        }
    }
    let (cm, dm) = (c.edge_mask(), d.edge_mask());
    let n = g.vertex_count();
    let mut c_at = vec![None; n];
    let mut d_at = vec![None; n];
    for r in VertexSet::from_bits(cm).iter() {
        g.edge_ends(r).iter().for_each(|v| c_at[v] = Some(r));
    }
    for r in VertexSet::from_bits(dm).iter() {
        g.edge_ends(r).iter().for_each(|v| d_at[v] = Some(r));
    }

    let mut w = VertexSet::EMPTY;
    let mut cycle_edges = 0u64;
    let mut paths = Vec::new();
    let mut seen = VertexSet::EMPTY;
    for start in 0..n {
        if seen.contains(start) || (c_at[start].is_none() && d_at[start].is_none()) {
            continue;
        }
        // Collect the component of `start` in the overlay.
        let mut comp = VertexSet::EMPTY;
        let mut comp_edges = 0u64;
        let mut stack = vec![start];
        while let Some(v) = stack.pop() {
            if comp.contains(v) {
                continue;
            }
            comp.insert(v);
            for r in [c_at[v], d_at[v]].into_iter().flatten() {
                comp_edges |= 1 << r;
                stack.extend(g.edge_ends(r).iter().filter(|&u| !comp.contains(u)));
            }
        }
        seen = seen.union(comp);
        let is_cycle = comp.iter().all(|v| c_at[v].is_some() && d_at[v].is_some());
        if is_cycle {
            w = w.union(comp);
            cycle_edges |= comp_edges;
        } else {
            let (split_zero, split_one) = canonical_split(comp_edges, g)?;
            let (v0, v1) = endpoint_labels(comp_edges, split_zero, g)?;
            paths.push(PathComponent { edges: comp_edges, split_zero, split_one, v0, v1 });
        }
    }
    paths.sort_by_key(PathComponent::lowest_rank);
    let mut omega = 0u64;
    for (j, p) in paths.iter().enumerate() {
        let on_path = cm & p.edges;
        if on_path == p.split_one {
            omega |= 1 << j;
        } else if on_path != p.split_zero {
            return Err(Error::Invariant("C does not follow a split on a path".into()));
        }
    }
    let cell = CellIndex {
        w,
        k: Matching::from_mask_unchecked(g, cm & cycle_edges),
        l: Matching::from_mask_unchecked(g, dm & cycle_edges),
        paths,
    };
    let len = cell.paths.len();
    Ok((cell, SwitchVector { bits: omega, len }))
}

/// `Y_i^C`, `Y_i^D` and `X_i`, all indexed by `ω` read as a binary number
/// (bit `j` = `ω_j`).
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CellFamily {
    pub yc: Vec<Matching>,
    pub yd: Vec<Matching>,
}

impl CellFamily {
    /// `X_i = { (C_{i,ω}, D_{i,ω}) }`.
    pub fn x(&self) -> impl Iterator<Item = (Matching, Matching)> + '_ {
        self.yc.iter().copied().zip(self.yd.iter().copied())
    }

    pub fn len(&self) -> usize {
        self.yc.len()
    }

    pub fn is_empty(&self) -> bool {
        self.yc.is_empty()
    }
}

pub fn build_cell(i: &CellIndex, g: &BipartiteGraph) -> Result<CellFamily> {
    i.validate(g)?;
    let size = 1u64 << i.path_count();
    Ok(CellFamily {
        yc: (0..size).map(|w| i.c(g, w)).collect(),
        yd: (0..size).map(|w| i.d(g, w)).collect(),
    })
}

/// `τ_i(M) = B(M) ∩ U`, in `U` coordinates (bit `j` is `v_{j,1}`).
pub fn tau(i: &CellIndex, m: &Matching, g: &BipartiteGraph) -> VertexSet {
    tau_of_boundary(i, boundary(m, g))
}

#[inline]
pub(crate) fn tau_of_boundary(i: &CellIndex, b: VertexSet) -> VertexSet {
    i.paths
        .iter()
        .enumerate()
        .filter(|(_, p)| b.contains(p.v1))
        .fold(VertexSet::EMPTY, |acc, (j, _)| acc.union(VertexSet::singleton(j)))
}

/// `F^i = { τ_i(C) : C ∈ Y_i^C ∩ M_F }`, as an event over `U`. The `Y_i^D`
/// side is computed too and must agree.
pub fn project_event<F: SetFamily + ?Sized>(i: &CellIndex, f: &F, g: &BipartiteGraph) -> Result<Event> {
    let ground = i.universe(g)?;
    let family = build_cell(i, g)?;
    let side = |ms: &[Matching]| {
        let mut bits = family::empty(i.path_count());
        for m in ms {
            let b = boundary(m, g);
            if f.contains(b) {
                family::insert(&mut bits, tau_of_boundary(i, b).bits());
            }
        }
        bits
    };
    let c_side = side(&family.yc);
    let d_side = side(&family.yd);
    if c_side != d_side {
        return Err(Error::Invariant("C-side and D-side projections differ".into()));
    }
    Ok(Event::from_bits(ground, c_side))
}

/// Every distinct cell arising from `matchings × matchings`, in first-seen
/// order of the pair scan.
pub fn distinct_cells(g: &BipartiteGraph, matchings: &[Matching]) -> Result<Vec<CellIndex>> {
    let mut seen = std::collections::HashSet::new();
    let mut out = Vec::new();
    for c in matchings {
        for d in matchings {
            let (cell, _) = decompose_pair(c, d, g)?;
            if seen.insert(cell_key(&cell)) {
                out.push(cell);
            }
        }
    }
    Ok(out)
}

/// A cell is determined by `K`, `L` and the edge set of `R`.
pub(crate) fn cell_key(i: &CellIndex) -> (u64, u64, u64) {
    (i.k.edge_mask(), i.l.edge_mask(), i.r_edges())
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::events::IncreasingEvent;
    use crate::matching::enumerate_all_matchings;

    fn path() -> BipartiteGraph {
        BipartiteGraph::from_pairs(2, 1, &[(0, 0), (1, 0)]).unwrap()
    }

    fn m(g: &BipartiteGraph, ranks: &[usize]) -> Matching {
        Matching::from_ranks(g, ranks).unwrap()
    }

    #[test]
    fn decompose_empty_pair() {
        let g = path();
        let (i, w) = decompose_pair(&Matching::EMPTY, &Matching::EMPTY, &g).unwrap();
        assert!(i.w.is_empty() && i.k.is_empty() && i.l.is_empty() && i.paths.is_empty());
        assert_eq!(w.len, 0);
    }

    #[test]
    fn shared_edge_is_a_two_cycle() {
        let g = BipartiteGraph::from_pairs(1, 1, &[(0, 0)]).unwrap();
        let e0 = m(&g, &[0]);
        let (i, _) = decompose_pair(&e0, &e0, &g).unwrap();
        assert_eq!(i.w, g.vertex_set());
        assert_eq!(i.k, e0);
        assert_eq!(i.l, e0);
        assert!(i.paths.is_empty());
    }

    #[test]
    fn decompose_path_pair() {
        let g = path();
        let (i, w) = decompose_pair(&m(&g, &[0]), &m(&g, &[1]), &g).unwrap();
        assert!(i.w.is_empty());
        assert_eq!(i.paths.len(), 1);
        let p = i.paths[0];
        assert_eq!((p.split_zero, p.split_one), (0b01, 0b10));
        assert_eq!(w.bits, 0);
        // s2 uncovered by {e0} and in S → v0 = s2
        assert_eq!((g.vertex_name(p.v0), g.vertex_name(p.v1)), ("s2", "s1"));
        assert_eq!(i.c(&g, 0), m(&g, &[0]));
    }

    #[test]
    fn split_examples() {
        let g = BipartiteGraph::from_pairs(1, 1, &[(0, 0)]).unwrap();
        assert_eq!(canonical_split(1, &g).unwrap(), (1, 0));
        let g = path();
        assert_eq!(canonical_split(0b11, &g).unwrap(), (0b01, 0b10));
        // t2-s1-t1-s2 with the interior edge s1-t1 ranked lowest.
        let g = BipartiteGraph::from_pairs(2, 2, &[(0, 0), (0, 1), (1, 0)]).unwrap();
        assert_eq!(canonical_split(0b111, &g).unwrap(), (0b001, 0b110));
    }

    #[test]
    fn split_rejects_non_paths() {
        let k22 = BipartiteGraph::from_pairs(2, 2, &[(0, 0), (0, 1), (1, 0), (1, 1)]).unwrap();
        assert!(matches!(canonical_split(0b1111, &k22), Err(Error::NotAPath(_))));
        assert!(matches!(canonical_split(0b1001, &k22), Err(Error::NotAPath(_))));
        assert!(matches!(canonical_split(0, &k22), Err(Error::NotAPath(_))));
        let star = BipartiteGraph::from_pairs(1, 3, &[(0, 0), (0, 1), (0, 2)]).unwrap();
        assert!(matches!(canonical_split(0b111, &star), Err(Error::NotAPath(_))));
    }

    #[test]
    fn label_examples() {
        let g = BipartiteGraph::from_pairs(1, 1, &[(0, 0)]).unwrap();
        let (v0, v1) = endpoint_labels(1, 1, &g).unwrap();
        assert_eq!((g.vertex_name(v0), g.vertex_name(v1)), ("t1", "s1"));
        let g = path();
        let (v0, v1) = endpoint_labels(0b11, 0b01, &g).unwrap();
        assert_eq!((g.vertex_name(v0), g.vertex_name(v1)), ("s2", "s1"));
    }

    #[test]
    fn build_cell_examples() {
        let g = path();
        let (i, _) = decompose_pair(&Matching::EMPTY, &Matching::EMPTY, &g).unwrap();
        let fam = build_cell(&i, &g).unwrap();
        assert_eq!(fam.yc, vec![Matching::EMPTY]);
        assert_eq!(fam.yd, vec![Matching::EMPTY]);

        let (i, _) = decompose_pair(&m(&g, &[0]), &m(&g, &[1]), &g).unwrap();
        let fam = build_cell(&i, &g).unwrap();
        assert_eq!(fam.yc, vec![m(&g, &[0]), m(&g, &[1])]);
        assert_eq!(fam.yd, vec![m(&g, &[1]), m(&g, &[0])]);
        assert_eq!(fam.x().count(), 2);
    }

    #[test]
    fn invalid_cells_rejected() {
        let g = path();
        let (mut i, _) = decompose_pair(&m(&g, &[0]), &m(&g, &[1]), &g).unwrap();
        i.paths[0].split_zero = 0b10;
        assert!(matches!(build_cell(&i, &g), Err(Error::InvalidCell(_))));
        let bad_w = CellIndex { w: VertexSet::from_iter([0]), k: Matching::EMPTY, l: Matching::EMPTY, paths: vec![] };
        assert!(matches!(build_cell(&bad_w, &g), Err(Error::InvalidCell(_))));
    }

    #[test]
    fn tau_examples() {
        let g = path();
        let (i0, _) = decompose_pair(&Matching::EMPTY, &Matching::EMPTY, &g).unwrap();
        assert!(tau(&i0, &Matching::EMPTY, &g).is_empty());
        let (i, _) = decompose_pair(&m(&g, &[0]), &m(&g, &[1]), &g).unwrap();
        assert_eq!(g.names_of(i.u()), vec!["s1"]);
        assert!(tau(&i, &m(&g, &[0]), &g).is_empty());
        assert_eq!(tau(&i, &m(&g, &[1]), &g), VertexSet::singleton(0));
    }

    #[test]
    fn projection_examples() {
        let g = path();
        let ground = GroundSet::from_graph(&g).unwrap();
        let (i, _) = decompose_pair(&m(&g, &[0]), &m(&g, &[1]), &g).unwrap();
        let full = project_event(&i, &Event::full(ground.clone()), &g).unwrap();
        assert_eq!(full.len(), 2);
        assert!(project_event(&i, &Event::empty(ground.clone()), &g).unwrap().is_empty());
        let t1 = IncreasingEvent::upward_closure(ground, [g.vertex_set_of(&["t1"]).unwrap()]);
        assert_eq!(project_event(&i, &t1, &g).unwrap().len(), 2);
    }

    #[test]
    fn decompose_rejects_foreign_matchings() {
        let g = path();
        let k22 = BipartiteGraph::from_pairs(2, 2, &[(0, 0), (1, 1)]).unwrap();
        let foreign = Matching::from_ranks(&k22, &[0, 1]).unwrap();
        assert!(matches!(decompose_pair(&foreign, &Matching::EMPTY, &g), Err(Error::InvalidMatching(_))));
    }

    #[test]
    fn k11_has_three_cells() {
        let g = BipartiteGraph::from_pairs(1, 1, &[(0, 0)]).unwrap();
        let ms = enumerate_all_matchings(&g);
        assert_eq!(distinct_cells(&g, &ms).unwrap().len(), 3);
    }
}
