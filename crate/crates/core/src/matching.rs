//! Matchings, their enumeration, and the boundary map `B(M) = V(M) Δ S`.

use std::fmt;

use num_rational::BigRational;
use num_traits::One;

use crate::error::{Error, Result};
use crate::events::SetFamily;
use crate::graph::BipartiteGraph;
use crate::vertex_set::VertexSet;

/// A set of pairwise vertex-disjoint edges, identified by its edge ranks.
#[derive(Clone, Copy, PartialEq, Eq, Hash, Default)]
pub struct Matching {
    edges: u64,
    covered: VertexSet,
}

impl Matching {
    pub const EMPTY: Matching = Matching { edges: 0, covered: VertexSet::EMPTY };

    /// Validates that `edges` (a rank mask) is a matching of `g`.
    pub fn from_mask(g: &BipartiteGraph, edges: u64) -> Result<Matching> {
        if g.edge_count() < 64 && edges >> g.edge_count() != 0 {
            return Err(Error::InvalidMatching(format!("edge mask {edges:#x} exceeds edge count")));
        }
        let mut covered = VertexSet::EMPTY;
        for rank in VertexSet::from_bits(edges).iter() {
            let ends = g.edge_ends(rank);
            if !covered.is_disjoint(ends) {
                return Err(Error::InvalidMatching(format!("edge {rank} shares a vertex")));
            }
            covered = covered.union(ends);
        }
        Ok(Matching { edges, covered })
    }

    pub fn from_ranks(g: &BipartiteGraph, ranks: &[usize]) -> Result<Matching> {
        let mut mask = 0u64;
        for &r in ranks {
            if r >= g.edge_count() {
                return Err(Error::InvalidMatching(format!("no edge with rank {r}")));
            }
            mask |= 1 << r;
        }
        Matching::from_mask(g, mask)
    }

    /// Caller guarantees `edges` is a matching of `g`.
    pub(crate) fn from_mask_unchecked(g: &BipartiteGraph, edges: u64) -> Matching {
        let covered = VertexSet::from_bits(edges)
            .iter()
            .fold(VertexSet::EMPTY, |acc, r| acc.union(g.edge_ends(r)));
        debug_assert_eq!(covered.len(), 2 * edges.count_ones() as usize);
        Matching { edges, covered }
    }

    #[inline]
    pub fn edge_mask(&self) -> u64 {
        self.edges
    }

    /// Edge ranks in increasing order.
    pub fn ranks(&self) -> impl Iterator<Item = usize> {
        VertexSet::from_bits(self.edges).iter()
    }

    /// `V(M)`.
    #[inline]
    pub fn covered(&self) -> VertexSet {
        self.covered
    }

    #[inline]
    pub fn len(&self) -> usize {
        self.edges.count_ones() as usize
    }

    #[inline]
    pub fn is_empty(&self) -> bool {
        self.edges == 0
    }
}

impl fmt::Debug for Matching {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_set().entries(self.ranks().map(|r| format!("e{r}"))).finish()
    }
}

/// Every matching of `g` (the empty one included), each once, in
/// lexicographic order of their sorted edge-rank sequences.
pub fn enumerate_all_matchings(g: &BipartiteGraph) -> Vec<Matching> {
    fn extend(g: &BipartiteGraph, from: usize, current: Matching, out: &mut Vec<Matching>) {
        out.push(current);
        for rank in from..g.edge_count() {
            let ends = g.edge_ends(rank);
            if current.covered.is_disjoint(ends) {
                let next = Matching { edges: current.edges | 1 << rank, covered: current.covered.union(ends) };
                extend(g, rank + 1, next, out);
            }
        }
    }
    let mut out = Vec::new();
    extend(g, 0, Matching::EMPTY, &mut out);
    out
}

/// The maximum-cardinality matchings, in enumeration order.
pub fn enumerate_maximum_matchings(g: &BipartiteGraph) -> Vec<Matching> {
    maximum_only(enumerate_all_matchings(g))
}

pub(crate) fn maximum_only(all: Vec<Matching>) -> Vec<Matching> {
    let best = all.iter().map(Matching::len).max().unwrap_or(0);
    all.into_iter().filter(|m| m.len() == best).collect()
}

/// `B(M) = V(M) Δ S`; always has exactly `|S|` elements.
#[inline]
pub fn boundary(m: &Matching, g: &BipartiteGraph) -> VertexSet {
    m.covered.symmetric_difference(g.s_set())
}

/// `w(M) = Π w(e)`; the empty product is 1.
pub fn matching_weight(m: &Matching, g: &BipartiteGraph) -> BigRational {
    m.ranks().fold(BigRational::one(), |acc, r| acc * &g.edges()[r].weight)
}

/// `M_F = { M : B(M) ∈ F }`, in enumeration order.
pub fn matchings_in_event<F: SetFamily + ?Sized>(g: &BipartiteGraph, f: &F) -> Vec<Matching> {
    enumerate_all_matchings(g)
        .into_iter()
        .filter(|m| f.contains(boundary(m, g)))
        .collect()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::events::{Event, GroundSet, IncreasingEvent};
    use crate::rational::{from_u64, ratio};

    fn path() -> BipartiteGraph {
        BipartiteGraph::from_pairs(2, 1, &[(0, 0), (1, 0)]).unwrap()
    }

    fn ranks(ms: &[Matching]) -> Vec<Vec<usize>> {
        ms.iter().map(|m| m.ranks().collect()).collect()
    }

    #[test]
    fn small_enumerations() {
        let k11 = BipartiteGraph::from_pairs(1, 1, &[(0, 0)]).unwrap();
        assert_eq!(ranks(&enumerate_all_matchings(&k11)), vec![vec![], vec![0]]);
        assert_eq!(ranks(&enumerate_all_matchings(&path())), vec![vec![], vec![0], vec![1]]);
        let k22 = BipartiteGraph::from_pairs(2, 2, &[(0, 0), (0, 1), (1, 0), (1, 1)]).unwrap();
        let all = enumerate_all_matchings(&k22);
        assert_eq!(all.len(), 7);
        assert_eq!(all.iter().filter(|m| m.len() == 2).count(), 2);
    }

    #[test]
    fn maximum_matchings() {
        let edgeless = BipartiteGraph::from_pairs(2, 2, &[]).unwrap();
        assert_eq!(ranks(&enumerate_maximum_matchings(&edgeless)), vec![Vec::<usize>::new()]);
        let k11 = BipartiteGraph::from_pairs(1, 1, &[(0, 0)]).unwrap();
        assert_eq!(ranks(&enumerate_maximum_matchings(&k11)), vec![vec![0]]);
        assert_eq!(ranks(&enumerate_maximum_matchings(&path())), vec![vec![0], vec![1]]);
    }

    #[test]
    fn boundary_examples() {
        let k11 = BipartiteGraph::from_pairs(1, 1, &[(0, 0)]).unwrap();
        assert_eq!(boundary(&Matching::EMPTY, &k11), k11.s_set());
        let m = Matching::from_ranks(&k11, &[0]).unwrap();
        assert_eq!(boundary(&m, &k11), VertexSet::from_iter([1]));
        let g = path();
        let e0 = Matching::from_ranks(&g, &[0]).unwrap();
        // {s1, t1} Δ {s1, s2} = {s2, t1}
        assert_eq!(g.names_of(boundary(&e0, &g)), vec!["s2", "t1"]);
    }

    #[test]
    fn weights() {
        let g = BipartiteGraph::new(
            vec!["s1".into(), "s2".into()],
            vec!["t1".into(), "t2".into()],
            vec![(0, 0, from_u64(2)), (1, 1, ratio(1, 3)), (0, 1, ratio(3, 2))],
        )
        .unwrap();
        assert_eq!(matching_weight(&Matching::EMPTY, &g), from_u64(1));
        assert_eq!(matching_weight(&Matching::from_ranks(&g, &[2]).unwrap(), &g), ratio(3, 2));
        assert_eq!(matching_weight(&Matching::from_ranks(&g, &[0, 1]).unwrap(), &g), ratio(2, 3));
    }

    #[test]
    fn invalid_matchings_rejected() {
        let g = path();
        assert!(matches!(Matching::from_ranks(&g, &[0, 1]), Err(Error::InvalidMatching(_))));
        assert!(matches!(Matching::from_ranks(&g, &[5]), Err(Error::InvalidMatching(_))));
    }

    #[test]
    fn event_filter() {
        let g = path();
        let ground = GroundSet::from_graph(&g).unwrap();
        let full = Event::full(ground.clone());
        assert_eq!(matchings_in_event(&g, &full).len(), 3);
        assert!(matchings_in_event(&g, &Event::empty(ground.clone())).is_empty());
        let t1 = IncreasingEvent::upward_closure(ground, [VertexSet::from_iter([2])]);
        assert_eq!(ranks(&matchings_in_event(&g, &t1)), vec![vec![0], vec![1]]);
    }
}
