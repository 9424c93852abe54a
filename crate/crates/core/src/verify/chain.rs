//! Cell-level verification: the partition of `M × M`, the structural
//! identities of each cell, and the per-cell inequality chain.

use std::collections::{HashMap, HashSet};
use std::sync::OnceLock;

use num_rational::BigRational;
use serde_json::{json, Value};

use super::{int, CheckReport, Relation};
use crate::cells::{build_cell, cell_key, decompose_pair, distinct_cells, tau_of_boundary, CellIndex};
use crate::error::{Error, Result};
use crate::events::{box_increasing, Event, IncreasingEvent, SetFamily};
use crate::family;
use crate::graph::BipartiteGraph;
use crate::matching::{boundary, matching_weight, Matching};
use crate::vertex_set::VertexSet;

/// Universes up to this size use a precomputed general-box table.
const BOX_TABLE_MAX: usize = 3;

fn box_tables() -> &'static [Vec<u64>] {
    static TABLES: OnceLock<Vec<Vec<u64>>> = OnceLock::new();
    TABLES.get_or_init(|| {
        (0..=BOX_TABLE_MAX)
            .map(|k| {
                let families = 1u64 << (1u32 << k);
                let mut table = Vec::with_capacity((families * families) as usize);
                for x in 0..families {
                    for y in 0..families {
                        table.push(family::box_general(&[x], &[y], k)[0]);
                    }
                }
                table
            })
            .collect()
    })
}

/// General box of one-word families on `k <= 6` points.
fn box_word(a: u64, b: u64, k: usize) -> u64 {
    if k <= BOX_TABLE_MAX {
        let families = 1u64 << (1u32 << k);
        box_tables()[k][(a * families + b) as usize]
    } else {
        family::box_general(&[a], &[b], k)[0]
    }
}

/// General box on a cell universe of size `k`.
fn box_on_universe(a: &[u64], b: &[u64], k: usize) -> Vec<u64> {
    if k <= BOX_TABLE_MAX {
        let families = 1u64 << (1u32 << k);
        vec![box_tables()[k][(a[0] * families + b[0]) as usize]]
    } else {
        family::box_general(a, b, k)
    }
}

/// A cell together with the boundaries and `τ` values of its switchings.
pub struct PreparedCell {
    pub index: CellIndex,
    /// `B(C_{i,ω})`, indexed by `ω`.
    bc: Vec<VertexSet>,
    /// `B(D_{i,ω})`.
    bd: Vec<VertexSet>,
    tc: Vec<u64>,
    td: Vec<u64>,
    members: Vec<(Matching, Matching)>,
}

/// Switching boundaries and `τ` tables; equal keys give equal chain results.
type ChainKey<'a> = (&'a [VertexSet], &'a [VertexSet], &'a [u64], &'a [u64]);

/// Every distinct cell of a graph, prepared once and reused across event
/// pairs.
pub struct PreparedCells {
    cells: Vec<PreparedCell>,
    /// Cells with equal `(B(C), B(D), τ(C), τ(D))` tables yield identical
    /// chain results; each entry is a representative and its multiplicity.
    chain_groups: Vec<(usize, u64)>,
    structure_failures: usize,
    first_structure_failure: Option<Value>,
}

impl PreparedCells {
    pub fn new(g: &BipartiteGraph, matchings: &[Matching]) -> Result<Self> {
        let mut cells = Vec::new();
        let mut structure_failures = 0;
        let mut first_structure_failure = None;
        for index in distinct_cells(g, matchings)? {
            let fam = build_cell(&index, g)?;
            let bc: Vec<VertexSet> = fam.yc.iter().map(|m| boundary(m, g)).collect();
            let bd: Vec<VertexSet> = fam.yd.iter().map(|m| boundary(m, g)).collect();
            let tc = bc.iter().map(|b| tau_of_boundary(&index, *b).bits()).collect();
            let td = bd.iter().map(|b| tau_of_boundary(&index, *b).bits()).collect();
            let cell = PreparedCell { members: fam.x().collect(), index, bc, bd, tc, td };
            if let Err(what) = cell.check_structure(g) {
                structure_failures += 1;
                first_structure_failure
                    .get_or_insert_with(|| json!({ "assertion": what, "cell": cell.index.to_json(g) }));
            }
            cells.push(cell);
        }
        let mut group_of: HashMap<ChainKey, usize> = HashMap::new();
        let mut chain_groups: Vec<(usize, u64)> = Vec::new();
        for (i, c) in cells.iter().enumerate() {
            let slot = *group_of.entry((&c.bc, &c.bd, &c.tc, &c.td)).or_insert_with(|| {
                chain_groups.push((i, 0));
                chain_groups.len() - 1
            });
            chain_groups[slot].1 += 1;
        }
        Ok(PreparedCells { cells, chain_groups, structure_failures, first_structure_failure })
    }

    pub fn len(&self) -> usize {
        self.cells.len()
    }

    pub fn is_empty(&self) -> bool {
        self.cells.is_empty()
    }

    pub fn cells(&self) -> impl Iterator<Item = &CellIndex> {
        self.cells.iter().map(|c| &c.index)
    }

    pub fn structure_report(&self, g: &BipartiteGraph) -> CheckReport {
        let total = self.cells.len() as u64;
        let good = total - self.structure_failures as u64;
        let report = CheckReport::compare(
            "cell-structure",
            json!({ "graph": g.to_document() }),
            int(good),
            Relation::Eq,
            int(total),
        );
        match &self.first_structure_failure {
            Some(w) => report.fail_with(w.clone()),
            None => report,
        }
    }

    /// `w(C) w(D)` is constant on each cell.
    pub fn check_weight_constancy(&self, g: &BipartiteGraph) -> CheckReport {
        let mut constant = 0u64;
        let mut witness = None;
        for cell in &self.cells {
            let products: Vec<BigRational> =
                cell.members.iter().map(|(c, d)| matching_weight(c, g) * matching_weight(d, g)).collect();
            if products.windows(2).all(|w| w[0] == w[1]) {
                constant += 1;
            } else if witness.is_none() {
                witness = Some(json!({
                    "cell": cell.index.to_json(g),
                    "products": products.iter().map(|p| p.to_string()).collect::<Vec<_>>(),
                }));
            }
        }
        let report = CheckReport::compare(
            "cell-weight-constancy",
            json!({ "graph": g.to_document() }),
            int(constant),
            Relation::Eq,
            int(self.cells.len() as u64),
        );
        match witness {
            Some(w) => report.fail_with(w),
            None => report,
        }
    }

    /// Runs assertions (i)-(v) on every cell for the pair `(a, b)` and sums
    /// the per-cell counts back to `|M_{a□b}| |M|` versus `|M_a| |M_b|`.
    pub fn chain_report(
        &self,
        g: &BipartiteGraph,
        matchings: &[Matching],
        a: &IncreasingEvent,
        b: &IncreasingEvent,
        instance: Value,
    ) -> Result<CheckReport> {
        let ab = box_increasing(a, b)?;
        let (ea, eb, eab) = (a.to_event(), b.to_event(), ab.to_event());
        let mut line5_sum = 0u64;
        let mut line4_sum = 0u64;
        let mut witness = None;
        for &(rep, multiplicity) in &self.chain_groups {
            let cell = &self.cells[rep];
            match cell.chain(&ea, &eb, &eab) {
                Ok((line5, line4)) => {
                    line5_sum += multiplicity * line5;
                    line4_sum += multiplicity * line4;
                }
                Err(what) => {
                    witness.get_or_insert_with(|| json!({ "assertion": what, "cell": cell.index.to_json(g) }));
                }
            }
        }
        // Global counts straight from the matching list.
        let count = |e: &Event| matchings.iter().filter(|m| e.contains(boundary(m, g))).count() as u64;
        let expected5 = count(&eab) * matchings.len() as u64;
        let expected4 = count(&ea) * count(&eb);
        if witness.is_none() && (line5_sum, line4_sum) != (expected5, expected4) {
            witness = Some(json!({
                "assertion": "cell sums reproduce the global counts",
                "cell_sums": [line5_sum, line4_sum],
                "global": [expected5, expected4],
            }));
        }
        let report = CheckReport::compare("cell-chain", instance, int(line5_sum), Relation::Le, int(line4_sum));
        Ok(match witness {
            Some(w) => report.fail_with(w),
            None => report,
        })
    }
}

impl PreparedCell {
    fn k(&self) -> usize {
        self.index.path_count()
    }

    /// Event-independent identities; `Err` names the first one violated.
    fn check_structure(&self, g: &BipartiteGraph) -> std::result::Result<(), &'static str> {
        let k = self.k();
        let size = 1usize << k;
        let i = &self.index;
        if self.bc.len() != size || self.bd.len() != size {
            return Err("|Y_i^C| = |Y_i^D| = 2^k");
        }
        let distinct = |ms: &mut dyn Iterator<Item = u64>| ms.collect::<HashSet<_>>().len() == size;
        if !distinct(&mut self.members.iter().map(|(c, _)| c.edge_mask()))
            || !distinct(&mut self.members.iter().map(|(_, d)| d.edge_mask()))
        {
            return Err("switchings are pairwise distinct");
        }
        let b_i = i.b_i(g);
        if !b_i.is_disjoint(i.h()) {
            return Err("B_i avoids H_i");
        }
        for omega in 0..size as u64 {
            let pick = |flip: bool| -> VertexSet {
                i.paths
                    .iter()
                    .enumerate()
                    .map(|(j, p)| if (omega >> j & 1 == 1) ^ flip { p.v1 } else { p.v0 })
                    .collect()
            };
            if self.bc[omega as usize] != b_i.union(pick(false)) {
                return Err("B(C_{i,w}) = B_i + {v_{j,w_j}}");
            }
            if self.bd[omega as usize] != b_i.union(pick(true)) {
                return Err("B(D_{i,w}) = B_i + {v_{j,1-w_j}}");
            }
        }
        // Image identity, computed independently over all H ⊆ H_i.
        let h = i.h();
        let mut expected: Vec<VertexSet> = Vec::new();
        let h_bits = h.bits();
        let mut sub = h_bits;
        loop {
            let hs = VertexSet::from_bits(sub);
            if i.paths.iter().all(|p| hs.intersection(p.endpoints()).len() == 1) {
                expected.push(b_i.union(hs));
            }
            if sub == 0 {
                break;
            }
            sub = (sub - 1) & h_bits;
        }
        expected.sort_unstable();
        let sorted = |v: &[VertexSet]| {
            let mut v = v.to_vec();
            v.sort_unstable();
            v
        };
        if sorted(&self.bc) != expected || sorted(&self.bd) != expected {
            return Err("image identity {B(C)} = {B(D)} = {B_i + H}");
        }
        if expected.iter().any(|x| x.len() != g.s_count()) {
            return Err("|B_i + H| = |S|");
        }
        let full = VertexSet::full(k).bits();
        if self.tc.iter().zip(&self.td).any(|(c, d)| *c != full ^ d) {
            return Err("tau(C) = U \\ tau(D)");
        }
        let onto = |t: &[u64]| {
            let mut t = t.to_vec();
            t.sort_unstable();
            t.iter().copied().eq(0..size as u64)
        };
        if !onto(&self.tc) || !onto(&self.td) {
            return Err("tau is a bijection onto 2^U");
        }
        Ok(())
    }

    /// Returns `(|(M_{a□b} × M) ∩ X_i|, |(M_a × M_b) ∩ X_i|)` after checking
    /// every per-cell assertion.
    fn chain(&self, ea: &Event, eb: &Event, eab: &Event) -> std::result::Result<(u64, u64), &'static str> {
        if self.k() <= 6 {
            self.chain_word(ea, eb, eab)
        } else {
            self.chain_words(ea, eb, eab)
        }
    }

    /// Multi-word version of the chain, valid for every `k`.
    fn chain_words(&self, ea: &Event, eb: &Event, eab: &Event) -> std::result::Result<(u64, u64), &'static str> {
        let k = self.k();
        let mut proj = [family::empty(k), family::empty(k), family::empty(k)];
        let mut proj_d = [family::empty(k), family::empty(k), family::empty(k)];
        let mut line5 = 0u64;
        let mut line4 = 0u64;
        let fam = [ea.bits(), eb.bits(), eab.bits()];
        for omega in 0..self.bc.len() {
            let (bc, bd) = (self.bc[omega].bits(), self.bd[omega].bits());
            for f in 0..3 {
                if family::contains(fam[f], bc) {
                    family::insert(&mut proj[f], self.tc[omega]);
                }
                if family::contains(fam[f], bd) {
                    family::insert(&mut proj_d[f], self.td[omega]);
                }
            }
            line5 += family::contains(fam[2], bc) as u64;
            line4 += (family::contains(fam[0], bc) && family::contains(fam[1], bd)) as u64;
        }
        if proj != proj_d {
            return Err("F^i is the same from the C side and the D side");
        }
        let [ai, bi, abi] = &proj;
        let reflected = family::reflect(bi, k);
        let a_and_not_b: Vec<u64> = ai.iter().zip(&reflected).map(|(x, y)| x & y).collect();
        let rhs = family::count(&a_and_not_b) as u64;
        if line5 != family::count(abi) as u64 {
            return Err("|(M_ab x M) n X_i| = |(a box b)^i|");
        }
        if line4 != rhs {
            return Err("|(M_a x M_b) n X_i| = |a^i n reflect(b^i)|");
        }
        let boxed = box_on_universe(ai, bi, k);
        if abi.iter().zip(&boxed).any(|(x, y)| x & !y != 0) {
            return Err("(a box b)^i within a^i box b^i");
        }
        if family::count(&boxed) as u64 > rhs {
            return Err("|a^i box b^i| <= |a^i n reflect(b^i)|");
        }
        if line5 > line4 {
            return Err("per-cell inequality");
        }
        Ok((line5, line4))
    }
}

impl PreparedCell {
    /// Same assertions as [`PreparedCell::chain`] for universes whose
    /// families fit in one word.
    fn chain_word(&self, ea: &Event, eb: &Event, eab: &Event) -> std::result::Result<(u64, u64), &'static str> {
        let k = self.k();
        let mut proj = [0u64; 3];
        let mut proj_d = [0u64; 3];
        let mut line5 = 0u64;
        let mut line4 = 0u64;
        let fam = [ea.bits(), eb.bits(), eab.bits()];
        for omega in 0..self.bc.len() {
            let (bc, bd) = (self.bc[omega].bits(), self.bd[omega].bits());
            let in_c = fam.map(|f| family::contains(f, bc));
            let in_d = fam.map(|f| family::contains(f, bd));
            for f in 0..3 {
                proj[f] |= (in_c[f] as u64) << self.tc[omega];
                proj_d[f] |= (in_d[f] as u64) << self.td[omega];
            }
            line5 += in_c[2] as u64;
            line4 += (in_c[0] && in_d[1]) as u64;
        }
        if proj != proj_d {
            return Err("F^i is the same from the C side and the D side");
        }
        let [ai, bi, abi] = proj;
        let rhs = (ai & reflect_word(bi, k)).count_ones() as u64;
        if line5 != abi.count_ones() as u64 {
            return Err("|(M_ab x M) n X_i| = |(a box b)^i|");
        }
        if line4 != rhs {
            return Err("|(M_a x M_b) n X_i| = |a^i n reflect(b^i)|");
        }
        let boxed = box_word(ai, bi, k);
        if abi & !boxed != 0 {
            return Err("(a box b)^i within a^i box b^i");
        }
        if boxed.count_ones() as u64 > rhs {
            return Err("|a^i box b^i| <= |a^i n reflect(b^i)|");
        }
        if line5 > line4 {
            return Err("per-cell inequality");
        }
        Ok((line5, line4))
    }
}

/// `{U \ x : x ∈ f}` for a one-word family on `k <= 6` points.
fn reflect_word(f: u64, k: usize) -> u64 {
    let full = (1u64 << k) - 1;
    let mut out = 0;
    let mut rest = f;
    while rest != 0 {
        let x = rest.trailing_zeros() as u64;
        out |= 1 << (full ^ x);
        rest &= rest - 1;
    }
    out
}

fn index_of(matchings: &[Matching]) -> HashMap<u64, usize> {
    matchings.iter().enumerate().map(|(i, m)| (m.edge_mask(), i)).collect()
}

/// Every ordered pair decomposes, round-trips through its cell, and lies in
/// exactly one cell; coverage equals `|M|^2`.
pub(super) fn verify_partition(g: &BipartiteGraph, matchings: &[Matching]) -> Result<CheckReport> {
    let n = matchings.len();
    let index = index_of(matchings);
    let mut hits = vec![0u32; n * n];
    let mut seen = HashSet::new();
    let mut coverage = 0u64;
    let mut witness = None;
    for (ci, c) in matchings.iter().enumerate() {
        for (di, d) in matchings.iter().enumerate() {
            let (cell, omega) = decompose_pair(c, d, g)?;
            let fam = build_cell(&cell, g)?;
            if fam.yc[omega.bits as usize] != *c || fam.yd[omega.bits as usize] != *d {
                witness.get_or_insert_with(|| json!({ "assertion": "round trip", "pair": [ci, di] }));
            }
            if !seen.insert(cell_key(&cell)) {
                continue;
            }
            for (x, y) in fam.x() {
                coverage += 1;
                let valid = Matching::from_mask(g, x.edge_mask()).is_ok() && Matching::from_mask(g, y.edge_mask()).is_ok();
                match (valid, index.get(&x.edge_mask()), index.get(&y.edge_mask())) {
                    (true, Some(&xi), Some(&yi)) => hits[xi * n + yi] += 1,
                    _ => {
                        witness.get_or_insert_with(|| json!({ "assertion": "cell members are matchings", "cell": cell.to_json(g) }));
                    }
                }
            }
        }
    }
    if let Some(p) = hits.iter().position(|&h| h != 1) {
        witness.get_or_insert_with(|| json!({ "assertion": "each pair in exactly one cell", "pair": [p / n, p % n], "hits": hits[p] }));
    }
    let report = CheckReport::compare(
        "partition",
        json!({ "graph": g.to_document(), "cells": seen.len() }),
        int(coverage),
        Relation::Eq,
        int((n * n) as u64),
    );
    Ok(match witness {
        Some(w) => report.fail_with(w),
        None => report,
    })
}

/// The cells with index in `I'` partition `M' × M'`, and no pair outside
/// `M' × M'` lands in such a cell.
pub(super) fn verify_partition_conditioned(
    g: &BipartiteGraph,
    matchings: &[Matching],
    v_plus: VertexSet,
    v_minus: VertexSet,
) -> Result<CheckReport> {
    if !v_plus.is_disjoint(v_minus) {
        return Err(Error::InvalidCondition);
    }
    let admissible = |m: &Matching| {
        let b = boundary(m, g);
        v_plus.is_subset(b) && v_minus.is_disjoint(b)
    };
    let primed: Vec<Matching> = matchings.iter().copied().filter(admissible).collect();
    let primed_index = index_of(&primed);
    let n = primed.len();
    let mut hits = vec![0u32; n * n];
    let mut seen = HashSet::new();
    let mut coverage = 0u64;
    let mut witness = None;
    for c in matchings {
        for d in matchings {
            let (cell, _) = decompose_pair(c, d, g)?;
            let in_primed = admissible(c) && admissible(d);
            if cell.in_conditioned_index(g, v_plus, v_minus) != in_primed {
                witness.get_or_insert_with(|| json!({ "assertion": "i in I' iff pair in M' x M'", "cell": cell.to_json(g) }));
            }
            if !in_primed || !seen.insert(cell_key(&cell)) {
                continue;
            }
            for (x, y) in build_cell(&cell, g)?.x() {
                coverage += 1;
                match (primed_index.get(&x.edge_mask()), primed_index.get(&y.edge_mask())) {
                    (Some(&xi), Some(&yi)) => hits[xi * n + yi] += 1,
                    _ => {
                        witness.get_or_insert_with(|| json!({ "assertion": "X_i within M' x M'", "cell": cell.to_json(g) }));
                    }
                }
            }
        }
    }
    if hits.iter().any(|&h| h != 1) {
        witness.get_or_insert_with(|| json!({ "assertion": "each pair of M' x M' in exactly one cell" }));
    }
    let report = CheckReport::compare(
        "partition-conditioned",
        json!({ "graph": g.to_document(), "v_plus": g.names_of(v_plus), "v_minus": g.names_of(v_minus) }),
        int(coverage),
        Relation::Eq,
        int((n * n) as u64),
    );
    Ok(match witness {
        Some(w) => report.fail_with(w),
        None => report,
    })
}
