//! Events over the powerset of a finite ground set.
//!
//! [`Event`] is an explicit family stored as a membership bit string (see
//! [`crate::family`]); [`IncreasingEvent`] is an up-set stored as its
//! antichain of minimal generators.

use std::fmt;
use std::sync::Arc;

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::error::{Error, Result};
use crate::family;
use crate::graph::BipartiteGraph;
use crate::vertex_set::VertexSet;

/// Largest ground set for which events are expanded to explicit families.
pub const GROUND_CAP: usize = 16;
/// Largest ground set accepted by [`box_general`].
pub const GENERAL_BOX_CAP: usize = 10;
/// Largest ground set for [`all_increasing_events`] (Dedekind growth).
pub const ALL_INCREASING_CAP: usize = 5;

/// A labeled finite ground set. Cloning is cheap.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct GroundSet {
    labels: Arc<[String]>,
}

impl GroundSet {
    pub fn new(labels: Vec<String>) -> Result<GroundSet> {
        if labels.len() > GROUND_CAP {
            return Err(Error::GroundTooLarge(labels.len(), GROUND_CAP));
        }
        Ok(GroundSet { labels: labels.into() })
    }

    /// Ground set labeled `u1, .., un`.
    pub fn anonymous(n: usize) -> Result<GroundSet> {
        GroundSet::new((1..=n).map(|i| format!("u{i}")).collect())
    }

    /// The vertex set `V` of `g`, in canonical order.
    pub fn from_graph(g: &BipartiteGraph) -> Result<GroundSet> {
        GroundSet::new(g.vertex_names())
    }

    /// The sub-ground of the elements in `keep`, order preserved.
    pub fn restrict(&self, keep: VertexSet) -> GroundSet {
        GroundSet { labels: keep.iter().map(|i| self.labels[i].clone()).collect::<Vec<_>>().into() }
    }

    #[inline]
    pub fn size(&self) -> usize {
        self.labels.len()
    }

    pub fn label(&self, i: usize) -> &str {
        &self.labels[i]
    }

    pub fn labels(&self) -> &[String] {
        &self.labels
    }

    #[inline]
    pub fn full_set(&self) -> VertexSet {
        VertexSet::full(self.size())
    }

    pub fn index_of(&self, label: &str) -> Option<usize> {
        self.labels.iter().position(|l| l == label)
    }

    pub fn set_of<S: AsRef<str>>(&self, labels: &[S]) -> Result<VertexSet> {
        labels
            .iter()
            .map(|l| self.index_of(l.as_ref()).ok_or_else(|| Error::UnknownVertex(l.as_ref().to_owned())))
            .collect()
    }

    pub fn names_of(&self, set: VertexSet) -> Vec<String> {
        set.iter().map(|i| self.labels[i].clone()).collect()
    }

    fn check_member(&self, set: VertexSet) -> Result<()> {
        if set.is_subset(self.full_set()) {
            Ok(())
        } else {
            Err(Error::PreconditionFailed(format!("{set:?} is not a subset of the ground set")))
        }
    }
}

impl fmt::Debug for GroundSet {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_list().entries(self.labels.iter()).finish()
    }
}

/// Anything that can answer "is this subset a member?".
pub trait SetFamily {
    fn ground(&self) -> &GroundSet;
    fn contains(&self, set: VertexSet) -> bool;
}

/// An explicit family of subsets of the ground set.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct Event {
    ground: GroundSet,
    bits: Vec<u64>,
}

impl Event {
    pub fn empty(ground: GroundSet) -> Event {
        let bits = family::empty(ground.size());
        Event { ground, bits }
    }

    /// The whole powerset.
    pub fn full(ground: GroundSet) -> Event {
        let bits = family::full(ground.size());
        Event { ground, bits }
    }

    pub fn from_members<I: IntoIterator<Item = VertexSet>>(ground: GroundSet, members: I) -> Result<Event> {
        let mut bits = family::empty(ground.size());
        for m in members {
            ground.check_member(m)?;
            family::insert(&mut bits, m.bits());
        }
        Ok(Event { ground, bits })
    }

    /// Every subset satisfying `pred`.
    pub fn from_predicate(ground: GroundSet, mut pred: impl FnMut(VertexSet) -> bool) -> Event {
        let mut bits = family::empty(ground.size());
        for c in 0..1u64 << ground.size() {
            if pred(VertexSet::from_bits(c)) {
                family::insert(&mut bits, c);
            }
        }
        Event { ground, bits }
    }

    /// Caller guarantees `bits` has the layout of [`crate::family`] for
    /// this ground size.
    pub fn from_bits(ground: GroundSet, bits: Vec<u64>) -> Event {
        debug_assert_eq!(bits.len(), family::word_count(ground.size()));
        Event { ground, bits }
    }

    pub fn bits(&self) -> &[u64] {
        &self.bits
    }

    /// Members in increasing mask order.
    pub fn members(&self) -> impl Iterator<Item = VertexSet> + '_ {
        family::members(&self.bits).map(VertexSet::from_bits)
    }

    pub fn len(&self) -> usize {
        family::count(&self.bits)
    }

    pub fn is_empty(&self) -> bool {
        self.bits.iter().all(|&w| w == 0)
    }

    fn same_ground(&self, other: &Event) -> Result<()> {
        if self.ground == other.ground {
            Ok(())
        } else {
            Err(Error::GroundMismatch)
        }
    }

    fn zip_with(&self, other: &Event, f: impl Fn(u64, u64) -> u64) -> Result<Event> {
        self.same_ground(other)?;
        let bits = self.bits.iter().zip(&other.bits).map(|(&a, &b)| f(a, b)).collect();
        Ok(Event { ground: self.ground.clone(), bits })
    }

    pub fn intersection(&self, other: &Event) -> Result<Event> {
        self.zip_with(other, |a, b| a & b)
    }

    pub fn union(&self, other: &Event) -> Result<Event> {
        self.zip_with(other, |a, b| a | b)
    }

    pub fn is_subset(&self, other: &Event) -> Result<bool> {
        self.same_ground(other)?;
        Ok(self.bits.iter().zip(&other.bits).all(|(a, b)| a & !b == 0))
    }

    /// `2^V \ F` (the complementary event, not the member-wise reflection).
    pub fn complement(&self) -> Event {
        Event { ground: self.ground.clone(), bits: family::complement(&self.bits, self.ground.size()) }
    }

    pub fn is_increasing(&self) -> bool {
        family::is_increasing(&self.bits, self.ground.size())
    }

    pub fn is_decreasing(&self) -> bool {
        family::is_increasing(&family::complement(&self.bits, self.ground.size()), self.ground.size())
    }

    /// Member-wise complement `{ V \ J : J ∈ F }`.
    pub fn reflect(&self) -> Event {
        Event { ground: self.ground.clone(), bits: family::reflect(&self.bits, self.ground.size()) }
    }

    pub fn depends_only_on(&self, v0: VertexSet) -> bool {
        family::depends_only_on(&self.bits, self.ground.size(), v0.bits())
    }

    /// Canonical listing: members as label lists, in increasing mask order.
    pub fn to_names(&self) -> Vec<Vec<String>> {
        self.members().map(|m| self.ground.names_of(m)).collect()
    }
}

impl SetFamily for Event {
    fn ground(&self) -> &GroundSet {
        &self.ground
    }

    #[inline]
    fn contains(&self, set: VertexSet) -> bool {
        set.is_subset(self.ground.full_set()) && family::contains(&self.bits, set.bits())
    }
}

impl fmt::Debug for Event {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_set().entries(self.members()).finish()
    }
}

/// An up-set, stored as its antichain of minimal members sorted by mask.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct IncreasingEvent {
    ground: GroundSet,
    generators: Vec<VertexSet>,
}

impl IncreasingEvent {
    /// The up-set generated by `generators`, reduced to its minimal elements.
    ///
    /// Panics if a generator is not a subset of the ground set.
    pub fn upward_closure<I: IntoIterator<Item = VertexSet>>(ground: GroundSet, generators: I) -> IncreasingEvent {
        let mut gens: Vec<VertexSet> = generators.into_iter().collect();
        for g in &gens {
            assert!(g.is_subset(ground.full_set()), "generator {g:?} outside ground {ground:?}");
        }
        gens.sort_unstable_by_key(|g| (g.len(), g.bits()));
        gens.dedup();
        let mut minimal: Vec<VertexSet> = Vec::with_capacity(gens.len());
        for g in gens {
            if !minimal.iter().any(|m| m.is_subset(g)) {
                minimal.push(g);
            }
        }
        minimal.sort_unstable();
        IncreasingEvent { ground, generators: minimal }
    }

    /// The empty event (no generators).
    pub fn never(ground: GroundSet) -> IncreasingEvent {
        IncreasingEvent { ground, generators: Vec::new() }
    }

    /// The full powerset (generated by `∅`).
    pub fn always(ground: GroundSet) -> IncreasingEvent {
        IncreasingEvent { ground, generators: vec![VertexSet::EMPTY] }
    }

    /// Recovers the antichain of an explicit event, which must be increasing.
    pub fn from_event(e: &Event) -> Result<IncreasingEvent> {
        if !e.is_increasing() {
            return Err(Error::NotIncreasing);
        }
        Ok(IncreasingEvent::upward_closure(e.ground.clone(), e.members()))
    }

    pub fn generators(&self) -> &[VertexSet] {
        &self.generators
    }

    pub fn to_event(&self) -> Event {
        let n = self.ground.size();
        let mut bits = family::empty(n);
        let full = VertexSet::full(n);
        for g in &self.generators {
            // Walk the supersets of g: the free bits are the complement.
            let free = full.difference(*g).bits();
            let mut extra = free;
            loop {
                family::insert(&mut bits, g.bits() | extra);
                if extra == 0 {
                    break;
                }
                extra = (extra - 1) & free;
            }
        }
        Event { ground: self.ground.clone(), bits }
    }

    pub fn to_names(&self) -> Vec<Vec<String>> {
        self.generators.iter().map(|g| self.ground.names_of(*g)).collect()
    }
}

impl SetFamily for IncreasingEvent {
    fn ground(&self) -> &GroundSet {
        &self.ground
    }

    fn contains(&self, set: VertexSet) -> bool {
        set.is_subset(self.ground.full_set()) && self.generators.iter().any(|g| g.is_subset(set))
    }
}

impl fmt::Debug for IncreasingEvent {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "up")?;
        f.debug_set().entries(self.generators.iter()).finish()
    }
}

/// `{ A ∪ B : A ∈ a, B ∈ b, A ∩ B = ∅ }` for up-sets: the up-closure of the
/// disjoint unions of generator pairs.
pub fn box_increasing(a: &IncreasingEvent, b: &IncreasingEvent) -> Result<IncreasingEvent> {
    if a.ground != b.ground {
        return Err(Error::GroundMismatch);
    }
    let mut gens = Vec::new();
    for &ga in &a.generators {
        for &gb in &b.generators {
            if ga.is_disjoint(gb) {
                gens.push(ga.union(gb));
            }
        }
    }
    Ok(IncreasingEvent::upward_closure(a.ground.clone(), gens))
}

/// Disjoint occurrence for arbitrary events via witness sets.
pub fn box_general(a: &Event, b: &Event) -> Result<Event> {
    a.same_ground(b)?;
    let n = a.ground.size();
    if n > GENERAL_BOX_CAP {
        return Err(Error::GeneralBoxTooLarge(n, GENERAL_BOX_CAP));
    }
    Ok(Event { ground: a.ground.clone(), bits: family::box_general(&a.bits, &b.bits, n) })
}

/// A member of a general box together with the disjoint witness sets that
/// certify it.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct BoxWitness {
    pub member: VertexSet,
    pub witness_a: VertexSet,
    pub witness_b: VertexSet,
}

impl BoxWitness {
    /// Re-checks the certificate by enumerating both cylinders.
    pub fn verify(&self, a: &Event, b: &Event) -> bool {
        let cylinder_inside = |e: &Event, w: VertexSet| {
            let n = e.ground.size();
            (0..1u64 << n).map(VertexSet::from_bits).all(|d| {
                d.intersection(w) != self.member.intersection(w) || e.contains(d)
            })
        };
        self.witness_a.is_disjoint(self.witness_b)
            && cylinder_inside(a, self.witness_a)
            && cylinder_inside(b, self.witness_b)
    }
}

/// [`box_general`] plus one recorded witness pair per member, in member order.
pub fn box_general_witnessed(a: &Event, b: &Event) -> Result<(Event, Vec<BoxWitness>)> {
    a.same_ground(b)?;
    let n = a.ground.size();
    if n > GENERAL_BOX_CAP {
        return Err(Error::GeneralBoxTooLarge(n, GENERAL_BOX_CAP));
    }
    let (bits, raw) = family::box_general_witnessed(&a.bits, &b.bits, n);
    let witnesses = raw
        .into_iter()
        .map(|(c, va, vb)| BoxWitness {
            member: VertexSet::from_bits(c),
            witness_a: VertexSet::from_bits(va),
            witness_b: VertexSet::from_bits(vb),
        })
        .collect();
    Ok((Event { ground: a.ground.clone(), bits }, witnesses))
}

pub fn reflect(j: &Event) -> Event {
    j.reflect()
}

pub fn depends_only_on(e: &Event, v0: VertexSet) -> bool {
    e.depends_only_on(v0)
}

pub fn is_increasing(e: &Event) -> bool {
    e.is_increasing()
}

pub fn upward_closure<I: IntoIterator<Item = VertexSet>>(generators: I, ground: GroundSet) -> IncreasingEvent {
    IncreasingEvent::upward_closure(ground, generators)
}

/// Up-closure of `generator_count` uniformly random subsets.
pub fn random_increasing_event(ground: &GroundSet, seed: u64, generator_count: usize) -> IncreasingEvent {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    random_increasing_event_with(ground, &mut rng, generator_count)
}

pub fn random_increasing_event_with<R: Rng>(ground: &GroundSet, rng: &mut R, generator_count: usize) -> IncreasingEvent {
    let full = ground.full_set().bits();
    let gens: Vec<VertexSet> = (0..generator_count).map(|_| VertexSet::from_bits(rng.random::<u64>() & full)).collect();
    IncreasingEvent::upward_closure(ground.clone(), gens)
}

/// Uniform random family: each subset a member independently with
/// probability 1/2.
pub fn random_event_with<R: Rng>(ground: &GroundSet, rng: &mut R) -> Event {
    let n = ground.size();
    let mask = family::word_mask(n);
    let bits = (0..family::word_count(n)).map(|_| rng.random::<u64>() & mask).collect();
    Event { ground: ground.clone(), bits }
}

/// Every increasing event on `ground` (one per antichain), in a fixed
/// order. There are 2, 3, 6, 20, 168, 7581 of them for sizes 0..=5.
pub fn all_increasing_events(ground: &GroundSet) -> Result<Vec<IncreasingEvent>> {
    let n = ground.size();
    if n > ALL_INCREASING_CAP {
        return Err(Error::GroundTooLarge(n, ALL_INCREASING_CAP));
    }
    fn grow(next: u64, end: u64, chosen: &mut Vec<VertexSet>, ground: &GroundSet, out: &mut Vec<IncreasingEvent>) {
        out.push(IncreasingEvent { ground: ground.clone(), generators: chosen.clone() });
        for c in next..end {
            let c = VertexSet::from_bits(c);
            if chosen.iter().all(|g| !g.is_subset(c) && !c.is_subset(*g)) {
                chosen.push(c);
                grow(c.bits() + 1, end, chosen, ground, out);
                chosen.pop();
            }
        }
    }
    let mut out = Vec::new();
    grow(0, 1 << n, &mut Vec::new(), ground, &mut out);
    Ok(out)
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    fn ground(n: usize) -> GroundSet {
        GroundSet::anonymous(n).unwrap()
    }

    fn set(items: &[usize]) -> VertexSet {
        items.iter().copied().collect()
    }

    fn up(g: &GroundSet, gens: &[&[usize]]) -> IncreasingEvent {
        IncreasingEvent::upward_closure(g.clone(), gens.iter().map(|s| set(s)))
    }

    /// Direct transcription of the witness-set definition: every ordered
    /// pair of disjoint witness sets, every cylinder enumerated.
    fn box_general_oracle(a: &Event, b: &Event) -> Event {
        let n = a.ground().size();
        let all: Vec<VertexSet> = (0..1u64 << n).map(VertexSet::from_bits).collect();
        let cyl_inside = |e: &Event, c: VertexSet, w: VertexSet| {
            all.iter().all(|&d| d.intersection(w) != c.intersection(w) || e.contains(d))
        };
        Event::from_predicate(a.ground().clone(), |c| {
            all.iter().any(|&va| {
                cyl_inside(a, c, va)
                    && all.iter().any(|&vb| va.is_disjoint(vb) && cyl_inside(b, c, vb))
            })
        })
    }

    /// Direct transcription of `{A ∪ B : A ∈ a, B ∈ b, A ∩ B = ∅}`.
    fn box_increasing_oracle(a: &Event, b: &Event) -> Event {
        let mut members = Vec::new();
        for x in a.members() {
            for y in b.members() {
                if x.is_disjoint(y) {
                    members.push(x.union(y));
                }
            }
        }
        Event::from_members(a.ground().clone(), members).unwrap()
    }

    #[test]
    fn upward_closure_examples() {
        let g = ground(2);
        assert_eq!(up(&g, &[&[0], &[0, 1]]).generators(), &[set(&[0])]);
        assert!(up(&g, &[]).to_event().is_empty());
        assert_eq!(up(&g, &[&[]]).to_event(), Event::full(g.clone()));
    }

    #[test]
    fn is_increasing_examples() {
        let g = ground(2);
        assert!(Event::full(g.clone()).is_increasing());
        assert!(!Event::from_members(g.clone(), [set(&[0])]).unwrap().is_increasing());
        assert!(Event::from_members(g.clone(), [set(&[0]), set(&[0, 1])]).unwrap().is_increasing());
    }

    #[test]
    fn box_increasing_examples() {
        let g = ground(3);
        let r = box_increasing(&up(&g, &[&[0]]), &up(&g, &[&[1]])).unwrap();
        assert_eq!(r, up(&g, &[&[0, 1]]));
        let r = box_increasing(&up(&g, &[&[0]]), &up(&g, &[&[0]])).unwrap();
        assert!(r.to_event().is_empty());
        // ground {x, y, z}: up({x},{y}) □ up({z})
        let a = up(&g, &[&[0], &[1]]);
        let b = up(&g, &[&[2]]);
        let r = box_increasing(&a, &b).unwrap();
        assert_eq!(r.to_event(), box_increasing_oracle(&a.to_event(), &b.to_event()));
        assert_eq!(r, up(&g, &[&[0, 2], &[1, 2]]));
        let other = up(&ground(2), &[&[0]]);
        assert_eq!(box_increasing(&a, &other), Err(Error::GroundMismatch));
    }

    #[test]
    fn box_general_examples() {
        let g = ground(3);
        let full = Event::full(g.clone());
        assert_eq!(box_general(&full, &full).unwrap(), full);
        let g1 = ground(1);
        let only_empty = Event::from_members(g1.clone(), [VertexSet::EMPTY]).unwrap();
        assert!(box_general(&only_empty, &only_empty).unwrap().is_empty());
        let g0 = ground(0);
        let e0 = Event::full(g0.clone());
        assert_eq!(box_general(&e0, &e0).unwrap(), e0);
        assert!(matches!(
            box_general(&Event::full(ground(11)), &Event::full(ground(11))),
            Err(Error::GeneralBoxTooLarge(11, 10))
        ));
        assert_eq!(box_general(&full, &Event::full(ground(2))), Err(Error::GroundMismatch));
    }

    #[test]
    fn box_general_agrees_with_increasing_box_on_random_up_sets() {
        for n in 0..=8 {
            let g = ground(n);
            for seed in 0..40u64 {
                let a = random_increasing_event(&g, seed, 1 + (seed as usize % 4));
                let b = random_increasing_event(&g, seed + 1000, 1 + (seed as usize % 3));
                let general = box_general(&a.to_event(), &b.to_event()).unwrap();
                let inc = box_increasing(&a, &b).unwrap().to_event();
                assert_eq!(general, inc, "n={n} seed={seed}");
                assert!(inc.is_increasing());
            }
        }
    }

    #[test]
    fn box_general_matches_definition_exhaustively_on_two_elements() {
        let g = ground(2);
        for x in 0..16u64 {
            for y in 0..16u64 {
                let a = Event::from_bits(g.clone(), vec![x]);
                let b = Event::from_bits(g.clone(), vec![y]);
                assert_eq!(box_general(&a, &b).unwrap(), box_general_oracle(&a, &b));
            }
        }
    }

    #[test]
    fn reflect_examples() {
        let g = ground(2);
        assert_eq!(Event::full(g.clone()).reflect(), Event::full(g.clone()));
        let a = Event::from_members(g.clone(), [set(&[0])]).unwrap();
        assert_eq!(a.reflect(), Event::from_members(g, [set(&[1])]).unwrap());
    }

    #[test]
    fn depends_only_on_examples() {
        let g = ground(2);
        let a = up(&g, &[&[0]]).to_event();
        assert!(a.depends_only_on(g.full_set()));
        assert!(a.depends_only_on(set(&[0])));
        assert!(!a.depends_only_on(set(&[1])));
    }

    #[test]
    fn random_increasing_examples() {
        let g = ground(4);
        assert!(random_increasing_event(&g, 3, 0).to_event().is_empty());
        assert_eq!(random_increasing_event(&g, 9, 3), random_increasing_event(&g, 9, 3));
        assert!(random_increasing_event(&g, 1, 3).to_event().is_increasing());
    }

    #[test]
    fn dedekind_counts() {
        let counts: Vec<usize> = (0..=5).map(|n| all_increasing_events(&ground(n)).unwrap().len()).collect();
        assert_eq!(counts, vec![2, 3, 6, 20, 168, 7581]);
        let four = all_increasing_events(&ground(4)).unwrap();
        let distinct: std::collections::HashSet<_> = four.iter().map(|e| e.to_event()).collect();
        assert_eq!(distinct.len(), 168);
        assert!(four.iter().all(|e| e.to_event().is_increasing()));
        assert!(all_increasing_events(&ground(6)).is_err());
    }

    #[test]
    fn increasing_round_trip_and_rejection() {
        let g = ground(3);
        let a = up(&g, &[&[0, 1], &[2]]);
        assert_eq!(IncreasingEvent::from_event(&a.to_event()).unwrap(), a);
        let not_inc = Event::from_members(g, [set(&[0])]).unwrap();
        assert_eq!(IncreasingEvent::from_event(&not_inc), Err(Error::NotIncreasing));
    }

    fn arb_event(n: usize) -> impl Strategy<Value = Event> {
        proptest::collection::vec(any::<u64>(), family::word_count(n)).prop_map(move |mut v| {
            v.iter_mut().for_each(|w| *w &= family::word_mask(n));
            Event::from_bits(ground(n), v)
        })
    }

    fn arb_up(n: usize) -> impl Strategy<Value = IncreasingEvent> {
        (any::<u64>(), 0usize..5).prop_map(move |(seed, k)| random_increasing_event(&ground(n), seed, k))
    }

    proptest! {
        #[test]
        fn reflect_is_an_involution(e in (0usize..=7).prop_flat_map(arb_event)) {
            prop_assert_eq!(e.reflect().reflect(), e);
        }

        #[test]
        fn box_increasing_commutes_and_is_monotone(
            (a, b, extra) in (0usize..=6).prop_flat_map(|n| (arb_up(n), arb_up(n), arb_up(n)))
        ) {
            let ab = box_increasing(&a, &b).unwrap();
            prop_assert_eq!(&ab, &box_increasing(&b, &a).unwrap());
            let bigger = IncreasingEvent::upward_closure(
                a.ground().clone(),
                a.generators().iter().chain(extra.generators()).copied(),
            );
            let big_box = box_increasing(&bigger, &b).unwrap();
            prop_assert!(ab.to_event().is_subset(&big_box.to_event()).unwrap());
            prop_assert_eq!(ab.to_event(), box_increasing_oracle(&a.to_event(), &b.to_event()));
        }

        #[test]
        fn general_box_witnesses_recheck(
            (a, b) in (0usize..=4).prop_flat_map(|n| (arb_event(n), arb_event(n)))
        ) {
            let (boxed, witnesses) = box_general_witnessed(&a, &b).unwrap();
            prop_assert_eq!(&boxed, &box_general(&a, &b).unwrap());
            prop_assert_eq!(witnesses.len(), boxed.len());
            for w in &witnesses {
                prop_assert!(boxed.contains(w.member));
                prop_assert!(w.verify(&a, &b));
            }
        }

        #[test]
        fn general_box_matches_definition(
            (a, b) in (0usize..=3).prop_flat_map(|n| (arb_event(n), arb_event(n)))
        ) {
            prop_assert_eq!(box_general(&a, &b).unwrap(), box_general_oracle(&a, &b));
        }
    }
}
