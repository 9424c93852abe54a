//! Exact laws of the boundary set `B(M)` under the uniform, weighted,
//! scaled, conditioned and maximum-matching measures.
//!
//! A distribution is stored as nonnegative integer masses over a common
//! positive total, so `Σ pmf = 1` holds by construction and event
//! probabilities are integer sums.

use std::collections::BTreeMap;

use num_bigint::{BigInt, BigUint};
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};
use serde::Serialize;

use crate::error::{Error, Result};
use crate::events::{GroundSet, SetFamily};
use crate::graph::BipartiteGraph;
use crate::matching::{boundary, enumerate_all_matchings, matching_weight, maximum_only, Matching};
use crate::rational::format_rational;
use crate::vertex_set::VertexSet;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize)]
#[serde(rename_all = "kebab-case")]
pub enum Provenance {
    Uniform,
    Weighted,
    WeightedT,
    Conditioned,
    Maximum,
    /// Hand-built, not induced by a matching measure.
    Custom,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct BoundaryDistribution {
    ground: GroundSet,
    masses: BTreeMap<VertexSet, BigUint>,
    total: BigUint,
    provenance: Provenance,
}

impl BoundaryDistribution {
    /// Normalizes integer masses. Zero masses are dropped; the total must be
    /// positive.
    pub fn from_masses<I>(ground: GroundSet, masses: I, provenance: Provenance) -> Result<Self>
    where
        I: IntoIterator<Item = (VertexSet, BigUint)>,
    {
        let full = ground.full_set();
        let mut map: BTreeMap<VertexSet, BigUint> = BTreeMap::new();
        for (set, mass) in masses {
            if !set.is_subset(full) {
                return Err(Error::PreconditionFailed(format!("{set:?} outside ground")));
            }
            if !mass.is_zero() {
                *map.entry(set).or_default() += mass;
            }
        }
        let total: BigUint = map.values().sum();
        if total.is_zero() {
            return Err(Error::PreconditionFailed("distribution has zero total mass".into()));
        }
        Ok(BoundaryDistribution { ground, masses: map, total, provenance })
    }

    /// Nonnegative rational masses with any positive total (normalized on
    /// the way in).
    pub fn from_rational_masses<I>(ground: GroundSet, masses: I, provenance: Provenance) -> Result<Self>
    where
        I: IntoIterator<Item = (VertexSet, BigRational)>,
    {
        let masses: Vec<(VertexSet, BigRational)> = masses.into_iter().collect();
        if masses.iter().any(|(_, m)| m.is_negative()) {
            return Err(Error::PreconditionFailed("negative mass".into()));
        }
        let lcm = masses.iter().fold(BigInt::one(), |acc, (_, m)| acc.lcm(m.denom()));
        let scaled = masses.into_iter().map(|(set, m)| {
            let n = m.numer() * (&lcm / m.denom());
            (set, n.to_biguint().expect("nonnegative"))
        });
        Self::from_masses(ground, scaled, provenance)
    }

    pub fn ground(&self) -> &GroundSet {
        &self.ground
    }

    pub fn provenance(&self) -> Provenance {
        self.provenance
    }

    /// The common denominator of all masses.
    pub fn total_mass(&self) -> &BigUint {
        &self.total
    }

    /// Support sets and their unnormalized masses, sorted by mask.
    pub fn masses(&self) -> impl Iterator<Item = (VertexSet, &BigUint)> {
        self.masses.iter().map(|(s, m)| (*s, m))
    }

    pub fn support(&self) -> impl Iterator<Item = VertexSet> + '_ {
        self.masses.keys().copied()
    }

    pub fn pmf(&self, set: VertexSet) -> BigRational {
        match self.masses.get(&set) {
            Some(m) => ratio(m, &self.total),
            None => BigRational::zero(),
        }
    }

    /// Unnormalized mass of an event: `P(e) = event_mass(e) / total_mass()`.
    pub fn event_mass<F: SetFamily + ?Sized>(&self, e: &F) -> BigUint {
        let mut acc = BigUint::zero();
        for (set, m) in &self.masses {
            if e.contains(*set) {
                acc += m;
            }
        }
        acc
    }

    /// Unnormalized mass of `{ X : pred(X) }`.
    pub fn mass_where(&self, mut pred: impl FnMut(VertexSet) -> bool) -> BigUint {
        let mut acc = BigUint::zero();
        for (set, m) in &self.masses {
            if pred(*set) {
                acc += m;
            }
        }
        acc
    }

    pub fn probability_where(&self, pred: impl FnMut(VertexSet) -> bool) -> BigRational {
        ratio(&self.mass_where(pred), &self.total)
    }

    /// `(subset labels, "p/q")` in mask order.
    pub fn dump(&self) -> Vec<(Vec<String>, String)> {
        self.masses
            .iter()
            .map(|(s, m)| (self.ground.names_of(*s), format_rational(&ratio(m, &self.total))))
            .collect()
    }
}

fn ratio(num: &BigUint, den: &BigUint) -> BigRational {
    BigRational::new(BigInt::from(num.clone()), BigInt::from(den.clone()))
}

/// Law of `B(M)` when `P(M) ∝ w(M)`, over an explicit matching list.
pub(crate) fn weighted_over(
    g: &BipartiteGraph,
    matchings: &[Matching],
    provenance: Provenance,
) -> Result<BoundaryDistribution> {
    let ground = GroundSet::from_graph(g)?;
    if g.is_unit_weighted() {
        return uniform_over(g, matchings, provenance);
    }
    let masses = matchings.iter().map(|m| (boundary(m, g), matching_weight(m, g)));
    BoundaryDistribution::from_rational_masses(ground, masses, provenance)
}

pub(crate) fn uniform_over(
    g: &BipartiteGraph,
    matchings: &[Matching],
    provenance: Provenance,
) -> Result<BoundaryDistribution> {
    let ground = GroundSet::from_graph(g)?;
    let masses = matchings.iter().map(|m| (boundary(m, g), BigUint::one()));
    BoundaryDistribution::from_masses(ground, masses, provenance)
}

/// `P(X) = |{M : B(M) = X}| / |M|`, ignoring edge weights.
pub fn boundary_distribution(g: &BipartiteGraph) -> Result<BoundaryDistribution> {
    uniform_over(g, &enumerate_all_matchings(g), Provenance::Uniform)
}

/// `P(X) = Σ_{B(M)=X} w(M) / Σ_M w(M)`.
pub fn weighted_boundary_distribution(g: &BipartiteGraph) -> Result<BoundaryDistribution> {
    weighted_over(g, &enumerate_all_matchings(g), Provenance::Weighted)
}

/// Weighted law with every edge weight multiplied by `t` (on a unit-weight
/// graph: every weight equal to `t`).
pub fn scaled_distribution(g: &BipartiteGraph, t: &BigRational) -> Result<BoundaryDistribution> {
    if !t.is_positive() {
        return Err(Error::InvalidScale(t.to_string()));
    }
    let scaled = g.map_weights(|_, w| w * t)?;
    let matchings = enumerate_all_matchings(&scaled);
    let masses = matchings.iter().map(|m| (boundary(m, &scaled), matching_weight(m, &scaled)));
    BoundaryDistribution::from_rational_masses(GroundSet::from_graph(g)?, masses, Provenance::WeightedT)
}

/// Conditions an unconditioned law on `V+ ⊆ X` and `V- ∩ X = ∅`, then
/// projects onto `V' = V \ (V+ ∪ V-)`.
pub fn condition(
    d: &BoundaryDistribution,
    v_plus: VertexSet,
    v_minus: VertexSet,
) -> Result<BoundaryDistribution> {
    if !v_plus.is_disjoint(v_minus) {
        return Err(Error::InvalidCondition);
    }
    let full = d.ground.full_set();
    if !v_plus.union(v_minus).is_subset(full) {
        return Err(Error::PreconditionFailed("condition outside ground".into()));
    }
    let keep = full.difference(v_plus.union(v_minus));
    let masses: Vec<(VertexSet, BigUint)> = d
        .masses
        .iter()
        .filter(|(x, _)| v_plus.is_subset(**x) && x.is_disjoint(v_minus))
        .map(|(x, m)| (x.compress(keep), m.clone()))
        .collect();
    if masses.is_empty() {
        return Err(Error::EmptyConditionedSpace);
    }
    BoundaryDistribution::from_masses(d.ground.restrict(keep), masses, Provenance::Conditioned)
}

pub fn conditioned_distribution(
    g: &BipartiteGraph,
    v_plus: VertexSet,
    v_minus: VertexSet,
) -> Result<BoundaryDistribution> {
    if !v_plus.is_disjoint(v_minus) {
        return Err(Error::InvalidCondition);
    }
    condition(&weighted_boundary_distribution(g)?, v_plus, v_minus)
}

/// Uniform law over the maximum-cardinality matchings.
pub fn max_matching_distribution(g: &BipartiteGraph) -> Result<BoundaryDistribution> {
    let max = maximum_only(enumerate_all_matchings(g));
    uniform_over(g, &max, Provenance::Maximum)
}

pub fn event_probability<F: SetFamily + ?Sized>(d: &BoundaryDistribution, e: &F) -> Result<BigRational> {
    if e.ground() != d.ground() {
        return Err(Error::GroundMismatch);
    }
    Ok(ratio(&d.event_mass(e), &d.total))
}

/// `(1/2) Σ_X |d1(X) - d2(X)|`.
pub fn total_variation(d1: &BoundaryDistribution, d2: &BoundaryDistribution) -> Result<BigRational> {
    if d1.ground != d2.ground {
        return Err(Error::GroundMismatch);
    }
    // Cross-multiply onto the common denominator total1 * total2.
    let mut keys: Vec<VertexSet> = d1.masses.keys().chain(d2.masses.keys()).copied().collect();
    keys.sort_unstable();
    keys.dedup();
    let zero = BigUint::zero();
    let mut acc = BigUint::zero();
    for k in keys {
        let a = d1.masses.get(&k).unwrap_or(&zero) * &d2.total;
        let b = d2.masses.get(&k).unwrap_or(&zero) * &d1.total;
        acc += if a > b { a - b } else { b - a };
    }
    Ok(ratio(&acc, &(&d1.total * &d2.total * 2u32)))
}
